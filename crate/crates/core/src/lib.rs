//! Size-dependent spontaneous-emission decoherence of excitonic states in
//! spherical semiconductor microcrystallites.
//!
//! A crystallite of radius `R0` much larger than the bulk exciton Bohr
//! radius (but no larger than the transition wavelength) hosts a bosonic
//! exciton mode whose radiative decay is superradiantly enhanced by
//! `64 pi (R0 / a_B)^3`. This crate evaluates the resulting closed-form
//! rates, characteristic times and decoherence factors, evolves reduced
//! density matrices for qubit, coherent-superposition and cat initial
//! states in a truncated Fock basis, and verifies the closed forms against
//! two independent numerical oracles (a Lindblad master-equation integrator
//! and a discretized-multimode single-excitation simulation).

pub mod constants;
pub mod decoherence;
pub mod density;
pub mod error;
pub mod fock;
pub mod materials;
pub mod ode;
pub mod oracle;
pub mod states;

pub use constants::{PhysicalConstants, CONSTANTS};
pub use decoherence::{decoherence_profile, DecoherenceProfile};
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use fock::FockBasis;
pub use materials::{
    builtin_material, builtin_materials, check_validity, load_material, CrystalliteConfig,
    Material, ValidityReport,
};
pub use states::{evolve_initial_state, Evolution, InitialState, Parity};
