//! Independent numerical verifications of the closed forms: a Lindblad
//! master-equation integrator and a discretized-multimode single-excitation
//! simulation of the microscopic coupled equations.

mod fit;
mod lindblad;
mod modes;

pub use fit::{fit_decay_rate, fit_decay_rate_windowed, DecayFit};
pub use lindblad::{dyad_weights, integrate_lindblad, LindbladSpec};
pub use modes::{build_mode_grid, simulate_single_excitation, ModeGrid, SingleExcitationSeries};
