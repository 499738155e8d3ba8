//! Construction and time evolution of exciton density matrices for the
//! three supported initial-state families: vacuum/single-exciton qubits,
//! superpositions of two coherent states, and even/odd (cat) states.
//!
//! Evolution is the exact solution of the amplitude-damped oscillator at
//! rate `gamma_pop` with free rotation at `Omega`: coherent branches shrink
//! as `u(t) alpha`, the cross dyad is weighted by the radiation-field
//! overlap, and the trace of the assembled matrix stays constant.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::decoherence::{
    self, cat_decoherence_factor, coherent_superposition_factor, dyad_overlap_factor,
    exciton_amplitude_factor, qubit_decoherence_factor, DecoherenceProfile,
};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::fock::{coherent_fock_amplitudes, FockBasis};

/// Parity sector of a cat state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Supported initial states of the exciton mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    /// alpha |0> + beta |1> with |alpha|^2 + |beta|^2 = 1.
    Qubit { alpha: C64, beta: C64 },
    /// C |alpha1> + D |alpha2>, accepted as-is and rescaled to unit trace.
    TwoCoherent { c: C64, alpha1: C64, d: C64, alpha2: C64 },
    /// N_pm (|alpha> +/- |-alpha>), normalization applied internally.
    Cat { alpha: C64, parity: Parity },
}

impl InitialState {
    /// Largest coherent mean occupation |alpha|^2 involved, for basis sizing.
    pub fn max_mean_occupation(&self) -> f64 {
        match self {
            InitialState::Qubit { .. } => 1.0,
            InitialState::TwoCoherent { alpha1, alpha2, .. } => {
                alpha1.norm_sqr().max(alpha2.norm_sqr())
            }
            InitialState::Cat { alpha, .. } => alpha.norm_sqr(),
        }
    }
}

/// Cat normalization N_pm = (2 +/- 2 exp(-2 |alpha|^2))^(-1/2).
pub fn cat_normalization(alpha: C64, parity: Parity) -> f64 {
    let overlap = (-2.0 * alpha.norm_sqr()).exp();
    match parity {
        Parity::Even => (2.0 + 2.0 * overlap).powf(-0.5),
        Parity::Odd => (2.0 - 2.0 * overlap).powf(-0.5),
    }
}

/// An evolved density matrix together with the rescale factor that was
/// applied to reach unit trace (1 for inputs that were already normalized).
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub rho: DensityMatrix,
    pub rescale: f64,
}

/// Evolve a vacuum/single-exciton qubit for time `t`.
///
/// The 2x2 block occupies the lowest two Fock levels:
/// rho_00 = 1 - eta |beta|^2, rho_01 = alpha conj(beta) F(t) e^{i Omega t},
/// rho_11 = eta |beta|^2, with eta(t) = exp(-gamma_pop t) = F(t)^2.
pub fn evolve_qubit(
    profile: &DecoherenceProfile,
    alpha: C64,
    beta: C64,
    t: f64,
    basis: FockBasis,
) -> Result<DensityMatrix> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if norm.is_nan() || (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Domain(format!(
            "qubit amplitudes must satisfy |alpha|^2 + |beta|^2 = 1, got {norm}"
        )));
    }
    let f = qubit_decoherence_factor(profile, t)?;
    let eta = f * f;
    let phase = C64::from_polar(1.0, profile.omega * t);
    let mut mat = DMatrix::<C64>::zeros(basis.dim(), basis.dim());
    let excited = eta * beta.norm_sqr();
    mat[(0, 0)] = C64::new(1.0 - excited, 0.0);
    mat[(1, 1)] = C64::new(excited, 0.0);
    mat[(0, 1)] = alpha * beta.conj() * f * phase;
    mat[(1, 0)] = mat[(0, 1)].conj();
    DensityMatrix::from_matrix(mat)
}

/// Evolve C |alpha1> + D |alpha2> for time `t`.
///
/// The matrix is assembled from the four dyads |u(t) alpha_i><u(t) alpha_j|
/// with the diagonal weights |C|^2, |D|^2 and the cross weight
/// `C conj(D) W(t)` where W is [`dyad_overlap_factor`]; it is then rescaled
/// by the analytic input norm so the trace is 1 at every time.
pub fn evolve_two_coherent(
    profile: &DecoherenceProfile,
    c: C64,
    alpha1: C64,
    d: C64,
    alpha2: C64,
    t: f64,
    basis: FockBasis,
) -> Result<Evolution> {
    for (label, z) in [("C", c), ("alpha1", alpha1), ("D", d), ("alpha2", alpha2)] {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("{label} must be finite, got {z}")));
        }
    }
    let branch_overlap = decoherence::coherent_superposition_floor(alpha1, alpha2);
    // <psi|psi> = |C|^2 + |D|^2 + 2 Re[C conj(D) <alpha2|alpha1>]
    let norm = c.norm_sqr() + d.norm_sqr() + 2.0 * (c * d.conj() * branch_overlap).re;
    if !norm.is_finite() || norm <= 1e-12 {
        return Err(Error::Domain(format!(
            "two-coherent state norm ({norm:.3e}) is not usable; branches cancel or overflow"
        )));
    }
    let rescale = 1.0 / norm;

    let u = exciton_amplitude_factor(profile, t)?;
    let w_cross = c * d.conj() * dyad_overlap_factor(profile, alpha1, alpha2, t)?;
    let weights = [
        [C64::new(c.norm_sqr(), 0.0), w_cross],
        [w_cross.conj(), C64::new(d.norm_sqr(), 0.0)],
    ];
    let branch = [
        coherent_fock_amplitudes(u * alpha1, basis)?,
        coherent_fock_amplitudes(u * alpha2, basis)?,
    ];

    let dim = basis.dim();
    let mut mat = DMatrix::<C64>::zeros(dim, dim);
    for m in 0..dim {
        for n in m..dim {
            let mut entry = C64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    entry += weights[i][j] * (branch[i][m] * branch[j][n].conj());
                }
            }
            mat[(m, n)] = entry * rescale;
            if m != n {
                mat[(n, m)] = mat[(m, n)].conj();
            }
        }
    }
    Ok(Evolution {
        rho: DensityMatrix::from_matrix(mat)?,
        rescale,
    })
}

/// Evolve an even or odd cat state for time `t`.
///
/// Delegates to [`evolve_two_coherent`] with C = D = N_+ (even) or
/// C = N_-, D = -N_- (odd) at branches (alpha, -alpha).
pub fn evolve_cat(
    profile: &DecoherenceProfile,
    alpha: C64,
    parity: Parity,
    t: f64,
    basis: FockBasis,
) -> Result<Evolution> {
    let n = cat_normalization(alpha, parity);
    let (c, d) = match parity {
        Parity::Even => (C64::new(n, 0.0), C64::new(n, 0.0)),
        Parity::Odd => (C64::new(n, 0.0), C64::new(-n, 0.0)),
    };
    evolve_two_coherent(profile, c, alpha, d, -alpha, t, basis)
}

/// Evolve any [`InitialState`] for time `t`.
pub fn evolve_initial_state(
    profile: &DecoherenceProfile,
    state: &InitialState,
    t: f64,
    basis: FockBasis,
) -> Result<Evolution> {
    match *state {
        InitialState::Qubit { alpha, beta } => Ok(Evolution {
            rho: evolve_qubit(profile, alpha, beta, t, basis)?,
            rescale: 1.0,
        }),
        InitialState::TwoCoherent { c, alpha1, d, alpha2 } => {
            evolve_two_coherent(profile, c, alpha1, d, alpha2, t, basis)
        }
        InitialState::Cat { alpha, parity } => evolve_cat(profile, alpha, parity, t, basis),
    }
}

/// Closed-form decoherence factor of a state family as a complex number.
///
/// This is the slowly varying factor the analytic model attaches to the
/// off-diagonal structure: `F(t)` for qubits, the two-branch factor for
/// coherent superpositions, and the cat factor for parity states. The
/// latter two are complex in general; qubit and cat factors are real.
pub fn closed_form_factor(
    profile: &DecoherenceProfile,
    state: &InitialState,
    t: f64,
) -> Result<C64> {
    match *state {
        InitialState::Qubit { .. } => {
            Ok(C64::new(qubit_decoherence_factor(profile, t)?, 0.0))
        }
        InitialState::TwoCoherent { alpha1, alpha2, .. } => {
            coherent_superposition_factor(profile, alpha1, alpha2, t)
        }
        InitialState::Cat { alpha, .. } => {
            Ok(C64::new(cat_decoherence_factor(profile, alpha, t)?, 0.0))
        }
    }
}

/// Magnitude of [`closed_form_factor`].
pub fn closed_form_factor_magnitude(
    profile: &DecoherenceProfile,
    state: &InitialState,
    t: f64,
) -> Result<f64> {
    Ok(closed_form_factor(profile, state, t)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoherence::decoherence_profile;
    use crate::materials::{builtin_material, CrystalliteConfig};
    use approx::assert_relative_eq;

    fn profile() -> DecoherenceProfile {
        let cfg = CrystalliteConfig::new(builtin_material("CdS").unwrap(), 300.0).unwrap();
        decoherence_profile(&cfg)
    }

    fn half() -> C64 {
        C64::new(0.5f64.sqrt(), 0.0)
    }

    #[test]
    fn qubit_initial_state_is_pure_superposition() {
        let p = profile();
        let rho = evolve_qubit(&p, half(), half(), 0.0, FockBasis::new(3).unwrap()).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_relative_eq!(rho.entry(i, j).re, 0.5, max_relative = 1e-14);
            assert!(rho.entry(i, j).im.abs() < 1e-15);
        }
        assert_relative_eq!(rho.purity(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn qubit_at_tau_has_expected_entries() {
        let p = profile();
        let rho = evolve_qubit(&p, half(), half(), p.tau, FockBasis::new(2).unwrap()).unwrap();
        assert_relative_eq!(
            rho.coherence_magnitude(0, 1).unwrap(),
            (-1.0f64).exp() / 2.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(rho.entry(1, 1).re, (-2.0f64).exp() / 2.0, max_relative = 1e-12);
        assert_relative_eq!(rho.trace().re, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn qubit_decays_to_vacuum() {
        let p = profile();
        let rho = evolve_qubit(&p, half(), half(), 200.0 * p.tau, FockBasis::new(2).unwrap())
            .unwrap();
        assert_relative_eq!(rho.entry(0, 0).re, 1.0, max_relative = 1e-12);
        assert!(rho.coherence_magnitude(0, 1).unwrap() < 1e-30);
        assert!(rho.entry(1, 1).re < 1e-30);
    }

    #[test]
    fn qubit_offdiagonal_tracks_factor_exactly() {
        let p = profile();
        let alpha = C64::new(0.6, 0.0);
        let beta = C64::new(0.0, 0.8);
        for k in 0..25 {
            let t = k as f64 * 0.3 * p.tau;
            let rho = evolve_qubit(&p, alpha, beta, t, FockBasis::new(2).unwrap()).unwrap();
            let expected = qubit_decoherence_factor(&p, t).unwrap() * (alpha * beta.conj()).norm();
            assert!(
                (rho.coherence_magnitude(0, 1).unwrap() - expected).abs() <= 1e-12,
                "t = {t}"
            );
        }
    }

    #[test]
    fn qubit_purity_dips_and_recovers() {
        let p = profile();
        let basis = FockBasis::new(2).unwrap();
        let initial = evolve_qubit(&p, half(), half(), 0.0, basis).unwrap().purity();
        let mid = evolve_qubit(&p, half(), half(), p.tau, basis).unwrap().purity();
        let late = evolve_qubit(&p, half(), half(), 100.0 * p.tau, basis).unwrap().purity();
        // closed-form check at t = tau
        let eta: f64 = (-2.0f64).exp();
        let expected_mid = (1.0 - eta / 2.0).powi(2) + (eta / 2.0).powi(2) + 2.0 * (eta.sqrt() / 2.0).powi(2);
        assert_relative_eq!(mid, expected_mid, max_relative = 1e-12);
        assert!(initial > 1.0 - 1e-12);
        assert!(mid < 1.0 - 1e-3);
        assert!(late > 1.0 - 1e-10);
    }

    #[test]
    fn qubit_rejects_unnormalized_input() {
        let p = profile();
        let err = evolve_qubit(&p, C64::new(0.9, 0.0), C64::new(0.5, 0.0), 0.0, FockBasis::new(2).unwrap());
        assert!(err.is_err());
    }

    #[test]
    fn single_branch_stays_pure() {
        let p = profile();
        let basis = FockBasis::for_mean_occupation(4.0);
        for t in [0.0, 0.5 * p.tau, 2.0 * p.tau] {
            let ev = evolve_two_coherent(
                &p,
                C64::new(1.0, 0.0),
                C64::new(2.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(-2.0, 0.0),
                t,
                basis,
            )
            .unwrap();
            assert_relative_eq!(ev.rho.purity(), 1.0, max_relative = 1e-10);
            assert_relative_eq!(ev.rho.trace().re, 1.0, max_relative = 1e-10);
            assert_relative_eq!(ev.rescale, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn identical_branches_stay_pure() {
        let p = profile();
        let basis = FockBasis::for_mean_occupation(2.0);
        let alpha = C64::new(2.0f64.sqrt(), 0.0);
        // any C, D mixing identical branches is a pure coherent state
        let ev = evolve_two_coherent(
            &p,
            C64::new(0.3, 0.4),
            alpha,
            C64::new(0.5, -0.2),
            alpha,
            0.7 * p.tau,
            basis,
        )
        .unwrap();
        assert_relative_eq!(ev.rho.purity(), 1.0, max_relative = 1e-10);
        assert_relative_eq!(ev.rho.trace().re, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn rescale_records_input_norm() {
        let p = profile();
        let basis = FockBasis::for_mean_occupation(1.0);
        // orthogonal-ish branches, |C|^2 + |D|^2 = 8, overlap tiny but nonzero
        let ev = evolve_two_coherent(
            &p,
            C64::new(2.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(-1.0, 0.0),
            0.0,
            basis,
        )
        .unwrap();
        let overlap = (-2.0f64).exp();
        assert_relative_eq!(ev.rescale, 1.0 / (8.0 + 8.0 * overlap), max_relative = 1e-12);
        assert_relative_eq!(ev.rho.trace().re, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn cancelling_branches_are_rejected() {
        let p = profile();
        let basis = FockBasis::for_mean_occupation(1.0);
        let alpha = C64::new(1.0, 0.0);
        let err = evolve_two_coherent(
            &p,
            C64::new(1.0, 0.0),
            alpha,
            C64::new(-1.0, 0.0),
            alpha,
            0.0,
            basis,
        );
        assert!(err.is_err());
    }

    #[test]
    fn even_cat_occupies_even_levels_only() {
        let p = profile();
        let alpha = C64::new(2.0f64.sqrt(), 0.0);
        let basis = FockBasis::for_mean_occupation(2.0);
        let ev = evolve_cat(&p, alpha, Parity::Even, 0.0, basis).unwrap();
        let pops = ev.rho.populations();
        for (n, pop) in pops.iter().enumerate() {
            if n % 2 == 1 {
                assert!(pop.abs() < 1e-12, "odd level {n} populated: {pop}");
            }
        }
        assert_relative_eq!(ev.rho.trace().re, 1.0, max_relative = 1e-10);
        assert_relative_eq!(ev.rescale, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn odd_cat_has_no_vacuum_component() {
        let p = profile();
        let alpha = C64::new(2.0f64.sqrt(), 0.0);
        let basis = FockBasis::for_mean_occupation(2.0);
        let ev = evolve_cat(&p, alpha, Parity::Odd, 0.0, basis).unwrap();
        assert!(ev.rho.populations()[0].abs() < 1e-12);
        assert_relative_eq!(ev.rho.trace().re, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn even_cat_decays_to_vacuum() {
        let p = profile();
        let alpha = C64::new(2.0, 0.0);
        let basis = FockBasis::for_mean_occupation(4.0);
        let ev = evolve_cat(&p, alpha, Parity::Even, 50.0 * p.tau, basis).unwrap();
        assert_relative_eq!(ev.rho.populations()[0], 1.0, max_relative = 1e-10);
        assert_relative_eq!(ev.rho.purity(), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn parity_mixing_enters_only_through_cross_decay() {
        let p = profile();
        let alpha = C64::new(2.0f64.sqrt(), 0.0);
        let basis = FockBasis::for_mean_occupation(2.0);
        let ev = evolve_cat(&p, alpha, Parity::Even, 0.5 * p.tau, basis).unwrap();
        let pops = ev.rho.populations();
        // odd levels appear once the dyad cross weight has decayed...
        assert!(pops[1] > 1e-4);
        // ...but a single branch alone never mixes parity structure:
        let single = evolve_two_coherent(
            &p,
            C64::new(1.0, 0.0),
            alpha,
            C64::new(0.0, 0.0),
            -alpha,
            0.5 * p.tau,
            basis,
        )
        .unwrap();
        assert_relative_eq!(single.rho.purity(), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn evolved_states_satisfy_matrix_invariants() {
        let p = profile();
        let states = [
            InitialState::Qubit { alpha: half(), beta: half() },
            InitialState::Cat { alpha: C64::new(2.0, 0.0), parity: Parity::Even },
            InitialState::Cat { alpha: C64::new(2.0f64.sqrt(), 0.0), parity: Parity::Odd },
            InitialState::TwoCoherent {
                c: C64::new(0.8, 0.1),
                alpha1: C64::new(1.5, 0.5),
                d: C64::new(0.4, -0.3),
                alpha2: C64::new(-1.0, 0.2),
            },
        ];
        for state in &states {
            let basis = FockBasis::for_mean_occupation(state.max_mean_occupation());
            for k in 0..=10 {
                let t = k as f64 * 0.5 * p.tau;
                let ev = evolve_initial_state(&p, state, t, basis).unwrap();
                assert!(ev.rho.hermiticity_deviation() <= 1e-12);
                assert!(ev.rho.min_eigenvalue() >= -1e-10);
                assert!((ev.rho.trace().re - 1.0).abs() <= 1e-10);
                assert!(ev.rho.trace().im.abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn basis_growth_leaves_observables_unchanged() {
        let p = profile();
        let state = InitialState::Cat { alpha: C64::new(2.0, 0.0), parity: Parity::Even };
        let small = FockBasis::for_mean_occupation(4.0);
        let large = FockBasis::new(small.n_max() + 10).unwrap();
        for k in 0..=5 {
            let t = k as f64 * p.tau;
            let a = evolve_initial_state(&p, &state, t, small).unwrap();
            let b = evolve_initial_state(&p, &state, t, large).unwrap();
            assert!((a.rho.purity() - b.rho.purity()).abs() < 1e-8);
            let pa = a.rho.populations();
            let pb = b.rho.populations();
            for n in 0..pa.len() {
                assert!((pa[n] - pb[n]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn cat_normalizations() {
        let alpha = C64::new(2.0f64.sqrt(), 0.0);
        let overlap = (-4.0f64).exp();
        assert_relative_eq!(
            cat_normalization(alpha, Parity::Even),
            (2.0 + 2.0 * overlap).powf(-0.5),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            cat_normalization(alpha, Parity::Odd),
            (2.0 - 2.0 * overlap).powf(-0.5),
            max_relative = 1e-14
        );
    }
}
