//! Cross-checks between the closed-form state engine and the two numerical
//! oracles at physical parameters.

use excidec::decoherence::{decoherence_profile, dyad_overlap_factor};
use excidec::fock::FockBasis;
use excidec::materials::{builtin_material, CrystalliteConfig};
use excidec::oracle::{
    build_mode_grid, dyad_weights, fit_decay_rate_windowed, integrate_lindblad,
    simulate_single_excitation, LindbladSpec, ModeGrid,
};
use excidec::states::{cat_normalization, evolve_cat, evolve_qubit, Parity};
use excidec::DecoherenceProfile;
use num_complex::Complex64 as C64;

fn cds_profile() -> DecoherenceProfile {
    let cfg = CrystalliteConfig::new(builtin_material("CdS").unwrap(), 300.0).unwrap();
    decoherence_profile(&cfg)
}

fn sample_times(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

#[test]
fn lindblad_matches_qubit_closed_form() {
    let p = cds_profile();
    let basis = FockBasis::new(5).unwrap();
    let s = 0.5f64.sqrt();
    let rho0 = evolve_qubit(&p, C64::new(s, 0.0), C64::new(s, 0.0), 0.0, basis).unwrap();
    let times = sample_times(5.0 * p.tau, 50);
    let spec = LindbladSpec {
        basis,
        omega: p.omega,
        gamma_pop: p.gamma_pop,
        t_max: 5.0 * p.tau,
        rtol: 1e-9,
        atol: 1e-12,
    };
    let series = integrate_lindblad(&spec, &rho0, &times).unwrap();
    let mut worst = 0.0f64;
    for (t, rho_num) in times.iter().zip(&series) {
        let rho_cf = evolve_qubit(&p, C64::new(s, 0.0), C64::new(s, 0.0), *t, basis).unwrap();
        worst = worst.max(rho_num.max_elementwise_diff(&rho_cf).unwrap());
        assert!((rho_num.trace().re - 1.0).abs() < 1e-9);
    }
    assert!(worst <= 1e-6, "max elementwise deviation {worst:.3e}");
}

#[test]
fn lindblad_matches_cat_closed_form() {
    let p = cds_profile();
    let alpha = C64::new(2.0f64.sqrt(), 0.0);
    let basis = FockBasis::for_mean_occupation(alpha.norm_sqr());
    let rho0 = evolve_cat(&p, alpha, Parity::Even, 0.0, basis).unwrap().rho;
    let times = sample_times(5.0 * p.tau, 50);
    let spec = LindbladSpec {
        basis,
        omega: p.omega,
        gamma_pop: p.gamma_pop,
        t_max: 5.0 * p.tau,
        rtol: 1e-9,
        atol: 1e-12,
    };
    let series = integrate_lindblad(&spec, &rho0, &times).unwrap();
    let mut worst = 0.0f64;
    for (t, rho_num) in times.iter().zip(&series) {
        let rho_cf = evolve_cat(&p, alpha, Parity::Even, *t, basis).unwrap().rho;
        worst = worst.max(rho_num.max_elementwise_diff(&rho_cf).unwrap());
    }
    assert!(worst <= 1e-6, "max elementwise deviation {worst:.3e}");

    // At t = tau the cat is genuinely mixed but far above the overlap floor,
    // and engine and oracle agree on how mixed.
    let idx = times.iter().position(|&t| t >= p.tau).unwrap();
    let purity_cf = evolve_cat(&p, alpha, Parity::Even, times[idx], basis)
        .unwrap()
        .rho
        .purity();
    let purity_num = series[idx].purity();
    assert!(purity_cf > (-8.0f64).exp() && purity_cf < 1.0 - 1e-3);
    assert!((purity_cf - purity_num).abs() <= 1e-6);
}

#[test]
fn lindblad_matches_general_two_coherent_superposition() {
    // Fully asymmetric complex weights and branch amplitudes; also checks
    // trace preservation along the integrated trajectory.
    let p = cds_profile();
    let c = C64::new(0.7, 0.3);
    let a1 = C64::new(1.3, -0.4);
    let d = C64::new(-0.2, 0.55);
    let a2 = C64::new(-0.9, 0.8);
    let basis = FockBasis::for_mean_occupation(a1.norm_sqr().max(a2.norm_sqr()));
    let rho0 = excidec::states::evolve_two_coherent(&p, c, a1, d, a2, 0.0, basis)
        .unwrap()
        .rho;
    let times = sample_times(5.0 * p.tau, 40);
    let spec = LindbladSpec {
        basis,
        omega: p.omega,
        gamma_pop: p.gamma_pop,
        t_max: 5.0 * p.tau,
        rtol: 1e-9,
        atol: 1e-12,
    };
    let series = integrate_lindblad(&spec, &rho0, &times).unwrap();
    let mut worst = 0.0f64;
    let mut worst_trace = 0.0f64;
    for (t, rho_num) in times.iter().zip(&series) {
        let rho_cf = excidec::states::evolve_two_coherent(&p, c, a1, d, a2, *t, basis)
            .unwrap()
            .rho;
        worst = worst.max(rho_num.max_elementwise_diff(&rho_cf).unwrap());
        worst_trace = worst_trace.max((rho_num.trace().re - 1.0).abs());
    }
    assert!(worst <= 1e-6, "max elementwise deviation {worst:.3e}");
    assert!(worst_trace <= 1e-9, "trace drift {worst_trace:.3e}");
}

#[test]
fn lindblad_dyad_weight_tracks_overlap_factor() {
    // The off-diagonal dyad weight of an integrated cat state must follow
    // the radiation-overlap factor to 1e-5 relative out to 3 tau_cat.
    let p = cds_profile();
    let alpha = C64::new(2.0f64.sqrt(), 0.0);
    let nbar = alpha.norm_sqr();
    let basis = FockBasis::for_mean_occupation(nbar);
    let n_plus = cat_normalization(alpha, Parity::Even);
    let rho0 = evolve_cat(&p, alpha, Parity::Even, 0.0, basis).unwrap().rho;
    let tau_cat = p.tau / (2.0 * nbar);
    let times = sample_times(3.0 * tau_cat, 16);
    let spec = LindbladSpec {
        basis,
        omega: p.omega,
        gamma_pop: p.gamma_pop,
        t_max: 3.0 * tau_cat,
        rtol: 1e-10,
        atol: 1e-13,
    };
    let series = integrate_lindblad(&spec, &rho0, &times).unwrap();
    for (t, rho_num) in times.iter().zip(&series) {
        let u = excidec::decoherence::exciton_amplitude_factor(&p, *t).unwrap();
        let w = dyad_weights(rho_num, u * alpha, -u * alpha, basis).unwrap();
        let expected = n_plus * n_plus * dyad_overlap_factor(&p, alpha, -alpha, *t).unwrap();
        let rel = (w[0][1] - expected).norm() / expected.norm();
        assert!(rel <= 1e-5, "t/tau_cat = {}: rel = {rel:.3e}", t / tau_cat);
    }
}

#[test]
fn microscopic_decay_rate_matches_amplitude_rate() {
    // Scaled-parameter single-excitation run: the fitted decay of |c(t)|
    // reproduces gamma_amp = gamma_pop / 2 well within the 5% gate.
    let gamma_pop = 2.0;
    let gamma_amp = 1.0;
    let grid = ModeGrid::flat(gamma_pop, 100.0 * gamma_pop, 1600);
    let series = simulate_single_excitation(&grid, 3.2 / gamma_amp, 161).unwrap();
    let mags = series.exciton_magnitudes();
    let fit = fit_decay_rate_windowed(
        &series.times,
        &mags,
        0.5 / gamma_amp,
        3.0 / gamma_amp,
    )
    .unwrap();
    let rel = (fit.rate - gamma_amp).abs() / gamma_amp;
    assert!(rel < 0.05, "fitted {} vs {gamma_amp} ({rel:.3})", fit.rate);
    for k in 0..series.times.len() {
        assert!((series.norm_sq(k) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn mode_grid_guards_reject_bad_requests() {
    let p = cds_profile();
    assert!(build_mode_grid(&p, 50, 100.0).is_err());
    assert!(build_mode_grid(&p, 2000, 10.0).is_err());
    // 100 modes passes the floor but fails the recurrence guard at this
    // bandwidth: recurrence = pi / (2 gamma_pop) < 5 / gamma_amp.
    assert!(build_mode_grid(&p, 100, 100.0).is_err());
    let grid = build_mode_grid(&p, 2000, 100.0).unwrap();
    assert!(grid.recurrence_time() > 5.0 / p.gamma_amp);
    let rel = (grid.fermi_golden_rule_rate() - p.gamma_pop).abs() / p.gamma_pop;
    assert!(rel < 1e-12);
}
