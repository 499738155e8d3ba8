//! Implementations of the CLI subcommands.
//!
//! Exit-code contract: 0 success / verification pass, 1 verification fail,
//! 2 input error, 3 I/O error, 4 numerical failure.

use std::path::{Path, PathBuf};
use std::time::Instant;

use excidec::decoherence::decoherence_profile;
use excidec::fock::FockBasis;
use excidec::materials::{
    builtin_material, builtin_materials, check_validity, load_material, CrystalliteConfig,
    Material,
};
use excidec::oracle::{
    build_mode_grid, fit_decay_rate_windowed, integrate_lindblad, simulate_single_excitation,
    LindbladSpec,
};
use excidec::states::{closed_form_factor, evolve_initial_state, InitialState, Parity};
use excidec::Error;
use num_complex::Complex64 as C64;

use crate::csvio::{self, RunManifest};
use crate::svg::{self, Series};

pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

const LINDBLAD_TOLERANCE: f64 = 1e-6;
const WW_RATE_TOLERANCE: f64 = 0.05;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Integration { .. } | Error::Fit(_) => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

pub type CmdResult = Result<i32, CliError>;

/// Resolve a material from `--material` or `--material-file`.
pub fn resolve_material(
    name: Option<&str>,
    file: Option<&Path>,
) -> Result<Material, CliError> {
    match (name, file) {
        (_, Some(path)) => Ok(load_material(path)?),
        (Some(n), None) => builtin_material(n).ok_or_else(|| {
            let names: Vec<String> =
                builtin_materials().into_iter().map(|m| m.name).collect();
            CliError::input(format!(
                "unknown material `{n}`; built-in materials: {} (or pass --material-file)",
                names.join(", ")
            ))
        }),
        (None, None) => Err(CliError::input(
            "specify a material with --material or --material-file",
        )),
    }
}

fn config(material: Material, radius: f64) -> Result<CrystalliteConfig, CliError> {
    Ok(CrystalliteConfig::new(material, radius)?)
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect()
}

fn format_nbar(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

pub fn cmd_materials() -> CmdResult {
    for m in builtin_materials() {
        println!("{m}");
    }
    Ok(0)
}

pub fn cmd_profile(material: Material, radius: f64) -> CmdResult {
    let cfg = config(material, radius)?;
    let p = decoherence_profile(&cfg);
    let report = check_validity(&cfg);
    println!("material              {}", cfg.material.name);
    println!("R0                    {} A", cfg.r0);
    println!("hbar*Omega            {:.10} eV", p.hbar_omega);
    println!("Omega                 {:.6e} 1/s", p.omega);
    println!("lambda                {:.4} A", p.lambda);
    println!("gamma_s               {:.6e} 1/s", p.gamma_s);
    println!("Gamma_amp             {:.6e} 1/s", p.gamma_amp);
    println!("Gamma_pop             {:.6e} 1/s", p.gamma_pop);
    println!("tau                   {:.6e} s  ({:.4} ps)", p.tau, p.tau * 1e12);
    println!("superradiance factor  {:.6e}", p.superradiance_factor);
    println!("R0 / a_B              {:.4}", report.ratio_r0_over_a_bohr);
    println!("R0 / lambda           {:.4}", report.ratio_r0_over_lambda);
    println!("regime_ok             {}", report.regime_ok);
    for msg in &report.messages {
        println!("warning: {msg}");
    }
    Ok(0)
}

fn check_sweep_bounds(rmin: f64, rmax: f64, steps: usize) -> Result<(), CliError> {
    if rmin.is_nan() || rmax.is_nan() || rmin <= 0.0 || rmax <= rmin {
        return Err(CliError::input(format!(
            "need 0 < rmin < rmax, got rmin = {rmin}, rmax = {rmax}"
        )));
    }
    if steps < 2 {
        return Err(CliError::input(format!("need at least 2 steps, got {steps}")));
    }
    Ok(())
}

pub fn cmd_sweep_tau(
    material: Material,
    rmin: f64,
    rmax: f64,
    steps: usize,
    out: PathBuf,
) -> CmdResult {
    check_sweep_bounds(rmin, rmax, steps)?;
    let manifest = RunManifest::new(Some(material.clone()));
    let headers: Vec<String> = [
        "R0_angstrom",
        "tau_s",
        "gamma_amp_per_s",
        "hbar_omega_eV",
        "lambda_angstrom",
        "regime_ok",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut rows = Vec::with_capacity(steps);
    for r0 in linspace(rmin, rmax, steps) {
        let cfg = config(material.clone(), r0)?;
        let p = decoherence_profile(&cfg);
        let ok = check_validity(&cfg).regime_ok;
        rows.push(vec![
            r0,
            p.tau,
            p.gamma_amp,
            p.hbar_omega,
            p.lambda,
            if ok { 1.0 } else { 0.0 },
        ]);
    }
    write_file(&out, &csvio::render_csv(&manifest, &[], &headers, &rows))?;
    println!("wrote {} ({} rows)", out.display(), rows.len());
    Ok(0)
}

pub fn cmd_sweep_cat(
    material: Material,
    rmin: f64,
    rmax: f64,
    steps: usize,
    nbars: &[f64],
    out: PathBuf,
) -> CmdResult {
    check_sweep_bounds(rmin, rmax, steps)?;
    if nbars.is_empty() {
        return Err(CliError::input("--nbar list must not be empty"));
    }
    if let Some(bad) = nbars.iter().find(|&&n| n.is_nan() || n <= 0.0) {
        return Err(CliError::input(format!(
            "every |alpha|^2 must be positive, got {bad}"
        )));
    }
    let manifest = RunManifest::new(Some(material.clone()));
    let mut headers = vec!["R0_angstrom".to_string()];
    for &nbar in nbars {
        headers.push(format!("tau_cat_s_nbar_{}", format_nbar(nbar)));
    }
    let mut rows = Vec::with_capacity(steps);
    for r0 in linspace(rmin, rmax, steps) {
        let cfg = config(material.clone(), r0)?;
        let p = decoherence_profile(&cfg);
        let mut row = vec![r0];
        for &nbar in nbars {
            row.push(p.tau / (2.0 * nbar));
        }
        rows.push(row);
    }
    write_file(&out, &csvio::render_csv(&manifest, &[], &headers, &rows))?;
    println!("wrote {} ({} rows)", out.display(), rows.len());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_evolve(
    material: Material,
    radius: f64,
    state: InitialState,
    t_max: Option<f64>,
    samples: usize,
    n_max: Option<usize>,
    pops: Option<usize>,
    out: PathBuf,
    dump_matrix: Option<PathBuf>,
) -> CmdResult {
    if samples < 2 {
        return Err(CliError::input(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let cfg = config(material.clone(), radius)?;
    let p = decoherence_profile(&cfg);
    let t_max = t_max.unwrap_or(5.0 * p.tau);
    if t_max.is_nan() || t_max <= 0.0 {
        return Err(CliError::input(format!("t_max must be positive, got {t_max}")));
    }
    let basis = match n_max {
        Some(n) => FockBasis::new(n)?,
        None => FockBasis::for_mean_occupation(state.max_mean_occupation()),
    };
    let n_pops = pops.unwrap_or(9).min(basis.dim());

    let mut headers = vec![
        "t_s".to_string(),
        "t_over_tau".to_string(),
        "F_magnitude".to_string(),
        "F_phase_rad".to_string(),
        "purity".to_string(),
    ];
    for k in 0..n_pops {
        headers.push(format!("p{k}"));
    }
    headers.push("trace_check".to_string());

    let mut rows = Vec::with_capacity(samples);
    let mut rescale = 1.0;
    for t in linspace(0.0, t_max, samples) {
        let ev = evolve_initial_state(&p, &state, t, basis)?;
        rescale = ev.rescale;
        let factor = closed_form_factor(&p, &state, t)?;
        let mut row = vec![t, t * p.gamma_amp, factor.norm(), factor.arg(), ev.rho.purity()];
        let populations = ev.rho.populations();
        row.extend(populations.iter().take(n_pops).copied());
        row.push(ev.rho.trace().re);
        rows.push(row);
    }

    let manifest = RunManifest::new(Some(material));
    let mut extra = vec![
        format!("state = {state:?}"),
        format!("n_max = {}", basis.n_max()),
        format!("tau_s = {}", csvio::format_value(p.tau)),
        format!("rescale = {}", csvio::format_value(rescale)),
    ];
    if let InitialState::Cat { alpha, .. } = state {
        let tau_cat = excidec::decoherence::cat_characteristic_time(&p, alpha)?;
        extra.push(format!("tau_cat_s = {}", csvio::format_value(tau_cat)));
        if let Some(exact) = excidec::decoherence::cat_characteristic_time_exact(&p, alpha) {
            extra.push(format!("tau_cat_exact_s = {}", csvio::format_value(exact)));
        }
    }
    write_file(&out, &csvio::render_csv(&manifest, &extra, &headers, &rows))?;
    println!("wrote {} ({} rows)", out.display(), rows.len());

    if let Some(path) = dump_matrix {
        let ev = evolve_initial_state(&p, &state, t_max, basis)?;
        let mut body = Vec::new();
        ev.rho.write_csv(&mut body).map_err(|e| CliError {
            code: EXIT_IO,
            message: format!("cannot serialize matrix: {e}"),
        })?;
        let mut doc = manifest.header();
        doc.push_str(&format!("# t_s = {}\n", csvio::format_value(t_max)));
        doc.push_str(&String::from_utf8_lossy(&body));
        write_file(&path, &doc)?;
        println!("wrote {} ({}x{} matrix)", path.display(), basis.dim(), basis.dim());
    }
    Ok(0)
}

fn verification_battery() -> Vec<(&'static str, InitialState)> {
    let s = 0.5f64.sqrt();
    vec![
        (
            "qubit",
            InitialState::Qubit {
                alpha: C64::new(s, 0.0),
                beta: C64::new(s, 0.0),
            },
        ),
        (
            "even-cat-nbar2",
            InitialState::Cat {
                alpha: C64::new(2.0f64.sqrt(), 0.0),
                parity: Parity::Even,
            },
        ),
        (
            "odd-cat-nbar2",
            InitialState::Cat {
                alpha: C64::new(2.0f64.sqrt(), 0.0),
                parity: Parity::Odd,
            },
        ),
        (
            "even-cat-nbar4",
            InitialState::Cat {
                alpha: C64::new(2.0, 0.0),
                parity: Parity::Even,
            },
        ),
        (
            "odd-cat-nbar4",
            InitialState::Cat {
                alpha: C64::new(2.0, 0.0),
                parity: Parity::Odd,
            },
        ),
    ]
}

/// Compare integrated master-equation trajectories against the closed-form
/// engine for the standard state battery.
pub fn cmd_verify_lindblad(
    material: Material,
    radius: f64,
    n_max: Option<usize>,
    samples: usize,
    out: Option<PathBuf>,
) -> CmdResult {
    let cfg = config(material.clone(), radius)?;
    let p = decoherence_profile(&cfg);
    let t_max = 5.0 * p.tau;
    let times = linspace(0.0, t_max, samples.max(2));
    let mut all_pass = true;
    let mut qubit_rows: Vec<Vec<f64>> = Vec::new();

    for (name, state) in verification_battery() {
        let basis = match n_max {
            Some(n) => FockBasis::new(n)?,
            None => FockBasis::for_mean_occupation(state.max_mean_occupation()),
        };
        let spec = LindbladSpec {
            basis,
            omega: p.omega,
            gamma_pop: p.gamma_pop,
            t_max,
            rtol: 1e-9,
            atol: 1e-12,
        };
        let rho0 = evolve_initial_state(&p, &state, 0.0, basis)?.rho;
        let started = Instant::now();
        let series = integrate_lindblad(&spec, &rho0, &times)?;
        let mut max_dev = 0.0f64;
        for (t, rho_num) in times.iter().zip(&series) {
            let rho_cf = evolve_initial_state(&p, &state, *t, basis)?.rho;
            max_dev = max_dev.max(rho_num.max_elementwise_diff(&rho_cf)?);
            if matches!(state, InitialState::Qubit { .. }) {
                let value = rho_num.coherence_magnitude(0, 1)?;
                let reference = rho_cf.coherence_magnitude(0, 1)?;
                qubit_rows.push(vec![*t, value, reference, (value - reference).abs()]);
            }
        }
        let pass = max_dev <= LINDBLAD_TOLERANCE;
        all_pass &= pass;
        println!(
            "VERIFY lindblad case={name} material={} R0={radius} n_max={} max_dev={:.3e} tol={LINDBLAD_TOLERANCE:.1e} elapsed_s={:.2} result={}",
            material.name,
            basis.n_max(),
            max_dev,
            started.elapsed().as_secs_f64(),
            if pass { "PASS" } else { "FAIL" },
        );
    }

    if let Some(path) = out {
        let manifest = RunManifest::new(Some(material.clone()));
        let headers: Vec<String> = ["t_s", "value", "reference", "abs_err"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let extra = vec!["value = |rho_01| of the integrated qubit case".to_string()];
        write_file(&path, &csvio::render_csv(&manifest, &extra, &headers, &qubit_rows))?;
        println!("wrote {}", path.display());
    }

    println!(
        "VERIFY lindblad material={} R0={radius} overall={}",
        material.name,
        if all_pass { "PASS" } else { "FAIL" }
    );
    Ok(if all_pass { 0 } else { EXIT_VERIFY_FAIL })
}

/// Check the microscopic multimode simulation against the closed-form
/// amplitude decay rate.
pub fn cmd_verify_wigner_weisskopf(
    material: Material,
    radius: f64,
    n_modes: usize,
    bandwidth_factor: f64,
    out: Option<PathBuf>,
) -> CmdResult {
    let cfg = config(material.clone(), radius)?;
    let p = decoherence_profile(&cfg);
    let grid = build_mode_grid(&p, n_modes, bandwidth_factor)?;
    let t_max = 3.2 / p.gamma_amp;
    let started = Instant::now();
    let series = simulate_single_excitation(&grid, t_max, 161)?;
    let mags = series.exciton_magnitudes();
    let fit = fit_decay_rate_windowed(&series.times, &mags, 0.5 / p.gamma_amp, 3.0 / p.gamma_amp)?;
    let rel_dev = (fit.rate - p.gamma_amp).abs() / p.gamma_amp;
    let pass = rel_dev <= WW_RATE_TOLERANCE;

    if let Some(path) = out {
        let manifest = RunManifest::new(Some(material.clone()));
        let headers: Vec<String> = ["t_s", "value", "reference", "abs_err"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let extra = vec!["value = |c(t)| of the exciton amplitude".to_string()];
        let rows: Vec<Vec<f64>> = series
            .times
            .iter()
            .zip(&mags)
            .map(|(&t, &m)| {
                let reference = (-p.gamma_amp * t).exp();
                vec![t, m, reference, (m - reference).abs()]
            })
            .collect();
        write_file(&path, &csvio::render_csv(&manifest, &extra, &headers, &rows))?;
        println!("wrote {}", path.display());
    }

    println!(
        "VERIFY wigner-weisskopf material={name} R0={radius} n_modes={n_modes} \
         bandwidth_factor={bandwidth_factor} fitted_rate={rate:.6e} gamma_amp={gamma:.6e} \
         rel_dev={rel_dev:.3e} tol={WW_RATE_TOLERANCE:.1e} residual_rms={rms:.3e} \
         elapsed_s={elapsed:.2} result={result}",
        name = material.name,
        rate = fit.rate,
        gamma = p.gamma_amp,
        rms = fit.residual_rms,
        elapsed = started.elapsed().as_secs_f64(),
        result = if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { 0 } else { EXIT_VERIFY_FAIL })
}

pub fn cmd_plot(
    csv_paths: &[PathBuf],
    columns: &str,
    out: PathBuf,
    log_y: bool,
) -> CmdResult {
    if csv_paths.is_empty() {
        return Err(CliError::input("pass at least one --csv input"));
    }
    let names: Vec<&str> = columns.split(',').map(str::trim).collect();
    if names.len() < 2 {
        return Err(CliError::input(
            "--columns needs an x column and at least one y column (comma separated)",
        ));
    }
    let x_name = names[0];
    let mut series = Vec::new();
    for path in csv_paths {
        let text = std::fs::read_to_string(path).map_err(|e| CliError {
            code: EXIT_IO,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        let table = csvio::parse_csv(&text).map_err(CliError::input)?;
        if table.rows.is_empty() {
            return Err(CliError::input(format!(
                "{} contains no data rows",
                path.display()
            )));
        }
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_else(|| path.display().to_string());
        let xs = table.column(x_name).ok_or_else(|| {
            CliError::input(format!("{}: missing column `{x_name}`", path.display()))
        })?;
        for y_name in &names[1..] {
            let ys = table.column(y_name).ok_or_else(|| {
                CliError::input(format!("{}: missing column `{y_name}`", path.display()))
            })?;
            series.push(Series {
                label: format!("{stem}:{y_name}"),
                points: xs.iter().copied().zip(ys).collect(),
            });
        }
    }
    // Only data-determining inputs go into the header, so rendering the same
    // tables to different destinations stays byte-identical.
    let comment = format!(
        "excidec {} constants_sha256={} columns={columns} log_y={log_y}",
        env!("CARGO_PKG_VERSION"),
        csvio::constants_hash(),
    );
    let y_label = names[1..].join(", ");
    let svg = svg::render_line_plot(&series, x_name, &y_label, log_y, &comment)
        .map_err(CliError::input)?;
    write_file(&out, &svg)?;
    println!("wrote {}", out.display());
    Ok(0)
}
