//! Command-line front end: material inspection, single-configuration
//! profiles, radius sweeps, density-matrix time series, oracle verification
//! runs, and SVG plots of emitted CSVs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use excidec::states::{InitialState, Parity};

use excidec_cli::commands::{self, CliError, CmdResult};
use excidec_cli::complexarg::parse_complex;

#[derive(Parser)]
#[command(
    name = "excidec",
    version,
    about = "Size-dependent spontaneous-emission decoherence of excitons in \
             spherical semiconductor microcrystallites",
    after_help = "Exit codes: 0 success/pass, 1 verification fail, 2 input error, \
                  3 I/O error, 4 numerical failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MaterialArgs {
    /// Built-in material name (CdS or GaAs), case insensitive.
    #[arg(long)]
    material: Option<String>,
    /// Material parameter file (key = value format).
    #[arg(long, value_name = "PATH", conflicts_with = "material")]
    material_file: Option<PathBuf>,
}

impl MaterialArgs {
    fn resolve(&self) -> Result<excidec::Material, CliError> {
        commands::resolve_material(self.material.as_deref(), self.material_file.as_deref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in materials and their parameters.
    Materials,
    /// Print every derived scalar for one crystallite configuration.
    Profile {
        #[command(flatten)]
        material: MaterialArgs,
        /// Crystallite radius R0 in Angstrom.
        #[arg(long)]
        radius: f64,
    },
    /// Sweep the characteristic time over a radius range (CSV).
    SweepTau {
        #[command(flatten)]
        material: MaterialArgs,
        #[arg(long)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Sweep cat-state characteristic times over a radius range (CSV).
    SweepCat {
        #[command(flatten)]
        material: MaterialArgs,
        #[arg(long)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(long)]
        steps: usize,
        /// Comma-separated list of mean exciton numbers |alpha|^2.
        #[arg(long, value_name = "LIST")]
        nbar: String,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Evolve an initial state and dump a CSV time series.
    Evolve {
        #[command(flatten)]
        material: MaterialArgs,
        /// Crystallite radius R0 in Angstrom.
        #[arg(long)]
        radius: f64,
        /// End of the time window in seconds (default 5 tau).
        #[arg(long)]
        tmax: Option<f64>,
        /// Number of sample times.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Fock-basis truncation override.
        #[arg(long)]
        nmax: Option<usize>,
        /// Number of population columns p0..p{K-1}.
        #[arg(long)]
        pops: Option<usize>,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Also dump the final-time density matrix (row,col,re,im CSV).
        #[arg(long, value_name = "PATH")]
        dump_matrix: Option<PathBuf>,
        #[command(subcommand)]
        state: StateCommand,
    },
    /// Run a numerical oracle against the closed forms.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Render CSV columns as a deterministic SVG line plot.
    Plot {
        /// Input CSV (repeat to overlay several files).
        #[arg(long, value_name = "PATH", required = true)]
        csv: Vec<PathBuf>,
        /// Comma-separated column names: x first, then one or more y.
        #[arg(long, value_name = "LIST")]
        columns: String,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Logarithmic y axis.
        #[arg(long)]
        log_y: bool,
    },
}

#[derive(Subcommand)]
enum StateCommand {
    /// alpha |0> + beta |1>
    Qubit {
        /// Complex amplitude of |0>, e.g. `0.7071+0i`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Complex amplitude of |1>.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Even or odd coherent-state superposition N(|alpha> +/- |-alpha>).
    Cat {
        /// Coherent amplitude alpha.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// `even` or `odd`.
        #[arg(long)]
        parity: String,
    },
    /// C |alpha1> + D |alpha2> (rescaled to unit trace internally).
    TwoCoherent {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha1: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha2: String,
    },
}

impl StateCommand {
    fn to_state(&self) -> Result<InitialState, CliError> {
        let parse = |s: &str| parse_complex(s).map_err(CliError::input);
        match self {
            StateCommand::Qubit { alpha, beta } => Ok(InitialState::Qubit {
                alpha: parse(alpha)?,
                beta: parse(beta)?,
            }),
            StateCommand::Cat { alpha, parity } => {
                let parity = match parity.to_ascii_lowercase().as_str() {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    other => {
                        return Err(CliError::input(format!(
                            "parity must be `even` or `odd`, got `{other}`"
                        )))
                    }
                };
                Ok(InitialState::Cat {
                    alpha: parse(alpha)?,
                    parity,
                })
            }
            StateCommand::TwoCoherent { c, alpha1, d, alpha2 } => Ok(InitialState::TwoCoherent {
                c: parse(c)?,
                alpha1: parse(alpha1)?,
                d: parse(d)?,
                alpha2: parse(alpha2)?,
            }),
        }
    }
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Master-equation integration vs the closed-form state engine.
    Lindblad {
        #[command(flatten)]
        material: MaterialArgs,
        #[arg(long)]
        radius: f64,
        /// Fock-basis truncation override.
        #[arg(long)]
        nmax: Option<usize>,
        /// Sample times across [0, 5 tau].
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Optional CSV report (t, value, reference, abs_err).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Discretized multimode decay vs the closed-form amplitude rate.
    WignerWeisskopf {
        #[command(flatten)]
        material: MaterialArgs,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 2000)]
        n_modes: usize,
        /// Band half-width in units of Gamma_pop.
        #[arg(long, default_value_t = 100.0)]
        bandwidth_factor: f64,
        /// Optional CSV report (t, value, reference, abs_err).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn parse_nbar_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .map_err(|_| CliError::input(format!("cannot parse `{tok}` in --nbar list")))
        })
        .collect()
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Materials => commands::cmd_materials(),
        Command::Profile { material, radius } => {
            commands::cmd_profile(material.resolve()?, radius)
        }
        Command::SweepTau { material, rmin, rmax, steps, out } => {
            commands::cmd_sweep_tau(material.resolve()?, rmin, rmax, steps, out)
        }
        Command::SweepCat { material, rmin, rmax, steps, nbar, out } => {
            let nbars = parse_nbar_list(&nbar)?;
            commands::cmd_sweep_cat(material.resolve()?, rmin, rmax, steps, &nbars, out)
        }
        Command::Evolve {
            material,
            radius,
            tmax,
            samples,
            nmax,
            pops,
            out,
            dump_matrix,
            state,
        } => commands::cmd_evolve(
            material.resolve()?,
            radius,
            state.to_state()?,
            tmax,
            samples,
            nmax,
            pops,
            out,
            dump_matrix,
        ),
        Command::Verify { which } => match which {
            VerifyCommand::Lindblad { material, radius, nmax, samples, out } => {
                commands::cmd_verify_lindblad(material.resolve()?, radius, nmax, samples, out)
            }
            VerifyCommand::WignerWeisskopf {
                material,
                radius,
                n_modes,
                bandwidth_factor,
                out,
            } => commands::cmd_verify_wigner_weisskopf(
                material.resolve()?,
                radius,
                n_modes,
                bandwidth_factor,
                out,
            ),
        },
        Command::Plot { csv, columns, out, log_y } => {
            commands::cmd_plot(&csv, &columns, out, log_y)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
