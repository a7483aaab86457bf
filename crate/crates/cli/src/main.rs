//! Command-line front end: generate family states, analyze state files, run
//! parameter sweeps to CSV, and compare D-correlations.
//!
//! Exit codes: 0 success, 1 validation error (including bad arguments and
//! invalid state files), 2 I/O error, 3 domain error (parameter outside a
//! family's domain or an unsupported dimension).

use clap::{Parser, Subcommand, ValueEnum};
use qcorr::bipartite::Side;
use qcorr::correlations::{CorrelationReport, DOrdering, FamilySpec, compare_d, default_marginal_tol};
use qcorr::discord::{OptimizerConfig, discord};
use qcorr::error::Error;
use qcorr::io::{load_state_with, save_state};
use qcorr::sweep::{SweepConfig, family_state, run_sweep, write_csv};
use qcorr::tol::Tolerances;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Correlation analysis for bipartite quantum states")]
struct Cli {
    /// Base seed for the measurement-basis search.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Restarts for the measurement-basis search.
    #[arg(long, global = true, default_value_t = 32)]
    restarts: usize,

    /// Override every state-validation tolerance with one value.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Spectrum-parameterized circulant family on d⊗d (d ≥ 3).
    Horodecki,
    /// Positive-ratio Bell-type family on 3⊗3.
    BellEps,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family state and write it to a JSON file.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Local dimension (horodecki only; bell-eps is fixed at 3).
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Family parameter.
        #[arg(long)]
        param: f64,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Read a state file and print its correlation report as key=value lines.
    Analyze {
        /// State file (JSON).
        state_path: PathBuf,
        /// Also estimate discord on both sides (slower).
        #[arg(long)]
        discord: bool,
    },
    /// Sweep a family parameter and emit one CSV row per grid point.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        /// Local dimension (horodecki only; bell-eps is fixed at 3).
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Grid start (inclusive).
        #[arg(long)]
        min: f64,
        /// Grid end (inclusive).
        #[arg(long)]
        max: f64,
        /// Number of grid points (at least 2).
        #[arg(long)]
        steps: usize,
        /// Add symmetric-discord columns (slower).
        #[arg(long)]
        discord: bool,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the D-correlation of two states with matching marginals.
    Compare {
        path_a: PathBuf,
        path_b: PathBuf,
    },
}

fn family_spec(family: Family, d: usize) -> Result<FamilySpec, Error> {
    match family {
        Family::Horodecki => Ok(FamilySpec::Horodecki { d }),
        Family::BellEps => {
            if d != 3 {
                return Err(Error::BadDimension {
                    d,
                    reason: "the bell-eps family is defined on 3⊗3".into(),
                });
            }
            Ok(FamilySpec::BellEps)
        }
    }
}

fn optimizer(seed: u64, restarts: usize) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed,
        ..OptimizerConfig::default()
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let tolerances = cli
        .tol
        .map(Tolerances::uniform)
        .unwrap_or_default();
    match cli.command {
        Command::Gen {
            family,
            d,
            param,
            out,
        } => {
            let spec = family_spec(family, d)?;
            let state = family_state(spec, param)?;
            save_state(&out, &state)?;
            Ok(())
        }
        Command::Analyze {
            state_path,
            discord: with_discord,
        } => {
            let state = load_state_with(&state_path, &tolerances)?;
            let report = CorrelationReport::compute(&state)?;
            let (d_h, d_k) = state.dims();
            println!("d_h={d_h}");
            println!("d_k={d_k}");
            println!("S_theta={}", report.s_theta);
            println!("S_rho={}", report.s_rho);
            println!("S_sigma={}", report.s_sigma);
            println!("I={}", report.mutual);
            println!("cond_given_H={}", report.cond_given_h);
            println!("cond_given_K={}", report.cond_given_k);
            println!("D={}", report.d_corr);
            println!("ppt={}", report.ppt);
            println!("ppt_margin={}", report.ppt_margin);
            if with_discord {
                let cfg = optimizer(cli.seed, cli.restarts);
                let d_on_h = discord(&state, Side::H, &cfg)?;
                let d_on_k = discord(&state, Side::K, &cfg)?;
                println!("D_H={d_on_h}");
                println!("D_K={d_on_k}");
                println!("D_sym={}", 0.5 * (d_on_h + d_on_k));
                println!("discord_restarts={}", cfg.restarts);
            }
            Ok(())
        }
        Command::Sweep {
            family,
            d,
            min,
            max,
            steps,
            discord: with_discord,
            out,
        } => {
            if steps < 2 {
                return Err(Error::OutOfDomain {
                    family: "sweep",
                    value: steps as f64,
                    domain: "steps >= 2".into(),
                });
            }
            let config = SweepConfig {
                family: family_spec(family, d)?,
                min,
                max,
                steps,
                discord: with_discord.then(|| optimizer(cli.seed, cli.restarts)),
            };
            let records = run_sweep(&config)?;
            match out {
                Some(path) => {
                    let mut file = std::fs::File::create(path)?;
                    write_csv(&mut file, &records, with_discord)
                }
                None => {
                    let stdout = std::io::stdout();
                    write_csv(&mut stdout.lock(), &records, with_discord)
                }
            }
        }
        Command::Compare { path_a, path_b } => {
            let a = load_state_with(&path_a, &tolerances)?;
            let b = load_state_with(&path_b, &tolerances)?;
            let (ordering, d_a, d_b) = compare_d(&a, &b, default_marginal_tol())?;
            println!("D_a={d_a}");
            println!("D_b={d_b}");
            let label = match ordering {
                DOrdering::AStronger => "A stronger",
                DOrdering::BStronger => "B stronger",
                DOrdering::Equal => "equal",
            };
            println!("ordering={label}");
            Ok(())
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 2,
        Error::OutOfDomain { .. } | Error::BadDimension { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; anything else is an
            // argument-validation failure (exit 1 per the exit-code contract).
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
