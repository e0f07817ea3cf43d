//! `dephase`: run scenario files, regenerate figure data, run self-checks.
//!
//! Exit codes: 0 success, 1 invalid input or I/O failure, 2 computation
//! failure, 3 a verification case failed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qubit_dephasing::scenario::{run_figure, run_trace, FigurePreset, ScenarioError};
use qubit_dephasing::verify::{self, Suite};

#[derive(Parser)]
#[command(name = "dephase", version, about = "Qubit dephasing with measurement-prepared initial states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one trajectory from a JSON scenario file and write it as CSV.
    Trace {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Regenerate the data of a built-in figure preset.
    Figure {
        preset: String,
        /// Output directory for the CSV files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Print the preset's scenario configs as JSON instead of running them.
        #[arg(long)]
        dump_config: bool,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Also write the per-case report as CSV.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Kernels,
    Oracle,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Kernels => Suite::Kernels,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::All => Suite::All,
        }
    }
}

fn scenario_exit(e: &ScenarioError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        ScenarioError::Computation(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Trace { config, out } => match run_trace(&config, &out) {
            Ok(traj) => {
                eprintln!("wrote {} rows to {}", traj.points.len(), out.display());
                ExitCode::SUCCESS
            }
            Err(e) => scenario_exit(&e),
        },
        Command::Figure {
            preset,
            out,
            dump_config,
        } => {
            let preset = match FigurePreset::from_name(&preset) {
                Ok(p) => p,
                Err(e) => return scenario_exit(&e),
            };
            if dump_config {
                println!("{}", preset.dump_config());
                return ExitCode::SUCCESS;
            }
            match run_figure(preset, &out) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => scenario_exit(&e),
            }
        }
        Command::Verify { suite, report } => {
            let r = match verify::run(suite.into()) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            println!("{r}");
            if let Some(path) = report {
                if let Err(e) = std::fs::write(&path, r.to_csv()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
    }
}
