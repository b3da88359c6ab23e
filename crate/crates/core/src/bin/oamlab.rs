use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oamlab::runner::{self, config::CONFIG_SCHEMA, RunConfig};
use oamlab::Error;

/// Angular-aperture diffraction of OAM-entangled photon pairs.
#[derive(Parser)]
#[command(name = "oamlab", version)]
struct Cli {
    /// Worker threads for sweeps (default: config value, then all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Print the default configuration as JSON and exit.
    #[arg(long)]
    print_default_config: bool,

    /// Print the JSON schema of the configuration and exit.
    #[arg(long)]
    print_config_schema: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the (lambda, l0) sweep and write results.csv / results.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write figure SVGs and CSVs.
    Figures {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sweep results to plot instead of <out>/results.csv.
        #[arg(long)]
        results: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Validate {
        /// Skip the conservation and grid-refinement criteria.
        #[arg(long)]
        fast: bool,
        /// Also write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn exit_code(err: &Error) -> ExitCode {
    match err {
        Error::Config(_) => ExitCode::from(EXIT_CONFIG),
        _ => ExitCode::from(EXIT_FAILURE),
    }
}

fn output_dir(config: &RunConfig, out: Option<PathBuf>) -> Result<PathBuf, Error> {
    out.or_else(|| config.output_dir.clone())
        .ok_or_else(|| Error::Config("no output directory: pass --out or set output_dir".into()))
}

fn load(path: &Path, workers: Option<usize>) -> Result<RunConfig, Error> {
    if workers == Some(0) {
        return Err(Error::Config("--workers must be >= 1".into()));
    }
    RunConfig::from_file(path)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    if cli.print_default_config {
        println!("{}", RunConfig::default().to_json());
        return Ok(ExitCode::SUCCESS);
    }
    if cli.print_config_schema {
        print!("{CONFIG_SCHEMA}");
        return Ok(ExitCode::SUCCESS);
    }
    let Some(command) = cli.command else {
        return Err(Error::Config("no command given (simulate, figures or validate)".into()));
    };
    match command {
        Command::Simulate { config, out } => {
            let config = load(&config, cli.workers)?;
            let out = output_dir(&config, out)?;
            for path in runner::simulate(&config, &out, cli.workers)? {
                println!("{}", path.display());
            }
        }
        Command::Figures { config, out, results } => {
            let config = load(&config, cli.workers)?;
            let out = output_dir(&config, out)?;
            for path in runner::figures(&config, &out, results.as_deref(), cli.workers)? {
                println!("{}", path.display());
            }
        }
        Command::Validate { fast, report } => {
            let pool = runner::sweep::thread_pool(cli.workers)?;
            let result = pool.install(|| runner::run_validation(fast))?;
            for criterion in &result.criteria {
                for line in criterion.lines() {
                    println!("{line}");
                }
            }
            if let Some(path) = report {
                std::fs::write(path, result.to_json())?;
            }
            println!("overall: {}", if result.pass { "PASS" } else { "FAIL" });
            if !result.pass {
                return Ok(ExitCode::from(EXIT_FAILURE));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}
