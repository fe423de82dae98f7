use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Deserialize;

use dirac_split::verify::{emit_report, run, BackendChoice, OutputFormat, RepChoice, RunConfig, Suite};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Check the bispinor split, its identities and their covariance.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// clifford | projectors | split | weyl | majorana | covariance | all
    suite: Suite,
    /// spinor | standard | majorana | all
    #[arg(long)]
    rep: Option<RepChoice>,
    /// exact | float | both
    #[arg(long)]
    backend: Option<BackendChoice>,
    /// Float tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Random momenta per fuzz check
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the report as JSON
    #[arg(long)]
    json: Option<PathBuf>,
    /// TOML file with any of the keys above; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    rep: Option<RepChoice>,
    backend: Option<BackendChoice>,
    tol: Option<f64>,
    trials: Option<usize>,
    seed: Option<u64>,
    json: Option<PathBuf>,
    mass_range: Option<[f64; 2]>,
    momentum_max: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();

    let file = match &args.config {
        None => FileConfig::default(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(EXIT_IO);
                }
            };
            match toml::from_str(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: bad config {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            }
        }
    };

    let defaults = RunConfig::default();
    let config = RunConfig {
        suite: args.suite,
        rep: args.rep.or(file.rep).unwrap_or(defaults.rep),
        backend: args.backend.or(file.backend).unwrap_or(defaults.backend),
        tol: args.tol.or(file.tol).unwrap_or(defaults.tol),
        trials: args.trials.or(file.trials).unwrap_or(defaults.trials),
        seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
        mass_range: file.mass_range.unwrap_or(defaults.mass_range),
        momentum_max: file.momentum_max.unwrap_or(defaults.momentum_max),
    };
    let json_path = args.json.or(file.json);

    let report = match run(&config) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    if let Err(e) = emit_report(&report, OutputFormat::Human, None) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_IO);
    }

    if let Some(path) = json_path {
        if let Err(e) = emit_report(&report, OutputFormat::Json, Some(&path)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_IO);
        }
    }

    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
