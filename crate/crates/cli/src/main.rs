use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qreality_cli::config::parse_tolerance;
use qreality_cli::{run, ConfigError, FileConfig, Format, RunConfig, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};

/// Runs a scenario or randomised suite and writes one row per assertion.
#[derive(Debug, Parser)]
#[command(name = "qreality", version)]
struct Args {
    /// TOML file with run settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Comma-separated intensities, e.g. `0.1,0.5,1`.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    epsilon: Vec<f64>,
    /// Overrides one tolerance; repeatable.
    #[arg(long = "tolerance", value_name = "KEY=VAL", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
    /// Report path; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// `csv` or `structured`.
    #[arg(long)]
    format: Option<Format>,
}

fn configure(args: Args) -> Result<RunConfig, ConfigError> {
    let mut file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    file.scenario = args.scenario.or(file.scenario);
    file.seed = args.seed.or(file.seed);
    file.samples = args.samples.or(file.samples);
    if !args.epsilon.is_empty() {
        file.epsilon = Some(args.epsilon);
    }
    file.output = args.output.or(file.output);
    file.format = args.format.or(file.format);
    let mut cfg = RunConfig::resolve(file)?;
    for (key, value) in args.tolerances {
        cfg.tolerances.set(&key, value).map_err(|e| ConfigError::Invalid {
            field: "tolerance",
            reason: e.to_string(),
        })?;
    }
    Ok(cfg)
}

fn execute(args: Args) -> Result<bool, ConfigError> {
    let cfg = configure(args)?;
    let report = run(&cfg)?;
    let written = match &cfg.output {
        Some(path) => File::create(path)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                report.write(cfg.format, &mut w)?;
                w.flush()
            })
            .map_err(|e| (path.clone(), e)),
        None => report
            .write(cfg.format, io::stdout().lock())
            .map_err(|e| (PathBuf::from("<stdout>"), e)),
    };
    written.map_err(|(path, e)| ConfigError::Write {
        path,
        message: e.to_string(),
    })?;
    if !report.all_passed() {
        eprintln!(
            "{}: {} of {} assertions failed",
            cfg.scenario,
            report.failures(),
            report.rows.len()
        );
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_CONFIG as u8
            } else {
                EXIT_PASS as u8
            });
        }
    };
    match execute(args) {
        Ok(true) => ExitCode::from(EXIT_PASS as u8),
        Ok(false) => ExitCode::from(EXIT_FAIL as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
