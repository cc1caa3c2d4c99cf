use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fuzzy_bv::config::{load_config, Format};
use fuzzy_bv::report::{emit, execute};
use fuzzy_bv::Result;

/// Bounded-variation diagnostics for sequences of fuzzy numbers.
///
/// Exit codes: 0 success, 1 scenario assertion failed, 2 configuration error, 3 I/O error.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output path; overrides the config. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// Scenario horizon multiplier.
    #[arg(long)]
    scale: Option<usize>,
}

fn run(cli: Cli) -> Result<i32> {
    let mut cfg = load_config(&cli.config)?;
    cfg.out = cli.out.or(cfg.out);
    cfg.format = cli.format.unwrap_or(cfg.format);
    cfg.seed = cli.seed.unwrap_or(cfg.seed);
    cfg.scale = cli.scale.unwrap_or(cfg.scale);
    cfg.validate()?;
    let env = execute(&cfg)?;
    emit(&env)?;
    for r in env.payload_scenarios() {
        for a in r.failures() {
            eprintln!(
                "FAIL {}: {} = {} (threshold {})",
                r.name.as_str(),
                a.name,
                a.measured,
                a.threshold
            );
        }
    }
    Ok(env.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
