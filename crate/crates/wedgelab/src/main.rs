use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use wedgelab_core::catalog::{self, Family};
use wedgelab_core::report::write_points_csv;
use wedgelab_core::suites::{self, SUITES};
use wedgelab_core::wedge::{self, CausalSymmetricSpec, Domain, SPEC_NAMES};

mod config;

use config::RunConfig;

/// Failure classes, each with its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] wedgelab_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Core(wedgelab_core::Error::Unsupported(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "wedgelab", version, about = "Numerical checks for causal symmetric Lie algebras and their wedge domains")]
#[command(after_help = "Exit codes: 0 all checks pass, 1 an invariant failed, 2 configuration error.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the catalog of irreducible algebras and recheck the realized rows.
    Catalog {
        /// complex, cayley, split or nonsplit
        #[arg(long)]
        family: Option<String>,
    },
    /// Run an invariant suite and emit a JSON report.
    #[command(after_help = config::DEFAULTS_HELP)]
    Verify {
        /// linop, liealg, roots, polar, quadric, wedge or all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Write deterministic samples with membership verdicts as CSV.
    #[command(after_help = config::DEFAULTS_HELP)]
    Sample {
        /// sl2-cayley, sl2xsl2, dS2, dS3, dS4, gl2, sp4, sp6 or sl4 (default from config)
        #[arg(long)]
        spec: Option<String>,
        /// positivity, polar, kms or tube
        #[arg(long)]
        domain: String,
        /// Number of samples (default from config, else 1000)
        #[arg(long)]
        n: Option<usize>,
        /// Seed (default from config, else 1)
        #[arg(long)]
        seed: Option<u64>,
        /// Output path (default from config)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wedgelab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Returns whether every check passed.
fn run(cmd: Command) -> Result<bool, CliError> {
    match cmd {
        Command::Catalog { family } => {
            let family = family
                .map(|f| Family::parse(&f).map_err(|e| CliError::Config(e.to_string())))
                .transpose()?;
            let rep = catalog::catalog_report(family)?;
            emit_json(&rep, None)?;
            Ok(rep.passed)
        }
        Command::Verify { suite, config } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(CliError::Config(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))));
            }
            let cfg = RunConfig::load(config.as_deref())?;
            let reports = suites::run_suite(&suite, &cfg.suite_config())?;
            for r in &reports {
                let failed = r.failures().len();
                eprintln!("{}: {} ({} checks, {failed} failed)", r.suite, if r.passed { "pass" } else { "FAIL" }, r.checks.len());
            }
            emit_json(&reports, cfg.output.report.as_deref())?;
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::Sample { spec, domain, n, seed, out, config } => {
            let cfg = RunConfig::load(config.as_deref())?;
            let spec = spec
                .or(cfg.run.spec.clone())
                .ok_or_else(|| CliError::Config("no spec given (--spec or run.spec)".into()))?;
            if !SPEC_NAMES.contains(&spec.as_str()) {
                return Err(CliError::Config(format!("unknown spec {spec:?}; expected one of {}", SPEC_NAMES.join(", "))));
            }
            let domain = Domain::parse(&domain).map_err(|e| CliError::Config(e.to_string()))?;
            let out = out
                .or(cfg.output.csv.clone())
                .ok_or_else(|| CliError::Config("no output path given (--out or output.csv)".into()))?;
            let sc = cfg.suite_config();
            let n = n.or(cfg.run.n).unwrap_or(1000);
            let seed = seed.unwrap_or(sc.seed);
            let spec = CausalSymmetricSpec::by_name(&spec)?;
            let table = wedge::sample_domain(&spec, domain, n, seed, sc.exec)?;
            let mut w = BufWriter::new(File::create(&out)?);
            write_points_csv(&mut w, &table.coord_names, &[domain.label()], &table.outcomes)?;
            w.flush()?;
            Ok(true)
        }
    }
}

fn emit_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| wedgelab_core::Error::Serde(e.to_string()))?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
