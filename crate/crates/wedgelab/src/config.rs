//! Run configuration read from a flat TOML file.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use wedgelab_core::exec::Exec;
use wedgelab_core::suites::SuiteConfig;

use crate::CliError;

pub const DEFAULTS_HELP: &str = "\
Config file (TOML, every key optional):

  [run]
  spec = \"sl2-cayley\"   # default spec for `sample`
  n = 1000              # replaces every per-check sample count (default: per check)
  seed = 1              # 64-bit seed
  exec = \"parallel\"     # or \"sequential\"

  [tolerance]
  residual = 1e-9       # identity residuals
  angle = 1e-7          # principal angles between subspaces
  band = 1e-6           # boundary band of the wedge comparisons

  [output]
  report = \"report.json\" # JSON report path (default: stdout)
  csv = \"points.csv\"     # default CSV path for `sample`";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub tolerance: ToleranceSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub spec: Option<String>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub exec: Option<Exec>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSection {
    pub residual: Option<f64>,
    pub angle: Option<f64>,
    pub band: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(RunConfig::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let cfg: RunConfig =
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerance;
        for (key, v) in [("tolerance.residual", t.residual), ("tolerance.angle", t.angle), ("tolerance.band", t.band)] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::Config(format!("{key} must be a positive finite number, got {v}")));
                }
            }
        }
        Ok(())
    }

    pub fn suite_config(&self) -> SuiteConfig {
        let d = SuiteConfig::default();
        SuiteConfig {
            seed: self.run.seed.unwrap_or(d.seed),
            n: self.run.n,
            exec: self.run.exec.unwrap_or(d.exec),
            residual_tol: self.tolerance.residual.unwrap_or(d.residual_tol),
            angle_tol: self.tolerance.angle.unwrap_or(d.angle_tol),
            band: self.tolerance.band.unwrap_or(d.band),
        }
    }
}
