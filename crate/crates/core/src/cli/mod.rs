//! Scenario runner behind the `bosemix` binary: named figure scenarios,
//! INI configuration, CSV tables and a JSON manifest.
//!
//! ```text
//! bosemix <scenario> [--config FILE] [--out DIR] [--r12 LIST] [--L FLOAT] [--d FLOAT]
//!         [--t-max FLOAT] [--steps INT] [--temperature FLOAT]
//!         [--convention coherent_sum|as_printed] [--allow-immiscible]
//! ```

pub mod config;
pub mod run;
pub mod scenario;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::ini::IniError;
use crate::params::PairConvention;

pub use config::{parse_config, resolve, Overrides};
pub use run::{compute, Table};
pub use scenario::{FrequencyGrid, Geometry, Scenario, ScenarioName, TimeGrid};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", render(.0))]
    Config(Vec<IniError>),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

fn render(errors: &[IniError]) -> String {
    errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("\n")
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "bosemix",
    version,
    about = "Data behind the impurity-qubit dephasing and entanglement figures"
)]
pub struct Args {
    /// gamma-single, nonmarkov-single, sdf-single, gamma-two, decay-rates, sdf-two, induced-coupling or concurrence
    pub scenario: String,
    /// INI scenario file, or a manifest.json from an earlier run
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// comma-separated a12/a values
    #[arg(long)]
    pub r12: Option<String>,
    /// well half-separation L (l0); sets 2d = 4L unless --d is given
    #[arg(long = "L")]
    pub well_half_sep: Option<f64>,
    /// trap half-distance d (l0)
    #[arg(long = "d")]
    pub trap_half_dist: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// k_B T / ħω⊥
    #[arg(long)]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub convention: Option<PairConvention>,
    /// accept a12/a >= 1 (phase-separated symmetric mixture)
    #[arg(long)]
    pub allow_immiscible: bool,
}

impl Args {
    /// Settings given as flags; these override the config file.
    pub fn overrides(&self) -> Result<Overrides, CliError> {
        let sweep = match &self.r12 {
            Some(text) => Some(config::parse_list(text).map_err(|m| CliError::Usage(format!("--r12: {m}")))?),
            None => None,
        };
        let o = Overrides {
            sweep,
            well_half_sep: self.well_half_sep,
            trap_half_dist: self.trap_half_dist,
            t_max: self.t_max,
            steps: self.steps,
            temperature: self.temperature,
            convention: self.convention,
            allow_immiscible: self.allow_immiscible.then_some(true),
            ..Default::default()
        };
        let mut lines = std::collections::BTreeMap::new();
        for (key, set) in [
            ("r12", o.sweep.is_some()),
            ("L", o.well_half_sep.is_some()),
            ("d", o.trap_half_dist.is_some()),
            ("t_max", o.t_max.is_some()),
            ("steps", o.steps.is_some()),
            ("temperature", o.temperature.is_some()),
            ("convention", o.convention.is_some()),
        ] {
            if set {
                lines.insert(key.to_string(), 0);
            }
        }
        Ok(Overrides { lines, ..o })
    }

    fn has_overrides(&self) -> bool {
        self.r12.is_some()
            || self.well_half_sep.is_some()
            || self.trap_half_dist.is_some()
            || self.t_max.is_some()
            || self.steps.is_some()
            || self.temperature.is_some()
            || self.convention.is_some()
            || self.allow_immiscible
    }
}

/// Record of one run, written next to the CSVs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub scenario: Scenario,
    pub pair_convention: PairConvention,
    pub allow_immiscible: bool,
    pub warnings: Vec<String>,
    pub outputs: Vec<String>,
    pub wall_clock_seconds: f64,
}

fn is_manifest(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{')
}

/// Resolves the scenario named in `args` from defaults, the optional
/// config file and the flags, in that order of precedence.
pub fn validate(args: &Args) -> Result<Scenario, CliError> {
    let name: ScenarioName = args.scenario.parse().map_err(CliError::Usage)?;
    let mut overrides = Overrides::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(io_error(path))?;
        if is_manifest(path, &text) {
            let manifest: Manifest = serde_json::from_str(&text)?;
            if manifest.scenario.name != name {
                return Err(CliError::Usage(format!(
                    "manifest is for `{}`, not `{name}`",
                    manifest.scenario.name
                )));
            }
            if args.has_overrides() {
                return Err(CliError::Usage(
                    "a manifest replays a run exactly; remove the override flags".into(),
                ));
            }
            return Ok(manifest.scenario);
        }
        overrides = parse_config(&text).map_err(|errs| {
            let file = path.display().to_string();
            CliError::Config(
                errs.into_iter()
                    .map(|e| IniError::new(e.line, format!("{file}: {}", e.message)))
                    .collect(),
            )
        })?;
    }
    let merged = overrides.merged(args.overrides()?);
    resolve(name, &merged).map_err(CliError::Config)
}

/// Computes every table and writes them with the manifest into `out`.
pub fn execute(scenario: &Scenario, out: &Path) -> Result<Manifest, CliError> {
    let start = Instant::now();
    let tables = compute(scenario)?;
    fs::create_dir_all(out).map_err(io_error(out))?;
    let mut outputs = Vec::new();
    for t in &tables {
        let path = out.join(&t.file);
        fs::write(&path, t.to_csv()).map_err(io_error(&path))?;
        outputs.push(t.file.clone());
    }
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: scenario.clone(),
        pair_convention: scenario.convention(),
        allow_immiscible: scenario.base.allow_immiscible,
        warnings: scenario.warnings.clone(),
        outputs,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    let path = out.join(MANIFEST_FILE);
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n").map_err(io_error(&path))?;
    Ok(manifest)
}

/// `validate` then `execute`, printing warnings to stderr.
pub fn run(args: &Args) -> Result<Manifest, CliError> {
    let scenario = validate(args)?;
    for w in &scenario.warnings {
        eprintln!("warning: {w}");
    }
    execute(&scenario, &args.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Args {
        Args::try_parse_from(std::iter::once("bosemix").chain(list.iter().copied())).unwrap()
    }

    #[test]
    fn flags_parse() {
        let a = args(&[
            "gamma-two",
            "--r12",
            "0.2,0.5",
            "--L",
            "1.5",
            "--convention",
            "as_printed",
            "--allow-immiscible",
        ]);
        let s = validate(&a).unwrap();
        assert_eq!(s.sweep, vec![0.2, 0.5]);
        assert_eq!(
            s.geometries,
            vec![Geometry {
                well_half_sep: 1.5,
                trap_half_dist: 3.0
            }]
        );
        assert_eq!(s.convention(), PairConvention::AsPrinted);
    }

    #[test]
    fn unknown_scenario() {
        let err = validate(&args(&["concurence"])).unwrap_err();
        assert!(err.to_string().contains("`concurrence`"));
    }

    #[test]
    fn flag_immiscible_needs_permission() {
        assert!(validate(&args(&["gamma-single", "--r12", "1.5"])).is_err());
        assert!(validate(&args(&["gamma-single", "--r12", "1.5", "--allow-immiscible"])).is_ok());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.ini");
        fs::write(&path, "t_max = 5\nsteps = 100\n").unwrap();
        let a = args(&["gamma-single", "--config", path.to_str().unwrap(), "--steps", "80"]);
        let s = validate(&a).unwrap();
        assert_eq!(s.time, TimeGrid { t_max: 5.0, steps: 80 });
    }
}
