use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::params::{PairConvention, ReservoirConfig};

/// Sweep shared by the time- and frequency-resolved figures.
pub const DEFAULT_SWEEP: [f64; 3] = [0.2, 1.0, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioName {
    GammaSingle,
    NonmarkovSingle,
    SdfSingle,
    GammaTwo,
    DecayRates,
    SdfTwo,
    InducedCoupling,
    Concurrence,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 8] = [
        ScenarioName::GammaSingle,
        ScenarioName::NonmarkovSingle,
        ScenarioName::SdfSingle,
        ScenarioName::GammaTwo,
        ScenarioName::DecayRates,
        ScenarioName::SdfTwo,
        ScenarioName::InducedCoupling,
        ScenarioName::Concurrence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::GammaSingle => "gamma-single",
            ScenarioName::NonmarkovSingle => "nonmarkov-single",
            ScenarioName::SdfSingle => "sdf-single",
            ScenarioName::GammaTwo => "gamma-two",
            ScenarioName::DecayRates => "decay-rates",
            ScenarioName::SdfTwo => "sdf-two",
            ScenarioName::InducedCoupling => "induced-coupling",
            ScenarioName::Concurrence => "concurrence",
        }
    }

    /// Well half-separations L used by default; 2d = 4L.
    pub fn default_wells(self) -> Vec<f64> {
        match self {
            ScenarioName::GammaSingle | ScenarioName::NonmarkovSingle | ScenarioName::GammaTwo => vec![0.75],
            ScenarioName::SdfSingle | ScenarioName::SdfTwo | ScenarioName::DecayRates => vec![0.75, 7.5],
            ScenarioName::InducedCoupling | ScenarioName::Concurrence => vec![7.5],
        }
    }

    pub fn default_sweep(self) -> Vec<f64> {
        match self {
            ScenarioName::NonmarkovSingle => {
                let mut v: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
                v.extend([1.5, 2.0, 2.5, 3.0]);
                v
            }
            _ => DEFAULT_SWEEP.to_vec(),
        }
    }

    pub fn default_time(self) -> TimeGrid {
        match self {
            ScenarioName::NonmarkovSingle => TimeGrid { t_max: 50.0, steps: 512 },
            ScenarioName::InducedCoupling | ScenarioName::Concurrence => TimeGrid { t_max: 40.0, steps: 400 },
            _ => TimeGrid { t_max: 20.0, steps: 400 },
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ScenarioName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = ScenarioName::ALL.iter().map(|n| n.as_str()).collect();
            match crate::ini::nearest(s, &names) {
                Some(best) => format!("unknown scenario `{s}` (did you mean `{best}`?)"),
                None => format!("unknown scenario `{s}`"),
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn points(&self) -> Vec<f64> {
        crate::dephasing::uniform_grid(self.t_max, self.steps)
    }
}

/// Uniform frequencies ω_max·i/steps, i = 1..=steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    pub omega_max: f64,
    pub steps: usize,
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self {
            omega_max: 30.0,
            steps: 1500,
        }
    }
}

impl FrequencyGrid {
    pub fn points(&self) -> Vec<f64> {
        (1..=self.steps).map(|i| self.omega_max * i as f64 / self.steps as f64).collect()
    }
}

/// L and d of one run, in l₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub well_half_sep: f64,
    pub trap_half_dist: f64,
}

/// Fully resolved scenario; everything a run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: ScenarioName,
    /// α, p, κ, T and switches; r12 and geometry are replaced per run
    pub base: ReservoirConfig,
    pub sweep: Vec<f64>,
    pub geometries: Vec<Geometry>,
    pub time: TimeGrid,
    pub frequency: FrequencyGrid,
    pub warnings: Vec<String>,
}

impl Scenario {
    /// Defaults: the canonical figure parameters.
    pub fn defaults(name: ScenarioName) -> Self {
        let sweep = name.default_sweep();
        let base = ReservoirConfig::canonical()
            .with_r12(0.0)
            .expect("valid")
            .allowing_immiscible(sweep.iter().any(|r| *r >= 1.0));
        Self {
            name,
            base,
            sweep,
            geometries: name
                .default_wells()
                .into_iter()
                .map(|l| Geometry {
                    well_half_sep: l,
                    trap_half_dist: 2.0 * l,
                })
                .collect(),
            time: name.default_time(),
            frequency: FrequencyGrid::default(),
            warnings: Vec::new(),
        }
    }

    pub fn convention(&self) -> PairConvention {
        self.base.pair_convention
    }

    /// Configuration for one sweep value and geometry.
    pub fn config(&self, r12: f64, geometry: Geometry) -> crate::Result<ReservoirConfig> {
        self.base
            .with_r12(r12)?
            .with_geometry(geometry.well_half_sep, geometry.trap_half_dist)
    }
}
