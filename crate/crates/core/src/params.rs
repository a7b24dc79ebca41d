//! Physical inputs and their reduction to the dimensionless scenario.
//!
//! Energies are measured in units of ħω⊥, lengths in l₀ = √(ħ/mω⊥),
//! momenta in 1/l₀ and times in 1/ω⊥, where m is the reservoir atom mass
//! and ω⊥ the transverse trap frequency of the condensate.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::ini::{IniDocument, IniError};

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Atomic mass unit (kg).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Boltzmann constant (J/K).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Parameters of one condensate species, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Species {
    /// kg
    pub mass: f64,
    /// atoms per metre
    pub density: f64,
    /// intraspecies s-wave scattering length, m
    pub scattering_length: f64,
    /// transverse trap frequency, rad/s
    pub transverse_freq: f64,
}

/// Physical description of the impurity + two-component condensate system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub species: [Species; 2],
    /// kg
    pub impurity_mass: f64,
    /// interspecies scattering length a₁₂, m
    pub inter_scattering: f64,
    /// impurity–reservoir scattering length a_I, m
    pub impurity_scattering: f64,
    /// rad/s
    pub impurity_trap_freq: f64,
    /// half the distance between the two wells of one qubit, m
    pub well_half_separation: f64,
    /// half the distance between neighbouring double wells, m
    pub trap_half_distance: f64,
    /// K
    pub temperature: f64,
}

impl PhysicalParams {
    /// Symmetric mixture: both species share mass, density, scattering
    /// length and transverse frequency.
    #[allow(clippy::too_many_arguments)]
    pub fn symmetric(
        reservoir_mass: f64,
        impurity_mass: f64,
        density: f64,
        intra_scattering: f64,
        inter_scattering: f64,
        impurity_scattering: f64,
        transverse_freq: f64,
        impurity_trap_freq: f64,
        well_half_separation: f64,
        trap_half_distance: f64,
        temperature: f64,
    ) -> Self {
        let s = Species {
            mass: reservoir_mass,
            density,
            scattering_length: intra_scattering,
            transverse_freq,
        };
        Self {
            species: [s, s],
            impurity_mass,
            inter_scattering,
            impurity_scattering,
            impurity_trap_freq,
            well_half_separation,
            trap_half_distance,
            temperature,
        }
    }

    /// ⁴¹K impurities in a symmetric ⁸⁷Rb hyperfine mixture: n = 3.6×10⁷ m⁻¹,
    /// a = 5.3 nm, a_I = 3.4 nm, ω⊥ = 2π kHz.  The impurity trap frequency is
    /// chosen so that l_I = l₀/2; geometry is L = 0.75 l₀ and 2d = 4L, with
    /// a₁₂ = 0.2 a.
    pub fn canonical() -> Self {
        let m = 87.0 * ATOMIC_MASS_UNIT;
        let m_imp = 41.0 * ATOMIC_MASS_UNIT;
        let omega_perp = 2.0 * std::f64::consts::PI * 1.0e3;
        let l0 = (HBAR / (m * omega_perp)).sqrt();
        let p = 0.5;
        // l_I = p l0  =>  ω_I = ħ / (m_I p² l0²)
        let omega_imp = HBAR / (m_imp * p * p * l0 * l0);
        let a = 5.3e-9;
        Self::symmetric(m, m_imp, 3.6e7, a, 0.2 * a, 3.4e-9, omega_perp, omega_imp, 0.75 * l0, 1.5 * l0, 0.0)
    }

    fn validate(&self) -> Result<()> {
        for s in &self.species {
            ensure_positive("reservoir_mass", s.mass)?;
            ensure_positive("density", s.density)?;
            ensure_positive("intra_scattering", s.scattering_length)?;
            ensure_positive("transverse_freq", s.transverse_freq)?;
        }
        ensure_positive("impurity_mass", self.impurity_mass)?;
        ensure_positive("impurity_scattering", self.impurity_scattering)?;
        ensure_positive("impurity_trap_freq", self.impurity_trap_freq)?;
        ensure_positive("well_half_separation", self.well_half_separation)?;
        ensure_positive("trap_half_distance", self.trap_half_distance)?;
        ensure_non_negative("inter_scattering", self.inter_scattering)?;
        ensure_non_negative("temperature", self.temperature)?;

        let [a, b] = &self.species;
        let differs = |x: f64, y: f64| (x - y).abs() > 1e-12 * x.abs().max(y.abs());
        for (name, x, y) in [
            ("masses", a.mass, b.mass),
            ("densities", a.density, b.density),
            ("scattering lengths", a.scattering_length, b.scattering_length),
            ("transverse frequencies", a.transverse_freq, b.transverse_freq),
        ] {
            if differs(x, y) {
                return Err(Error::NonSymmetricMixture(format!("species {name} differ ({x} vs {y})")));
            }
        }
        Ok(())
    }

    /// Oscillator length l₀ = √(ħ/mω⊥) of the reservoir, m.
    pub fn oscillator_length(&self) -> f64 {
        let s = &self.species[0];
        (HBAR / (s.mass * s.transverse_freq)).sqrt()
    }

    /// Quasi-1D couplings (g₁, g₂, g₁₂), J m.
    pub fn quasi_1d_couplings(&self) -> (f64, f64, f64) {
        let [s1, s2] = &self.species;
        let l = |s: &Species| (HBAR / (s.mass * s.transverse_freq)).sqrt();
        let (l1, l2) = (l(s1), l(s2));
        let g1 = 2.0 * HBAR * HBAR * s1.scattering_length / (s1.mass * l1 * l1);
        let g2 = 2.0 * HBAR * HBAR * s2.scattering_length / (s2.mass * l2 * l2);
        let m12 = s1.mass * s2.mass / (s1.mass + s2.mass);
        let g12 = 2.0 * HBAR * HBAR * self.inter_scattering / (m12 * (l1 * l1 + l2 * l2));
        (g1, g2, g12)
    }

    pub fn from_ini(doc: &IniDocument, section: &str) -> std::result::Result<Self, Vec<IniError>> {
        let mut errors = Vec::new();
        let mut get = |key: &'static str| -> f64 {
            match doc.get(section, key) {
                Some(entry) => match entry.value.parse::<f64>() {
                    Ok(v) => v,
                    Err(_) => {
                        errors.push(IniError::new(
                            entry.line,
                            format!("`{key}`: expected a number, got `{}`", entry.value),
                        ));
                        f64::NAN
                    }
                },
                None => {
                    errors.push(IniError::new(0, format!("missing key `{key}` in [{section}]")));
                    f64::NAN
                }
            }
        };
        let params = Self::symmetric(
            get("reservoir_mass"),
            get("impurity_mass"),
            get("density"),
            get("intra_scattering"),
            get("inter_scattering"),
            get("impurity_scattering"),
            get("transverse_freq"),
            get("impurity_trap_freq"),
            get("well_half_separation"),
            get("trap_half_distance"),
            0.0,
        );
        let mut params = params;
        if let Some(entry) = doc.get(section, "temperature") {
            match entry.value.parse::<f64>() {
                Ok(v) => params.temperature = v,
                Err(_) => errors.push(IniError::new(
                    entry.line,
                    format!("`temperature`: expected a number, got `{}`", entry.value),
                )),
            }
        }
        let unknown = doc.unknown_keys(section, PHYSICAL_KEYS);
        errors.extend(unknown);
        if errors.is_empty() {
            Ok(params)
        } else {
            Err(errors)
        }
    }
}

/// Keys accepted in a physical-parameter INI section (SI units).
pub const PHYSICAL_KEYS: &[&str] = &[
    "reservoir_mass",
    "impurity_mass",
    "density",
    "intra_scattering",
    "inter_scattering",
    "impurity_scattering",
    "transverse_freq",
    "impurity_trap_freq",
    "well_half_separation",
    "trap_half_distance",
    "temperature",
];

/// How the two-qubit couplings g₁, g₂ are normalised relative to the
/// single-qubit coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairConvention {
    /// Coherent sum over both qubits: multipliers 2cos(kd), 2sin(kd).
    #[default]
    CoherentSum,
    /// Multipliers cos(kd), sin(kd).
    AsPrinted,
}

impl PairConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            PairConvention::CoherentSum => "coherent_sum",
            PairConvention::AsPrinted => "as_printed",
        }
    }
}

impl std::str::FromStr for PairConvention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "coherent_sum" => Ok(Self::CoherentSum),
            "as_printed" => Ok(Self::AsPrinted),
            other => Err(format!("unknown pair convention `{other}` (expected coherent_sum or as_printed)")),
        }
    }
}

/// Dimensionless scenario shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirConfig {
    /// gas parameter α = 4na
    pub alpha: f64,
    /// l_I / l₀
    pub p: f64,
    /// a₁₂ / a
    pub r12: f64,
    /// κ = ĝ_I √(n l₀), prefactor of the scaled coupling amplitude
    pub coupling_prefactor: f64,
    /// L, in l₀
    pub well_half_sep: f64,
    /// d, in l₀
    pub trap_half_dist: f64,
    /// k_B T / ħω⊥
    pub temperature: f64,
    #[serde(default)]
    pub pair_convention: PairConvention,
    /// Permit a₁₂ ≥ a (phase-separated symmetric mixture).
    #[serde(default)]
    pub allow_immiscible: bool,
}

impl ReservoirConfig {
    /// Validated constructor; `d` defaults to 2L when `None`.
    pub fn new(alpha: f64, p: f64, r12: f64, coupling_prefactor: f64, well_half_sep: f64, trap_half_dist: Option<f64>) -> Result<Self> {
        let cfg = Self {
            alpha,
            p,
            r12,
            coupling_prefactor,
            well_half_sep,
            trap_half_dist: trap_half_dist.unwrap_or(2.0 * well_half_sep),
            temperature: 0.0,
            pair_convention: PairConvention::CoherentSum,
            allow_immiscible: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical figure parameters: α = 0.76, p = 0.5, L = 0.75, 2d = 4L,
    /// a₁₂/a = 0.2, T = 0, with the coupling prefactor of the ⁴¹K/⁸⁷Rb system.
    pub fn canonical() -> Self {
        let base = to_dimensionless(&PhysicalParams::canonical()).expect("canonical parameters are valid");
        Self { alpha: 0.76, ..base }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("alpha", self.alpha)?;
        ensure_positive("p", self.p)?;
        ensure_non_negative("coupling_prefactor", self.coupling_prefactor)?;
        ensure_non_negative("well_half_sep", self.well_half_sep)?;
        ensure_non_negative("trap_half_dist", self.trap_half_dist)?;
        ensure_non_negative("temperature", self.temperature)?;
        if !self.r12.is_finite() || self.r12 <= -1.0 {
            return Err(Error::InvalidParameter {
                name: "r12",
                value: self.r12,
                reason: "must exceed -1",
            });
        }
        if self.r12 >= 1.0 && !self.allow_immiscible {
            return Err(Error::StabilityViolation { r12: self.r12 });
        }
        Ok(())
    }

    pub fn with_r12(self, r12: f64) -> Result<Self> {
        let cfg = Self { r12, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_geometry(self, well_half_sep: f64, trap_half_dist: f64) -> Result<Self> {
        let cfg = Self {
            well_half_sep,
            trap_half_dist,
            ..self
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        let cfg = Self { temperature, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_convention(self, pair_convention: PairConvention) -> Self {
        Self { pair_convention, ..self }
    }

    pub fn allowing_immiscible(self, allow: bool) -> Self {
        Self {
            allow_immiscible: allow,
            ..self
        }
    }

    /// Mean-field energy g n of one species, in ħω⊥.
    pub fn mean_field_energy(&self) -> f64 {
        0.5 * self.alpha
    }

    pub fn is_immiscible(&self) -> bool {
        self.r12 >= 1.0
    }
}

/// Reduces physical inputs to the dimensionless scenario.
pub fn to_dimensionless(phys: &PhysicalParams) -> Result<ReservoirConfig> {
    phys.validate()?;
    let (g1, g2, g12) = phys.quasi_1d_couplings();
    // equality is unstable; allow for rounding in the couplings
    if g12 * g12 >= g1 * g2 * (1.0 - 8.0 * f64::EPSILON) {
        return Err(Error::StabilityViolation {
            r12: g12 / (g1 * g2).sqrt(),
        });
    }

    let s = &phys.species[0];
    let l0 = phys.oscillator_length();
    let l_imp = (HBAR / (phys.impurity_mass * phys.impurity_trap_freq)).sqrt();
    let p = l_imp / l0;
    let alpha = 4.0 * s.density * s.scattering_length;
    let r12 = g12 / g1;

    // g_I / (ħω⊥ l₀) with g_I = 2ħ² a_I / [m_red (l_I² + l₀²)]
    let g_imp = 2.0 * (phys.impurity_scattering / l0) * (1.0 + s.mass / phys.impurity_mass) / (1.0 + p * p);
    let coupling_prefactor = g_imp * (s.density * l0).sqrt();

    let cfg = ReservoirConfig {
        alpha,
        p,
        r12,
        coupling_prefactor,
        well_half_sep: phys.well_half_separation / l0,
        trap_half_dist: phys.trap_half_distance / l0,
        temperature: BOLTZMANN * phys.temperature / (HBAR * s.transverse_freq),
        pair_convention: PairConvention::CoherentSum,
        allow_immiscible: false,
    };
    cfg.validate()?;
    Ok(cfg)
}
