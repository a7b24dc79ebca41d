//! Decoherence exponents Γ⁰, Γ¹, Γ² of one and two impurity qubits and
//! their time derivatives (decay rates).
//!
//! In the continuum limit every mode sum becomes (1/π)∫dk over the
//! ℓ-scaled amplitudes, so the condensate length never appears:
//!
//! ```text
//! Γ(t) = (1/π) ∫ dk  2ĝ²(k)/ω²(k) · sin²(ω(k)t/2) · coth(ω(k)/2T)
//! γ(t) = (1/π) ∫ dk  ĝ²(k)/ω(k)  · sin(ω(k)t)    · coth(ω(k)/2T)
//! ```

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::numerics::quadrature::{integrate_vec, QuadratureSpec, K_MIN};
use crate::params::ReservoirConfig;
use crate::reservoir::{Branch, CouplingKind, DispersionModel};

/// Time at which the long-time plateau of Γ is read off.
pub const PLATEAU_TIME: f64 = 50.0;

/// Which coherence of the one- or two-qubit register decays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaKind {
    /// single-qubit coherence (also |00⟩⟨01| for two qubits)
    Gamma0,
    /// |00⟩⟨11|
    Gamma1,
    /// |01⟩⟨10|
    Gamma2,
}

impl GammaKind {
    pub const ALL: [GammaKind; 3] = [GammaKind::Gamma0, GammaKind::Gamma1, GammaKind::Gamma2];

    pub fn coupling(self) -> CouplingKind {
        match self {
            GammaKind::Gamma0 => CouplingKind::Single,
            GammaKind::Gamma1 => CouplingKind::PairSum,
            GammaKind::Gamma2 => CouplingKind::PairDiff,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GammaKind::Gamma0 => "gamma0",
            GammaKind::Gamma1 => "gamma1",
            GammaKind::Gamma2 => "gamma2",
        }
    }
}

/// coth(ω/2T) with the T = 0 limit 1.
fn thermal_factor(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        1.0
    } else {
        1.0 / (0.5 * omega / temperature).tanh()
    }
}

/// Integrand of Γ per mode, before the 1/π.
pub(crate) fn gamma_density(g: f64, w: f64, t: f64, temperature: f64) -> f64 {
    let s = (0.5 * w * t).sin();
    2.0 * g * g / (w * w) * s * s * thermal_factor(w, temperature)
}

/// Integrand of γ = dΓ/dt per mode, before the 1/π.
pub(crate) fn rate_density(g: f64, w: f64, t: f64, temperature: f64) -> f64 {
    g * g / w * (w * t).sin() * thermal_factor(w, temperature)
}

/// Half-period of the fastest oscillation among sin²(ωt/2), sin(kL) and
/// cos(2kd) (or cos(kd)).
pub(crate) fn oscillation_scale(model: &DispersionModel, branch: Branch, t: f64, pair_length: f64) -> f64 {
    let cfg = model.config();
    let c = model.sound_speed(branch);
    let speed = if c > 0.0 {
        c
    } else {
        model.group_velocity(branch, model.threshold(branch) + 1.0)
    };
    PI / (speed * t).max(cfg.well_half_sep).max(pair_length).max(1.0)
}

/// (1/π)∫ f(k, ω(k)) dk over all real modes of `branch`.
///
/// Below the real-dispersion threshold of a phase-separated lower branch
/// the modes are excluded; the integrable (k − k_th)^{-1/2} edge is
/// removed with k = k_th + u².
pub(crate) fn mode_integral<F>(model: &DispersionModel, branch: Branch, scale: f64, f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let [v] = mode_integrals(model, branch, scale, |k, w| [f(k, w)])?;
    Ok(v)
}

/// Several mode integrals evaluated on shared nodes.
pub(crate) fn mode_integrals<const N: usize, F>(model: &DispersionModel, branch: Branch, scale: f64, f: F) -> Result<[f64; N]>
where
    F: Fn(f64, f64) -> [f64; N],
{
    let k_th = model.threshold(branch);
    let k_max = model.k_max();
    let q = if k_th == 0.0 {
        let point = |k: f64| {
            let w = model.energy(branch, k);
            if w > 0.0 {
                f(k, w)
            } else {
                [0.0; N]
            }
        };
        integrate_vec(point, &QuadratureSpec::new(K_MIN, k_max, scale))?
    } else {
        let u_max = (k_max - k_th).sqrt();
        let spec = QuadratureSpec::new(K_MIN, u_max, scale / (2.0 * u_max));
        let point = |u: f64| {
            let (k, w) = model.mode_above_threshold(branch, u * u);
            if w > 0.0 {
                f(k, w).map(|v| 2.0 * u * v)
            } else {
                [0.0; N]
            }
        };
        integrate_vec(point, &spec)?
    };
    Ok(q.map(|q| q.value / PI))
}

/// Decoherence exponents and decay rates for one reservoir configuration.
#[derive(Debug, Clone)]
pub struct Decoherence {
    model: DispersionModel,
}

impl Decoherence {
    pub fn new(config: ReservoirConfig) -> Result<Self> {
        Ok(Self {
            model: DispersionModel::new(config)?,
        })
    }

    pub fn from_model(model: DispersionModel) -> Self {
        Self { model }
    }

    pub fn model(&self) -> &DispersionModel {
        &self.model
    }

    pub fn config(&self) -> &ReservoirConfig {
        self.model.config()
    }

    fn check(&self, kind: GammaKind, t: f64, temperature: f64) -> Result<()> {
        ensure_non_negative("t", t)?;
        ensure_non_negative("temperature", temperature)?;
        if kind.coupling().needs_pair_distance() && !(self.config().trap_half_dist > 0.0) {
            return Err(Error::InvalidParameter {
                name: "trap_half_dist",
                value: self.config().trap_half_dist,
                reason: "two-qubit exponents need a positive qubit separation",
            });
        }
        Ok(())
    }

    fn scale(&self, branch: Branch, kind: GammaKind, t: f64) -> f64 {
        let pair = if kind.coupling().needs_pair_distance() {
            2.0 * self.config().trap_half_dist
        } else {
            0.0
        };
        oscillation_scale(&self.model, branch, t, pair)
    }

    /// Γ(t) for the given branch and coherence.
    pub fn gamma(&self, branch: Branch, kind: GammaKind, t: f64, temperature: f64) -> Result<f64> {
        self.check(kind, t, temperature)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        let coupling = kind.coupling();
        mode_integral(&self.model, branch, self.scale(branch, kind, t), |k, w| {
            let g = self.model.coupling_at(coupling, k, w);
            gamma_density(g, w, t, temperature)
        })
    }

    /// γ(t) = dΓ/dt, differentiated under the integral.
    pub fn decay_rate(&self, branch: Branch, kind: GammaKind, t: f64, temperature: f64) -> Result<f64> {
        self.check(kind, t, temperature)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        let coupling = kind.coupling();
        mode_integral(&self.model, branch, self.scale(branch, kind, t), |k, w| {
            let g = self.model.coupling_at(coupling, k, w);
            rate_density(g, w, t, temperature)
        })
    }

    /// (Γ(t), γ(t)) from one pass over the modes.
    pub fn gamma_and_rate(&self, branch: Branch, kind: GammaKind, t: f64, temperature: f64) -> Result<(f64, f64)> {
        self.check(kind, t, temperature)?;
        if t == 0.0 {
            return Ok((0.0, 0.0));
        }
        let coupling = kind.coupling();
        let [g, r] = mode_integrals(&self.model, branch, self.scale(branch, kind, t), |k, w| {
            let g = self.model.coupling_at(coupling, k, w);
            [gamma_density(g, w, t, temperature), rate_density(g, w, t, temperature)]
        })?;
        Ok((g, r))
    }

    /// Γ and γ sampled on `n_steps + 1` uniform points in `[0, t_max]`.
    pub fn trajectory(&self, branch: Branch, kind: GammaKind, t_max: f64, n_steps: usize, temperature: f64) -> Result<GammaTrajectory> {
        ensure_positive("t_max", t_max)?;
        if n_steps < 64 {
            return Err(Error::InvalidParameter {
                name: "n_steps",
                value: n_steps as f64,
                reason: "at least 64 steps are required",
            });
        }
        let time_grid = uniform_grid(t_max, n_steps);
        let samples = time_grid
            .par_iter()
            .map(|&t| self.gamma_and_rate(branch, kind, t, temperature))
            .collect::<Result<Vec<(f64, f64)>>>()?;
        let (gamma, rate) = samples.into_iter().unzip();
        Ok(GammaTrajectory {
            time_grid,
            gamma,
            rate,
            branch,
            kind,
            config: *self.config(),
            temperature,
        })
    }

    /// Γ at [`PLATEAU_TIME`].
    pub fn plateau(&self, branch: Branch, kind: GammaKind, temperature: f64) -> Result<f64> {
        self.gamma(branch, kind, PLATEAU_TIME, temperature)
    }
}

/// `n + 1` points `i·t_max/n`; each point is computed independently so
/// refining the grid reproduces shared points exactly.
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| t_max * i as f64 / n as f64).collect()
}

/// Sampled Γ(t) and γ(t).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaTrajectory {
    pub time_grid: Vec<f64>,
    pub gamma: Vec<f64>,
    pub rate: Vec<f64>,
    pub branch: Branch,
    pub kind: GammaKind,
    pub config: ReservoirConfig,
    pub temperature: f64,
}

impl GammaTrajectory {
    pub fn len(&self) -> usize {
        self.time_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time_grid.is_empty()
    }
}

pub fn gamma(config: &ReservoirConfig, branch: Branch, kind: GammaKind, t: f64, temperature: f64) -> Result<f64> {
    Decoherence::new(*config)?.gamma(branch, kind, t, temperature)
}

pub fn decay_rate(config: &ReservoirConfig, branch: Branch, kind: GammaKind, t: f64, temperature: f64) -> Result<f64> {
    Decoherence::new(*config)?.decay_rate(branch, kind, t, temperature)
}

pub fn gamma_trajectory(
    config: &ReservoirConfig,
    branch: Branch,
    kind: GammaKind,
    t_max: f64,
    n_steps: usize,
    temperature: f64,
) -> Result<GammaTrajectory> {
    Decoherence::new(*config)?.trajectory(branch, kind, t_max, n_steps, temperature)
}
