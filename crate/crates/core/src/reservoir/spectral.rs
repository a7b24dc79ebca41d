//! Spectral density functions J(ω) = Σ_k |g_k|² δ(ω − ω_k) in the
//! continuum limit, their low-frequency Ohmic form, and power-law fits.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use super::dispersion::{Branch, CouplingKind, DispersionModel};
use crate::error::{Error, Result};
use crate::numerics::fit::fit_loglog;

/// Threshold τ separating sub-Ohmic / Ohmic / super-Ohmic exponents.
pub const OHMIC_TOLERANCE: f64 = 0.1;

/// J(ω) = |ĝ(k)|² / (π dω/dk) at the unique k with ω(k) = ω.
pub fn spectral_density_numeric(model: &DispersionModel, branch: Branch, kind: CouplingKind, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            reason: "spectral density is evaluated at positive frequencies",
        });
    }
    let k = model.invert(branch, omega)?;
    let g = model.coupling(branch, kind, k);
    let vg = model.group_velocity(branch, k);
    Ok(g * g / (PI * vg))
}

/// Which closed-form low-frequency expression [`AnalyticSdf`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdfForm {
    /// Linear-phonon reduction of the numeric density:
    /// η ω sin²(√2 γ L ω/ω_c) e^{-ω²/ω_c²}.
    Phonon,
    /// η ω sin(√2 γ L ω/ω_c) e^{-ω²/ω_c²} with the branch-independent η.
    Printed,
}

/// Ohmic-type spectral density with exponential cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSdf {
    pub eta: f64,
    /// ω_c = √2 c/l_I
    pub cutoff: f64,
    /// γ = l₀/l_I
    pub geometry_gamma: f64,
    pub well_half_sep: f64,
    pub form: SdfForm,
}

impl AnalyticSdf {
    /// Phonon-regime reduction for one branch: η = κ²/(2π c³).
    pub fn phonon(model: &DispersionModel, branch: Branch) -> Result<Self> {
        let cfg = model.config();
        let c = model.sound_speed(branch);
        if !(c > 0.0) {
            return Err(Error::InvalidParameter {
                name: "r12",
                value: cfg.r12,
                reason: "branch has no phonon regime (vanishing sound speed)",
            });
        }
        Ok(Self {
            eta: cfg.coupling_prefactor.powi(2) / (2.0 * PI * c.powi(3)),
            cutoff: SQRT_2 * c / cfg.p,
            geometry_gamma: 1.0 / cfg.p,
            well_half_sep: cfg.well_half_sep,
            form: SdfForm::Phonon,
        })
    }

    /// Single-sine form with η = κ²/(2π (α/2)^{3/2}), the value of the
    /// prefactor at a₁₂ = 0 for either branch.
    pub fn printed(model: &DispersionModel, branch: Branch) -> Result<Self> {
        let cfg = model.config();
        let mut sdf = Self::phonon(model, branch)?;
        sdf.eta = cfg.coupling_prefactor.powi(2) / (2.0 * PI * cfg.mean_field_energy().powf(1.5));
        sdf.form = SdfForm::Printed;
        Ok(sdf)
    }

    pub fn evaluate(&self, omega: f64) -> f64 {
        let x = omega / self.cutoff;
        let phase = SQRT_2 * self.geometry_gamma * self.well_half_sep * x;
        let oscillation = match self.form {
            SdfForm::Phonon => phase.sin().powi(2),
            SdfForm::Printed => phase.sin(),
        };
        self.eta * omega * oscillation * (-x * x).exp()
    }

    /// First positive frequency where the oscillating factor vanishes.
    pub fn first_zero(&self) -> f64 {
        PI * self.cutoff / (SQRT_2 * self.geometry_gamma * self.well_half_sep)
    }
}

pub fn analytic_sdf(sdf: &AnalyticSdf, omega: f64) -> f64 {
    sdf.evaluate(omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ohmicity {
    SubOhmic,
    Ohmic,
    SuperOhmic,
}

impl Ohmicity {
    pub fn classify(s: f64, tau: f64) -> Self {
        if s < 1.0 - tau {
            Ohmicity::SubOhmic
        } else if s > 1.0 + tau {
            Ohmicity::SuperOhmic
        } else {
            Ohmicity::Ohmic
        }
    }
}

/// Tabulated J(ω) with the power-law exponent fitted over a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSample {
    pub omega_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub fit_window: (f64, f64),
    pub ohmicity_s: f64,
    pub fit_residual: f64,
}

impl SpectralSample {
    /// Unfitted sample (exponent NaN until [`Self::fitted`] is called).
    pub fn new(omega_grid: Vec<f64>, values: Vec<f64>, fit_window: (f64, f64)) -> Self {
        Self {
            omega_grid,
            values,
            fit_window,
            ohmicity_s: f64::NAN,
            fit_residual: f64::NAN,
        }
    }

    /// Evaluates the numeric density on `omega_grid`.
    pub fn tabulate(
        model: &DispersionModel,
        branch: Branch,
        kind: CouplingKind,
        omega_grid: Vec<f64>,
        fit_window: (f64, f64),
    ) -> Result<Self> {
        let values = omega_grid
            .iter()
            .map(|&w| spectral_density_numeric(model, branch, kind, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(omega_grid, values, fit_window))
    }

    pub fn fitted(mut self) -> Result<Self> {
        let fit = ohmicity_fit(&self)?;
        self.ohmicity_s = fit.exponent;
        self.fit_residual = fit.residual;
        Ok(self)
    }

    pub fn classification(&self) -> Ohmicity {
        Ohmicity::classify(self.ohmicity_s, OHMIC_TOLERANCE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OhmicityFit {
    pub exponent: f64,
    pub residual: f64,
    pub class: Ohmicity,
    pub tolerance: f64,
}

/// Log-log slope of J over the sample's fit window.
pub fn ohmicity_fit(sample: &SpectralSample) -> Result<OhmicityFit> {
    let (lo, hi) = sample.fit_window;
    if !(lo > 0.0 && hi > lo) || hi / lo < 10f64.sqrt() {
        return Err(Error::DegenerateFit(format!(
            "fit window [{lo}, {hi}] must span at least half a decade"
        )));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = sample
        .omega_grid
        .iter()
        .zip(&sample.values)
        .filter(|(w, _)| **w >= lo && **w <= hi)
        .map(|(w, j)| (*w, *j))
        .unzip();
    if let Some(j) = ys.iter().find(|j| !(**j > 0.0)) {
        return Err(Error::DegenerateFit(format!(
            "non-positive spectral density {j} inside the fit window"
        )));
    }
    let fit = fit_loglog(&xs, &ys)?;
    Ok(OhmicityFit {
        exponent: fit.slope,
        residual: fit.residual,
        class: Ohmicity::classify(fit.slope, OHMIC_TOLERANCE),
        tolerance: OHMIC_TOLERANCE,
    })
}

/// `n` log-spaced points covering `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { hi } else { lo * (step * i as f64).exp() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ReservoirConfig;

    fn model(r12: f64, l: f64) -> DispersionModel {
        let cfg = ReservoirConfig::canonical()
            .allowing_immiscible(true)
            .with_r12(r12)
            .unwrap()
            .with_geometry(l, 2.0 * l)
            .unwrap();
        DispersionModel::new(cfg).unwrap()
    }

    #[test]
    fn linear_and_quadratic_exponents() {
        let grid = log_grid(0.01, 1.0, 40);
        for (power, want) in [(1, 1.0), (2, 2.0)] {
            let values: Vec<f64> = grid.iter().map(|w| 0.3 * w.powi(power)).collect();
            let s = SpectralSample::new(grid.clone(), values, (0.02, 0.5)).fitted().unwrap();
            assert!((s.ohmicity_s - want).abs() < 1e-6);
        }
    }

    #[test]
    fn classification_thresholds() {
        assert_eq!(Ohmicity::classify(0.85, 0.1), Ohmicity::SubOhmic);
        assert_eq!(Ohmicity::classify(1.05, 0.1), Ohmicity::Ohmic);
        assert_eq!(Ohmicity::classify(1.2, 0.1), Ohmicity::SuperOhmic);
    }

    #[test]
    fn degenerate_windows() {
        let grid = log_grid(0.01, 1.0, 40);
        let values: Vec<f64> = grid.iter().map(|w| *w).collect();
        let narrow = SpectralSample::new(grid.clone(), values.clone(), (0.1, 0.2));
        assert!(matches!(ohmicity_fit(&narrow), Err(Error::DegenerateFit(_))));
        let mut zeroed = values;
        zeroed[20] = 0.0;
        let s = SpectralSample::new(grid, zeroed, (0.01, 1.0));
        assert!(matches!(ohmicity_fit(&s), Err(Error::DegenerateFit(_))));
    }

    #[test]
    fn vanishes_at_low_frequency() {
        let m = model(0.2, 0.75);
        let j1 = spectral_density_numeric(&m, Branch::Upper, CouplingKind::Single, 1e-4).unwrap();
        let j2 = spectral_density_numeric(&m, Branch::Upper, CouplingKind::Single, 1e-3).unwrap();
        assert!(j1 < j2 && j1 < 1e-10);
    }

    #[test]
    fn decoupled_modes() {
        let m = model(0.2, 7.5);
        let peak = log_grid(1e-3, 20.0, 4000)
            .into_iter()
            .map(|w| spectral_density_numeric(&m, Branch::Lower, CouplingKind::Single, w).unwrap())
            .fold(0.0, f64::max);
        for n in 1..6 {
            let k = n as f64 * PI / 7.5;
            let w = m.energy(Branch::Lower, k);
            let j = spectral_density_numeric(&m, Branch::Lower, CouplingKind::Single, w).unwrap();
            assert!(j < 1e-12 * peak, "n={n}: {j} vs peak {peak}");
        }
    }

    #[test]
    fn analytic_zeros() {
        let m = model(0.2, 0.75);
        for form in [SdfForm::Phonon, SdfForm::Printed] {
            let sdf = match form {
                SdfForm::Phonon => AnalyticSdf::phonon(&m, Branch::Upper).unwrap(),
                SdfForm::Printed => AnalyticSdf::printed(&m, Branch::Upper).unwrap(),
            };
            assert_eq!(analytic_sdf(&sdf, 0.0), 0.0);
            let z = sdf.first_zero();
            assert!(analytic_sdf(&sdf, z).abs() < 1e-15 * sdf.eta * z);
        }
    }

    #[test]
    fn printed_form_is_quadratic_phonon_form_cubic() {
        let m = model(0.2, 0.75);
        for (sdf, want) in [
            (AnalyticSdf::printed(&m, Branch::Upper).unwrap(), 2.0),
            (AnalyticSdf::phonon(&m, Branch::Upper).unwrap(), 3.0),
        ] {
            let hi = 0.05 * sdf.cutoff;
            let grid = log_grid(1e-4 * sdf.cutoff, hi, 30);
            let values: Vec<f64> = grid.iter().map(|w| sdf.evaluate(*w)).collect();
            let s = SpectralSample::new(grid, values, (1e-4 * sdf.cutoff, hi)).fitted().unwrap();
            assert!((s.ohmicity_s - want).abs() < 0.01, "{:?}: {}", sdf.form, s.ohmicity_s);
        }
    }

    #[test]
    fn printed_prefactor_matches_phonon_at_zero_interaction() {
        let m = model(0.0, 0.75);
        let a = AnalyticSdf::phonon(&m, Branch::Lower).unwrap();
        let b = AnalyticSdf::printed(&m, Branch::Lower).unwrap();
        assert!((a.eta - b.eta).abs() < 1e-15 * a.eta);
    }
}
