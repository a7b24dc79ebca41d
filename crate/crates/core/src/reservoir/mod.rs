//! Bogoliubov excitations of the two-component reservoir, the qubit-bath
//! coupling amplitudes, and spectral densities.

pub mod dispersion;
pub mod spectral;

pub use dispersion::{Branch, CouplingKind, DispersionModel, TwoComponent};
pub use spectral::{
    analytic_sdf, log_grid, ohmicity_fit, spectral_density_numeric, AnalyticSdf, Ohmicity, OhmicityFit, SdfForm, SpectralSample,
    OHMIC_TOLERANCE,
};

/// ε±(k) for the model's configuration.
pub fn dispersion(model: &DispersionModel, branch: Branch, k: f64) -> f64 {
    model.energy(branch, k)
}

pub fn sound_speed(model: &DispersionModel, branch: Branch) -> f64 {
    model.sound_speed(branch)
}

pub fn coupling(model: &DispersionModel, branch: Branch, kind: CouplingKind, k: f64) -> f64 {
    model.coupling(branch, kind, k)
}

pub fn invert_dispersion(model: &DispersionModel, branch: Branch, omega: f64) -> crate::Result<f64> {
    model.invert(branch, omega)
}
