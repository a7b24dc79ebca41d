use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::quadrature::K_MIN;
use crate::params::{PairConvention, ReservoirConfig};

/// Upper (density) or lower (spin) Bogoliubov branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    pub const ALL: [Branch; 2] = [Branch::Upper, Branch::Lower];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Upper => "upper",
            Branch::Lower => "lower",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which qubit-bath coupling amplitude enters a quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingKind {
    /// single qubit, g_k
    Single,
    /// two qubits, same-side coherence (g₁ ∝ cos kd)
    PairSum,
    /// two qubits, opposite-side coherence (g₂ ∝ sin kd)
    PairDiff,
}

impl CouplingKind {
    pub fn name(self) -> &'static str {
        match self {
            CouplingKind::Single => "single",
            CouplingKind::PairSum => "pair_sum",
            CouplingKind::PairDiff => "pair_diff",
        }
    }

    pub fn needs_pair_distance(self) -> bool {
        !matches!(self, CouplingKind::Single)
    }

    /// Geometric multiplier applied to the single-qubit amplitude.
    pub fn multiplier(self, k: f64, d: f64, convention: PairConvention) -> f64 {
        let scale = match convention {
            PairConvention::CoherentSum => 2.0,
            PairConvention::AsPrinted => 1.0,
        };
        match self {
            CouplingKind::Single => 1.0,
            CouplingKind::PairSum => scale * (k * d).cos(),
            CouplingKind::PairDiff => scale * (k * d).sin(),
        }
    }
}

/// Number of knots in the inversion bracket table.
const TABLE_KNOTS: usize = 256;

/// Bogoliubov dispersion of a symmetric two-component mixture.
///
/// Immutable after construction; the bracket tables used by
/// [`DispersionModel::invert`] are built once in [`DispersionModel::new`].
#[derive(Debug, Clone)]
pub struct DispersionModel {
    config: ReservoirConfig,
    k_max: f64,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

impl DispersionModel {
    pub fn new(config: ReservoirConfig) -> Result<Self> {
        config.validate()?;
        let mut model = Self {
            config,
            k_max: 12.0 / config.p,
            upper: Vec::new(),
            lower: Vec::new(),
        };
        model.upper = model.build_table(Branch::Upper)?;
        model.lower = model.build_table(Branch::Lower)?;
        Ok(model)
    }

    fn build_table(&self, branch: Branch) -> Result<Vec<(f64, f64)>> {
        let k0 = self.threshold(branch);
        let span = self.k_max - k0;
        if span <= K_MIN {
            return Err(Error::InvalidParameter {
                name: "r12",
                value: self.config.r12,
                reason: "no real excitations below the momentum cutoff",
            });
        }
        let ratio = (span / K_MIN).powf(1.0 / (TABLE_KNOTS - 2) as f64);
        let mut table = Vec::with_capacity(TABLE_KNOTS);
        table.push((k0, self.energy(branch, k0)));
        let mut offset = K_MIN;
        for i in 0..TABLE_KNOTS - 1 {
            let k = if i == TABLE_KNOTS - 2 { self.k_max } else { k0 + offset };
            let w = self.energy(branch, k);
            let prev = table.last().map(|p| p.1).unwrap_or(0.0);
            if !(w > prev) {
                return Err(Error::InvalidParameter {
                    name: "r12",
                    value: self.config.r12,
                    reason: "dispersion is not monotone in k",
                });
            }
            table.push((k, w));
            offset *= ratio;
        }
        Ok(table)
    }

    pub fn config(&self) -> &ReservoirConfig {
        &self.config
    }

    /// Momentum cutoff 12/p where the Gaussian form factor falls below e⁻³⁶.
    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    /// (α/2)(1 ± a₁₂/a): mean-field energy seen by each branch.
    pub fn branch_coupling(&self, branch: Branch) -> f64 {
        self.config.mean_field_energy() * (1.0 + branch.sign() * self.config.r12)
    }

    /// Lowest momentum with a real excitation energy.  Zero unless the
    /// lower branch of a phase-separated mixture is requested.
    pub fn threshold(&self, branch: Branch) -> f64 {
        let beta = self.branch_coupling(branch);
        if beta < 0.0 {
            (-4.0 * beta).sqrt()
        } else {
            0.0
        }
    }

    /// ε±(k) in ħω⊥ (equivalently ω±(k) in ω⊥).  Below [`Self::threshold`]
    /// the excitation is not real and 0 is returned.
    pub fn energy(&self, branch: Branch, k: f64) -> f64 {
        let e = 0.5 * k * k;
        let beta = self.branch_coupling(branch);
        (e * (e + 2.0 * beta)).max(0.0).sqrt()
    }

    /// Mode a distance `offset` above the threshold momentum, as (k, ω).
    /// ω is formed from the offset itself so it stays accurate where
    /// k − k_th is below the resolution of k.
    pub fn mode_above_threshold(&self, branch: Branch, offset: f64) -> (f64, f64) {
        let k_th = self.threshold(branch);
        if k_th == 0.0 {
            return (offset, self.energy(branch, offset));
        }
        let k = k_th + offset;
        // E + 2β = (k² − k_th²)/2
        let gap = 0.5 * offset * (2.0 * k_th + offset);
        (k, (0.5 * k * k * gap).sqrt())
    }

    /// dω/dk.
    pub fn group_velocity(&self, branch: Branch, k: f64) -> f64 {
        let e = 0.5 * k * k;
        let beta = self.branch_coupling(branch);
        let w = self.energy(branch, k);
        if w == 0.0 {
            // phonon limit (or threshold, where the slope diverges)
            return if beta > 0.0 {
                beta.sqrt()
            } else if beta == 0.0 {
                k
            } else {
                f64::INFINITY
            };
        }
        k * (e + beta) / w
    }

    /// Sound speed c± = √((α/2)(1 ± a₁₂/a)); zero for a branch without a
    /// phonon regime.
    pub fn sound_speed(&self, branch: Branch) -> f64 {
        self.branch_coupling(branch).max(0.0).sqrt()
    }

    /// Two-component formula evaluated with identical species; used to
    /// cross-check [`Self::energy`].
    pub fn general_energy(&self, branch: Branch, k: f64) -> f64 {
        let gn = self.config.mean_field_energy();
        let mixture = TwoComponent {
            mass_ratio: [1.0, 1.0],
            mean_field: [gn, gn],
            cross_field: self.config.r12 * gn,
        };
        mixture.energy(branch, k)
    }

    /// Smallest k with ω(k) = ω, by bisection inside the cached bracket.
    pub fn invert(&self, branch: Branch, omega: f64) -> Result<f64> {
        let table = match branch {
            Branch::Upper => &self.upper,
            Branch::Lower => &self.lower,
        };
        let (k_lo, w_lo) = table[0];
        let (_, w_hi) = table[table.len() - 1];
        if !(omega >= 0.0) || omega > w_hi {
            return Err(Error::OutOfRange {
                omega,
                min: w_lo,
                max: w_hi,
            });
        }
        if omega == w_lo {
            return Ok(k_lo);
        }
        let idx = table.partition_point(|&(_, w)| w < omega);
        let (mut lo, mut hi) = (table[idx - 1].0, table[idx].0);
        if table[idx].1 == omega {
            return Ok(hi);
        }
        for _ in 0..200 {
            if hi - lo <= 1e-13 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.energy(branch, mid) < omega {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Scaled amplitude ĝ = √ℓ g for the requested coupling kind:
    /// κ √(E_k/ω_k) e^{-(kp/2)²} sin(kL) × geometric multiplier.
    pub fn coupling(&self, branch: Branch, kind: CouplingKind, k: f64) -> f64 {
        self.coupling_at(kind, k, self.energy(branch, k))
    }

    /// [`Self::coupling`] with ω(k) supplied by the caller.
    pub fn coupling_at(&self, kind: CouplingKind, k: f64, w: f64) -> f64 {
        if w <= 0.0 {
            return 0.0;
        }
        let cfg = &self.config;
        let e = 0.5 * k * k;
        let envelope = (-(0.5 * k * cfg.p).powi(2)).exp();
        let base = cfg.coupling_prefactor * (e / w).sqrt() * envelope * (k * cfg.well_half_sep).sin();
        base * kind.multiplier(k, cfg.trap_half_dist, cfg.pair_convention)
    }
}

/// Dimensionless two-component mixture for the general dispersion.
///
/// Masses are in units of the reference mass that sets l₀, mean-field
/// energies gν nν and the cross term g₁₂√(n₁n₂) are in ħω⊥.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoComponent {
    pub mass_ratio: [f64; 2],
    pub mean_field: [f64; 2],
    pub cross_field: f64,
}

impl TwoComponent {
    fn free(&self, species: usize, k: f64) -> f64 {
        0.5 * k * k / self.mass_ratio[species]
    }

    /// Bogoliubov energy of the individual components.
    pub fn component_energy(&self, species: usize, k: f64) -> f64 {
        let e = self.free(species, k);
        (e * e + 2.0 * e * self.mean_field[species]).sqrt()
    }

    pub fn energy(&self, branch: Branch, k: f64) -> f64 {
        let e1 = self.free(0, k);
        let e2 = self.free(1, k);
        let s1 = self.component_energy(0, k).powi(2);
        let s2 = self.component_energy(1, k).powi(2);
        let root = ((0.5 * (s1 - s2)).powi(2) + 4.0 * self.cross_field.powi(2) * e1 * e2).sqrt();
        (0.5 * (s1 + s2) + branch.sign() * root).max(0.0).sqrt()
    }

    /// Sound speeds from the long-wavelength limit, with cν² = gν nν/mν and
    /// the cross term taken as g₁₂² n₁n₂/(m₁m₂).
    pub fn sound_speed(&self, branch: Branch) -> f64 {
        let c1 = self.mean_field[0] / self.mass_ratio[0];
        let c2 = self.mean_field[1] / self.mass_ratio[1];
        let cross = self.cross_field.powi(2) / (self.mass_ratio[0] * self.mass_ratio[1]);
        let root = ((c1 - c2).powi(2) + 4.0 * cross).sqrt();
        (0.5 * (c1 + c2 + branch.sign() * root)).max(0.0).sqrt()
    }
}
