//! Bath-induced qubit-qubit coupling 𝒥(t), the two-qubit density matrix
//! and its Wootters concurrence.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dephasing::{gamma_density, mode_integral, mode_integrals, oscillation_scale, uniform_grid, Decoherence};
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::numerics::eigen::{eig4, frobenius, matmul, zeros, Matrix4};
use crate::params::ReservoirConfig;
use crate::reservoir::{Branch, CouplingKind};

/// Imaginary parts of ρρ̃ eigenvalues below this are discarded.
pub const IMAG_TOL: f64 = 1e-9;
/// Eigenvalues above −NEG_TOL are clamped to zero.
pub const NEG_TOL: f64 = 1e-9;
/// Allowed negativity of the assembled density matrix.
pub const POSITIVITY_TOL: f64 = 1e-8;

/// f(x) = x − sin x, with the series near 0.
fn f_kernel(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        x - x.sin()
    }
}

fn coupling_density(g: f64, w: f64, k: f64, t: f64, d: f64) -> f64 {
    f_kernel(w * t) * g * g * (2.0 * k * d).cos() / (w * w)
}

fn require_separation(cfg: &ReservoirConfig) -> Result<()> {
    if cfg.trap_half_dist > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "trap_half_dist",
            value: cfg.trap_half_dist,
            reason: "induced coupling needs a positive qubit separation",
        })
    }
}

/// 𝒥(t) = (2/π)∫dk (ωt − sin ωt) ĝ²(k) cos(2kd) / ω²(k).
pub fn induced_coupling_with(deco: &Decoherence, branch: Branch, t: f64) -> Result<f64> {
    ensure_non_negative("t", t)?;
    let model = deco.model();
    let cfg = model.config();
    require_separation(cfg)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let d = cfg.trap_half_dist;
    let scale = oscillation_scale(model, branch, t, 2.0 * d);
    let v = mode_integral(model, branch, scale, |k, w| {
        coupling_density(model.coupling_at(CouplingKind::Single, k, w), w, k, t, d)
    })?;
    Ok(2.0 * v)
}

pub fn induced_coupling(config: &ReservoirConfig, branch: Branch, t: f64) -> Result<f64> {
    induced_coupling_with(&Decoherence::new(*config)?, branch, t)
}

/// 𝒥(t) sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InducedCoupling {
    pub time_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub branch: Branch,
}

pub fn induced_coupling_trajectory(deco: &Decoherence, branch: Branch, t_max: f64, n_steps: usize) -> Result<InducedCoupling> {
    ensure_positive("t_max", t_max)?;
    let time_grid = uniform_grid(t_max, n_steps.max(1));
    let values = time_grid
        .par_iter()
        .map(|&t| induced_coupling_with(deco, branch, t))
        .collect::<Result<Vec<f64>>>()?;
    Ok(InducedCoupling { time_grid, values, branch })
}

/// The four numbers the two-qubit state depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateFactors {
    pub gamma0: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub coupling: f64,
}

impl StateFactors {
    pub fn unitary(coupling: f64) -> Self {
        Self {
            gamma0: 0.0,
            gamma1: 0.0,
            gamma2: 0.0,
            coupling,
        }
    }

    /// Γ⁰, Γ¹, Γ² and 𝒥 from one pass over the modes.
    pub fn evaluate(deco: &Decoherence, branch: Branch, t: f64, temperature: f64) -> Result<Self> {
        ensure_non_negative("t", t)?;
        ensure_non_negative("temperature", temperature)?;
        let model = deco.model();
        let cfg = model.config();
        require_separation(cfg)?;
        if t == 0.0 {
            return Ok(Self::unitary(0.0));
        }
        let d = cfg.trap_half_dist;
        let scale = oscillation_scale(model, branch, t, 2.0 * d);
        let [gamma0, gamma1, gamma2, half_coupling] = mode_integrals(model, branch, scale, |k, w| {
            let g0 = model.coupling_at(CouplingKind::Single, k, w);
            let pair = |kind: CouplingKind| g0 * kind.multiplier(k, d, cfg.pair_convention);
            [
                gamma_density(g0, w, t, temperature),
                gamma_density(pair(CouplingKind::PairSum), w, t, temperature),
                gamma_density(pair(CouplingKind::PairDiff), w, t, temperature),
                coupling_density(g0, w, k, t, d),
            ]
        })?;
        Ok(Self {
            gamma0,
            gamma1,
            gamma2,
            coupling: 2.0 * half_coupling,
        })
    }
}

/// Two-qubit density matrix in the basis |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    pub matrix: Matrix4,
}

impl TwoQubitState {
    /// Density matrix of the initially |++⟩ register, without a
    /// positivity check.
    pub fn from_factors(f: &StateFactors) -> Self {
        let r = Complex64::from_polar((-f.gamma0).exp(), 2.0 * f.coupling);
        let rc = r.conj();
        let one = Complex64::new(1.0, 0.0);
        let e1 = Complex64::new((-f.gamma1).exp(), 0.0);
        let e2 = Complex64::new((-f.gamma2).exp(), 0.0);
        let rows = [[one, r, r, e1], [rc, one, e2, rc], [rc, e2, one, rc], [e1, r, r, one]];
        let mut matrix = zeros();
        for i in 0..4 {
            for j in 0..4 {
                matrix[i][j] = 0.25 * rows[i][j];
            }
        }
        Self { matrix }
    }

    /// As [`from_factors`](Self::from_factors), rejecting non-positive results.
    pub fn checked(f: &StateFactors) -> Result<Self> {
        let s = Self::from_factors(f);
        let min = s.min_eigenvalue()?;
        if min < -POSITIVITY_TOL {
            return Err(Error::PositivityViolation { min_eigenvalue: min });
        }
        Ok(s)
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.matrix[i][i].re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.matrix[i][j] - self.matrix[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let ev = eig4(&self.matrix)?;
        Ok(ev.iter().map(|z| z.re).fold(f64::INFINITY, f64::min))
    }

    /// (σy⊗σy) ρ* (σy⊗σy).
    pub fn spin_flipped(&self) -> Matrix4 {
        // σy⊗σy is real, anti-diagonal with signs (-1, 1, 1, -1)
        let sign = [-1.0, 1.0, 1.0, -1.0];
        let mut out = zeros();
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = sign[i] * sign[j] * self.matrix[3 - i][3 - j].conj();
            }
        }
        out
    }
}

pub fn density_matrix(config: &ReservoirConfig, branch: Branch, t: f64, temperature: f64) -> Result<TwoQubitState> {
    let deco = Decoherence::new(*config)?;
    TwoQubitState::checked(&StateFactors::evaluate(&deco, branch, t, temperature)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceResult {
    pub value: f64,
    /// eigenvalues of ρρ̃, nonnegative and decreasing
    pub eigenvalues: [f64; 4],
}

/// F with ρ = F F†, by Cholesky with diagonal pivoting; columns past the
/// numerical rank are zero.
fn psd_factor(rho: &Matrix4) -> Matrix4 {
    let mut a = *rho;
    let mut f = zeros();
    let scale = (0..4).map(|i| a[i][i].re).fold(0.0, f64::max);
    let tol = 4.0 * f64::EPSILON * scale;
    for col in 0..4 {
        let j = (0..4).max_by(|&x, &y| a[x][x].re.total_cmp(&a[y][y].re)).unwrap_or(0);
        let pivot = a[j][j].re;
        if pivot <= tol {
            break;
        }
        let p = pivot.sqrt();
        let v: [Complex64; 4] = std::array::from_fn(|i| a[i][j] / p);
        for r in 0..4 {
            f[r][col] = v[r];
            for c in 0..4 {
                a[r][c] -= v[r] * v[c].conj();
            }
        }
    }
    f
}

pub fn concurrence(state: &TwoQubitState) -> Result<ConcurrenceResult> {
    // spectrum of ρρ̃ from the similar Hermitian matrix F†ρ̃F
    let f = psd_factor(&state.matrix);
    let f_dag: Matrix4 = std::array::from_fn(|i| std::array::from_fn(|j| f[j][i].conj()));
    let product = matmul(&f_dag, &matmul(&state.spin_flipped(), &f));
    let raw = eig4(&product)?;
    // spread of eigenvalues the solver cannot separate from zero
    let resolution = 16.0 * f64::EPSILON * frobenius(&product);
    let mut eigenvalues = [0.0; 4];
    for (slot, z) in eigenvalues.iter_mut().zip(raw.iter()) {
        if z.im.abs() >= IMAG_TOL {
            return Err(Error::EigenFailure { residual: z.im.abs() });
        }
        if z.re < -NEG_TOL {
            return Err(Error::PositivityViolation { min_eigenvalue: z.re });
        }
        *slot = if z.re <= resolution { 0.0 } else { z.re };
    }
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let s = eigenvalues.map(f64::sqrt);
    let value = (s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0);
    Ok(ConcurrenceResult { value, eigenvalues })
}

/// Everything behind the two-qubit entanglement curves of one branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementTrajectory {
    pub time_grid: Vec<f64>,
    pub factors: Vec<StateFactors>,
    pub concurrence: Vec<f64>,
    pub branch: Branch,
}

impl EntanglementTrajectory {
    pub fn coupling(&self) -> Vec<f64> {
        self.factors.iter().map(|f| f.coupling).collect()
    }

    /// First grid time at which C ≥ `level`.
    pub fn first_crossing(&self, level: f64) -> Option<f64> {
        self.time_grid
            .iter()
            .zip(&self.concurrence)
            .find(|(_, c)| **c >= level)
            .map(|(t, _)| *t)
    }
}

pub fn entanglement_trajectory(
    deco: &Decoherence,
    branch: Branch,
    t_max: f64,
    n_steps: usize,
    temperature: f64,
) -> Result<EntanglementTrajectory> {
    ensure_positive("t_max", t_max)?;
    let time_grid = uniform_grid(t_max, n_steps.max(1));
    let points = time_grid
        .par_iter()
        .map(|&t| {
            let f = StateFactors::evaluate(deco, branch, t, temperature)?;
            let c = concurrence(&TwoQubitState::checked(&f)?)?;
            Ok((f, c.value))
        })
        .collect::<Result<Vec<_>>>()?;
    let (factors, concurrence) = points.into_iter().unzip();
    Ok(EntanglementTrajectory {
        time_grid,
        factors,
        concurrence,
        branch,
    })
}

pub fn concurrence_trajectory(
    config: &ReservoirConfig,
    branch: Branch,
    t_max: f64,
    n_steps: usize,
    temperature: f64,
) -> Result<Vec<(f64, f64)>> {
    let traj = entanglement_trajectory(&Decoherence::new(*config)?, branch, t_max, n_steps, temperature)?;
    Ok(traj.time_grid.into_iter().zip(traj.concurrence).collect())
}
