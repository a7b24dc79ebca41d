//! Composite 15-point Gauss–Legendre quadrature with global adaptive
//! refinement, tuned for the smooth-but-oscillatory integrands over
//! momentum that appear in the decoherence and coupling integrals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 15;

/// Deepest bisection level a single panel may reach.
pub const MAX_LEVELS: u32 = 18;

/// Lower integration limit used for momentum integrals (removable 0/0 at k = 0).
pub const K_MIN: f64 = 1e-8;

/// Panel layout and tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub k_min: f64,
    pub k_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Half-period of the fastest oscillation of the integrand.
    pub oscillation_scale: f64,
    /// Initial panels per full oscillation period (at least 8).
    pub panels_per_period: usize,
}

impl QuadratureSpec {
    pub fn new(k_min: f64, k_max: f64, oscillation_scale: f64) -> Self {
        Self {
            k_min,
            k_max,
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            oscillation_scale,
            panels_per_period: 8,
        }
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.k_min.is_finite() && self.k_max.is_finite() && self.k_min < self.k_max) {
            return Err(Error::InvalidParameter {
                name: "k_max",
                value: self.k_max,
                reason: "integration interval must satisfy k_min < k_max",
            });
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: self.rel_tol,
                reason: "tolerances must be positive",
            });
        }
        if !(self.oscillation_scale > 0.0) {
            return Err(Error::InvalidParameter {
                name: "oscillation_scale",
                value: self.oscillation_scale,
                reason: "must be positive",
            });
        }
        if self.panels_per_period < 8 {
            return Err(Error::InvalidParameter {
                name: "panels_per_period",
                value: self.panels_per_period as f64,
                reason: "at least 8 panels per oscillation period are required",
            });
        }
        Ok(())
    }

    /// Width of the initial uniform panels.
    pub fn initial_panel_width(&self) -> f64 {
        let period = 2.0 * self.oscillation_scale;
        (period / self.panels_per_period as f64).min(self.k_max - self.k_min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

/// Nodes on [-1, 1] (only the non-negative half) and weights of the
/// 15-point Gauss–Legendre rule.
struct GaussLegendre {
    nodes: [f64; ORDER],
    weights: [f64; ORDER],
}

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(ORDER))
}

fn gauss_legendre(n: usize) -> GaussLegendre {
    let mut nodes = [0.0; ORDER];
    let mut weights = [0.0; ORDER];
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    GaussLegendre { nodes, weights }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// 15-point Gauss–Legendre on a single panel.
pub fn gauss_legendre_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let r = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

fn gauss_legendre_vec<const N: usize, F: Fn(f64) -> [f64; N]>(f: &F, a: f64, b: f64) -> [f64; N] {
    let r = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = [0.0; N];
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        let y = f(mid + half * x);
        for (s, v) in acc.iter_mut().zip(y) {
            *s += w * v;
        }
    }
    acc.map(|s| s * half)
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    whole: [f64; N],
    left: [f64; N],
    right: [f64; N],
    level: u32,
    /// Error relative to the per-component weight, used as heap priority.
    priority: f64,
    /// Position key for deterministic tie-breaking.
    key: (u64, u32),
}

impl<const N: usize> Panel<N> {
    fn build<F: Fn(f64) -> [f64; N]>(f: &F, a: f64, b: f64, whole: [f64; N], level: u32, key: (u64, u32), weights: &[f64; N]) -> Self {
        let m = 0.5 * (a + b);
        let left = gauss_legendre_vec(f, a, m);
        let right = gauss_legendre_vec(f, m, b);
        let mut p = Self {
            a,
            b,
            whole,
            left,
            right,
            level,
            priority: 0.0,
            key,
        };
        p.priority = (0..N).map(|i| p.error(i) / weights[i]).fold(0.0, f64::max);
        p
    }

    fn value(&self, i: usize) -> f64 {
        self.left[i] + self.right[i]
    }

    fn error(&self, i: usize) -> f64 {
        (self.whole[i] - self.value(i)).abs()
    }
}

struct ByError<const N: usize>(Panel<N>);

impl<const N: usize> PartialEq for ByError<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<const N: usize> Eq for ByError<N> {}
impl<const N: usize> PartialOrd for ByError<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for ByError<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .priority
            .total_cmp(&other.0.priority)
            .then_with(|| other.0.key.cmp(&self.0.key))
    }
}

/// Integrates `f` over `[spec.k_min, spec.k_max]`.
///
/// The interval is first cut into uniform panels sized from the
/// oscillation scale; the panel with the largest error estimate is then
/// bisected until the summed estimate meets `max(rel_tol*|I|, abs_tol)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<Quadrature> {
    let [q] = integrate_vec(|x| [f(x)], spec)?;
    Ok(q)
}

/// [`integrate`] for several integrands sharing their nodes; refinement
/// continues until every component meets the tolerance.
pub fn integrate_vec<const N: usize, F: Fn(f64) -> [f64; N]>(f: F, spec: &QuadratureSpec) -> Result<[Quadrature; N]> {
    spec.validate()?;
    let width = spec.initial_panel_width();
    let n = ((spec.k_max - spec.k_min) / width).ceil().max(1.0) as u64;
    let h = (spec.k_max - spec.k_min) / n as f64;

    let mut first = Vec::with_capacity(n as usize);
    for i in 0..n {
        let a = spec.k_min + h * i as f64;
        let b = if i + 1 == n { spec.k_max } else { spec.k_min + h * (i + 1) as f64 };
        first.push((a, b, gauss_legendre_vec(&f, a, b)));
    }
    let mut weights = [0.0; N];
    for (i, w) in weights.iter_mut().enumerate() {
        let estimate: f64 = first.iter().map(|p| p.2[i]).sum();
        *w = (spec.rel_tol * estimate.abs()).max(spec.abs_tol);
    }
    let mut heap = BinaryHeap::with_capacity(first.len());
    for (i, (a, b, whole)) in first.into_iter().enumerate() {
        heap.push(ByError(Panel::build(&f, a, b, whole, 0, ((i as u64) << 20, 0), &weights)));
    }

    let mut total_err = [0.0; N];
    let mut total_val = [0.0; N];
    for p in heap.iter() {
        for i in 0..N {
            total_err[i] += p.0.error(i);
            total_val[i] += p.0.value(i);
        }
    }
    loop {
        let converged = (0..N).all(|i| total_err[i] <= (spec.rel_tol * total_val[i].abs()).max(spec.abs_tol));
        if converged {
            break;
        }
        let Some(ByError(worst)) = heap.pop() else { break };
        if worst.level >= MAX_LEVELS {
            let i = (0..N)
                .max_by(|&x, &y| (total_err[x] / weights[x]).total_cmp(&(total_err[y] / weights[y])))
                .unwrap_or(0);
            return Err(Error::QuadratureFailure {
                value: total_val[i],
                error: total_err[i],
                levels: worst.level,
            });
        }
        let m = 0.5 * (worst.a + worst.b);
        let level = worst.level + 1;
        let shift = 20 - level.min(20);
        let (base, _) = worst.key;
        let left = Panel::build(&f, worst.a, m, worst.left, level, (base, level), &weights);
        let right = Panel::build(&f, m, worst.b, worst.right, level, (base + (1u64 << shift), level), &weights);
        for i in 0..N {
            total_err[i] += left.error(i) + right.error(i) - worst.error(i);
            total_val[i] += left.value(i) + right.value(i) - worst.value(i);
        }
        heap.push(ByError(left));
        heap.push(ByError(right));
    }

    // Resum in interval order so the result does not depend on heap history.
    let mut panels: Vec<Panel<N>> = heap.into_iter().map(|p| p.0).collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(std::array::from_fn(|i| {
        let values: Vec<f64> = panels.iter().map(|p| p.value(i)).collect();
        let errors: Vec<f64> = panels.iter().map(|p| p.error(i)).collect();
        Quadrature {
            value: pairwise_sum(&values),
            error: pairwise_sum(&errors),
        }
    }))
}

/// Pairwise (cascade) summation with a fixed split pattern.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}
