//! Trace-distance (BLP) measure of information backflow for a dephasing
//! qubit.
//!
//! For antipodal equator states the trace distance is D(t) = e^{−Γ(t)},
//! so backflow happens exactly where the decay rate γ = Γ' is negative:
//!
//! ```text
//! N = Σ_{intervals with γ<0} [D(t_end) − D(t_start)]
//! ```

use serde::{Deserialize, Serialize};

use crate::dephasing::{Decoherence, GammaKind, GammaTrajectory};
use crate::error::{Error, Result};
use crate::reservoir::Branch;

/// Crossing times of γ are bisected to this width.
pub const CROSSING_TOL: f64 = 1e-8;
/// Local refinement depth for steps that may hide a sign change.
pub const MAX_REFINE_LEVELS: u32 = 20;

/// Something that can report Γ and γ at arbitrary times.
pub trait DephasingProcess: Sync {
    fn gamma(&self, t: f64) -> Result<f64>;
    fn rate(&self, t: f64) -> Result<f64>;
}

/// Γ and γ computed from the reservoir model.
#[derive(Debug, Clone)]
pub struct ModelProcess {
    pub decoherence: Decoherence,
    pub branch: Branch,
    pub kind: GammaKind,
    pub temperature: f64,
}

impl ModelProcess {
    pub fn for_trajectory(traj: &GammaTrajectory) -> Result<Self> {
        Ok(Self {
            decoherence: Decoherence::new(traj.config)?,
            branch: traj.branch,
            kind: traj.kind,
            temperature: traj.temperature,
        })
    }
}

impl DephasingProcess for ModelProcess {
    fn gamma(&self, t: f64) -> Result<f64> {
        self.decoherence.gamma(self.branch, self.kind, t, self.temperature)
    }

    fn rate(&self, t: f64) -> Result<f64> {
        self.decoherence.decay_rate(self.branch, self.kind, t, self.temperature)
    }
}

/// Γ and γ given as closures.
pub struct ClosureProcess<G, R> {
    pub gamma: G,
    pub rate: R,
}

impl<G, R> DephasingProcess for ClosureProcess<G, R>
where
    G: Fn(f64) -> f64 + Sync,
    R: Fn(f64) -> f64 + Sync,
{
    fn gamma(&self, t: f64) -> Result<f64> {
        Ok((self.gamma)(t))
    }

    fn rate(&self, t: f64) -> Result<f64> {
        Ok((self.rate)(t))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackflowReport {
    /// N ≥ 0, the total increase of the trace distance.
    pub measure: f64,
    /// ∫_{γ<0} γ dt, i.e. the summed decrease of Γ (≤ 0).
    pub raw_measure: f64,
    /// Disjoint, ordered intervals on which γ < 0.
    pub intervals: Vec<(f64, f64)>,
    /// D(t) = e^{−Γ(t)} on the trajectory grid.
    pub trace_distance: Vec<f64>,
}

#[derive(Clone, Copy)]
struct Sample {
    t: f64,
    gamma: f64,
    rate: f64,
}

fn negative(r: f64) -> bool {
    r < 0.0
}

/// Whether the cubic Hermite interpolant of Γ on [a, b] has a derivative
/// that changes sign inside the step although the endpoint rates agree.
fn suspect(a: Sample, b: Sample, floor: f64) -> bool {
    if negative(a.rate) != negative(b.rate) {
        return false;
    }
    let h = b.t - a.t;
    let dg = b.gamma - a.gamma;
    if negative(a.rate) {
        if dg > 0.0 {
            return true;
        }
    } else if dg < 0.0 {
        return true;
    }
    // p'(s)/h on s in [0,1] for the Hermite cubic
    let m0 = a.rate;
    let m1 = b.rate;
    let slope = dg / h;
    let qa = 3.0 * (m0 + m1 - 2.0 * slope);
    let qb = 2.0 * (3.0 * slope - 2.0 * m0 - m1);
    let deriv = |s: f64| m0 + qb * s + qa * s * s;
    if qa == 0.0 {
        return false;
    }
    let s = -qb / (2.0 * qa);
    if !(s > 0.0 && s < 1.0) {
        return false;
    }
    let extreme = deriv(s);
    if negative(m0) {
        extreme > floor
    } else {
        extreme < -floor
    }
}

fn sample<P: DephasingProcess + ?Sized>(p: &P, t: f64) -> Result<Sample> {
    Ok(Sample {
        t,
        gamma: p.gamma(t)?,
        rate: p.rate(t)?,
    })
}

/// Subdivide [a, b] until no step is suspect; returns the samples after `a`.
fn refine<P: DephasingProcess + ?Sized>(p: &P, a: Sample, b: Sample, floor: f64, level: u32, out: &mut Vec<Sample>) -> Result<()> {
    if !suspect(a, b, floor) {
        out.push(b);
        return Ok(());
    }
    if level >= MAX_REFINE_LEVELS {
        return Err(Error::GridTooCoarse { t: a.t });
    }
    let m = sample(p, 0.5 * (a.t + b.t))?;
    refine(p, a, m, floor, level + 1, out)?;
    refine(p, m, b, floor, level + 1, out)
}

/// Time in (a, b) where γ changes sign, to [`CROSSING_TOL`].
fn crossing<P: DephasingProcess + ?Sized>(p: &P, a: Sample, b: Sample) -> Result<f64> {
    let mut lo = a.t;
    let mut hi = b.t;
    let lo_negative = negative(a.rate);
    while hi - lo > CROSSING_TOL {
        let mid = 0.5 * (lo + hi);
        if negative(p.rate(mid)?) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// BLP measure of a trajectory, re-evaluating Γ and γ from its model.
pub fn blp_measure(traj: &GammaTrajectory) -> Result<BackflowReport> {
    let process = ModelProcess::for_trajectory(traj)?;
    blp_measure_with(&traj.time_grid, &traj.gamma, &traj.rate, &process)
}

/// BLP measure from sampled Γ and γ, using `process` for local
/// refinement and crossing times.
pub fn blp_measure_with<P: DephasingProcess + ?Sized>(
    time_grid: &[f64],
    gamma: &[f64],
    rate: &[f64],
    process: &P,
) -> Result<BackflowReport> {
    let n = time_grid.len();
    if n < 2 || gamma.len() != n || rate.len() != n {
        return Err(Error::InvalidParameter {
            name: "time_grid",
            value: n as f64,
            reason: "need at least two samples with matching Γ and γ",
        });
    }
    if time_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter {
            name: "time_grid",
            value: n as f64,
            reason: "times must be strictly increasing",
        });
    }
    let floor = 1e-9 * rate.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
    let mut samples = vec![Sample {
        t: time_grid[0],
        gamma: gamma[0],
        rate: rate[0],
    }];
    for i in 1..n {
        let a = *samples.last().unwrap();
        let b = Sample {
            t: time_grid[i],
            gamma: gamma[i],
            rate: rate[i],
        };
        refine(process, a, b, floor, 0, &mut samples)?;
    }

    let mut intervals = Vec::new();
    let mut start = if negative(samples[0].rate) { Some(samples[0].t) } else { None };
    for w in samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        if negative(a.rate) == negative(b.rate) {
            continue;
        }
        let tc = crossing(process, a, b)?;
        match start.take() {
            Some(s) => intervals.push((s, tc)),
            None => start = Some(tc),
        }
    }
    if let Some(s) = start {
        intervals.push((s, samples.last().unwrap().t));
    }

    let mut measure = 0.0;
    let mut raw_measure = 0.0;
    for &(s, e) in &intervals {
        let gs = process.gamma(s)?;
        let ge = process.gamma(e)?;
        measure += ((-ge).exp() - (-gs).exp()).max(0.0);
        raw_measure += ge - gs;
    }
    Ok(BackflowReport {
        measure,
        raw_measure,
        intervals,
        trace_distance: gamma.iter().map(|g| (-g).exp()).collect(),
    })
}
