//! Information backflow: the trace-distance measure N for each branch
//! over a sweep of the inter-species scattering ratio.
//!
//! `cargo run --release --example non_markovianity`

use bosemix::{blp_measure, Branch, Decoherence, GammaKind, ReservoirConfig};

fn main() -> bosemix::Result<()> {
    println!("{:>5} {:>12} {:>12} {:>12} {:>6}", "r12", "N+", "N-", "raw N-", "dips-");
    for r12 in [0.1, 0.2, 0.5, 0.7, 0.9] {
        let d = Decoherence::new(ReservoirConfig::canonical().with_r12(r12)?)?;
        let up = blp_measure(&d.trajectory(Branch::Upper, GammaKind::Gamma0, 50.0, 512, 0.0)?)?;
        let lo = blp_measure(&d.trajectory(Branch::Lower, GammaKind::Gamma0, 50.0, 512, 0.0)?)?;
        println!(
            "{r12:>5.2} {:>12.4e} {:>12.4e} {:>12.4e} {:>6}",
            up.measure,
            lo.measure,
            lo.raw_measure,
            lo.intervals.len()
        );
    }
    Ok(())
}
