//! Collective decoherence factors Γ¹, Γ² of a qubit pair and their decay
//! rates, for close and distant wells.
//!
//! `cargo run --release --example two_qubit_decay_rates`

use bosemix::dephasing::uniform_grid;
use bosemix::{Branch, Decoherence, GammaKind, PairConvention, ReservoirConfig};

fn main() -> bosemix::Result<()> {
    for l in [0.75, 7.5] {
        let cfg = ReservoirConfig::canonical().with_r12(0.2)?.with_geometry(l, 2.0 * l)?;
        let d = Decoherence::new(cfg)?;
        println!("L = {l}, 2d = 4L, lower branch");
        println!("{:>6} {:>13} {:>13} {:>13} {:>13}", "t", "Gamma1", "Gamma2", "gamma1", "gamma2");
        let mut min = [f64::INFINITY; 2];
        for (i, t) in uniform_grid(20.0, 400).into_iter().enumerate() {
            let (g1, r1) = d.gamma_and_rate(Branch::Lower, GammaKind::Gamma1, t, 0.0)?;
            let (g2, r2) = d.gamma_and_rate(Branch::Lower, GammaKind::Gamma2, t, 0.0)?;
            min = [min[0].min(r1), min[1].min(r2)];
            if i % 40 == 0 {
                println!("{t:>6.1} {g1:>13.6e} {g2:>13.6e} {r1:>13.6e} {r2:>13.6e}");
            }
        }
        println!("min gamma1 = {:.3e}, min gamma2 = {:.3e}\n", min[0], min[1]);
    }

    let t = 5.0;
    for conv in [PairConvention::CoherentSum, PairConvention::AsPrinted] {
        let d = Decoherence::new(ReservoirConfig::canonical().with_r12(0.2)?.with_convention(conv))?;
        let g0 = d.gamma(Branch::Upper, GammaKind::Gamma0, t, 0.0)?;
        let sum = d.gamma(Branch::Upper, GammaKind::Gamma1, t, 0.0)? + d.gamma(Branch::Upper, GammaKind::Gamma2, t, 0.0)?;
        println!("{}: (Gamma1 + Gamma2)/Gamma0 = {:.12}", conv.as_str(), sum / g0);
    }
    Ok(())
}
