//! Bogoliubov branches of the symmetric mixture, their sound speeds and
//! the lower-branch threshold beyond miscibility.
//!
//! `cargo run --example dispersion`

use bosemix::{Branch, DispersionModel, ReservoirConfig};

fn main() -> bosemix::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>10}", "r12", "c+", "c-", "k_th(-)");
    for r12 in [0.0, 0.2, 0.5, 0.9, 1.0, 3.0] {
        let cfg = ReservoirConfig::canonical().allowing_immiscible(true).with_r12(r12)?;
        let m = DispersionModel::new(cfg)?;
        println!(
            "{r12:>6.2} {:>10.5} {:>10.5} {:>10.5}",
            m.sound_speed(Branch::Upper),
            m.sound_speed(Branch::Lower),
            m.threshold(Branch::Lower)
        );
    }

    let m = DispersionModel::new(ReservoirConfig::canonical().with_r12(0.2)?)?;
    println!("\n{:>6} {:>12} {:>12} {:>12}", "k", "eps+", "eps-", "k(eps-)");
    for k in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
        let lower = m.energy(Branch::Lower, k);
        println!(
            "{k:>6.2} {:>12.6} {:>12.6} {:>12.6}",
            m.energy(Branch::Upper, k),
            lower,
            m.invert(Branch::Lower, lower)?
        );
    }
    Ok(())
}
