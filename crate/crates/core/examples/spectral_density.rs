//! Numeric spectral densities, the closed-form low-frequency forms and
//! the fitted Ohmicity exponent.
//!
//! `cargo run --example spectral_density`

use bosemix::reservoir::{log_grid, spectral_density_numeric, AnalyticSdf, SpectralSample};
use bosemix::{Branch, CouplingKind, DispersionModel, ReservoirConfig};

fn main() -> bosemix::Result<()> {
    let m = DispersionModel::new(ReservoirConfig::canonical().with_r12(0.2)?)?;
    for b in Branch::ALL {
        let sdf = AnalyticSdf::phonon(&m, b)?;
        println!(
            "{b}: w_c = {:.4}, first zero of the analytic form at w = {:.4}",
            sdf.cutoff,
            sdf.first_zero()
        );
        println!("{:>10} {:>13} {:>13} {:>8}", "w/w_c", "J numeric", "J phonon", "ratio");
        for x in [0.001, 0.01, 0.05, 0.1, 0.3] {
            let w = x * sdf.cutoff;
            let num = spectral_density_numeric(&m, b, CouplingKind::Single, w)?;
            println!("{x:>10.3} {num:>13.6e} {:>13.6e} {:>8.4}", sdf.evaluate(w), num / sdf.evaluate(w));
        }
    }

    println!("\nOhmicity of J- on [0.01, 0.1]");
    for r12 in [0.2, 0.5, 0.9, 1.0] {
        let cfg = ReservoirConfig::canonical().allowing_immiscible(true).with_r12(r12)?;
        let m = DispersionModel::new(cfg)?;
        let s = SpectralSample::tabulate(&m, Branch::Lower, CouplingKind::Single, log_grid(0.01, 0.1, 32), (0.01, 0.1))?.fitted()?;
        println!("r12 = {r12:.1}: s = {:.3} ({:?})", s.ohmicity_s, s.classification());
    }
    Ok(())
}
