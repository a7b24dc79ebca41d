//! Experimental parameters to the dimensionless model, and back.
//!
//! `cargo run --example units`

use bosemix::params::to_dimensionless;
use bosemix::PhysicalParams;

fn main() -> bosemix::Result<()> {
    let phys = PhysicalParams::canonical();
    let l0 = phys.oscillator_length();
    let (g1, g2, g12) = phys.quasi_1d_couplings();
    println!(
        "l0 = {:.4} um, w_perp = {:.1} Hz",
        l0 * 1e6,
        phys.species[0].transverse_freq / (2.0 * std::f64::consts::PI)
    );
    println!("g1 = {g1:.4e} J m, g2 = {g2:.4e} J m, g12 = {g12:.4e} J m");

    let cfg = to_dimensionless(&phys)?;
    println!("alpha = {:.4}", cfg.alpha);
    println!("p = l_I/l0 = {:.4}", cfg.p);
    println!("r12 = a12/a = {:.4}", cfg.r12);
    println!("kappa = {:.6}", cfg.coupling_prefactor);
    println!("L = {:.4} l0, d = {:.4} l0", cfg.well_half_sep, cfg.trap_half_dist);
    println!("immiscible: {}", cfg.is_immiscible());
    Ok(())
}
