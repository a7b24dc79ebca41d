//! Single-qubit decoherence factor Γ(t) in both branches, its plateau and
//! the effect of temperature.
//!
//! `cargo run --release --example single_qubit_dephasing`

use bosemix::dephasing::uniform_grid;
use bosemix::{Branch, Decoherence, GammaKind, ReservoirConfig};

fn main() -> bosemix::Result<()> {
    let d = Decoherence::new(ReservoirConfig::canonical().with_r12(0.2)?)?;
    println!("{:>6} {:>13} {:>13} {:>13}", "t", "Gamma+", "Gamma-", "Gamma-(T=0.5)");
    for t in uniform_grid(20.0, 10) {
        println!(
            "{t:>6.1} {:>13.6e} {:>13.6e} {:>13.6e}",
            d.gamma(Branch::Upper, GammaKind::Gamma0, t, 0.0)?,
            d.gamma(Branch::Lower, GammaKind::Gamma0, t, 0.0)?,
            d.gamma(Branch::Lower, GammaKind::Gamma0, t, 0.5)?
        );
    }
    let up = d.plateau(Branch::Upper, GammaKind::Gamma0, 0.0)?;
    let lo = d.plateau(Branch::Lower, GammaKind::Gamma0, 0.0)?;
    println!("\nplateau: upper {up:.6e}, lower {lo:.6e}, ratio {:.3}", lo / up);
    println!(
        "coherence |rho_01| / |rho_01(0)| at the plateau: upper {:.6}, lower {:.6}",
        (-up).exp(),
        (-lo).exp()
    );
    Ok(())
}
