//! Bath-induced coupling 𝒥(t) between two impurity qubits and the
//! concurrence it generates from the product state |++⟩.
//!
//! `cargo run --release --example concurrence`

use bosemix::entanglement::{concurrence, entanglement_trajectory, StateFactors};
use bosemix::{Branch, Decoherence, ReservoirConfig, TwoQubitState};

fn main() -> bosemix::Result<()> {
    let j = std::f64::consts::FRAC_PI_4;
    let c = concurrence(&TwoQubitState::from_factors(&StateFactors::unitary(j)))?;
    println!("without dephasing, J = pi/4: C = {:.12}\n", c.value);

    for r12 in [0.2, 0.9] {
        let cfg = ReservoirConfig::canonical().with_r12(r12)?.with_geometry(7.5, 15.0)?;
        let d = Decoherence::new(cfg)?;
        for b in Branch::ALL {
            let traj = entanglement_trajectory(&d, b, 40.0, 400, 0.0)?;
            let (i, c_max) = traj
                .concurrence
                .iter()
                .copied()
                .enumerate()
                .fold((0, 0.0), |acc, (i, c)| if c > acc.1 { (i, c) } else { acc });
            let f = &traj.factors[i];
            println!(
                "r12 = {r12}, {b}: max C = {c_max:.4e} at t = {:.1} (J = {:.4e}, Gamma0 = {:.3e}, Gamma1 = {:.3e}, Gamma2 = {:.3e})",
                traj.time_grid[i], f.coupling, f.gamma0, f.gamma1, f.gamma2
            );
        }
    }
    Ok(())
}
