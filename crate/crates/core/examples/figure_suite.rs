//! Regenerates the data of every figure scenario into a directory,
//! exactly as the `bosemix` binary does.
//!
//! `cargo run --release --example figure_suite -- [OUT_DIR]`

use std::path::PathBuf;

use bosemix::cli::{execute, Scenario, ScenarioName};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    for name in ScenarioName::ALL {
        let scenario = Scenario::defaults(name);
        let dir = out.join(name.as_str());
        let manifest = execute(&scenario, &dir)?;
        println!(
            "{name:<17} {:>3} tables in {:>6.1} s -> {}",
            manifest.outputs.len(),
            manifest.wall_clock_seconds,
            dir.display()
        );
    }
    Ok(())
}
