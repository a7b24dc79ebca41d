//! Resolving a scenario from an INI file plus overrides, as the command
//! line does, without running it.
//!
//! `cargo run --example scenario_config`

use bosemix::cli::{parse_config, resolve, Overrides, ScenarioName};

const FILE: &str = "\
# two wells far apart, warm bath
r12 = 0.2, 0.5
L = 5
t_max = 30
temperature = 0.1
convention = as_printed
";

fn main() {
    let from_file = parse_config(FILE).expect("valid file");
    let flags = Overrides {
        steps: Some(600),
        ..Default::default()
    };
    match resolve(ScenarioName::GammaTwo, &from_file.merged(flags)) {
        Ok(s) => {
            println!("sweep {:?}, geometries {:?}", s.sweep, s.geometries);
            println!(
                "time grid {:?}, T = {}, convention {}",
                s.time,
                s.base.temperature,
                s.convention().as_str()
            );
        }
        Err(errors) => errors.iter().for_each(|e| eprintln!("{e}")),
    }

    let broken = "t_max = 30\nstep = 600\n[physcal]\n";
    let errors = parse_config(broken).and_then(|o| resolve(ScenarioName::GammaTwo, &o)).unwrap_err();
    for e in errors {
        println!("rejected: {e}");
    }
}
