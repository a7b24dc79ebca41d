use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = bosemix::cli::Args::parse();
    match bosemix::cli::run(&args) {
        Ok(manifest) => {
            for f in &manifest.outputs {
                println!("{}", args.out.join(f).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
