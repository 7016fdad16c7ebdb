// Presses every 5 mm along a line, with and without spikes, and prints the
// mean and variance of the estimated contact ratio at each position.

use std::error::Error;
use std::path::Path;

use nerve_skin::harness::{cmd_sweep, load_config, SweepOverrides};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let config = load_config(&Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/default.toml"))?;
    let report = cmd_sweep(
        &config,
        &SweepOverrides {
            repeats: Some(50),
            jitter_mm: None,
        },
    )?;
    print!("{}", report.to_csv());
    println!(
        "spiked variance >= smooth at {}/{} positions",
        report.spiked_variance_dominates(),
        report.rows.len()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
