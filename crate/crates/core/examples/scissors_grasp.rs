// Grasps a pair of scissors, with and without the object, and prints the
// phase sequence the controller walked through.

use std::error::Error;
use std::path::Path;

use nerve_skin::harness::{cmd_run, load_config, load_scenario, RunOverrides};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let config = load_config(&root.join("configs/default.toml"))?;
    for name in ["scissors_present", "scissors_moved", "no_scissors"] {
        let scenario = load_scenario(&root.join(format!("scenarios/{name}.toml")))?;
        let report = cmd_run(&config, &scenario, &RunOverrides::default())?;
        let mut phases: Vec<&str> = Vec::new();
        for rec in &report.result.trace {
            if phases.last() != Some(&rec.phase.as_str()) {
                phases.push(rec.phase.as_str());
            }
        }
        println!("{name}: {}", report.summary());
        println!("  {}", phases.join(" > "));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
