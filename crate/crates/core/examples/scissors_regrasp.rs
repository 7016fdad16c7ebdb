// Hands the scissors over, advances the hand 5 mm at a time until the
// dorsal sensor reports base contact, then operates them.

use std::error::Error;
use std::path::Path;

use nerve_skin::controller::TaskPhase;
use nerve_skin::estimation::SensorId;
use nerve_skin::harness::{cmd_run, load_config, load_scenario, RunOverrides};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let config = load_config(&root.join("configs/default.toml"))?;
    let scenario = load_scenario(&root.join("scenarios/scissors_regrasp.toml"))?;
    let report = cmd_run(&config, &scenario, &RunOverrides::default())?;

    let mut step = None;
    for rec in &report.result.trace {
        if rec.phase == TaskPhase::VerifyBase && step != Some(rec.regrasp_step) {
            step = Some(rec.regrasp_step);
            let p = rec
                .samples
                .iter()
                .find(|s| s.sensor == SensorId::INDEX_DORSAL)
                .map_or(f64::NAN, |s| s.estimate.p);
            println!("step {:>2}: dorsal p = {p:6.2}", rec.regrasp_step);
        }
    }
    println!("{}", report.summary());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
