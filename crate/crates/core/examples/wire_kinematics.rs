// Wire displacement for each posture of the configured hand, and the joint
// angles they map back to.

use std::error::Error;
use std::path::Path;

use nerve_skin::hand::{posture_command, wire_to_angle};
use nerve_skin::harness::load_config;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let config = load_config(&Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/default.toml"))?;
    let hand = config.hand.ok_or("default config has a hand")?;
    for posture in ["open", "grasp", "operate"] {
        let wires = posture_command(posture, &hand.actuators)?;
        println!("{posture}:");
        for (a, x) in hand.actuators.iter().zip(&wires) {
            let angle = wire_to_angle(*x, a.pulley_radius_mm, a.limits)?;
            println!(
                "  actuator {} ({:?}) x = {x:6.3} mm  theta = {:5.1} deg{}",
                a.id,
                a.role,
                angle.theta_rad.to_degrees(),
                if angle.clamped { " (clamped)" } else { "" }
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
