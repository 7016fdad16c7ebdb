macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(sweep_experiment, "sweep_experiment.rs");
example!(calibrate_sensor, "calibrate_sensor.rs");
example!(multi_contact, "multi_contact.rs");
example!(scissors_grasp, "scissors_grasp.rs");
example!(scissors_regrasp, "scissors_regrasp.rs");
example!(wire_kinematics, "wire_kinematics.rs");
example!(replay_log, "replay_log.rs");

#[test]
fn sweep_experiment_runs() {
    sweep_experiment::run_example().expect("sweep example runs");
}

#[test]
fn calibrate_sensor_runs() {
    calibrate_sensor::run_example().expect("calibration example runs");
}

#[test]
fn multi_contact_runs() {
    multi_contact::run_example().expect("multi-contact example runs");
}

#[test]
fn scissors_grasp_runs() {
    scissors_grasp::run_example().expect("grasp example runs");
}

#[test]
fn scissors_regrasp_runs() {
    scissors_regrasp::run_example().expect("regrasp example runs");
}

#[test]
fn wire_kinematics_runs() {
    wire_kinematics::run_example().expect("kinematics example runs");
}

#[test]
fn replay_log_runs() {
    replay_log::run_example().expect("replay example runs");
}
