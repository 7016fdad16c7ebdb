//! The insert-then-bend task: phase machine, scripted scenarios and the
//! fixed-rate runner tying sensing, estimation and control together.

mod config;
mod phase;
mod run;
mod scenario;

pub use config::ControllerConfig;
pub use phase::{
    step, Command, ControllerState, FailureReason, Posture, StepInput, TaskKind, TaskPhase,
    Transition,
};
pub use run::{
    run_scenario, IssuedCommand, Rig, RunResult, SensorSample, SimulationSettings, TraceRecord,
};
pub use scenario::{ActiveContacts, ObjectPose, Outcome, Scenario, ScriptClock, ScriptedContact};
