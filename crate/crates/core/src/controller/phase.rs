use std::fmt;

use serde::{Deserialize, Serialize};

use super::ControllerConfig;
use crate::estimation::{detect_touch, position_reached, ContactEstimate, SensorId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskPhase {
    Approach,
    Lower,
    CloseFingers,
    VerifyGrasp,
    RetryReset,
    Lift,
    Handover,
    RotateWrist,
    RegraspStep,
    VerifyBase,
    FinalGrasp,
    Operate,
    Done,
    Failed,
}

impl TaskPhase {
    pub fn is_terminal(self) -> bool {
        matches!(self, TaskPhase::Done | TaskPhase::Failed)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TaskPhase::Approach => "Approach",
            TaskPhase::Lower => "Lower",
            TaskPhase::CloseFingers => "CloseFingers",
            TaskPhase::VerifyGrasp => "VerifyGrasp",
            TaskPhase::RetryReset => "RetryReset",
            TaskPhase::Lift => "Lift",
            TaskPhase::Handover => "Handover",
            TaskPhase::RotateWrist => "RotateWrist",
            TaskPhase::RegraspStep => "RegraspStep",
            TaskPhase::VerifyBase => "VerifyBase",
            TaskPhase::FinalGrasp => "FinalGrasp",
            TaskPhase::Operate => "Operate",
            TaskPhase::Done => "Done",
            TaskPhase::Failed => "Failed",
        }
    }

    /// Whether the fingers are closed around something in this phase.
    pub fn fingers_closed(self) -> bool {
        matches!(
            self,
            TaskPhase::CloseFingers
                | TaskPhase::VerifyGrasp
                | TaskPhase::Lift
                | TaskPhase::Handover
                | TaskPhase::FinalGrasp
                | TaskPhase::Operate
        )
    }
}

impl fmt::Display for TaskPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named hand postures the controller asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Posture {
    Open,
    Grasp,
    Operate,
}

impl Posture {
    pub fn label(self) -> &'static str {
        match self {
            Posture::Open => "open",
            Posture::Grasp => "grasp",
            Posture::Operate => "operate",
        }
    }

    pub const ALL: [Posture; 3] = [Posture::Open, Posture::Grasp, Posture::Operate];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Command {
    MoveAbove {
        x_mm: f64,
        y_mm: f64,
    },
    Lower,
    SetPosture(Posture),
    /// Back to the pre-grasp pose after a failed grasp.
    LiftToPregrasp,
    Lift,
    Handover,
    RotateWrist {
        deg: f64,
    },
    AdvanceHand {
        mm: f64,
    },
    DriveThumb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    GraspNotDetected,
    BaseNotReached,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::GraspNotDetected => "grasp not detected within retry budget",
            FailureReason::BaseNotReached => "base contact not reached within regrasp budget",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    /// Grasp and lift, then stop.
    Grasp,
    /// Grasp, hand over, regrasp down to the finger base and operate.
    GraspAndOperate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControllerState {
    pub phase: TaskPhase,
    pub retries: u32,
    pub regrasp_steps: u32,
    pub failure: Option<FailureReason>,
}

impl ControllerState {
    pub fn start() -> Self {
        ControllerState {
            phase: TaskPhase::Approach,
            retries: 0,
            regrasp_steps: 0,
            failure: None,
        }
    }

    pub fn initial_commands(object_pose: (f64, f64)) -> Vec<Command> {
        vec![
            Command::SetPosture(Posture::Open),
            Command::MoveAbove {
                x_mm: object_pose.0,
                y_mm: object_pose.1,
            },
        ]
    }

    fn enter(self, phase: TaskPhase) -> Self {
        ControllerState { phase, ..self }
    }
}

/// What the controller sees when a phase ends.
#[derive(Debug, Clone, Copy)]
pub struct StepInput<'a> {
    /// Estimate history, indexed by sensor id; unconfigured sensors are empty.
    pub history: &'a [Vec<ContactEstimate>],
    pub task: TaskKind,
    pub object_pose: (f64, f64),
}

impl StepInput<'_> {
    fn of(&self, sensor: SensorId) -> &[ContactEstimate] {
        self.history
            .get(usize::from(sensor.index()))
            .map_or(&[], Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub next: ControllerState,
    pub commands: Vec<Command>,
}

/// Advances the task by one phase. Returns `None` in a terminal phase.
pub fn step(
    state: ControllerState,
    input: &StepInput<'_>,
    config: &ControllerConfig,
) -> Option<Transition> {
    use TaskPhase::*;

    let to = |phase, commands| {
        Some(Transition {
            next: state.enter(phase),
            commands,
        })
    };
    let fail = |reason| {
        Some(Transition {
            next: ControllerState {
                phase: Failed,
                failure: Some(reason),
                ..state
            },
            commands: Vec::new(),
        })
    };

    match state.phase {
        Done | Failed => None,
        Approach => to(Lower, vec![Command::Lower]),
        Lower => to(CloseFingers, vec![Command::SetPosture(Posture::Grasp)]),
        CloseFingers => to(VerifyGrasp, Vec::new()),
        VerifyGrasp => {
            let touched = input
                .of(config.watched_sensor_grasp)
                .last()
                .is_some_and(|e| detect_touch(e, config.touch_threshold_p));
            if touched {
                to(Lift, vec![Command::Lift])
            } else if state.retries < config.max_retries {
                Some(Transition {
                    next: ControllerState {
                        phase: RetryReset,
                        retries: state.retries + 1,
                        ..state
                    },
                    commands: vec![Command::SetPosture(Posture::Open), Command::LiftToPregrasp],
                })
            } else {
                fail(FailureReason::GraspNotDetected)
            }
        }
        RetryReset => to(
            Approach,
            vec![Command::MoveAbove {
                x_mm: input.object_pose.0,
                y_mm: input.object_pose.1,
            }],
        ),
        Lift => match input.task {
            TaskKind::Grasp => to(Done, Vec::new()),
            TaskKind::GraspAndOperate => to(Handover, vec![Command::Handover]),
        },
        Handover => to(
            RotateWrist,
            vec![
                Command::SetPosture(Posture::Open),
                Command::RotateWrist {
                    deg: config.wrist_rotation_deg,
                },
            ],
        ),
        RotateWrist => regrasp(state, config),
        RegraspStep => to(VerifyBase, Vec::new()),
        VerifyBase => {
            let history = input.of(config.watched_sensor_regrasp);
            if position_reached(history, config.base_threshold_p, config.window_n) {
                to(FinalGrasp, vec![Command::SetPosture(Posture::Grasp)])
            } else if state.regrasp_steps < config.max_regrasp_steps {
                regrasp(state, config)
            } else {
                fail(FailureReason::BaseNotReached)
            }
        }
        FinalGrasp => to(
            Operate,
            vec![Command::SetPosture(Posture::Operate), Command::DriveThumb],
        ),
        Operate => to(Done, Vec::new()),
    }
}

fn regrasp(state: ControllerState, config: &ControllerConfig) -> Option<Transition> {
    Some(Transition {
        next: ControllerState {
            phase: TaskPhase::RegraspStep,
            regrasp_steps: state.regrasp_steps + 1,
            ..state
        },
        commands: vec![Command::AdvanceHand { mm: config.step_mm }],
    })
}
