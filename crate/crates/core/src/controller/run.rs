use std::collections::BTreeMap;

use super::{
    step, Command, ControllerConfig, ControllerState, Outcome, Posture, Scenario, ScriptClock,
    StepInput, TaskKind, TaskPhase,
};
use crate::error::{ConfigError, Error};
use crate::estimation::{
    simulate_calibration, CalibrationData, ContactEstimate, FilterState, SensorChannel, SensorId,
    SimulatedCalibrationError,
};
use crate::hand::{posture_command, self_contact_mask, HandSpec, JointState};
use crate::nerve::{sense, ContactSet, NerveLineSpec};
use crate::rng::{stream, Stream};

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSettings {
    pub dt_ms: u64,
    pub noise_sd_counts: f64,
    pub filter_coefficient: f64,
    /// Snap scripted presses onto spikes.
    pub spikes: bool,
    pub calibration_samples: usize,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        SimulationSettings {
            dt_ms: crate::estimation::DEFAULT_DT_MS,
            noise_sd_counts: 0.0,
            filter_coefficient: crate::estimation::coefficient_from_cutoff(
                crate::estimation::DEFAULT_CUTOFF_HZ,
                crate::estimation::DEFAULT_DT_MS,
            ),
            spikes: true,
            calibration_samples: 120,
        }
    }
}

impl SimulationSettings {
    pub fn filter(&self) -> FilterState {
        FilterState::new(self.filter_coefficient, self.dt_ms)
            .expect("coefficient validated in [0, 1)")
    }
}

/// Configured sensor lines with their calibrations.
#[derive(Debug, Clone)]
pub struct Rig {
    sensors: BTreeMap<SensorId, NerveLineSpec>,
    calibrations: BTreeMap<SensorId, CalibrationData>,
    settings: SimulationSettings,
}

impl Rig {
    /// Calibrates every line by simulating the three calibration poses.
    pub fn calibrated(
        sensors: BTreeMap<SensorId, NerveLineSpec>,
        settings: SimulationSettings,
        seed: u64,
    ) -> Result<Rig, SimulatedCalibrationError> {
        let mut calibrations = BTreeMap::new();
        for (&id, spec) in &sensors {
            let mut rng = stream(seed, Stream::Calibration(id.index()));
            let cal = simulate_calibration(
                spec,
                settings.filter(),
                settings.noise_sd_counts,
                settings.calibration_samples,
                &mut rng,
            )?;
            calibrations.insert(id, cal);
        }
        Ok(Rig {
            sensors,
            calibrations,
            settings,
        })
    }

    /// Uses stored calibrations; every configured sensor needs one.
    pub fn with_calibrations(
        sensors: BTreeMap<SensorId, NerveLineSpec>,
        calibrations: BTreeMap<SensorId, CalibrationData>,
        settings: SimulationSettings,
    ) -> Result<Rig, ConfigError> {
        if let Some(id) = sensors.keys().find(|id| !calibrations.contains_key(id)) {
            return Err(ConfigError::invalid(
                "calibration",
                format!("no calibration for sensor {id}"),
            ));
        }
        Ok(Rig {
            sensors,
            calibrations,
            settings,
        })
    }

    pub fn sensors(&self) -> &BTreeMap<SensorId, NerveLineSpec> {
        &self.sensors
    }

    pub fn calibrations(&self) -> &BTreeMap<SensorId, CalibrationData> {
        &self.calibrations
    }

    pub fn settings(&self) -> &SimulationSettings {
        &self.settings
    }

    pub fn channel(&self, id: SensorId) -> Option<SensorChannel> {
        let cal = *self.calibrations.get(&id)?;
        Some(SensorChannel::new(self.settings.filter(), cal))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IssuedCommand {
    pub command: Command,
    /// Per-actuator wire displacement for posture commands, when a hand is
    /// configured.
    pub wire_mm: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorSample {
    pub sensor: SensorId,
    pub raw: u32,
    /// `estimate.v` holds the filtered counts.
    pub estimate: ContactEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub t_ms: u64,
    pub phase: TaskPhase,
    pub attempt: u32,
    pub regrasp_step: u32,
    pub samples: Vec<SensorSample>,
    pub commands: Vec<IssuedCommand>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub outcome: Outcome,
    pub final_state: ControllerState,
    pub trace: Vec<TraceRecord>,
}

impl RunResult {
    pub fn regrasp_steps(&self) -> u32 {
        self.final_state.regrasp_steps
    }

    pub fn retries(&self) -> u32 {
        self.final_state.retries
    }

    /// The first tick at which `sensor` reported `p` below `threshold`.
    pub fn first_below(&self, sensor: SensorId, threshold: f64) -> Option<&TraceRecord> {
        self.trace.iter().find(|r| {
            r.samples
                .iter()
                .any(|s| s.sensor == sensor && s.estimate.p < threshold)
        })
    }
}

fn outcome_of(state: &ControllerState, task: TaskKind) -> Outcome {
    match (state.phase, task) {
        (TaskPhase::Done, TaskKind::GraspAndOperate) => Outcome::Operated,
        (TaskPhase::Done, TaskKind::Grasp) if state.retries > 0 => Outcome::RetriedThenLifted,
        (TaskPhase::Done, TaskKind::Grasp) => Outcome::Lifted,
        _ => Outcome::Failed,
    }
}

fn joint_state(phase: TaskPhase) -> JointState {
    if phase.fingers_closed() {
        JointState::flexed(std::f64::consts::FRAC_PI_4)
    } else {
        JointState::straight()
    }
}

fn resolve_commands(
    commands: Vec<Command>,
    hand: Option<&HandSpec>,
) -> Result<Vec<IssuedCommand>, Error> {
    commands
        .into_iter()
        .map(|command| {
            let wire_mm = match (command, hand) {
                (Command::SetPosture(p), Some(h)) => {
                    Some(posture_command(p.label(), &h.actuators)?)
                }
                _ => None,
            };
            Ok(IssuedCommand { command, wire_mm })
        })
        .collect()
}

/// Runs a scripted scenario through sensing, estimation and the controller
/// at a fixed tick rate. Every phase lasts `config.phase_ticks` ticks, after
/// which [`step`] decides the next phase.
pub fn run_scenario(
    scenario: &Scenario,
    config: &ControllerConfig,
    rig: &Rig,
    hand: Option<&HandSpec>,
    seed: u64,
) -> Result<RunResult, Error> {
    config
        .validate()
        .map_err(|(field, msg)| ConfigError::invalid(format!("controller.{field}"), msg))?;
    scenario.validate(rig.sensors())?;
    for (field, id) in [
        ("watched_sensor_grasp", config.watched_sensor_grasp),
        ("watched_sensor_regrasp", config.watched_sensor_regrasp),
    ] {
        if !rig.sensors().contains_key(&id) {
            return Err(ConfigError::invalid(
                format!("controller.{field}"),
                format!("sensor {id} is not configured"),
            )
            .into());
        }
    }
    if let Some(h) = hand {
        h.validate()?;
        for p in Posture::ALL {
            posture_command(p.label(), &h.actuators)?;
        }
    }

    let mut lines: Vec<_> = rig
        .sensors()
        .iter()
        .map(|(&id, spec)| {
            let channel = rig.channel(id).expect("rig calibrates every sensor");
            (id, spec, channel, stream(seed, Stream::Sensing(id.index())))
        })
        .collect();
    let mut history: Vec<Vec<ContactEstimate>> = vec![Vec::new(); SensorId::COUNT];
    let pose = (scenario.object_pose.x_mm, scenario.object_pose.y_mm);
    let settings = rig.settings();

    let mut state = ControllerState::start();
    let mut pending = ControllerState::initial_commands(pose);
    let mut advanced_mm = 0.0;
    let mut t_ms = 0;
    let mut trace = Vec::new();

    while !state.phase.is_terminal() {
        let mask = self_contact_mask(&joint_state(state.phase));
        for tick in 0..config.phase_ticks {
            t_ms += settings.dt_ms;
            let clock = ScriptClock {
                phase: state.phase,
                attempt: state.retries,
                tick,
                advanced_mm,
            };
            let mut samples = Vec::with_capacity(lines.len());
            for (id, spec, channel, rng) in lines.iter_mut() {
                let active = scenario.contacts_at(*id, clock, settings.spikes);
                let contacts = mask.apply(*id, ContactSet::empty(), active.set);
                let reading = sense(
                    spec,
                    &contacts,
                    active.fingertip_quality,
                    settings.noise_sd_counts,
                    t_ms,
                    rng,
                )?;
                let estimate = channel.push(reading);
                history[usize::from(id.index())].push(estimate);
                samples.push(SensorSample {
                    sensor: *id,
                    raw: reading.counts,
                    estimate,
                });
            }
            trace.push(TraceRecord {
                t_ms,
                phase: state.phase,
                attempt: state.retries,
                regrasp_step: state.regrasp_steps,
                samples,
                commands: resolve_commands(std::mem::take(&mut pending), hand)?,
            });
        }

        let input = StepInput {
            history: &history,
            task: scenario.task,
            object_pose: pose,
        };
        let transition = step(state, &input, config).expect("loop only steps live phases");
        for c in &transition.commands {
            if let Command::AdvanceHand { mm } = c {
                advanced_mm += mm;
            }
        }
        pending = transition.commands;
        state = transition.next;
    }

    Ok(RunResult {
        outcome: outcome_of(&state, scenario.task),
        final_state: state,
        trace,
    })
}
