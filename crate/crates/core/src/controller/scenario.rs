use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{TaskKind, TaskPhase};
use crate::error::ScenarioError;
use crate::estimation::SensorId;
use crate::nerve::{ContactPoint, ContactSet, NerveLineSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Lifted,
    RetriedThenLifted,
    Operated,
    Failed,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Lifted => "lifted",
            Outcome::RetriedThenLifted => "retried_then_lifted",
            Outcome::Operated => "operated",
            Outcome::Failed => "failed",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectPose {
    pub x_mm: f64,
    pub y_mm: f64,
}

/// One scripted press on one sensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptedContact {
    pub sensor: u8,
    /// Phases during which the press is present.
    pub phases: Vec<TaskPhase>,
    /// Grasp attempts (0-based) during which the press is present; all if
    /// omitted.
    #[serde(default)]
    pub attempts: Option<Vec<u32>>,
    /// First tick within each listed phase at which the press is present.
    #[serde(default)]
    pub from_tick: u32,
    pub position_mm: f64,
    #[serde(default)]
    pub bridge_ohm: f64,
    #[serde(default)]
    pub fingertip_quality: Option<f64>,
    /// The object slides toward the finger base by every hand advance.
    #[serde(default)]
    pub moves_with_hand: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub task: TaskKind,
    #[serde(default)]
    pub object_pose: ObjectPose,
    pub expected_outcome: Outcome,
    #[serde(default, rename = "contact")]
    pub contacts: Vec<ScriptedContact>,
}

/// Where the task is when contacts are looked up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScriptClock {
    pub phase: TaskPhase,
    pub attempt: u32,
    pub tick: u32,
    /// Total hand advance so far.
    pub advanced_mm: f64,
}

/// Active contacts of one sensor, plus the strongest fingertip quality among them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ActiveContacts {
    pub set: ContactSet,
    pub fingertip_quality: Option<f64>,
}

impl FromStr for Scenario {
    type Err = ScenarioError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))
    }
}

impl Scenario {
    /// Checks the script against the configured sensor lines.
    pub fn validate(
        &self,
        sensors: &BTreeMap<SensorId, NerveLineSpec>,
    ) -> Result<(), ScenarioError> {
        let invalid = |path: String, message: String| Err(ScenarioError::Invalid { path, message });
        if self.name.trim().is_empty() {
            return invalid("name".into(), "must not be empty".into());
        }
        for (i, c) in self.contacts.iter().enumerate() {
            let at = |field: &str| format!("contact[{i}].{field}");
            let Some(id) = SensorId::new(c.sensor) else {
                return invalid(at("sensor"), format!("sensor {} is not in 0..3", c.sensor));
            };
            let Some(spec) = sensors.get(&id) else {
                return invalid(at("sensor"), format!("sensor {id} is not configured"));
            };
            if c.phases.is_empty() {
                return invalid(at("phases"), "must list at least one phase".into());
            }
            if let Some(p) = c.phases.iter().find(|p| p.is_terminal()) {
                return invalid(at("phases"), format!("{p} is terminal and never sensed"));
            }
            if !(0.0..=spec.effective_length_mm).contains(&c.position_mm) {
                return invalid(
                    at("position_mm"),
                    format!(
                        "{} is outside [0, {}]",
                        c.position_mm, spec.effective_length_mm
                    ),
                );
            }
            if !(c.bridge_ohm >= 0.0 && c.bridge_ohm.is_finite()) {
                return invalid(
                    at("bridge_ohm"),
                    format!("must be >= 0, got {}", c.bridge_ohm),
                );
            }
            if let Some(q) = c.fingertip_quality {
                if !(q > 0.0 && q <= 1.0) {
                    return invalid(
                        at("fingertip_quality"),
                        format!("must lie in (0, 1], got {q}"),
                    );
                }
            }
        }
        Ok(())
    }

    /// Scripted contacts of `sensor` at the given point of the task. Presses
    /// that slid past the finger base are dropped.
    pub fn contacts_at(
        &self,
        sensor: SensorId,
        clock: ScriptClock,
        quantize_to_spikes: bool,
    ) -> ActiveContacts {
        let mut active = ActiveContacts {
            set: ContactSet::new(Vec::new(), quantize_to_spikes),
            fingertip_quality: None,
        };
        for c in &self.contacts {
            if c.sensor != sensor.index()
                || !c.phases.contains(&clock.phase)
                || clock.tick < c.from_tick
                || c.attempts
                    .as_ref()
                    .is_some_and(|a| !a.contains(&clock.attempt))
            {
                continue;
            }
            let position_mm = if c.moves_with_hand {
                c.position_mm - clock.advanced_mm
            } else {
                c.position_mm
            };
            if position_mm < 0.0 {
                continue;
            }
            active
                .set
                .contacts
                .push(ContactPoint::new(position_mm, c.bridge_ohm));
            if let Some(q) = c.fingertip_quality {
                active.fingertip_quality =
                    Some(active.fingertip_quality.map_or(q, |old: f64| old.max(q)));
            }
        }
        active
    }

    /// The same scenario with every scripted object removed.
    pub fn without_objects(&self) -> Scenario {
        Scenario {
            contacts: Vec::new(),
            ..self.clone()
        }
    }
}
