//! Wire/pulley kinematics of the thin-fingered hand.
//!
//! Each actuator pulls a wire over a pulley of radius `r`, so wire travel and
//! joint rotation are related by `x = r θ`. Postures are either measured wire
//! displacements per actuator or target angles converted through that
//! relation.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::HandError;
use crate::estimation::SensorId;
use crate::nerve::ContactSet;

pub const ACTUATOR_COUNT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FingerName {
    Thumb,
    Index,
    Middle,
    Ring,
    Little,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FingerSpec {
    pub name: FingerName,
    /// Length of the nerve line on this finger, if it carries one.
    #[serde(default)]
    pub sensor_length_mm: Option<f64>,
    /// Thinnest and thickest joint width.
    pub joint_width_range_mm: (f64, f64),
}

impl FingerSpec {
    /// Five fingers, nerve lines on index and middle only.
    pub fn default_set() -> Vec<FingerSpec> {
        use FingerName::*;
        [Thumb, Index, Middle, Ring, Little]
            .into_iter()
            .map(|name| FingerSpec {
                name,
                sensor_length_mm: matches!(name, Index | Middle).then_some(80.0),
                joint_width_range_mm: (9.0, 14.0),
            })
            .collect()
    }

    pub fn is_sensed(&self) -> bool {
        self.sensor_length_mm.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActuatorRole {
    Bend,
    Extend,
    InternalRotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointLimits {
    pub min_rad: f64,
    pub max_rad: f64,
}

impl Default for JointLimits {
    fn default() -> Self {
        JointLimits {
            min_rad: 0.0,
            max_rad: FRAC_PI_2,
        }
    }
}

impl JointLimits {
    pub const UNBOUNDED: JointLimits = JointLimits {
        min_rad: f64::NEG_INFINITY,
        max_rad: f64::INFINITY,
    };

    pub fn contains(&self, theta: f64) -> bool {
        (self.min_rad..=self.max_rad).contains(&theta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActuatorSpec {
    pub id: u8,
    pub role: ActuatorRole,
    pub pulley_radius_mm: f64,
    #[serde(default)]
    pub limits: JointLimits,
    /// Measured wire displacement (mm) per posture label.
    #[serde(default)]
    pub displacement_table: BTreeMap<String, f64>,
    /// Target joint angle (rad) per posture label, used when the label has
    /// no measured displacement.
    #[serde(default)]
    pub target_angles_rad: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HandSpec {
    #[serde(default = "FingerSpec::default_set")]
    pub fingers: Vec<FingerSpec>,
    pub actuators: Vec<ActuatorSpec>,
}

impl HandSpec {
    pub fn new(fingers: Vec<FingerSpec>, actuators: Vec<ActuatorSpec>) -> Result<Self, HandError> {
        let hand = HandSpec { fingers, actuators };
        hand.validate()?;
        Ok(hand)
    }

    pub fn validate(&self) -> Result<(), HandError> {
        if self.actuators.len() != ACTUATOR_COUNT {
            return Err(HandError::Invalid {
                path: "actuators".into(),
                message: format!(
                    "expected {ACTUATOR_COUNT} actuators, got {}",
                    self.actuators.len()
                ),
            });
        }
        let mut seen = BTreeSet::new();
        for (i, a) in self.actuators.iter().enumerate() {
            if !seen.insert(a.id) {
                return Err(HandError::DuplicateActuator(a.id));
            }
            if usize::from(a.id) >= ACTUATOR_COUNT {
                return Err(HandError::Invalid {
                    path: format!("actuators[{i}].id"),
                    message: format!("{} is not in 0..{}", a.id, ACTUATOR_COUNT - 1),
                });
            }
            if !(a.pulley_radius_mm > 0.0) {
                return Err(HandError::NonPositiveRadius(a.pulley_radius_mm));
            }
            if !(a.limits.min_rad <= a.limits.max_rad) {
                return Err(HandError::Invalid {
                    path: format!("actuators[{i}].limits"),
                    message: "min_rad must not exceed max_rad".into(),
                });
            }
        }
        for (i, f) in self.fingers.iter().enumerate() {
            let (lo, hi) = f.joint_width_range_mm;
            if !(lo > 0.0 && lo <= hi) {
                return Err(HandError::Invalid {
                    path: format!("fingers[{i}].joint_width_range_mm"),
                    message: format!("need 0 < min <= max, got ({lo}, {hi})"),
                });
            }
        }
        Ok(())
    }

    pub fn sensed_fingers(&self) -> impl Iterator<Item = &FingerSpec> {
        self.fingers.iter().filter(|f| f.is_sensed())
    }
}

fn check_radius(r: f64) -> Result<(), HandError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(HandError::NonPositiveRadius(r))
    }
}

/// Wire travel for a joint rotation: `x = r θ`.
pub fn wire_displacement(theta_rad: f64, radius_mm: f64) -> Result<f64, HandError> {
    check_radius(radius_mm)?;
    Ok(radius_mm * theta_rad)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireAngle {
    pub theta_rad: f64,
    /// Set when the raw angle fell outside the limits and was clamped.
    pub clamped: bool,
}

/// Joint rotation for a wire travel, `θ = x / r`, clamped to `limits`.
pub fn wire_to_angle(
    x_mm: f64,
    radius_mm: f64,
    limits: JointLimits,
) -> Result<WireAngle, HandError> {
    check_radius(radius_mm)?;
    let raw = x_mm / radius_mm;
    let theta_rad = raw.clamp(limits.min_rad, limits.max_rad);
    Ok(WireAngle {
        theta_rad,
        clamped: theta_rad != raw,
    })
}

/// Wire displacement of every actuator (in the order given) for a posture.
///
/// Measured table entries win over target angles.
pub fn posture_command(label: &str, actuators: &[ActuatorSpec]) -> Result<Vec<f64>, HandError> {
    actuators
        .iter()
        .map(|a| {
            if let Some(&x) = a.displacement_table.get(label) {
                return Ok(x);
            }
            match a.target_angles_rad.get(label) {
                Some(&theta) => wire_displacement(
                    theta.clamp(a.limits.min_rad, a.limits.max_rad),
                    a.pulley_radius_mm,
                ),
                None => Err(HandError::UnknownPosture {
                    label: label.to_owned(),
                    actuator: a.id,
                }),
            }
        })
        .collect()
}

/// Linear blend between two labelled postures, `t` in `[0, 1]`.
pub fn interpolate_postures(
    from: &str,
    to: &str,
    t: f64,
    actuators: &[ActuatorSpec],
) -> Result<Vec<f64>, HandError> {
    let t = t.clamp(0.0, 1.0);
    let a = posture_command(from, actuators)?;
    let b = posture_command(to, actuators)?;
    Ok(a.iter().zip(&b).map(|(x, y)| x + (y - x) * t).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JointState {
    /// Flexion per finger, thumb first.
    pub flexion_rad: [f64; 5],
    pub wrist_rotation_rad: f64,
    pub thumb_internal_rotation_rad: f64,
}

impl JointState {
    pub fn straight() -> Self {
        Self::default()
    }

    /// Every finger flexed by the same angle.
    pub fn flexed(theta_rad: f64) -> Self {
        JointState {
            flexion_rad: [theta_rad; 5],
            ..Self::default()
        }
    }
}

/// Which sensors have self-contact suppressed. The string part folds outward
/// at the joints, so bending alone never bridges the rails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfContactMask([bool; SensorId::COUNT]);

impl SelfContactMask {
    pub fn suppressed(&self, sensor: SensorId) -> bool {
        self.0[usize::from(sensor.index())]
    }

    pub fn as_array(&self) -> [bool; SensorId::COUNT] {
        self.0
    }

    /// Contacts seen by a sensor: posture-induced ones are dropped when
    /// suppressed, external contacts always pass through.
    pub fn apply(
        &self,
        sensor: SensorId,
        self_contacts: ContactSet,
        external: ContactSet,
    ) -> ContactSet {
        if self.suppressed(sensor) || self_contacts.is_empty() {
            return external;
        }
        let mut merged = external;
        merged.contacts.extend(self_contacts.contacts);
        merged
    }
}

pub fn self_contact_mask(_state: &JointState) -> SelfContactMask {
    SelfContactMask([true; SensorId::COUNT])
}
