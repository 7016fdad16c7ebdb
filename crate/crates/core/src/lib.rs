//! Simulation and contact-point estimation for resistive "nerve line" tactile
//! sensors embedded in the epidermis of a thin-fingered, wire-driven robot hand.
//!
//! The crate is organised along the measurement chain:
//!
//! * [`nerve`] simulates one sensor line: spike quantization of presses, the
//!   exact resistance of the two-rail bridged ladder, the pull-up divider and
//!   the ADC.
//! * [`estimation`] turns filtered ADC counts into a contact-point ratio `p`
//!   using a three-point calibration, and decides touch / position events.
//! * [`hand`] holds the wire/pulley kinematics and posture tables of the hand.
//! * [`controller`] is the insert-then-bend task state machine and the
//!   scripted scenario runner.
//! * [`harness`] loads run configurations and implements the command-line
//!   subcommands (sweep, run, replay, calibrate).

// Negated float comparisons are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod controller;
pub mod error;
pub mod estimation;
pub mod hand;
pub mod harness;
pub mod nerve;
pub mod rng;

pub use error::{ConfigError, Error, HandError, NerveError, ScenarioError};
