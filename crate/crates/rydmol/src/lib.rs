//! Simulation library for Rydberg-atom mediated polar-molecule physics.
//!
//! Everything computes internally in Hartree atomic units; the [`units`]
//! module does the boundary conversions. [`rydberg`] solves the Rydberg
//! electron radial problem and the shielded-core electric field seen by a
//! molecule inside the electron orbit, [`rotor`] turns that field into
//! rigid-rotor Stark shift curves, [`doublet`] handles the CH-like
//! Lambda-doublet Zeeman structure and magic-field search, [`scales`]
//! evaluates closed-form interaction scaling laws, and [`engine`] simulates
//! pulse-sequence gate and entanglement protocols on labeled few-level
//! systems.

// Validation uses negated comparisons on purpose: !(x > 0.0) also rejects
// NaN, which x <= 0.0 would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod doublet;
pub mod engine;
pub mod rotor;
pub mod rydberg;
pub mod scales;
pub mod species;
pub mod units;

pub use units::{Dimension, Quantity, Unit};

/// Crate version, exposed so front ends can record it in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
