//! Landau-Ginzburg workbench.
//!
//! Builds mirror superpotentials of toric Fano varieties from moment-polytope
//! data, finds their critical points, checks critical values against quantum
//! multiplication by the first Chern class, and verifies chart-gluing
//! identities and monodromy on the exponent lattice exactly.

pub mod critical;
pub mod error;
pub mod laurent;
pub mod polytope;
pub mod qcoh;
mod ratlin;
pub mod report;
pub mod superpotential;
pub mod wallcross;

pub use error::{Error, Result};
