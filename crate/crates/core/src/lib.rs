//! Qubit logic on qudits (QLOQ): groups of logical qubits are encoded on
//! single multi-level carriers so that entangling gates between them
//! become local level operations.
//!
//! Modules:
//! - [`circuit`]: logical/physical IR, the carrier map and built-in fixtures
//! - [`cost`]: closed-form entangler counts and gate-by-gate costing
//! - [`sim`]: dense mixed-radix simulation and compilation onto carriers
//! - [`synth`]: Shannon decomposition in qubit and carrier modes
//! - [`compress`]: random-circuit compressibility and expected cost ratios
//! - [`metrics`]: expressibility and entangling capability of ansatze
//! - [`vqe`]: Pauli Hamiltonians, estimators and derivative-free optimizers
//! - [`loqc`]: linear-optical success probabilities and resource counts

pub mod circuit;
pub mod compress;
pub mod cost;
pub mod error;
pub mod loqc;
pub mod metrics;
pub mod sim;
pub mod synth;
pub mod vqe;

pub use error::{QloqError, Result};
