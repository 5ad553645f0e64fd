//! Logical and physical circuit IR plus the carrier map.

pub mod fixtures;
pub mod json;
pub mod logical;
pub mod map;
pub mod physical;

pub use fixtures::{builtin_fixture, fixture_names, Fixture};
pub use json::{circuit_to_json, parse_circuit};
pub use logical::{GateKind, LogicalCircuit, LogicalGate};
pub use map::{validate_map, MapViolation, QloqMap};
pub use physical::{Entangler, Flavor, PhysicalCircuit, PhysicalOp};
