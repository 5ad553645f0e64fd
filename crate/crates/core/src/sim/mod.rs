//! Dense mixed-radix simulation: the correctness oracle for every transformation.

pub mod compile;
pub mod sample;
pub mod state;
pub mod unitary;

pub use compile::{compile, embed_logical_gate, CompileOptions, Compiler, EntanglerStyle};
pub use sample::sample;
pub use state::{apply_logical_gate, qubit_purity, MixedRadixState};
pub use unitary::{
    equivalent_up_to_global_phase, is_unitary, logical_unitary, physical_logical_unitary, physical_operator,
    random_unitary, UnitaryMatrix,
};
