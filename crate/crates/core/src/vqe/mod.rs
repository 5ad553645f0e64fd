//! Variational eigensolver: Pauli Hamiltonians, energy estimators and
//! derivative-free optimisation.

pub mod estimate;
pub mod hamiltonian;
pub mod optimize;
pub mod run;

pub use estimate::{expectation_exact, expectation_sampled, SampledEnergy};
pub use hamiltonian::{Pauli, PauliHamiltonian, PauliTerm};
pub use optimize::{minimize, Method, Minimum, OptimizerConfig};
pub use run::{layered_ansatz, prepare, vqe_run, VqeConfig, VqeIteration, VqeTrace};
