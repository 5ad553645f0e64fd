use std::cell::RefCell;

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::estimate::{expectation_exact, expectation_sampled};
use super::hamiltonian::PauliHamiltonian;
use super::optimize::{minimize, OptimizerConfig};
use crate::circuit::{LogicalCircuit, LogicalGate};
use crate::error::{QloqError, Result};
use crate::sim::state::apply_logical_gate;

#[derive(Clone, Debug)]
pub struct VqeConfig {
    pub optimizer: OptimizerConfig,
    /// Computational-basis input, qubit 0 first. All zeros when `None`.
    pub input: Option<String>,
    /// Shots per measurement group; exact expectation when `None`.
    pub shots: Option<u64>,
    pub seed: u64,
    /// Starting angles; zeros when `None`.
    pub initial: Option<Vec<f64>>,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig { optimizer: OptimizerConfig::default(), input: None, shots: None, seed: 0, initial: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VqeIteration {
    pub params: Vec<f64>,
    pub energy: f64,
    pub stderr: f64,
    pub shots: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VqeTrace {
    pub iterations: Vec<VqeIteration>,
    pub best_energy: f64,
    pub best_params: Vec<f64>,
    pub converged: bool,
}

impl VqeTrace {
    /// `iteration,energy,stderr` CSV, one row per objective evaluation.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("iteration,energy,stderr\n");
        for (i, it) in self.iterations.iter().enumerate() {
            s.push_str(&format!("{i},{},{}\n", it.energy, it.stderr));
        }
        s
    }
}

fn input_state(n: usize, bits: Option<&str>) -> Result<Vec<C64>> {
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    let idx = match bits {
        None => 0,
        Some(b) => {
            if b.len() != n || !b.chars().all(|c| c == '0' || c == '1') {
                return Err(QloqError::Parse(format!("input `{b}` is not a {n}-bit string")));
            }
            usize::from_str_radix(b, 2).expect("checked digits")
        }
    };
    amps[idx] = C64::new(1.0, 0.0);
    Ok(amps)
}

/// State prepared by `ansatz` with `params` bound, from the given input.
pub fn prepare(ansatz: &LogicalCircuit, params: &[f64], input: &[C64]) -> Result<Vec<C64>> {
    let bound = ansatz.bind_parameters(params)?;
    let mut amps = input.to_vec();
    for g in &bound.gates {
        apply_logical_gate(&mut amps, bound.num_qubits, g);
    }
    Ok(amps)
}

pub fn vqe_run(ansatz: &LogicalCircuit, h: &PauliHamiltonian, config: &VqeConfig) -> Result<VqeTrace> {
    if ansatz.num_qubits != h.num_qubits() {
        return Err(QloqError::Dimension { expected: h.num_qubits(), got: ansatz.num_qubits });
    }
    let p = ansatz.rotation_count();
    if p == 0 {
        return Err(QloqError::InvalidCircuit("ansatz has no parameters".into()));
    }
    let x0 = config.initial.clone().unwrap_or_else(|| vec![0.0; p]);
    if x0.len() != p {
        return Err(QloqError::Dimension { expected: p, got: x0.len() });
    }
    let input = input_state(h.num_qubits(), config.input.as_deref())?;
    let iterations = RefCell::new(Vec::new());
    let error = RefCell::new(None);
    let objective = |x: &[f64]| -> f64 {
        let eval = || -> Result<VqeIteration> {
            let psi = prepare(ansatz, x, &input)?;
            Ok(match config.shots {
                None => VqeIteration { params: x.to_vec(), energy: expectation_exact(&psi, h)?, stderr: 0.0, shots: 0 },
                Some(shots) => {
                    let k = iterations.borrow().len() as u64;
                    let e = expectation_sampled(&psi, h, shots, config.seed.wrapping_add(k))?;
                    VqeIteration { params: x.to_vec(), energy: e.energy, stderr: e.stderr, shots: e.shots }
                }
            })
        };
        match eval() {
            Ok(it) => {
                let e = it.energy;
                iterations.borrow_mut().push(it);
                e
            }
            Err(err) => {
                error.borrow_mut().get_or_insert(err);
                f64::INFINITY
            }
        }
    };
    let min = minimize(objective, &x0, &config.optimizer)?;
    if let Some(err) = error.into_inner() {
        return Err(err);
    }
    Ok(VqeTrace { iterations: iterations.into_inner(), best_energy: min.value, best_params: min.x, converged: min.converged })
}

/// Alternating Ry/Rz layers and CNOT chains, ending in a rotation layer.
pub fn layered_ansatz(n: usize, layers: usize) -> LogicalCircuit {
    let mut c = LogicalCircuit::new(n);
    let rot = |c: &mut LogicalCircuit| {
        for q in 0..n {
            c.gates.push(LogicalGate::ry(q, 0.0));
            c.gates.push(LogicalGate::rz(q, 0.0));
        }
    };
    rot(&mut c);
    for _ in 0..layers {
        for q in 0..n.saturating_sub(1) {
            c.gates.push(LogicalGate::cx(q, q + 1));
        }
        rot(&mut c);
    }
    c
}
