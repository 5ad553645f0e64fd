//! Energy estimators: exact from the state vector, or from sampled shots
//! measured group by group in a rotated basis.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hamiltonian::{Pauli, PauliHamiltonian, PauliTerm};
use crate::circuit::LogicalGate;
use crate::error::{QloqError, Result};
use crate::sim::sample::multinomial;
use crate::sim::state::apply_logical_gate;

/// <psi|P|psi> for one Pauli string.
pub fn pauli_expectation(amps: &[C64], term: &PauliTerm) -> f64 {
    let n = term.paulis.len();
    let mut flip = 0usize;
    let mut ys = 0usize;
    let mut phase_mask = 0usize;
    for (q, &p) in term.paulis.iter().enumerate() {
        let bit = 1 << (n - 1 - q);
        match p {
            Pauli::I => {}
            Pauli::X => flip |= bit,
            Pauli::Y => {
                flip |= bit;
                phase_mask |= bit;
                ys += 1;
            }
            Pauli::Z => phase_mask |= bit,
        }
    }
    // P|x> = i^{#Y} (-1)^{popcount(x & phase_mask)} |x ^ flip>
    let iy = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][ys % 4];
    let mut acc = C64::new(0.0, 0.0);
    for (x, a) in amps.iter().enumerate() {
        let sign = if (x & phase_mask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        acc += amps[x ^ flip].conj() * a * sign;
    }
    (acc * iy).re
}

pub fn expectation_exact(amps: &[C64], h: &PauliHamiltonian) -> Result<f64> {
    if amps.len() != 1 << h.num_qubits() {
        return Err(QloqError::Dimension { expected: 1 << h.num_qubits(), got: amps.len() });
    }
    Ok(h.terms().iter().map(|t| t.coeff * pauli_expectation(amps, t)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampledEnergy {
    pub energy: f64,
    pub stderr: f64,
    pub shots: u64,
}

fn rotate_into(amps: &mut [C64], n: usize, basis: &[Pauli]) {
    let sdg = {
        let mut m = nalgebra::DMatrix::identity(2, 2);
        m[(1, 1)] = C64::new(0.0, -1.0);
        m
    };
    for (q, &p) in basis.iter().enumerate() {
        match p {
            Pauli::X => apply_logical_gate(amps, n, &LogicalGate::h(q)),
            Pauli::Y => {
                apply_logical_gate(amps, n, &LogicalGate::unitary(&[q], sdg.clone()));
                apply_logical_gate(amps, n, &LogicalGate::h(q));
            }
            _ => {}
        }
    }
}

/// Sampled energy with `shots` per measurement group. Identity terms are
/// added exactly; each group's contribution carries its own sample variance.
pub fn expectation_sampled(amps: &[C64], h: &PauliHamiltonian, shots: u64, seed: u64) -> Result<SampledEnergy> {
    if shots == 0 {
        return Err(QloqError::OutOfRange("shots must be at least 1".into()));
    }
    let n = h.num_qubits();
    if amps.len() != 1 << n {
        return Err(QloqError::Dimension { expected: 1 << n, got: amps.len() });
    }
    let mut energy = 0.0;
    let mut var = 0.0;
    let mut used = 0;
    for (gi, group) in h.groups().iter().enumerate() {
        let members: Vec<&PauliTerm> = group.iter().map(|&t| &h.terms()[t]).collect();
        let constant: f64 = members.iter().filter(|t| t.is_identity()).map(|t| t.coeff).sum();
        energy += constant;
        if members.iter().all(|t| t.is_identity()) {
            continue;
        }
        let mut rotated = amps.to_vec();
        rotate_into(&mut rotated, n, &h.group_basis(gi));
        let probs: Vec<f64> = rotated.iter().map(|a| a.norm_sqr()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(gi as u64);
        let counts = multinomial(&probs, shots, &mut rng);
        // per-outcome value of the group's observable, identity part excluded
        let value = |x: usize| -> f64 {
            members
                .iter()
                .filter(|t| !t.is_identity())
                .map(|t| {
                    let mask: usize = t
                        .paulis
                        .iter()
                        .enumerate()
                        .filter(|(_, &p)| p != Pauli::I)
                        .map(|(q, _)| 1 << (n - 1 - q))
                        .sum();
                    if (x & mask).count_ones() % 2 == 1 {
                        -t.coeff
                    } else {
                        t.coeff
                    }
                })
                .sum()
        };
        let (mut s1, mut s2) = (0.0, 0.0);
        for (x, &c) in counts.iter().enumerate() {
            if c > 0 {
                let v = value(x);
                s1 += v * c as f64;
                s2 += v * v * c as f64;
            }
        }
        let mean = s1 / shots as f64;
        let sample_var = if shots > 1 { (s2 - shots as f64 * mean * mean).max(0.0) / (shots - 1) as f64 } else { 0.0 };
        energy += mean;
        var += sample_var / shots as f64;
        used += shots;
    }
    Ok(SampledEnergy { energy, stderr: var.sqrt(), shots: used })
}
