use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::state::{apply_logical_gate, MixedRadixState};
use crate::circuit::{LogicalCircuit, LogicalGate, PhysicalCircuit};
use crate::error::{QloqError, Result};

pub type UnitaryMatrix = DMatrix<C64>;

/// Default tolerance for unitarity and equivalence checks.
pub const DEFAULT_TOL: f64 = 1e-10;

pub fn is_unitary(m: &UnitaryMatrix, tol: f64) -> bool {
    crate::circuit::logical::unitarity_error(m) <= tol
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &UnitaryMatrix, b: &UnitaryMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Returns `(|tr(A^dagger B)| / dim >= 1 - tol, fidelity)`.
pub fn equivalent_up_to_global_phase(a: &UnitaryMatrix, b: &UnitaryMatrix, tol: f64) -> Result<(bool, f64)> {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        return Err(QloqError::Dimension { expected: a.nrows(), got: b.nrows() });
    }
    let tr: C64 = (a.adjoint() * b).trace();
    let fid = tr.norm() / a.nrows() as f64;
    Ok((fid >= 1.0 - tol, fid))
}

pub fn kron(a: &UnitaryMatrix, b: &UnitaryMatrix) -> UnitaryMatrix {
    a.kronecker(b)
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryMatrix {
    let z = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Unitary of a logical circuit (big-endian qubit order).
pub fn logical_unitary(c: &LogicalCircuit) -> Result<UnitaryMatrix> {
    c.validate()?;
    if c.num_qubits > 12 {
        return Err(QloqError::Unsupported(format!("{} qubits exceeds the dense limit", c.num_qubits)));
    }
    let dim = 1usize << c.num_qubits;
    let mut u = DMatrix::zeros(dim, dim);
    let mut col = vec![C64::new(0.0, 0.0); dim];
    for j in 0..dim {
        col.iter_mut().for_each(|a| *a = C64::new(0.0, 0.0));
        col[j] = C64::new(1.0, 0.0);
        for g in &c.gates {
            apply_logical_gate(&mut col, c.num_qubits, g);
        }
        for i in 0..dim {
            u[(i, j)] = col[i];
        }
    }
    Ok(u)
}

/// Full 2^n operator of a single gate on `n` qubits.
pub fn gate_unitary(g: &LogicalGate, n: usize) -> Result<UnitaryMatrix> {
    logical_unitary(&LogicalCircuit::from_gates(n, vec![g.clone()])?)
}

/// Operator of a physical circuit on the whole carrier product space.
pub fn physical_operator(c: &PhysicalCircuit) -> Result<UnitaryMatrix> {
    let map = c.map();
    let dim = map.dim();
    if dim > 1 << 12 {
        return Err(QloqError::Unsupported(format!("register dimension {dim} exceeds the dense limit")));
    }
    let mut u = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let mut s = MixedRadixState::basis(map, j)?;
        s.apply_circuit(c)?;
        for (i, a) in s.amplitudes().iter().enumerate() {
            u[(i, j)] = *a;
        }
    }
    Ok(u)
}

/// Logical action of a physical circuit: inputs enter at `inputs()` slots,
/// ancilla slots start at |0>, results are read from `outputs()` slots with
/// ancillas back at |0>. Fails if more than `tol` probability leaks out.
pub fn physical_logical_unitary(c: &PhysicalCircuit, tol: f64) -> Result<UnitaryMatrix> {
    let map = c.map();
    let n = c.num_logical();
    let slot_index = |slots: &[usize], logical: usize| -> usize {
        let mut p = 0;
        for (i, &s) in slots.iter().enumerate() {
            if (logical >> (n - 1 - i)) & 1 == 1 {
                p += map.weight(s);
            }
        }
        p
    };
    let dim = 1usize << n;
    let mut u = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let mut s = MixedRadixState::basis(map, slot_index(c.inputs(), j))?;
        s.apply_circuit(c)?;
        let amps = s.amplitudes();
        let mut kept = 0.0;
        for i in 0..dim {
            let a = amps[slot_index(c.outputs(), i)];
            kept += a.norm_sqr();
            u[(i, j)] = a;
        }
        if 1.0 - kept > tol {
            return Err(QloqError::Numerical(format!(
                "basis input {j} leaks {:.3e} probability out of the encoding",
                1.0 - kept
            )));
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::QloqMap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cnot_chain_oracle() -> UnitaryMatrix {
        // CX(0,1) then CX(1,2) on basis |abc> -> |a, a^b, a^b^c>
        let mut m = DMatrix::zeros(8, 8);
        for i in 0..8usize {
            let (a, b, c) = (i >> 2 & 1, i >> 1 & 1, i & 1);
            let b2 = a ^ b;
            let c2 = b2 ^ c;
            m[(a << 2 | b2 << 1 | c2, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    #[test]
    fn empty_circuit_is_identity() {
        let u = logical_unitary(&LogicalCircuit::new(3)).unwrap();
        assert_eq!(u, DMatrix::identity(8, 8));
        let p = physical_operator(&PhysicalCircuit::new(QloqMap::contiguous(&[2, 1]).unwrap())).unwrap();
        assert_eq!(p, DMatrix::identity(8, 8));
    }

    #[test]
    fn cnot_chain_matches_textbook() {
        let c = LogicalCircuit::from_gates(3, vec![LogicalGate::cx(0, 1), LogicalGate::cx(1, 2)]).unwrap();
        assert_eq!(logical_unitary(&c).unwrap(), cnot_chain_oracle());
    }

    #[test]
    fn global_phase_is_ignored() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(8, &mut rng);
        let v = &u * C64::from_polar(1.0, 0.9);
        assert!(equivalent_up_to_global_phase(&u, &v, 1e-12).unwrap().0);
    }

    #[test]
    fn distinct_operators_detected() {
        let id = DMatrix::identity(4, 4);
        let xi = gate_unitary(&LogicalGate::x(0), 2).unwrap();
        let (eq, fid) = equivalent_up_to_global_phase(&id, &xi, 1e-9).unwrap();
        assert!(!eq);
        assert!(fid < 1e-12);
    }

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [2, 4, 8, 16] {
            assert!(is_unitary(&random_unitary(d, &mut rng), 1e-12));
        }
    }

    #[test]
    fn composition_reverses_matrix_order() {
        let c1 = LogicalCircuit::from_gates(2, vec![LogicalGate::h(0), LogicalGate::ry(1, 0.3)]).unwrap();
        let c2 = LogicalCircuit::from_gates(2, vec![LogicalGate::cx(0, 1), LogicalGate::rz(0, 1.1)]).unwrap();
        let both = logical_unitary(&c1.then(&c2).unwrap()).unwrap();
        let prod = logical_unitary(&c2).unwrap() * logical_unitary(&c1).unwrap();
        assert!(max_abs_diff(&both, &prod) < 1e-13);
    }
}
