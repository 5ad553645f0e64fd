use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::circuit::{Entangler, Flavor, LogicalGate, PhysicalCircuit, PhysicalOp, QloqMap};
use crate::error::{QloqError, Result};

/// Dense state over the carrier product space, indexed by the mixed-radix
/// digit string of carrier levels (big-endian in carrier order).
#[derive(Clone, Debug, PartialEq)]
pub struct MixedRadixState {
    map: QloqMap,
    amps: Vec<C64>,
}

impl MixedRadixState {
    pub fn zero(map: &QloqMap) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); map.dim()];
        amps[0] = C64::new(1.0, 0.0);
        MixedRadixState { map: map.clone(), amps }
    }

    pub fn basis(map: &QloqMap, physical: usize) -> Result<Self> {
        if physical >= map.dim() {
            return Err(QloqError::OutOfRange(format!("basis index {physical}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); map.dim()];
        amps[physical] = C64::new(1.0, 0.0);
        Ok(MixedRadixState { map: map.clone(), amps })
    }

    /// Embed a logical state vector (big-endian over qubits) through the map.
    pub fn from_logical(map: &QloqMap, logical: &[C64]) -> Result<Self> {
        if logical.len() != map.dim() {
            return Err(QloqError::Dimension { expected: map.dim(), got: logical.len() });
        }
        let mut amps = vec![C64::new(0.0, 0.0); map.dim()];
        for (i, a) in logical.iter().enumerate() {
            amps[map.physical_index(i)] = *a;
        }
        Ok(MixedRadixState { map: map.clone(), amps })
    }

    /// Computational basis state from a bitstring such as "0101" (qubit 0 first).
    pub fn from_bitstring(map: &QloqMap, bits: &str) -> Result<Self> {
        let n = map.num_qubits();
        if bits.len() != n || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(QloqError::Parse(format!("`{bits}` is not a {n}-bit string")));
        }
        let logical = usize::from_str_radix(bits, 2).map_err(|e| QloqError::Parse(e.to_string()))?;
        Self::basis(map, map.physical_index(logical))
    }

    pub fn map(&self) -> &QloqMap {
        &self.map
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// Amplitudes re-indexed by logical basis state.
    pub fn logical_amplitudes(&self) -> Vec<C64> {
        (0..self.map.dim()).map(|i| self.amps[self.map.physical_index(i)]).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply_local(&mut self, carrier: usize, m: &DMatrix<C64>) -> Result<()> {
        if carrier >= self.map.num_carriers() {
            return Err(QloqError::OutOfRange(format!("carrier {carrier}")));
        }
        let l = self.map.levels(carrier);
        if m.nrows() != l || m.ncols() != l {
            return Err(QloqError::Dimension { expected: l, got: m.nrows() });
        }
        let stride = self.map.stride(carrier);
        let block = stride * l;
        let mut buf = vec![C64::new(0.0, 0.0); l];
        for outer in (0..self.amps.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (r, b) in buf.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for c in 0..l {
                        acc += m[(r, c)] * self.amps[base + c * stride];
                    }
                    *b = acc;
                }
                for (r, b) in buf.iter().enumerate() {
                    self.amps[base + r * stride] = *b;
                }
            }
        }
        Ok(())
    }

    pub fn apply_entangler(&mut self, e: &Entangler) -> Result<()> {
        let st = self.map.stride(e.target);
        for p in 0..self.amps.len() {
            if self.map.digit(p, e.control) != e.control_level {
                continue;
            }
            let d = self.map.digit(p, e.target);
            match e.flavor {
                Flavor::Cx if d == e.t0 => {
                    let q = p - e.t0 * st + e.t1 * st;
                    self.amps.swap(p, q);
                }
                Flavor::Cz if d == e.t1 => self.amps[p] = -self.amps[p],
                _ => {}
            }
        }
        Ok(())
    }

    pub fn apply_op(&mut self, op: &PhysicalOp) -> Result<()> {
        match op {
            PhysicalOp::Local { carrier, matrix } => self.apply_local(*carrier, matrix),
            PhysicalOp::Entangler(e) => self.apply_entangler(e),
        }
    }

    /// Copying variant of [`apply_op`](Self::apply_op).
    pub fn applied(&self, op: &PhysicalOp) -> Result<Self> {
        let mut s = self.clone();
        s.apply_op(op)?;
        Ok(s)
    }

    pub fn apply_circuit(&mut self, c: &PhysicalCircuit) -> Result<()> {
        if c.map() != &self.map {
            return Err(QloqError::InvalidMap("circuit register differs from state register".into()));
        }
        for op in c.ops() {
            self.apply_op(op)?;
        }
        Ok(())
    }

    /// Apply a logical gate directly through the index map.
    pub fn apply_logical(&mut self, g: &LogicalGate) -> Result<()> {
        g.validate(self.map.num_qubits())?;
        let weights: Vec<usize> = (0..self.map.num_qubits()).map(|q| self.map.weight(q)).collect();
        apply_gate_weighted(&mut self.amps, &weights, g);
        Ok(())
    }

    /// Tr[rho_j^2] of the single-qubit marginal of logical qubit `j`.
    pub fn reduced_purity(&self, j: usize) -> Result<f64> {
        if j >= self.map.num_qubits() {
            return Err(QloqError::OutOfRange(format!("qubit {j}")));
        }
        Ok(purity_at_weight(&self.amps, self.map.weight(j)))
    }
}

pub(crate) fn purity_at_weight(amps: &[C64], w: usize) -> f64 {
    let (mut r00, mut r11, mut r01) = (0.0, 0.0, C64::new(0.0, 0.0));
    for p in 0..amps.len() {
        if p & w != 0 {
            continue;
        }
        let (a0, a1) = (amps[p], amps[p | w]);
        r00 += a0.norm_sqr();
        r11 += a1.norm_sqr();
        r01 += a0 * a1.conj();
    }
    r00 * r00 + r11 * r11 + 2.0 * r01.norm_sqr()
}

/// Apply `g` to amplitudes where qubit `q` contributes `weights[q]` to the index.
pub(crate) fn apply_gate_weighted(amps: &mut [C64], weights: &[usize], g: &LogicalGate) {
    let k = g.targets.len();
    let m = g.target_matrix();
    let tmask: usize = g.targets.iter().map(|&t| weights[t]).sum();
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|s| {
            (0..k)
                .filter(|i| (s >> (k - 1 - i)) & 1 == 1)
                .map(|i| weights[g.targets[i]])
                .sum()
        })
        .collect();
    let (mut cmask, mut cval) = (0usize, 0usize);
    for &c in &g.controls {
        cmask |= weights[c];
        if g.control_polarity(c) == Some(true) {
            cval |= weights[c];
        }
    }
    let dim = 1usize << k;
    let mut sub = vec![C64::new(0.0, 0.0); dim];
    for base in 0..amps.len() {
        if base & tmask != 0 || base & cmask != cval {
            continue;
        }
        for (s, v) in sub.iter_mut().enumerate() {
            *v = amps[base + offsets[s]];
        }
        for r in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for c in 0..dim {
                acc += m[(r, c)] * sub[c];
            }
            amps[base + offsets[r]] = acc;
        }
    }
}

/// Apply a logical gate to a big-endian `n`-qubit state vector.
pub fn apply_logical_gate(amps: &mut [C64], n: usize, g: &LogicalGate) {
    let weights: Vec<usize> = (0..n).map(|q| 1usize << (n - 1 - q)).collect();
    apply_gate_weighted(amps, &weights, g);
}

/// Tr[rho_j^2] for qubit `j` of a big-endian `n`-qubit state vector.
pub fn qubit_purity(amps: &[C64], n: usize, j: usize) -> f64 {
    purity_at_weight(amps, 1 << (n - 1 - j))
}
