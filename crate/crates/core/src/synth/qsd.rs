//! Quantum Shannon decomposition in qubit and carrier modes.
//!
//! Each step splits off the most significant qubit: a cosine-sine split
//! gives a multiplexed Ry between two block-diagonal factors, and each of
//! those is demultiplexed into two smaller unitaries around a multiplexed
//! Rz. Qubit mode stops at two qubits with a three-CNOT KAK circuit.
//! Carrier mode stops when only the last `g` qubits remain: they share one
//! carrier, so whatever is left is a local operation.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::csd::csd;
use super::demux::demultiplex;
use super::kak::kak;
use super::mux::Multiplexor;
use super::remap::RemapRegister;
use crate::circuit::{GateKind, LogicalCircuit, LogicalGate, PhysicalCircuit, QloqMap};
use crate::error::{QloqError, Result};
use crate::sim::compile::{compile, CompileOptions};
use crate::sim::unitary::{equivalent_up_to_global_phase, physical_logical_unitary};

/// Largest register the dense decomposition accepts.
pub const MAX_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum QsdMode {
    Qubit,
    Qloq { g: usize },
    QloqWithRemap { g: usize },
}

impl QsdMode {
    fn carrier(self, n: usize) -> usize {
        match self {
            QsdMode::Qubit => 0,
            QsdMode::Qloq { g } | QsdMode::QloqWithRemap { g } => g.min(n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QsdResult {
    /// Decomposition over the logical qubits.
    pub logical: LogicalCircuit,
    /// Compiled form; for remap mode this includes the merge and split.
    pub physical: PhysicalCircuit,
    pub entanglers: usize,
    /// |tr(U^dagger V)| / 2^n between the target and the physical circuit.
    pub fidelity: f64,
}

struct Ctx {
    carrier: usize,
    n: usize,
    out: Vec<LogicalGate>,
}

impl Ctx {
    fn carrier_qubits(&self) -> std::ops::Range<usize> {
        self.n - self.carrier..self.n
    }

    fn decompose(&mut self, u: &DMatrix<C64>, qubits: &[usize]) -> Result<()> {
        let k = qubits.len();
        if self.carrier > 0 && k <= self.carrier {
            self.out.push(LogicalGate::unitary(qubits, u.clone()));
            return Ok(());
        }
        if self.carrier == 0 && k == 1 {
            self.out.push(LogicalGate::unitary(qubits, u.clone()));
            return Ok(());
        }
        if self.carrier == 0 && k == 2 {
            self.out.extend(kak(u)?.gates(qubits[0], qubits[1]));
            return Ok(());
        }
        let (top, rest) = (qubits[0], &qubits[1..]);
        let carrier: Vec<usize> = rest.iter().copied().filter(|q| self.carrier_qubits().contains(q)).collect();
        let singles: Vec<usize> = rest.iter().copied().filter(|q| !carrier.contains(q)).collect();
        let mux = |axis, angles: &[f64]| Multiplexor::new(axis, top, &singles, &carrier, angles)?.gates();

        let f = csd(u)?;
        let right = demultiplex(&f.r0, &f.r1)?;
        let left = demultiplex(&f.l0, &f.l1)?;
        self.decompose(&right.w, rest)?;
        self.out.extend(mux(GateKind::Rz, &right.rz_angles())?);
        self.decompose(&right.v, rest)?;
        let ry: Vec<f64> = f.theta.iter().map(|t| 2.0 * t).collect();
        self.out.extend(mux(GateKind::Ry, &ry)?);
        self.decompose(&left.w, rest)?;
        self.out.extend(mux(GateKind::Rz, &left.rz_angles())?);
        self.decompose(&left.v, rest)?;
        Ok(())
    }
}

/// Map used to compile a decomposition without remapping: one carrier for
/// the last `g` qubits, every other qubit alone.
pub fn qloq_map(n: usize, g: usize) -> Result<QloqMap> {
    let mut partition: Vec<Vec<usize>> = (0..n - g).map(|q| vec![q]).collect();
    partition.push((n - g..n).collect());
    QloqMap::new(partition)
}

pub fn qsd(u: &DMatrix<C64>, mode: QsdMode) -> Result<QsdResult> {
    let dim = u.nrows();
    if dim != u.ncols() || !dim.is_power_of_two() || dim < 2 {
        return Err(QloqError::Dimension { expected: dim.next_power_of_two().max(2), got: u.ncols() });
    }
    let n = dim.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(QloqError::Unsupported(format!("{n} qubits exceeds the {MAX_QUBITS}-qubit limit")));
    }
    match mode {
        QsdMode::Qloq { g } | QsdMode::QloqWithRemap { g } if g == 0 || g > n => {
            return Err(QloqError::OutOfRange(format!("need 1 <= g <= n, got g={g} n={n}")));
        }
        QsdMode::QloqWithRemap { g: 1 } => {
            return Err(QloqError::OutOfRange("remapping needs g >= 2".into()));
        }
        _ => {}
    }
    if !crate::sim::unitary::is_unitary(u, 1e-9) {
        return Err(QloqError::Numerical("input is not unitary".into()));
    }
    let mut ctx = Ctx { carrier: mode.carrier(n), n, out: Vec::new() };
    let all: Vec<usize> = (0..n).collect();
    ctx.decompose(u, &all)?;
    let logical = LogicalCircuit::from_gates(n, ctx.out)?;
    let physical = match mode {
        QsdMode::Qubit => compile(&logical, &QloqMap::qubits(n), CompileOptions::default())?,
        QsdMode::Qloq { g } => compile(&logical, &qloq_map(n, g)?, CompileOptions::default())?,
        QsdMode::QloqWithRemap { g } => RemapRegister::new(n, g)?.compile_with(&logical, CompileOptions::default())?,
    };
    let got = physical_logical_unitary(&physical, 1e-9)?;
    let (_, fidelity) = equivalent_up_to_global_phase(u, &got, 0.0)?;
    Ok(QsdResult { entanglers: physical.entangler_count(), logical, physical, fidelity })
}
