//! Carrier-level circuit IR: local carrier unitaries and two-level entanglers.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::logical::unitarity_error;
use super::map::QloqMap;
use crate::error::{QloqError, Result};

/// Tolerance for local op unitarity.
pub const LOCAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Cx,
    Cz,
}

/// A two-level entangling gate. CX swaps target levels `t0`/`t1` when the
/// control carrier sits at `control_level`; CZ puts a -1 phase on the
/// joint state (control_level, t1). Every other level is untouched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Entangler {
    pub control: usize,
    pub control_level: usize,
    pub target: usize,
    pub t0: usize,
    pub t1: usize,
    pub flavor: Flavor,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PhysicalOp {
    Local { carrier: usize, matrix: DMatrix<C64> },
    Entangler(Entangler),
}

impl PhysicalOp {
    pub fn is_entangler(&self) -> bool {
        matches!(self, PhysicalOp::Entangler(_))
    }

    pub fn validate(&self, map: &QloqMap) -> Result<()> {
        let bad = |m: String| Err(QloqError::InvalidCircuit(m));
        match self {
            PhysicalOp::Local { carrier, matrix } => {
                if *carrier >= map.num_carriers() {
                    return bad(format!("local op on missing carrier {carrier}"));
                }
                let l = map.levels(*carrier);
                if matrix.nrows() != l || matrix.ncols() != l {
                    return Err(QloqError::Dimension { expected: l, got: matrix.nrows() });
                }
                let err = unitarity_error(matrix);
                if err > LOCAL_TOL {
                    return bad(format!("local op on carrier {carrier} not unitary (error {err:.2e})"));
                }
            }
            PhysicalOp::Entangler(e) => {
                if e.control >= map.num_carriers() || e.target >= map.num_carriers() {
                    return bad("entangler references a missing carrier".into());
                }
                if e.control == e.target {
                    return bad("entangler control and target share a carrier".into());
                }
                if e.control_level >= map.levels(e.control) {
                    return bad(format!("control level {} out of range", e.control_level));
                }
                let lt = map.levels(e.target);
                if e.t0 == e.t1 || e.t0 >= lt || e.t1 >= lt {
                    return bad(format!("bad target level pair ({}, {})", e.t0, e.t1));
                }
            }
        }
        Ok(())
    }
}

/// Physical circuit over a carrier register. The register is described by
/// a map over *slots*; logical qubit `i` enters at slot `inputs[i]` and
/// leaves at slot `outputs[i]`. Unlisted slots are ancilla space held at
/// |0> on entry and expected back at |0> on exit.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalCircuit {
    map: QloqMap,
    ops: Vec<PhysicalOp>,
    entangler_count: usize,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

impl PhysicalCircuit {
    /// Empty circuit whose logical qubits coincide with the map's slots.
    pub fn new(map: QloqMap) -> Self {
        let ident: Vec<usize> = (0..map.num_qubits()).collect();
        PhysicalCircuit { map, ops: Vec::new(), entangler_count: 0, inputs: ident.clone(), outputs: ident }
    }

    pub fn with_io(map: QloqMap, inputs: Vec<usize>, outputs: Vec<usize>) -> Result<Self> {
        let s = map.num_qubits();
        for io in [&inputs, &outputs] {
            let mut v = io.clone();
            v.sort_unstable();
            v.dedup();
            if v.len() != io.len() || v.iter().any(|&x| x >= s) {
                return Err(QloqError::InvalidCircuit("input/output slots must be distinct and in range".into()));
            }
        }
        if inputs.len() != outputs.len() {
            return Err(QloqError::InvalidCircuit("input and output widths differ".into()));
        }
        Ok(PhysicalCircuit { map, ops: Vec::new(), entangler_count: 0, inputs, outputs })
    }

    pub fn push(&mut self, op: PhysicalOp) -> Result<()> {
        op.validate(&self.map)?;
        if op.is_entangler() {
            self.entangler_count += 1;
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = PhysicalOp>>(&mut self, ops: I) -> Result<()> {
        for op in ops {
            self.push(op)?;
        }
        Ok(())
    }

    /// Append all ops of `other`, which must share this register.
    pub fn append(&mut self, other: &PhysicalCircuit) -> Result<()> {
        if other.map != self.map {
            return Err(QloqError::InvalidMap("appending a circuit on a different register".into()));
        }
        self.extend(other.ops.iter().cloned())
    }

    pub fn map(&self) -> &QloqMap {
        &self.map
    }

    pub fn ops(&self) -> &[PhysicalOp] {
        &self.ops
    }

    pub fn entangler_count(&self) -> usize {
        self.entangler_count
    }

    pub fn local_count(&self) -> usize {
        self.ops.len() - self.entangler_count
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn set_outputs(&mut self, outputs: Vec<usize>) -> Result<()> {
        let c = PhysicalCircuit::with_io(self.map.clone(), self.inputs.clone(), outputs)?;
        self.outputs = c.outputs;
        Ok(())
    }

    pub fn num_logical(&self) -> usize {
        self.inputs.len()
    }

    pub fn entanglers(&self) -> impl Iterator<Item = &Entangler> {
        self.ops.iter().filter_map(|op| match op {
            PhysicalOp::Entangler(e) => Some(e),
            _ => None,
        })
    }

    /// Merge runs of adjacent local ops on the same carrier into one matrix.
    pub fn fuse_locals(&self) -> PhysicalCircuit {
        let mut out: Vec<PhysicalOp> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            if let (Some(PhysicalOp::Local { carrier: c0, matrix: m0 }), PhysicalOp::Local { carrier, matrix }) =
                (out.last_mut(), op)
            {
                if c0 == carrier {
                    *m0 = matrix * &*m0;
                    continue;
                }
            }
            out.push(op.clone());
        }
        PhysicalCircuit {
            map: self.map.clone(),
            ops: out,
            entangler_count: self.entangler_count,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
    }
}
