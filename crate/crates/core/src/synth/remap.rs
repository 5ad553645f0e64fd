//! Moving qubits onto a shared carrier and back.
//!
//! The register keeps every logical qubit on a 2-level carrier except the
//! last, which sits in the least significant slot of a g-slot carrier whose
//! other slots start empty. Merging moves the qubits `n-g..n-1` into those
//! slots with two CNOTs each; splitting undoes it. Because empty slots are
//! known to hold |0>, each CNOT only enumerates the occupied slots.

use crate::circuit::{LogicalCircuit, LogicalGate, PhysicalCircuit, QloqMap};
use crate::error::{QloqError, Result};
use crate::sim::compile::{CompileOptions, Compiler};

#[derive(Clone, Debug)]
pub struct RemapRegister {
    pub num_qubits: usize,
    pub g: usize,
    pub map: QloqMap,
}

impl RemapRegister {
    pub fn new(num_qubits: usize, g: usize) -> Result<Self> {
        if g < 2 || g > num_qubits {
            return Err(QloqError::OutOfRange(format!("need 2 <= g <= n, got g={g} n={num_qubits}")));
        }
        let mut partition: Vec<Vec<usize>> = (0..num_qubits - 1).map(|s| vec![s]).collect();
        partition.push((num_qubits - 1..num_qubits - 1 + g).collect());
        Ok(RemapRegister { num_qubits, g, map: QloqMap::new(partition)? })
    }

    /// Slot holding logical qubit `q` before merging and after splitting.
    pub fn home_slot(&self, q: usize) -> usize {
        if q + 1 == self.num_qubits {
            self.num_qubits + self.g - 2
        } else {
            q
        }
    }

    /// Slot holding logical qubit `q` while merged.
    pub fn merged_slot(&self, q: usize) -> usize {
        let first = self.num_qubits - self.g;
        if q >= first {
            self.num_qubits - 1 + (q - first)
        } else {
            q
        }
    }

    fn moved(&self) -> std::ops::Range<usize> {
        self.num_qubits - self.g..self.num_qubits - 1
    }

    fn compiler(&self, options: CompileOptions) -> Compiler {
        let mut c = Compiler::new(&self.map, options);
        for s in self.num_qubits - 1..self.num_qubits + self.g - 2 {
            c.set_vacant(s, true);
        }
        c
    }

    /// Merge, then `body` on the merged slots, then split. `body` is over
    /// the `num_qubits` logical qubits.
    pub fn compile_with(&self, body: &LogicalCircuit, options: CompileOptions) -> Result<PhysicalCircuit> {
        if body.num_qubits != self.num_qubits {
            return Err(QloqError::Dimension { expected: self.num_qubits, got: body.num_qubits });
        }
        let io: Vec<usize> = (0..self.num_qubits).map(|q| self.home_slot(q)).collect();
        let mut out = PhysicalCircuit::with_io(self.map.clone(), io.clone(), io)?;
        let mut comp = self.compiler(options);
        for q in self.moved() {
            let t = self.merged_slot(q);
            out.extend(comp.gate_ops(&LogicalGate::cx(q, t))?)?;
            comp.set_vacant(t, false);
            out.extend(comp.gate_ops(&LogicalGate::cx(t, q))?)?;
            comp.set_vacant(q, true);
        }
        for g in &body.gates {
            let relabel = |v: &[usize]| v.iter().map(|&q| self.merged_slot(q)).collect::<Vec<_>>();
            let h = LogicalGate {
                controls: relabel(&g.controls),
                negated_controls: relabel(&g.negated_controls),
                targets: relabel(&g.targets),
                ..g.clone()
            };
            out.extend(comp.gate_ops(&h)?)?;
        }
        for q in self.moved().rev() {
            let t = self.merged_slot(q);
            out.extend(comp.gate_ops(&LogicalGate::cx(t, q))?)?;
            comp.set_vacant(q, false);
            out.extend(comp.gate_ops(&LogicalGate::cx(q, t))?)?;
            comp.set_vacant(t, true);
        }
        Ok(out)
    }
}

/// Merge-then-split fragment for `f` qubits with nothing in between.
pub fn round_trip(f: usize) -> Result<PhysicalCircuit> {
    RemapRegister::new(f, f)?.compile_with(&LogicalCircuit::new(f), CompileOptions::default())
}
