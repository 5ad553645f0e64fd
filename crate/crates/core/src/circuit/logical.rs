//! Logical (qubit-level) circuit IR.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{QloqError, Result};

/// Tolerance used when checking opaque payloads for unitarity.
pub const PAYLOAD_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    #[serde(rename = "mcx")]
    Mcx,
    #[serde(rename = "mcz")]
    Mcz,
    #[serde(rename = "rx")]
    Rx,
    #[serde(rename = "ry")]
    Ry,
    #[serde(rename = "rz")]
    Rz,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "h")]
    H,
    #[serde(rename = "swap")]
    Swap,
    #[serde(rename = "opaque-unitary", alias = "unitary")]
    Unitary,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Mcx => "mcx",
            GateKind::Mcz => "mcz",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::Swap => "swap",
            GateKind::Unitary => "opaque-unitary",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "mcx" | "cx" | "cnot" => GateKind::Mcx,
            "mcz" | "cz" => GateKind::Mcz,
            "rx" => GateKind::Rx,
            "ry" => GateKind::Ry,
            "rz" => GateKind::Rz,
            "x" => GateKind::X,
            "h" => GateKind::H,
            "swap" => GateKind::Swap,
            "opaque-unitary" | "unitary" => GateKind::Unitary,
            other => return Err(QloqError::Parse(format!("unknown gate kind `{other}`"))),
        })
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    /// Kinds that accept control qubits.
    pub fn controllable(self) -> bool {
        matches!(self, GateKind::Mcx | GateKind::Mcz)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogicalGate {
    pub kind: GateKind,
    pub controls: Vec<usize>,
    /// Controls that fire on |0> rather than |1>.
    pub negated_controls: Vec<usize>,
    pub targets: Vec<usize>,
    pub params: Vec<f64>,
    pub matrix: Option<DMatrix<C64>>,
}

impl LogicalGate {
    fn bare(kind: GateKind, controls: Vec<usize>, targets: Vec<usize>, params: Vec<f64>) -> Self {
        LogicalGate { kind, controls, negated_controls: Vec::new(), targets, params, matrix: None }
    }

    pub fn mcx(controls: &[usize], target: usize) -> Self {
        Self::bare(GateKind::Mcx, controls.to_vec(), vec![target], vec![])
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::mcx(&[control], target)
    }

    /// Multi-controlled Z. The phase is symmetric in its qubits, so the
    /// last listed qubit is stored as the nominal target.
    pub fn mcz(qubits: &[usize]) -> Self {
        let (t, c) = qubits.split_last().expect("mcz needs at least one qubit");
        Self::bare(GateKind::Mcz, c.to_vec(), vec![*t], vec![])
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Self::mcz(&[a, b])
    }

    pub fn rx(q: usize, theta: f64) -> Self {
        Self::bare(GateKind::Rx, vec![], vec![q], vec![theta])
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Self::bare(GateKind::Ry, vec![], vec![q], vec![theta])
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Self::bare(GateKind::Rz, vec![], vec![q], vec![theta])
    }

    pub fn rotation(kind: GateKind, q: usize, theta: f64) -> Self {
        debug_assert!(kind.is_rotation());
        Self::bare(kind, vec![], vec![q], vec![theta])
    }

    pub fn x(q: usize) -> Self {
        Self::bare(GateKind::X, vec![], vec![q], vec![])
    }

    pub fn h(q: usize) -> Self {
        Self::bare(GateKind::H, vec![], vec![q], vec![])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::bare(GateKind::Swap, vec![], vec![a, b], vec![])
    }

    /// Opaque unitary on `targets` (first target is the most significant bit).
    pub fn unitary(targets: &[usize], matrix: DMatrix<C64>) -> Self {
        LogicalGate {
            kind: GateKind::Unitary,
            controls: vec![],
            negated_controls: vec![],
            targets: targets.to_vec(),
            params: vec![],
            matrix: Some(matrix),
        }
    }

    /// Single-qubit phase gate diag(1, e^{i phi}).
    pub fn phase(q: usize, phi: f64) -> Self {
        let mut m = DMatrix::identity(2, 2);
        m[(1, 1)] = C64::from_polar(1.0, phi);
        Self::unitary(&[q], m)
    }

    pub fn with_negated(mut self, negated: &[usize]) -> Self {
        self.negated_controls = negated.to_vec();
        self
    }

    /// Control polarity for qubit `q`: `Some(true)` fires on |1>, `Some(false)` on |0>.
    pub fn control_polarity(&self, q: usize) -> Option<bool> {
        if !self.controls.contains(&q) {
            return None;
        }
        Some(!self.negated_controls.contains(&q))
    }

    /// All qubits touched by the gate, controls first.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.controls.clone();
        s.extend_from_slice(&self.targets);
        s
    }

    pub fn arity(&self) -> usize {
        self.controls.len() + self.targets.len()
    }

    pub fn is_entangling(&self) -> bool {
        self.arity() >= 2
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let bad = |msg: String| Err(QloqError::InvalidCircuit(msg));
        let support = self.support();
        for &q in &support {
            if q >= num_qubits {
                return bad(format!("{} gate touches qubit {q} but the circuit has {num_qubits}", self.kind.name()));
            }
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != support.len() {
            return bad(format!("{} gate repeats a qubit index", self.kind.name()));
        }
        for q in &self.negated_controls {
            if !self.controls.contains(q) {
                return bad(format!("negated control {q} is not a control"));
            }
        }
        if !self.controls.is_empty() && !self.kind.controllable() {
            return bad(format!("{} gates take no controls", self.kind.name()));
        }
        let (want_targets, want_params) = match self.kind {
            GateKind::Mcx | GateKind::Mcz | GateKind::X | GateKind::H => (Some(1), 0),
            GateKind::Rx | GateKind::Ry | GateKind::Rz => (Some(1), 1),
            GateKind::Swap => (Some(2), 0),
            GateKind::Unitary => (None, 0),
        };
        if let Some(t) = want_targets {
            if self.targets.len() != t {
                return bad(format!("{} gate needs {t} target(s), got {}", self.kind.name(), self.targets.len()));
            }
        }
        if self.params.len() != want_params {
            return bad(format!(
                "{} gate needs {want_params} parameter(s), got {}",
                self.kind.name(),
                self.params.len()
            ));
        }
        if self.params.iter().any(|p| !p.is_finite()) {
            return bad("non-finite angle".into());
        }
        match (&self.kind, &self.matrix) {
            (GateKind::Unitary, Some(m)) => {
                if self.targets.is_empty() {
                    return bad("opaque unitary without targets".into());
                }
                let dim = 1usize << self.targets.len();
                if m.nrows() != dim || m.ncols() != dim {
                    return bad(format!("opaque payload is {}x{}, expected {dim}x{dim}", m.nrows(), m.ncols()));
                }
                let err = unitarity_error(m);
                if err > PAYLOAD_TOL {
                    return bad(format!("opaque payload is not unitary (error {err:.3e})"));
                }
            }
            (GateKind::Unitary, None) => return bad("opaque unitary without a matrix".into()),
            (_, Some(_)) => return bad(format!("{} gate carries a matrix payload", self.kind.name())),
            _ => {}
        }
        Ok(())
    }

    /// Matrix acting on the targets (big-endian in target order), ignoring controls.
    pub fn target_matrix(&self) -> DMatrix<C64> {
        let c = |re: f64, im: f64| C64::new(re, im);
        let z = c(0.0, 0.0);
        let o = c(1.0, 0.0);
        match self.kind {
            GateKind::Mcx | GateKind::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
            GateKind::Mcz => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
            GateKind::H => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                DMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)])
            }
            GateKind::Rx | GateKind::Ry | GateKind::Rz => rotation_matrix(self.kind, self.params[0]),
            GateKind::Swap => {
                let mut m = DMatrix::zeros(4, 4);
                m[(0, 0)] = o;
                m[(1, 2)] = o;
                m[(2, 1)] = o;
                m[(3, 3)] = o;
                m
            }
            GateKind::Unitary => self.matrix.clone().expect("validated opaque gate"),
        }
    }
}

/// 2x2 rotation matrix; Rz(t) = diag(e^{-it/2}, e^{it/2}).
pub fn rotation_matrix(kind: GateKind, theta: f64) -> DMatrix<C64> {
    let (s, co) = (theta / 2.0).sin_cos();
    let c = |re: f64, im: f64| C64::new(re, im);
    match kind {
        GateKind::Rx => DMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]),
        GateKind::Ry => DMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]),
        GateKind::Rz => DMatrix::from_row_slice(
            2,
            2,
            &[C64::from_polar(1.0, -theta / 2.0), c(0.0, 0.0), c(0.0, 0.0), C64::from_polar(1.0, theta / 2.0)],
        ),
        _ => panic!("{} is not a rotation", kind.name()),
    }
}

/// Max-norm distance of `m^dagger m` from the identity.
pub fn unitarity_error(m: &DMatrix<C64>) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let p = m.adjoint() * m;
    let mut worst: f64 = 0.0;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - C64::new(want, 0.0)).norm());
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LogicalCircuit {
    pub num_qubits: usize,
    pub gates: Vec<LogicalGate>,
}

impl LogicalCircuit {
    pub fn new(num_qubits: usize) -> Self {
        LogicalCircuit { num_qubits, gates: Vec::new() }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<LogicalGate>) -> Result<Self> {
        let c = LogicalCircuit { num_qubits, gates };
        c.validate()?;
        Ok(c)
    }

    pub fn push(&mut self, gate: LogicalGate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            g.validate(self.num_qubits)
                .map_err(|e| QloqError::InvalidCircuit(format!("gate {i}: {e}")))?;
        }
        Ok(())
    }

    /// Number of rotation angles, i.e. free parameters of an ansatz template.
    pub fn rotation_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_rotation()).count()
    }

    /// Copy with the rotation angles replaced, in gate order.
    pub fn bind_parameters(&self, params: &[f64]) -> Result<LogicalCircuit> {
        let want = self.rotation_count();
        if params.len() != want {
            return Err(QloqError::Dimension { expected: want, got: params.len() });
        }
        let mut out = self.clone();
        let mut it = params.iter();
        for g in out.gates.iter_mut().filter(|g| g.kind.is_rotation()) {
            g.params = vec![*it.next().expect("length checked")];
        }
        Ok(out)
    }

    /// Number of entangling gates in the logical form.
    pub fn entangling_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_entangling()).count()
    }

    /// Concatenate `other` after `self`.
    pub fn then(&self, other: &LogicalCircuit) -> Result<LogicalCircuit> {
        if self.num_qubits != other.num_qubits {
            return Err(QloqError::Dimension { expected: self.num_qubits, got: other.num_qubits });
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }
}
