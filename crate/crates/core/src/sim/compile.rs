//! Lowering of logical gates onto a carrier register.
//!
//! Gates inside one carrier become local level operations. Multi-controlled
//! X/Z gates between two carriers become one two-level entangler per
//! assignment of the spectator bits on both carriers, which is where the
//! 2^{g_a+g_b-n} bridge cost comes from. Gates over more than two carriers
//! are first rewritten as a phase polynomial of CNOT ladders and 1-qubit
//! phases.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::unitary::gate_unitary;
use crate::circuit::{Entangler, Flavor, GateKind, LogicalCircuit, LogicalGate, PhysicalCircuit, PhysicalOp, QloqMap};
use crate::error::{QloqError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EntanglerStyle {
    /// Address the needed levels directly.
    #[default]
    LevelAddressed,
    /// Always use control level 1 and target pair (0,1), moving the
    /// required levels there with local permutations.
    Canonical,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CompileOptions {
    pub style: EntanglerStyle,
}

/// Gate compiler over a slot register. Slots marked vacant are promised to
/// hold |0>, so bridge gates need not enumerate them.
#[derive(Clone, Debug)]
pub struct Compiler {
    map: QloqMap,
    options: CompileOptions,
    vacant: Vec<bool>,
}

impl Compiler {
    pub fn new(map: &QloqMap, options: CompileOptions) -> Self {
        Compiler { map: map.clone(), options, vacant: vec![false; map.num_qubits()] }
    }

    pub fn map(&self) -> &QloqMap {
        &self.map
    }

    pub fn set_vacant(&mut self, slot: usize, vacant: bool) {
        self.vacant[slot] = vacant;
    }

    pub fn is_vacant(&self, slot: usize) -> bool {
        self.vacant[slot]
    }

    pub fn gate_ops(&self, g: &LogicalGate) -> Result<Vec<PhysicalOp>> {
        g.validate(self.map.num_qubits())?;
        let carriers = self.map.carriers_spanned(&g.support());
        match carriers.len() {
            1 => embed_logical_gate(g, &self.map),
            2 => match g.kind {
                GateKind::Mcx | GateKind::Mcz => Ok(self.bridge(g)),
                GateKind::Swap => {
                    let (a, b) = (g.targets[0], g.targets[1]);
                    let mut ops = self.bridge(&LogicalGate::cx(a, b));
                    ops.extend(self.bridge(&LogicalGate::cx(b, a)));
                    ops.extend(self.bridge(&LogicalGate::cx(a, b)));
                    Ok(ops)
                }
                _ => Err(QloqError::Unsupported(format!(
                    "{} gate across carriers {carriers:?} needs synthesis",
                    g.kind.name()
                ))),
            },
            _ => match g.kind {
                GateKind::Mcx | GateKind::Mcz => {
                    let mut ops = Vec::new();
                    for h in lower_multi_controlled(g) {
                        ops.extend(self.gate_ops(&h)?);
                    }
                    Ok(ops)
                }
                _ => Err(QloqError::Unsupported(format!(
                    "{} gate spanning {} carriers",
                    g.kind.name(),
                    carriers.len()
                ))),
            },
        }
    }

    /// Level assignments of a carrier: each slot is either pinned (support
    /// or vacant) or free; returns every level consistent with the pins.
    fn levels_with(&self, carrier: usize, pinned: &[(usize, bool)]) -> Vec<usize> {
        let slots = &self.map.partition()[carrier];
        let mut base = 0usize;
        let mut free = Vec::new();
        for &s in slots {
            let bit = self.map.level_bit(s);
            if let Some(&(_, v)) = pinned.iter().find(|(q, _)| *q == s) {
                if v {
                    base |= bit;
                }
            } else if !self.vacant[s] {
                free.push(bit);
            }
        }
        (0..1usize << free.len())
            .map(|a| {
                free.iter()
                    .enumerate()
                    .filter(|(i, _)| (a >> i) & 1 == 1)
                    .fold(base, |acc, (_, b)| acc | b)
            })
            .collect()
    }

    fn bridge(&self, g: &LogicalGate) -> Vec<PhysicalOp> {
        let t = g.targets[0];
        let tc = self.map.carrier_of(t);
        let cc = self
            .map
            .carriers_spanned(&g.support())
            .into_iter()
            .find(|&c| c != tc)
            .expect("bridge gate spans two carriers");
        let pins = |carrier: usize| -> Vec<(usize, bool)> {
            g.controls
                .iter()
                .filter(|&&q| self.map.carrier_of(q) == carrier)
                .map(|&q| (q, g.control_polarity(q) == Some(true)))
                .collect()
        };
        let flavor = if g.kind == GateKind::Mcz { Flavor::Cz } else { Flavor::Cx };
        let ctrl_levels = self.levels_with(cc, &pins(cc));
        let mut tpins = pins(tc);
        tpins.push((t, false));
        let t0s = self.levels_with(tc, &tpins);
        let tbit = self.map.level_bit(t);
        let mut ops = Vec::new();
        for &l in &ctrl_levels {
            for &t0 in &t0s {
                let e = Entangler { control: cc, control_level: l, target: tc, t0, t1: t0 | tbit, flavor };
                match self.options.style {
                    EntanglerStyle::LevelAddressed => ops.push(PhysicalOp::Entangler(e)),
                    EntanglerStyle::Canonical => ops.extend(canonical_entangler(&self.map, e)),
                }
            }
        }
        ops
    }
}

/// Compile a whole logical circuit under `map`.
pub fn compile(circuit: &LogicalCircuit, map: &QloqMap, options: CompileOptions) -> Result<PhysicalCircuit> {
    if circuit.num_qubits != map.num_qubits() {
        return Err(QloqError::Dimension { expected: map.num_qubits(), got: circuit.num_qubits });
    }
    let compiler = Compiler::new(map, options);
    let mut out = PhysicalCircuit::new(map.clone());
    for g in &circuit.gates {
        out.extend(compiler.gate_ops(g)?)?;
    }
    Ok(out)
}

fn permutation_matrix(perm: &[usize]) -> DMatrix<C64> {
    let l = perm.len();
    let mut m = DMatrix::zeros(l, l);
    for (x, &y) in perm.iter().enumerate() {
        m[(y, x)] = C64::new(1.0, 0.0);
    }
    m
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Conjugate an entangler by local permutations so it acts on control level
/// 1 and target levels (0,1). On a 4-level target with pair (2,3) the
/// target permutation is X_s, |0>&harr;|2>, |1>&harr;|3>.
fn canonical_entangler(map: &QloqMap, e: Entangler) -> Vec<PhysicalOp> {
    let lc = map.levels(e.control);
    let lt = map.levels(e.target);
    let shift = e.control_level ^ 1;
    let pc: Vec<usize> = (0..lc).map(|x| x ^ shift).collect();
    let b = (e.t0 ^ e.t1).trailing_zeros() as usize;
    let swap_bits = |x: usize| {
        let (hi, lo) = ((x >> b) & 1, x & 1);
        (x & !(1 << b) & !1) | (hi) | (lo << b)
    };
    let pt: Vec<usize> = (0..lt).map(|x| swap_bits(x ^ e.t0)).collect();
    let mut ops = Vec::new();
    let ident = |p: &[usize]| p.iter().enumerate().all(|(i, &v)| i == v);
    if !ident(&pc) {
        ops.push(PhysicalOp::Local { carrier: e.control, matrix: permutation_matrix(&pc) });
    }
    if !ident(&pt) {
        ops.push(PhysicalOp::Local { carrier: e.target, matrix: permutation_matrix(&pt) });
    }
    ops.push(PhysicalOp::Entangler(Entangler { control_level: 1, t0: 0, t1: 1, ..e }));
    if !ident(&pc) {
        ops.push(PhysicalOp::Local { carrier: e.control, matrix: permutation_matrix(&invert(&pc)) });
    }
    if !ident(&pt) {
        ops.push(PhysicalOp::Local { carrier: e.target, matrix: permutation_matrix(&invert(&pt)) });
    }
    ops
}

/// Permutation swapping the qubits at positions `a` and `b` of a `g`-qubit carrier.
pub fn internal_swap(g: usize, a: usize, b: usize) -> DMatrix<C64> {
    let (ba, bb) = (g - 1 - a, g - 1 - b);
    let perm: Vec<usize> = (0..1usize << g)
        .map(|x| {
            let (va, vb) = ((x >> ba) & 1, (x >> bb) & 1);
            (x & !(1 << ba) & !(1 << bb)) | (vb << ba) | (va << bb)
        })
        .collect();
    permutation_matrix(&perm)
}

/// `m` repeated on each consecutive level pair (0,1), (2,3), ... of a `g`-qubit carrier.
pub fn block_diagonal(g: usize, m: &DMatrix<C64>) -> DMatrix<C64> {
    DMatrix::<C64>::identity(1 << (g - 1), 1 << (g - 1)).kronecker(m)
}

/// Local ops for a gate whose support lies on a single carrier.
pub fn embed_logical_gate(g: &LogicalGate, map: &QloqMap) -> Result<Vec<PhysicalOp>> {
    g.validate(map.num_qubits())?;
    let support = g.support();
    let carriers = map.carriers_spanned(&support);
    if carriers.len() != 1 {
        return Err(QloqError::Unsupported(format!(
            "{} gate spans carriers {carriers:?}; it must be synthesized",
            g.kind.name()
        )));
    }
    let c = carriers[0];
    let gc = map.size(c);
    let pos = |q: usize| map.locate(q).1;
    if support.len() == 1 && gc > 1 {
        let k = pos(support[0]);
        let block = block_diagonal(gc, &g.target_matrix());
        if k == gc - 1 {
            return Ok(vec![PhysicalOp::Local { carrier: c, matrix: block }]);
        }
        let sw = internal_swap(gc, k, gc - 1);
        return Ok(vec![
            PhysicalOp::Local { carrier: c, matrix: sw.clone() },
            PhysicalOp::Local { carrier: c, matrix: block },
            PhysicalOp::Local { carrier: c, matrix: sw },
        ]);
    }
    if g.kind == GateKind::Swap && g.controls.is_empty() {
        let m = internal_swap(gc, pos(g.targets[0]), pos(g.targets[1]));
        return Ok(vec![PhysicalOp::Local { carrier: c, matrix: m }]);
    }
    let local = LogicalGate {
        controls: g.controls.iter().map(|&q| pos(q)).collect(),
        negated_controls: g.negated_controls.iter().map(|&q| pos(q)).collect(),
        targets: g.targets.iter().map(|&q| pos(q)).collect(),
        ..g.clone()
    };
    Ok(vec![PhysicalOp::Local { carrier: c, matrix: gate_unitary(&local, gc)? }])
}

/// Rewrite a multi-controlled X/Z as CNOTs and 1-qubit gates.
///
/// The all-ones phase factorises over parities: x_1...x_n equals
/// 2^{1-n} sum_S (-1)^{|S|-1} XOR_S(x). Parities are accumulated on the
/// last qubit along a Gray code over the others, giving 2^n - 2 CNOTs.
pub fn lower_multi_controlled(g: &LogicalGate) -> Vec<LogicalGate> {
    let mut out = Vec::new();
    let negated = &g.negated_controls;
    for &q in negated {
        out.push(LogicalGate::x(q));
    }
    let t = g.targets[0];
    let is_x = g.kind == GateKind::Mcx;
    if is_x {
        out.push(LogicalGate::h(t));
    }
    let qubits = g.support();
    let factor = PI / (1u64 << (qubits.len() - 1)) as f64;
    phase_polynomial(&qubits, factor, &mut out);
    if is_x {
        out.push(LogicalGate::h(t));
    }
    for &q in negated {
        out.push(LogicalGate::x(q));
    }
    out
}

fn phase_polynomial(v: &[usize], factor: f64, out: &mut Vec<LogicalGate>) {
    let sign = |size: usize| if size % 2 == 1 { 1.0 } else { -1.0 };
    let (&acc, rest) = v.split_last().expect("non-empty");
    let m = rest.len();
    out.push(LogicalGate::phase(acc, factor));
    if m == 0 {
        return;
    }
    for i in 1usize..(1 << m) {
        let flip = i.trailing_zeros() as usize;
        out.push(LogicalGate::cx(rest[flip], acc));
        let gray = i ^ (i >> 1);
        out.push(LogicalGate::phase(acc, sign(gray.count_ones() as usize + 1) * factor));
    }
    out.push(LogicalGate::cx(rest[m - 1], acc));
    phase_polynomial(rest, factor, out);
}
