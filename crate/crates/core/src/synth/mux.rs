//! Uniformly controlled (multiplexed) Y and Z rotations.
//!
//! A multiplexor applies R(theta_j) to a target for each assignment j of
//! its select register. Selects are split into single qubits, each
//! addressed by a CNOT, and an optional carrier addressed level by level
//! with multi-controlled X gates. The gate sequence is built by mirroring,
//! redundant flips are cancelled, and the rotation angles are found by
//! solving the sign system that follows from tracking flips classically.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::circuit::logical::rotation_matrix;
use crate::circuit::{GateKind, LogicalGate};
use crate::error::{QloqError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flip {
    /// Unconditional X.
    Always,
    /// CNOT from the i-th single select.
    Single(usize),
    /// X conditioned on the carrier sitting at this level.
    Level(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Rot,
    Flip(Flip),
}

fn mirrored(items: &[Item]) -> Vec<Item> {
    items.iter().rev().copied().collect()
}

/// Within each run of consecutive flips keep only kinds of odd multiplicity.
fn cancel_flips(items: Vec<Item>) -> Vec<Item> {
    let mut out = Vec::with_capacity(items.len());
    let mut run: Vec<Flip> = Vec::new();
    let flush = |run: &mut Vec<Flip>, out: &mut Vec<Item>| {
        let mut seen: Vec<Flip> = Vec::new();
        for f in run.iter() {
            if !seen.contains(f) {
                seen.push(*f);
            }
        }
        for f in seen {
            if run.iter().filter(|&&g| g == f).count() % 2 == 1 {
                out.push(Item::Flip(f));
            }
        }
        run.clear();
    };
    for it in items {
        match it {
            Item::Flip(f) => run.push(f),
            Item::Rot => {
                flush(&mut run, &mut out);
                out.push(Item::Rot);
            }
        }
    }
    flush(&mut run, &mut out);
    out
}

fn structure(singles: usize, carrier: usize) -> Vec<Item> {
    let mut s = if carrier == 0 {
        vec![Item::Rot]
    } else {
        let mut v = Vec::new();
        for l in 0..1usize << carrier {
            v.push(Item::Rot);
            v.push(Item::Flip(Flip::Level(l)));
        }
        v.push(Item::Flip(Flip::Always));
        v
    };
    for sel in (0..singles).rev() {
        let mut next = s.clone();
        next.push(Item::Flip(Flip::Single(sel)));
        next.extend(mirrored(&s));
        next.push(Item::Flip(Flip::Single(sel)));
        s = cancel_flips(next);
    }
    s
}

/// Multiplexed rotation on `target`. `angles[j]` is applied when the select
/// register `singles ++ carrier` reads `j` (big-endian).
#[derive(Clone, Debug)]
pub struct Multiplexor {
    pub axis: GateKind,
    pub target: usize,
    pub singles: Vec<usize>,
    pub carrier: Vec<usize>,
    pub angles: Vec<f64>,
}

impl Multiplexor {
    pub fn new(axis: GateKind, target: usize, singles: &[usize], carrier: &[usize], angles: &[f64]) -> Result<Self> {
        if !matches!(axis, GateKind::Ry | GateKind::Rz) {
            return Err(QloqError::Unsupported(format!("multiplexed {} rotations", axis.name())));
        }
        let k = singles.len() + carrier.len();
        if angles.len() != 1usize << k {
            return Err(QloqError::Dimension { expected: 1 << k, got: angles.len() });
        }
        Ok(Multiplexor {
            axis,
            target,
            singles: singles.to_vec(),
            carrier: carrier.to_vec(),
            angles: angles.to_vec(),
        })
    }

    pub fn num_selects(&self) -> usize {
        self.singles.len() + self.carrier.len()
    }

    /// Block-diagonal operator with the target as the most significant
    /// qubit followed by the select register.
    pub fn matrix(&self) -> DMatrix<C64> {
        let h = self.angles.len();
        let mut m = DMatrix::zeros(2 * h, 2 * h);
        for (j, &a) in self.angles.iter().enumerate() {
            let r = rotation_matrix(self.axis, a);
            for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                m[(p * h + j, q * h + j)] = r[(p, q)];
            }
        }
        m
    }

    pub fn gates(&self) -> Result<Vec<LogicalGate>> {
        let g = self.carrier.len();
        let items = structure(self.singles.len(), g);
        let rows = self.angles.len();
        let rots = items.iter().filter(|i| **i == Item::Rot).count();
        if rots != rows {
            return Err(QloqError::Numerical(format!("{rots} rotations for {rows} select values")));
        }
        let mut sign = DMatrix::<f64>::zeros(rows, rots);
        for j in 0..rows {
            let level = j & ((1 << g) - 1);
            let single_bit = |i: usize| (j >> (g + self.singles.len() - 1 - i)) & 1 == 1;
            let mut flipped = false;
            let mut col = 0;
            for it in &items {
                match *it {
                    Item::Rot => {
                        sign[(j, col)] = if flipped { -1.0 } else { 1.0 };
                        col += 1;
                    }
                    Item::Flip(Flip::Always) => flipped = !flipped,
                    Item::Flip(Flip::Single(i)) => flipped ^= single_bit(i),
                    Item::Flip(Flip::Level(l)) => flipped ^= l == level,
                }
            }
            if flipped {
                return Err(QloqError::Numerical(format!("select value {j} leaves the target flipped")));
            }
        }
        let rhs = DVector::from_column_slice(&self.angles);
        let params = sign
            .clone()
            .lu()
            .solve(&rhs)
            .ok_or_else(|| QloqError::Numerical("singular multiplexor sign matrix".into()))?;
        let mut out = Vec::with_capacity(items.len());
        let mut col = 0;
        for it in items {
            match it {
                Item::Rot => {
                    if params[col] != 0.0 {
                        out.push(LogicalGate::rotation(self.axis, self.target, params[col]));
                    }
                    col += 1;
                }
                Item::Flip(Flip::Always) => out.push(LogicalGate::x(self.target)),
                Item::Flip(Flip::Single(i)) => out.push(LogicalGate::cx(self.singles[i], self.target)),
                Item::Flip(Flip::Level(l)) => {
                    let negated: Vec<usize> = (0..g)
                        .filter(|&b| (l >> (g - 1 - b)) & 1 == 0)
                        .map(|b| self.carrier[b])
                        .collect();
                    out.push(LogicalGate::mcx(&self.carrier, self.target).with_negated(&negated));
                }
            }
        }
        Ok(out)
    }
}
