//! Two-qubit canonical (KAK) decomposition with a three-CNOT circuit.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::circuit::LogicalGate;
use crate::error::{QloqError, Result};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Magic basis: conjugating SU(2) x SU(2) by it gives SO(4).
fn magic() -> DMatrix<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(
        4,
        4,
        &[
            c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, s),
            c(0.0, 0.0), c(0.0, s), c(s, 0.0), c(0.0, 0.0),
            c(0.0, 0.0), c(0.0, s), c(-s, 0.0), c(0.0, 0.0),
            c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -s),
        ],
    )
}

/// Diagonal entries of XX, YY, ZZ in the magic basis.
const LAMBDA: [[f64; 3]; 4] = [[1.0, -1.0, 1.0], [1.0, 1.0, -1.0], [-1.0, -1.0, -1.0], [-1.0, 1.0, 1.0]];

/// `u = phase * (a1 (x) b1) * exp(i(cx XX + cy YY + cz ZZ)) * (a2 (x) b2)`.
#[derive(Clone, Debug)]
pub struct Kak {
    pub a1: DMatrix<C64>,
    pub b1: DMatrix<C64>,
    pub a2: DMatrix<C64>,
    pub b2: DMatrix<C64>,
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
    pub phase: C64,
}

/// Split a 4x4 matrix known to be a tensor product into its 2x2 factors.
fn kron_factor(k: &DMatrix<C64>) -> (DMatrix<C64>, DMatrix<C64>) {
    let block = |r: usize, s: usize| k.view((2 * r, 2 * s), (2, 2)).into_owned();
    let (mut br, mut bs, mut best) = (0, 0, -1.0);
    for r in 0..2 {
        for s in 0..2 {
            let n = block(r, s).norm();
            if n > best {
                (br, bs, best) = (r, s, n);
            }
        }
    }
    let mut b = block(br, bs);
    let det = b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)];
    b /= det.sqrt();
    let a = DMatrix::from_fn(2, 2, |r, s| (b.adjoint() * block(r, s)).trace() / 2.0);
    (a, b)
}

fn interaction(cx: f64, cy: f64, cz: f64) -> DMatrix<C64> {
    let m = magic();
    let d = DMatrix::from_fn(4, 4, |i, j| {
        if i == j {
            C64::from_polar(1.0, cx * LAMBDA[i][0] + cy * LAMBDA[i][1] + cz * LAMBDA[i][2])
        } else {
            c(0.0, 0.0)
        }
    });
    &m * d * m.adjoint()
}

impl Kak {
    pub fn reconstruct(&self) -> DMatrix<C64> {
        self.a1.kronecker(&self.b1) * interaction(self.cx, self.cy, self.cz) * self.a2.kronecker(&self.b2) * self.phase
    }

    /// Gates on (`qa`, `qb`), `qa` being the more significant qubit. Equal
    /// to the decomposed unitary up to a global phase, using three CNOTs.
    pub fn gates(&self, qa: usize, qb: usize) -> Vec<LogicalGate> {
        vec![
            LogicalGate::unitary(&[qa], self.a2.clone()),
            LogicalGate::unitary(&[qb], self.b2.clone()),
            LogicalGate::rz(qb, FRAC_PI_2),
            LogicalGate::cx(qb, qa),
            LogicalGate::rz(qa, FRAC_PI_2 - 2.0 * self.cz),
            LogicalGate::ry(qb, FRAC_PI_2 - 2.0 * self.cx),
            LogicalGate::cx(qa, qb),
            LogicalGate::ry(qb, 2.0 * self.cy - FRAC_PI_2),
            LogicalGate::cx(qb, qa),
            LogicalGate::rz(qa, -FRAC_PI_2),
            LogicalGate::unitary(&[qa], self.a1.clone()),
            LogicalGate::unitary(&[qb], self.b1.clone()),
        ]
    }
}

pub fn kak(u: &DMatrix<C64>) -> Result<Kak> {
    if u.shape() != (4, 4) {
        return Err(QloqError::Dimension { expected: 4, got: u.nrows() });
    }
    let m = magic();
    let det = u.determinant();
    let norm = det.powf(0.25);
    let su = u / norm;
    let up = m.adjoint() * &su * &m;
    let mp = up.transpose() * &up;
    let re = mp.map(|z| z.re);
    let im = mp.map(|z| z.im);
    // Re and Im of the symmetric unitary commute; a generic real
    // combination has their common eigenbasis.
    let mut found = None;
    for k in 1..=64 {
        let r = (k as f64 * 0.618_033_988_749_894_9).fract() * 4.0 - 2.0;
        let eig = SymmetricEigen::new(&re + &im * r);
        let mut o = eig.eigenvectors;
        if o.determinant() < 0.0 {
            o.column_mut(0).neg_mut();
        }
        let oc = o.map(|x| c(x, 0.0));
        let d = oc.transpose() * &mp * &oc;
        let off = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| d[(i, j)].norm())
            .fold(0.0, f64::max);
        if off < 1e-9 {
            found = Some((o, oc, d));
            break;
        }
    }
    let (o, oc, d) = found.ok_or_else(|| QloqError::Numerical("no common eigenbasis found".into()))?;
    let mut theta: Vec<f64> = (0..4).map(|i| d[(i, i)].arg() / 2.0).collect();
    let k1_of = |theta: &[f64]| {
        let ph = DMatrix::from_fn(4, 4, |i, j| if i == j { C64::from_polar(1.0, -theta[i]) } else { c(0.0, 0.0) });
        &up * &oc * ph
    };
    let mut k1 = k1_of(&theta);
    if k1.determinant().re < 0.0 {
        theta[0] += std::f64::consts::PI;
        k1 = k1_of(&theta);
    }
    let l = &m * &k1 * m.adjoint();
    let r = &m * o.transpose().map(|x| c(x, 0.0)) * m.adjoint();
    let a = DMatrix::from_fn(4, 4, |i, j| if j == 0 { 1.0 } else { LAMBDA[i][j - 1] });
    let sol = a
        .lu()
        .solve(&nalgebra::DVector::from_column_slice(&theta))
        .ok_or_else(|| QloqError::Numerical("singular interaction system".into()))?;
    let (a1, b1) = kron_factor(&l);
    let (a2, b2) = kron_factor(&r);
    let mut out = Kak { a1, b1, a2, b2, cx: sol[1], cy: sol[2], cz: sol[3], phase: c(1.0, 0.0) };
    let rec = out.reconstruct();
    let tr = (rec.adjoint() * u).trace();
    out.phase = tr / tr.norm();
    Ok(out)
}
