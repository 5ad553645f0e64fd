//! Cosine-sine decomposition splitting on the most significant qubit.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{QloqError, Result};

/// `u = diag(l0, l1) * [[C, -S], [S, C]] * diag(r0, r1)` with
/// `C = diag(cos theta)`, `S = diag(sin theta)`.
#[derive(Clone, Debug)]
pub struct Csd {
    pub l0: DMatrix<C64>,
    pub l1: DMatrix<C64>,
    pub r0: DMatrix<C64>,
    pub r1: DMatrix<C64>,
    pub theta: Vec<f64>,
}

impl Csd {
    pub fn middle(&self) -> DMatrix<C64> {
        let h = self.theta.len();
        let mut m = DMatrix::zeros(2 * h, 2 * h);
        for (j, t) in self.theta.iter().enumerate() {
            let (s, c) = t.sin_cos();
            m[(j, j)] = C64::new(c, 0.0);
            m[(j + h, j + h)] = C64::new(c, 0.0);
            m[(j, j + h)] = C64::new(-s, 0.0);
            m[(j + h, j)] = C64::new(s, 0.0);
        }
        m
    }

    pub fn reconstruct(&self) -> DMatrix<C64> {
        block_diag(&self.l0, &self.l1) * self.middle() * block_diag(&self.r0, &self.r1)
    }
}

pub fn block_diag(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = DMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

fn diag_real(v: &[f64]) -> DMatrix<C64> {
    DMatrix::from_fn(v.len(), v.len(), |i, j| if i == j { C64::new(v[i], 0.0) } else { C64::new(0.0, 0.0) })
}

pub fn csd(u: &DMatrix<C64>) -> Result<Csd> {
    let d = u.nrows();
    if d != u.ncols() || d < 2 || d % 2 != 0 {
        return Err(QloqError::Dimension { expected: d.max(2), got: u.ncols() });
    }
    let h = d / 2;
    let a = u.view((0, 0), (h, h)).into_owned();
    let b = u.view((0, h), (h, h)).into_owned();
    let c = u.view((h, 0), (h, h)).into_owned();
    let dd = u.view((h, h), (h, h)).into_owned();

    let svd = a.svd(true, true);
    let (su, svt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    // ascending cosines, so the sine columns below come largest first
    let mut order: Vec<usize> = (0..h).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let cos: Vec<f64> = order.iter().map(|&i| svd.singular_values[i].min(1.0)).collect();
    let l0 = DMatrix::from_fn(h, h, |r, k| su[(r, order[k])]);
    let r0 = DMatrix::from_fn(h, h, |k, col| svt[(order[k], col)]);

    // columns of C r0^dagger are orthogonal with norms sin(theta)
    let f = &c * r0.adjoint();
    let qr = f.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut sin = vec![0.0; h];
    let mut l1 = q;
    for j in 0..h {
        let rj = r[(j, j)];
        sin[j] = rj.norm();
        if sin[j] > 0.0 {
            let ph = rj / sin[j];
            for i in 0..h {
                l1[(i, j)] *= ph;
            }
        }
    }
    let theta: Vec<f64> = cos.iter().zip(&sin).map(|(c, s)| s.atan2(*c)).collect();
    let (cm, sm): (Vec<f64>, Vec<f64>) = theta.iter().map(|t| (t.cos(), t.sin())).unzip();
    // l0^dagger b = -S r1 and l1^dagger d = C r1
    let r1 = -diag_real(&sm) * l0.adjoint() * &b + diag_real(&cm) * l1.adjoint() * &dd;
    Ok(Csd { l0, l1, r0, r1, theta })
}
