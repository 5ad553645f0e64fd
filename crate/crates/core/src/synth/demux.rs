//! Demultiplexing of a block-diagonal unitary.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{QloqError, Result};

/// `diag(u1, u2) = (I (x) v) * diag(d, d^dagger) * (I (x) w)`.
#[derive(Clone, Debug)]
pub struct Demux {
    pub v: DMatrix<C64>,
    pub w: DMatrix<C64>,
    pub d: Vec<C64>,
}

impl Demux {
    /// Angles of the Rz multiplexor equivalent to `diag(d, d^dagger)`.
    pub fn rz_angles(&self) -> Vec<f64> {
        self.d.iter().map(|z| -2.0 * z.arg()).collect()
    }
}

pub fn demultiplex(u1: &DMatrix<C64>, u2: &DMatrix<C64>) -> Result<Demux> {
    if u1.shape() != u2.shape() || u1.nrows() != u1.ncols() {
        return Err(QloqError::Dimension { expected: u1.nrows(), got: u2.nrows() });
    }
    let h = u1.nrows();
    let m = u1 * u2.adjoint();
    let (v, t) = m.schur().unpack();
    let d: Vec<C64> = (0..h).map(|i| t[(i, i)].sqrt()).collect();
    let dm = DMatrix::from_fn(h, h, |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) });
    let w = &dm * v.adjoint() * u2;
    Ok(Demux { v, w, d })
}
