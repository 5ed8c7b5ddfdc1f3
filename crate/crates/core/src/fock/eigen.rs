use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::{hermitize, CMatrix, CVector};
use crate::{Error, Result};

/// Ascending eigenvalues with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> CVector {
        self.vectors.column(k).into_owned()
    }
}

/// Multiply `v` by a unit phase so its largest-magnitude entry is real and
/// positive. Ties go to the lowest index.
pub fn phase_fix(v: &mut CVector) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (k, z) in v.iter().enumerate() {
        let m = z.norm();
        // relative margin so rounding noise does not flip the choice
        if m > best_mag * (1.0 + 1e-12) + 1e-300 {
            best = k;
            best_mag = m;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best].conj() / best_mag;
        for z in v.iter_mut() {
            *z *= phase;
        }
        v[best] = Complex64::new(v[best].re, 0.0);
    }
}

/// Eigendecomposition of a Hermitian matrix. The input is symmetrised as
/// `(M + M†)/2` first; eigenvectors are phase-fixed with [`phase_fix`].
pub fn hermitian_eigensolve(m: &CMatrix) -> Result<Eigen> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape(format!(
            "expected a square matrix, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let eig = SymmetricEigen::new(hermitize(m));
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let n = m.nrows();
    let mut vectors = CMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let mut v: CVector = eig.eigenvectors.column(src).into_owned();
        phase_fix(&mut v);
        vectors.set_column(dst, &v);
    }
    Ok(Eigen { values, vectors })
}
