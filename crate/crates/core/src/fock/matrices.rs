use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::CMatrix;
use crate::{Error, Result};

pub const DEFAULT_OVERSAMPLE: usize = 10;
pub const DEFAULT_MAX_BUILD_DIM: usize = 5000;
/// Small targets are still built on at least this many levels; a 10×
/// oversample of a one- or two-level block is far too coarse for the
/// displacement lengths that appear in GKP operators.
pub const MIN_BUILD_DIM: usize = 120;

/// How truncated blocks are built: on `oversample × N` levels (at least
/// [`MIN_BUILD_DIM`]), never more than `max_build_dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildConfig {
    pub oversample: usize,
    pub max_build_dim: usize,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            oversample: DEFAULT_OVERSAMPLE,
            max_build_dim: DEFAULT_MAX_BUILD_DIM,
        }
    }
}

impl BuildConfig {
    pub fn with_oversample(oversample: usize) -> Self {
        Self {
            oversample,
            ..Self::default()
        }
    }

    pub fn build_dim(&self, target_dim: usize) -> Result<usize> {
        if target_dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if self.oversample == 0 {
            return Err(Error::InvalidParameter("oversample factor must be ≥ 1".into()));
        }
        let dim = target_dim
            .saturating_mul(self.oversample)
            .max(MIN_BUILD_DIM.max(target_dim));
        if dim > self.max_build_dim {
            return Err(Error::ResourceCap {
                requested: dim,
                cap: self.max_build_dim,
            });
        }
        Ok(dim)
    }
}

/// Annihilation and creation matrices on `n` levels.
pub fn ladder_matrices(n: usize) -> Result<(CMatrix, CMatrix)> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut a = CMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    Ok((a, adag))
}

/// Position and momentum matrices on `n` levels.
pub fn quadrature_matrices(n: usize) -> Result<(CMatrix, CMatrix)> {
    let (a, adag) = ladder_matrices(n)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = (&a + &adag) * Complex64::new(s, 0.0);
    // (a − a†)/(i√2) = −i(a − a†)/√2
    let p = (&a - &adag) * Complex64::new(0.0, -s);
    Ok((x, p))
}

/// Spectral decomposition of the truncated position operator on `dim`
/// levels. Every generalized displacement on that build dimension is a
/// phase rotation of `exp(i z X)`, so one decomposition serves them all.
#[derive(Debug, Clone)]
pub struct QuadratureBasis {
    dim: usize,
    nodes: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl QuadratureBasis {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let mut x = DMatrix::<f64>::zeros(dim, dim);
        for k in 1..dim {
            let v = (k as f64 / 2.0).sqrt();
            x[(k - 1, k)] = v;
            x[(k, k - 1)] = v;
        }
        let eig = SymmetricEigen::new(x);
        Ok(Self {
            dim,
            nodes: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues of the truncated `X`: the Gauss–Hermite nodes of order `dim`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Gauss–Hermite weights normalised to one, for integrals against the
    /// vacuum density `e^{−q²}/√π`.
    pub fn weights(&self) -> Vec<f64> {
        (0..self.dim).map(|m| self.vectors[(0, m)].powi(2)).collect()
    }

    /// Top-left `target_dim` block of `exp(i(cx X + cp P + d))`.
    pub fn exp_block(&self, cx: f64, cp: f64, d: f64, target_dim: usize) -> Result<CMatrix> {
        if target_dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if target_dim > self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: target_dim,
            });
        }
        if !(cx.is_finite() && cp.is_finite() && d.is_finite()) {
            return Err(Error::InvalidParameter("non-finite displacement argument".into()));
        }
        let z = cx.hypot(cp);
        let phi = cp.atan2(cx);
        let n = target_dim;
        let m = self.dim;

        // cx X + cp P = z U X U†, U = diag(e^{ikφ}).
        let mut scaled = CMatrix::zeros(n, m);
        let mut plain = CMatrix::zeros(m, n);
        for col in 0..m {
            let phase = Complex64::from_polar(1.0, z * self.nodes[col]);
            for row in 0..n {
                let v = self.vectors[(row, col)];
                scaled[(row, col)] = phase * v;
                plain[(col, row)] = Complex64::new(v, 0.0);
            }
        }
        let mut block = scaled * plain;
        for j in 0..n {
            for k in 0..n {
                let rot = Complex64::from_polar(1.0, d + (j as f64 - k as f64) * phi);
                block[(j, k)] *= rot;
            }
        }
        Ok(block)
    }
}

/// Top-left `target_dim` block of `exp(i(cx X + cp P + d))` built on a larger
/// space and truncated. The block is a contraction, not a unitary.
pub fn generalized_displacement(
    cx: f64,
    cp: f64,
    d: f64,
    target_dim: usize,
    config: &BuildConfig,
) -> Result<CMatrix> {
    let build = config.build_dim(target_dim)?;
    QuadratureBasis::new(build)?.exp_block(cx, cp, d, target_dim)
}
