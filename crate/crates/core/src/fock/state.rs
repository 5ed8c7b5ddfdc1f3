use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{hermitian_eigensolve, CMatrix, CVector};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-10;
const NEGATIVE_EIG_TOL: f64 = 1e-9;

/// `(M + M†)/2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// A point of phase space in quadrature units (`[x, p] = i`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub x: f64,
    pub p: f64,
}

impl PhaseSpacePoint {
    pub fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }
}

/// Normalised pure state `Σ cₖ |k⟩` on a finite number of Fock levels.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    amplitudes: CVector,
}

impl FockState {
    /// Wrap amplitudes that are already normalised.
    pub fn new(amplitudes: CVector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let n2 = amplitudes.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amplitudes })
    }

    /// Normalise and wrap. Fails on an all-zero vector.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let n = amplitudes.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NotNormalized(n * n));
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(n),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(CVector::from_iterator(
            amplitudes.len(),
            amplitudes.iter().map(|&a| Complex64::new(a, 0.0)),
        ))
    }

    /// Number state `|n⟩` on `dim` levels.
    pub fn number(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::InvalidParameter(format!(
                "number state |{n}⟩ does not fit in {dim} levels"
            )));
        }
        let mut v = CVector::zeros(dim);
        v[n] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::number(0, dim.max(1))
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    /// Amplitudes zero-padded (or kept) to `dim` levels. Never truncates.
    pub fn padded(&self, dim: usize) -> CVector {
        let n = dim.max(self.dim());
        let mut v = CVector::zeros(n);
        v.rows_mut(0, self.dim()).copy_from(&self.amplitudes);
        v
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix {
            entries: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    /// Mean photon number.
    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(k, a)| k as f64 * a.norm_sqr())
            .sum()
    }
}

/// `|⟨s1|s2⟩|²`, zero-padding the shorter state.
pub fn fidelity(s1: &FockState, s2: &FockState) -> f64 {
    let n = s1.dim().max(s2.dim());
    let a = s1.padded(n);
    let b = s2.padded(n);
    a.dotc(&b).norm_sqr().min(1.0)
}

/// Trace-one positive semidefinite Hermitian matrix on Fock levels.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validate and wrap. The entries are re-Hermitised after the check.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::Shape(format!(
                "density matrix must be square, got {}×{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.nrows() == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let asym = (&entries - entries.adjoint()).camax();
        if asym > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max |M − M†| = {asym:e})"
            )));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}")));
        }
        let entries = hermitize(&entries);
        let eig = hermitian_eigensolve(&entries)?;
        if eig.values[0] < -NEGATIVE_EIG_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {:e}",
                eig.values[0]
            )));
        }
        Ok(Self { entries })
    }

    /// Wrap without validation. For matrices produced by trace-preserving
    /// maps inside the crate whose trace defect is tracked separately.
    pub(crate) fn from_entries_unchecked(entries: CMatrix) -> Self {
        Self { entries }
    }

    /// Convex combination `Σ wᵢ ρᵢ`, padding to the largest dimension.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("empty mixture".into()));
        }
        let total: f64 = parts.iter().map(|(w, _)| *w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(
                "mixture weights must be non-negative and sum to one".into(),
            ));
        }
        let n = parts.iter().map(|(_, r)| r.dim()).max().unwrap_or(1);
        let mut m = CMatrix::zeros(n, n);
        for (w, r) in parts {
            let d = r.dim();
            let mut block = m.view_mut((0, 0), (d, d));
            block += &r.entries * Complex64::new(*w, 0.0);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn padded(&self, dim: usize) -> CMatrix {
        let n = dim.max(self.dim());
        let mut m = CMatrix::zeros(n, n);
        m.view_mut((0, 0), (self.dim(), self.dim()))
            .copy_from(&self.entries);
        m
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn fidelity_with(&self, target: &FockState) -> f64 {
        let n = self.dim().max(target.dim());
        let v = target.padded(n);
        let m = self.padded(n);
        v.dotc(&(m * &v)).re
    }
}

impl From<&FockState> for DensityMatrix {
    fn from(s: &FockState) -> Self {
        s.density_matrix()
    }
}
