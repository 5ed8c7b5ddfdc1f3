use num_complex::Complex64;

use super::GridSpec;
use crate::fock::{
    hermitian_eigensolve, hermitize, BuildConfig, CMatrix, DensityMatrix, FockState, QuadratureBasis,
};
use crate::{Error, Result};

/// Eigenvalues this close to the minimum count as one degenerate level.
const DEGENERACY_TOL: f64 = 1e-9;

/// Hermitian matrix of a GKP-squeezing operator on the first `N` levels.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    pub matrix: CMatrix,
    pub grid: GridSpec,
    pub build_dim: usize,
}

impl TruncatedOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// `Q = 2·I − ½(D₁ + D₁†) − ½(D₂ + D₂†)` with
/// `Dᵢ = exp(i(2cᵢ₁x + 2cᵢ₂p + 2dᵢ))`, from `2 sin²u = 1 − cos 2u`.
pub fn build_operator(grid: &GridSpec, n: usize, config: &BuildConfig) -> Result<TruncatedOperator> {
    grid.validate()?;
    let build_dim = config.build_dim(n)?;
    let basis = QuadratureBasis::new(build_dim)?;
    let mut q = CMatrix::identity(n, n) * Complex64::new(2.0, 0.0);
    for row in grid.rows() {
        let d = basis.exp_block(2.0 * row.cx, 2.0 * row.cp, 2.0 * row.d, n)?;
        q -= (&d + d.adjoint()) * Complex64::new(0.5, 0.0);
    }
    Ok(TruncatedOperator {
        matrix: hermitize(&q),
        grid: grid.clone(),
        build_dim,
    })
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub xi_min: f64,
    pub state: FockState,
    /// Number of eigenvalues within 1e−9 of the minimum.
    pub degeneracy: usize,
}

/// Smallest eigenvalue and its phase-fixed eigenvector.
pub fn ground_state(op: &TruncatedOperator) -> Result<GroundState> {
    let eig = hermitian_eigensolve(&op.matrix)?;
    let xi_min = eig.values[0];
    let degeneracy = eig
        .values
        .iter()
        .take_while(|&&v| v - xi_min <= DEGENERACY_TOL * xi_min.abs().max(1.0))
        .count();
    let state = FockState::normalized(eig.vector(0))?;
    Ok(GroundState {
        xi_min,
        state,
        degeneracy,
    })
}

/// Either kind of state an expectation can be taken in.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a FockState),
    Mixed(&'a DensityMatrix),
}

impl<'a> From<&'a FockState> for StateRef<'a> {
    fn from(s: &'a FockState) -> Self {
        StateRef::Pure(s)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(s: &'a DensityMatrix) -> Self {
        StateRef::Mixed(s)
    }
}

impl StateRef<'_> {
    fn dim(&self) -> usize {
        match self {
            StateRef::Pure(s) => s.dim(),
            StateRef::Mixed(r) => r.dim(),
        }
    }
}

/// `⟨ψ|M|ψ⟩` or `Tr[ρM]` for a Hermitian `M`, real part only. States on
/// fewer levels than `M` are zero-padded; more levels is an error.
pub(crate) fn quadratic_form<'a>(m: &CMatrix, state: impl Into<StateRef<'a>>) -> Result<Complex64> {
    let state = state.into();
    let n = m.nrows();
    if state.dim() > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: state.dim(),
        });
    }
    Ok(match state {
        StateRef::Pure(s) => {
            let v = s.padded(n);
            v.dotc(&(m * &v))
        }
        StateRef::Mixed(r) => {
            let rho = r.padded(n);
            (rho * m).trace()
        }
    })
}

/// `Tr[ρQ]`, with imaginary rounding noise dropped.
pub fn expectation<'a>(op: &TruncatedOperator, state: impl Into<StateRef<'a>>) -> Result<f64> {
    Ok(quadratic_form(&op.matrix, state)?.re)
}

/// `⟨sin²(cx x + cp p + d)⟩` computed from a displacement block on the
/// state's own dimension.
pub fn sin2_expectation<'a>(
    state: impl Into<StateRef<'a>>,
    cx: f64,
    cp: f64,
    d: f64,
    config: &BuildConfig,
) -> Result<f64> {
    let state = state.into();
    let n = state.dim();
    let basis = QuadratureBasis::new(config.build_dim(n)?)?;
    let disp = basis.exp_block(2.0 * cx, 2.0 * cp, 2.0 * d, n)?;
    let m = quadratic_form(&disp, state)?;
    Ok(0.5 * (1.0 - m.re))
}
