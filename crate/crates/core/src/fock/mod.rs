//! Truncated Fock-space primitives.
//!
//! Matrices are dense `nalgebra` matrices indexed by photon number, starting
//! at the vacuum. Quadratures follow `x = (a + a†)/√2`, `p = (a − a†)/(i√2)`.

mod eigen;
mod matrices;
mod state;
mod wavefunction;
mod wigner;

pub use eigen::{hermitian_eigensolve, phase_fix, Eigen};
pub use matrices::{
    generalized_displacement, ladder_matrices, quadrature_matrices, BuildConfig, QuadratureBasis,
    DEFAULT_MAX_BUILD_DIM, DEFAULT_OVERSAMPLE, MIN_BUILD_DIM,
};
pub use state::{fidelity, hermitize, DensityMatrix, FockState, PhaseSpacePoint};
pub use wavefunction::{hermite_functions, quadrature_pdf, quadrature_wavefunction, QuadraturePdf};
pub use wigner::{displacement_columns, wigner};

pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;
pub type CVector = nalgebra::DVector<num_complex::Complex64>;
