//! Nonlinear GKP squeezing.
//!
//! The GKP squeezing of a state is the expectation value of a positive
//! semidefinite operator `Q = 2 sin²(c₁·ζ + d₁) + 2 sin²(c₂·ζ + d₂)` built
//! from the quadrature vector `ζ = (x, p)`. Ideal GKP code states are its
//! zero-eigenvalue ground states; Gaussian states never go below one.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: truncated Fock-space primitives (ladder and quadrature
//!   matrices, displacement exponentials, eigensolver, Wigner function,
//!   quadrature wavefunctions).
//! * [`operators`]: grids, operator construction, ground states,
//!   expectations and a density-matrix decoherence channel.
//! * [`analytic`]: closed forms for bounds, approximate states, grid
//!   squeezing, fidelity bounds, decoherence and breeding.
//! * [`estimator`]: estimation from homodyne samples and sample synthesis.
//! * [`cli`]: the `gkpsq` command-line front end.
//!
//! Quadrature convention throughout: `[x, p] = i`, vacuum variance 1/2.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod estimator;
pub(crate) mod exec;
pub mod fock;
pub mod operators;

pub use error::{Error, Result};
pub use num_complex::Complex64;
