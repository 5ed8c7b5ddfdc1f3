use num_complex::Complex64;

use super::FockState;
use crate::exec;

/// Mass below which a grid is reported as too narrow.
const MASS_TOL: f64 = 1e-6;

/// Harmonic-oscillator eigenfunctions `h₀(q) … h_{n−1}(q)` for vacuum
/// variance 1/2, `h₀ = π^{−1/4} e^{−q²/2}`, by the stable three-term
/// recurrence.
pub fn hermite_functions(q: f64, n: usize) -> Vec<f64> {
    let mut h = Vec::with_capacity(n);
    if n == 0 {
        return h;
    }
    h.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * q * q).exp());
    if n > 1 {
        h.push(std::f64::consts::SQRT_2 * q * h[0]);
    }
    for k in 1..n.saturating_sub(1) {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * q * h[k] - (kf / (kf + 1.0)).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}

/// `ψ(q; θ) = Σₙ cₙ e^{−inθ} hₙ(q)`, the wavefunction in the eigenbasis of
/// `x cos θ + p sin θ`.
pub fn quadrature_wavefunction(state: &FockState, angle: f64, q: f64) -> Complex64 {
    let h = hermite_functions(q, state.dim());
    state
        .amplitudes()
        .iter()
        .zip(h)
        .enumerate()
        .map(|(n, (c, hn))| c * Complex64::from_polar(hn, -(n as f64) * angle))
        .sum()
}

/// Density `|ψ(q; θ)|²` on a grid, with the trapezoidal mass it carries.
#[derive(Debug, Clone)]
pub struct QuadraturePdf {
    pub density: Vec<f64>,
    pub mass: f64,
    /// Set when the grid holds less than `1 − 1e−6` of the probability.
    pub narrow_grid: bool,
}

pub fn quadrature_pdf(state: &FockState, angle: f64, q_grid: &[f64]) -> QuadraturePdf {
    let density = exec::map(q_grid, |&q| quadrature_wavefunction(state, angle, q).norm_sqr());
    let mass = trapezoid(q_grid, &density);
    QuadraturePdf {
        narrow_grid: mass < 1.0 - MASS_TOL,
        density,
        mass,
    }
}

pub(crate) fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xw, yw)| 0.5 * (xw[1] - xw[0]) * (yw[0] + yw[1]))
        .sum()
}
