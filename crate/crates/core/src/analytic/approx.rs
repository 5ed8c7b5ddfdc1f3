use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{hermite_functions, CVector, FockState};
use crate::operators::{GridRow, GridSpec};
use crate::{Error, Result};

/// Peak weights below this are dropped from unbounded sums.
const PEAK_WEIGHT_CUTOFF: f64 = 1e-12;

/// Approximate GKP state: squeezed peaks of variance `g/2` at
/// `x_s = 2sa + bit·a` under the envelope `e^{−g x_s²/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxGKPParams {
    pub g: f64,
    pub a: f64,
    /// Peaks run over `s ∈ [−s_max, s_max]`; `None` keeps every peak whose
    /// weight exceeds 1e−12.
    pub s_max: Option<usize>,
    pub logical_bit: u8,
}

impl ApproxGKPParams {
    pub fn new(g: f64, a: f64, s_max: Option<usize>, logical_bit: u8) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::InvalidParameter(format!("g must be positive, got {g}")));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("a must be positive, got {a}")));
        }
        if logical_bit > 1 {
            return Err(Error::InvalidParameter(format!("logical bit must be 0 or 1, got {logical_bit}")));
        }
        Ok(Self { g, a, s_max, logical_bit })
    }

    /// Symmetric-grid state, `a = √(π/2)`.
    pub fn symmetric(g: f64, s_max: Option<usize>) -> Result<Self> {
        Self::new(g, FRAC_PI_2.sqrt(), s_max, 0)
    }

    /// Logical-grid state, `a = √π`.
    pub fn logical(g: f64, s_max: Option<usize>, bit: u8) -> Result<Self> {
        Self::new(g, PI.sqrt(), s_max, bit)
    }

    /// Effective `s_max`, resolving the unbounded case.
    pub fn peak_bound(&self) -> usize {
        self.s_max.unwrap_or_else(|| {
            let x = (2.0 * -PEAK_WEIGHT_CUTOFF.ln() / self.g).sqrt();
            (x / (2.0 * self.a)).ceil() as usize + 1
        })
    }

    /// Peak positions and envelope weights.
    pub fn peaks(&self) -> Vec<(f64, f64)> {
        let s = self.peak_bound() as i64;
        let shift = self.logical_bit as f64 * self.a;
        (-s..=s)
            .map(|k| {
                let x = 2.0 * k as f64 * self.a + shift;
                (x, (-0.5 * self.g * x * x).exp())
            })
            .filter(|&(_, w)| self.s_max.is_some() || w >= PEAK_WEIGHT_CUTOFF)
            .collect()
    }

    /// Position wavefunction (unnormalised across peaks).
    pub fn wavefunction(&self, x: f64) -> f64 {
        let norm = (PI * self.g).powf(-0.25);
        self.peaks()
            .iter()
            .map(|&(xs, w)| w * norm * (-(x - xs).powi(2) / (2.0 * self.g)).exp())
            .sum()
    }
}

/// ξ of the symmetric-grid approximate state in the many-peak limit,
/// `2 − 2e^{−πg/2}`.
pub fn xi_approx_symmetric(g: f64) -> f64 {
    2.0 - 2.0 * (-FRAC_PI_2 * g).exp()
}

/// `⟨e^{ikx}⟩` and `⟨e^{ikp}⟩` from the peak double sums.
fn peak_expectations(params: &ApproxGKPParams, kx: f64, kp: f64) -> (Complex64, Complex64) {
    let g = params.g;
    let peaks = params.peaks();
    let mut norm = 0.0;
    let mut ex = Complex64::new(0.0, 0.0);
    let mut ep = 0.0;
    for &(x1, w1) in &peaks {
        for &(x2, w2) in &peaks {
            let w = w1 * w2;
            let dx = x1 - x2;
            norm += w * (-dx * dx / (4.0 * g)).exp();
            ex += Complex64::from_polar(
                w * (-kx * kx * g / 4.0 - dx * dx / (4.0 * g)).exp(),
                kx * (x1 + x2) / 2.0,
            );
            ep += w * (-(kp + dx).powi(2) / (4.0 * g)).exp();
        }
    }
    (ex / norm, Complex64::new(ep / norm, 0.0))
}

/// `⟨sin²(cx x + cp p + d)⟩` of an approximate state for a row along one
/// quadrature.
pub fn approx_sin2(params: &ApproxGKPParams, row: &GridRow) -> Result<f64> {
    // sin²θ = (1 − Re e^{2iθ})/2
    let m = if row.cp == 0.0 {
        peak_expectations(params, 2.0 * row.cx, 0.0).0
    } else if row.cx == 0.0 {
        peak_expectations(params, 0.0, 2.0 * row.cp).1
    } else {
        return Err(Error::UnsupportedGrid(
            "peak sums need rows along x or p; use the Fock-space route".into(),
        ));
    };
    Ok(0.5 * (1.0 - (Complex64::from_polar(1.0, 2.0 * row.d) * m).re))
}

/// ξ of an approximate state on an axis-aligned grid, from the closed-form
/// peak overlaps.
pub fn xi_finite_superposition(params: &ApproxGKPParams, grid: &GridSpec) -> Result<f64> {
    let mut xi = 0.0;
    for row in grid.rows() {
        xi += 2.0 * approx_sin2(params, &row)?;
    }
    Ok(xi)
}

/// Fock-basis amplitudes of the approximate state on `n` levels, by
/// quadrature of `∫ hₙ(x) ψ(x) dx`, renormalised after truncation.
pub fn approximate_state_fock(params: &ApproxGKPParams, n: usize) -> Result<FockState> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let peaks = params.peaks();
    let reach = peaks.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
    let width = 12.0 * (params.g / 2.0).sqrt();
    let hermite_reach = (2.0 * n as f64 + 1.0).sqrt() + 6.0;
    let lim = (reach + width).min(hermite_reach.max(width));
    let step = 0.005f64.min(params.g.sqrt() / 40.0);
    let m = (2.0 * lim / step).ceil() as usize + 1;
    let h = 2.0 * lim / (m - 1) as f64;
    let columns = crate::exec::map_range(m, |i| {
        let x = -lim + h * i as f64;
        let w = if i == 0 || i == m - 1 { 0.5 * h } else { h };
        let psi = params.wavefunction(x);
        let mut hn = hermite_functions(x, n);
        for v in hn.iter_mut() {
            *v *= w * psi;
        }
        hn
    });
    let mut amps = vec![0.0; n];
    for col in columns {
        for (a, v) in amps.iter_mut().zip(col) {
            *a += v;
        }
    }
    FockState::normalized(CVector::from_iterator(n, amps.into_iter().map(|v| Complex64::new(v, 0.0))))
}

/// Range of ξ on the symmetric grid for states with fidelity `f` to the
/// approximate state of parameter `g`: `(f ξ₁, f ξ₁ + 4(1 − f))`.
pub fn fidelity_bounds(f: f64, g: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidParameter(format!("fidelity must lie in [0, 1], got {f}")));
    }
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::InvalidParameter(format!("g must be positive, got {g}")));
    }
    fidelity_bounds_from_xi(f, xi_approx_symmetric(g))
}

/// Same range around a known target value `ξ₁ = ⟨T|Q|T⟩`, for targets whose
/// ξ is computed exactly rather than from the closed form.
pub fn fidelity_bounds_from_xi(f: f64, xi1: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidParameter(format!("fidelity must lie in [0, 1], got {f}")));
    }
    Ok((f * xi1, f * xi1 + 4.0 * (1.0 - f)))
}
