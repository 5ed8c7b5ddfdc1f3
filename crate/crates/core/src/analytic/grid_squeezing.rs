use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bounds::GRID_FT_VARIANCE;
use crate::{Error, Result};

const U_TOL: f64 = 1e-9;

/// How a grid-squeezing value came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridSqueezingStatus {
    Physical,
    /// `|⟨e^{−iuq}⟩| = 0`: the value is `+∞`.
    NoSignal,
    /// `|⟨e^{−iuq}⟩| > 1`, only possible for estimates; the value is negative.
    Unphysical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSqueezing {
    pub delta_sq: f64,
    /// Argument of the mean displacement, kept for diagnostics.
    pub phase: f64,
    pub status: GridSqueezingStatus,
}

/// `Δ²_{q,u} = −(4/u²) ln|⟨e^{−iuq}⟩|`.
pub fn grid_squeezing(mean_disp: Complex64, u: f64) -> GridSqueezing {
    let r = mean_disp.norm();
    let phase = mean_disp.arg();
    if r == 0.0 || !r.is_finite() {
        return GridSqueezing {
            delta_sq: f64::INFINITY,
            phase,
            status: GridSqueezingStatus::NoSignal,
        };
    }
    let delta_sq = -4.0 / (u * u) * r.ln();
    let status = if r > 1.0 {
        GridSqueezingStatus::Unphysical
    } else {
        GridSqueezingStatus::Physical
    };
    GridSqueezing { delta_sq, phase, status }
}

/// Grid squeezing of both quadratures with their grid constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSqueezingPair {
    pub delta_x_sq: f64,
    pub delta_p_sq: f64,
    pub u_x: f64,
    pub u_p: f64,
}

impl GridSqueezingPair {
    /// Pair measured with the grid constants native to `kind`.
    pub fn for_grid(kind: SquareGrid, delta_x_sq: f64, delta_p_sq: f64) -> Self {
        let (u_x, u_p) = kind.grid_constants();
        Self {
            delta_x_sq,
            delta_p_sq,
            u_x,
            u_p,
        }
    }

    pub fn is_physical(&self) -> bool {
        self.delta_x_sq >= 0.0 && self.delta_p_sq >= 0.0
    }
}

/// The two square grids for which grid squeezing and ξ are tied in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareGrid {
    S0,
    Q0,
}

impl SquareGrid {
    /// `(u_x, u_p)`: `(√(2π), √(2π))` for s0, `(√π, 2√π)` for q0.
    pub fn grid_constants(&self) -> (f64, f64) {
        match self {
            SquareGrid::S0 => ((2.0 * PI).sqrt(), (2.0 * PI).sqrt()),
            SquareGrid::Q0 => (PI.sqrt(), 2.0 * PI.sqrt()),
        }
    }

    /// `(kx, kp)` with `ξ = 2 − e^{−kx Δx²} − e^{−kp Δp²}`.
    fn rates(&self) -> (f64, f64) {
        match self {
            SquareGrid::S0 => (PI / 2.0, PI / 2.0),
            SquareGrid::Q0 => (PI / 4.0, PI),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiFromGridSqueezing {
    pub xi: f64,
    /// High-squeezing linearisation `kx Δx² + kp Δp²`.
    pub linear: f64,
}

/// ξ from grid squeezing for a state whose mean displacements are real and
/// positive. The pair must use the grid constants of `kind`.
pub fn xi_from_grid_squeezing(pair: &GridSqueezingPair, kind: SquareGrid) -> Result<XiFromGridSqueezing> {
    let (ux, up) = kind.grid_constants();
    if (pair.u_x - ux).abs() > U_TOL || (pair.u_p - up).abs() > U_TOL {
        return Err(Error::InvalidParameter(format!(
            "grid constants ({}, {}) do not match the {:?} grid ({ux}, {up})",
            pair.u_x, pair.u_p, kind
        )));
    }
    let (kx, kp) = kind.rates();
    Ok(XiFromGridSqueezing {
        xi: 2.0 - (-kx * pair.delta_x_sq).exp() - (-kp * pair.delta_p_sq).exp(),
        linear: kx * pair.delta_x_sq + kp * pair.delta_p_sq,
    })
}

/// Upper bounds on grid squeezing implied by a value of ξ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSqueezingBounds {
    /// Largest Δx² allowed, reached when Δp² = 0.
    pub delta_x_sq_max: f64,
    /// Largest Δp² allowed, reached when Δx² = 0.
    pub delta_p_sq_max: f64,
    /// Common value when Δx² = Δp².
    pub symmetric: f64,
    /// Worst variance after the best squeeze that exchanges the quadratures
    /// (equal to the variance bound of the rescaled pair on q0; on s0 the
    /// single-quadrature bound).
    pub pessimistic: f64,
}

/// Bounds on `Δx²`, `Δp²` from ξ: `Δx² ≤ −ln(1−ξ)/kx`, `Δp² ≤ −ln(1−ξ)/kp`.
pub fn grid_squeezing_bounds_from_xi(xi: f64, kind: SquareGrid) -> Result<GridSqueezingBounds> {
    if !(0.0..1.0).contains(&xi) {
        return Err(Error::InvalidParameter(format!(
            "grid-squeezing bounds need 0 ≤ ξ < 1, got {xi}"
        )));
    }
    let (kx, kp) = kind.rates();
    let l = -(-xi).ln_1p();
    let symmetric = invert_symmetric(xi, kx, kp);
    // A q0 state with (g₁, g₂) converts to (2g₂, g₁/2), so the worst grid
    // variance that squeezing cannot fix is bounded by the converted single
    // bound 2·l/kp = l·(2/π).
    let pessimistic = match kind {
        SquareGrid::Q0 => (2.0 * l / kp).min(l / kx),
        SquareGrid::S0 => l / kx,
    };
    Ok(GridSqueezingBounds {
        delta_x_sq_max: l / kx,
        delta_p_sq_max: l / kp,
        symmetric,
        pessimistic,
    })
}

/// Δ solving `2 − e^{−kx Δ} − e^{−kp Δ} = ξ` by bisection.
fn invert_symmetric(xi: f64, kx: f64, kp: f64) -> f64 {
    let f = |d: f64| 2.0 - (-kx * d).exp() - (-kp * d).exp() - xi;
    let (mut lo, mut hi) = (0.0, 1.0);
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// ξ₀ at which the pessimistic-scenario bound on q0 equals `variance`.
pub fn pessimistic_crossing_xi0(variance: f64) -> f64 {
    1.0 - (-PI * variance / 2.0).exp()
}

/// ξ₀ on q0 for the symmetric scenario `Δx² = Δp² = variance`.
pub fn symmetric_crossing_xi0(variance: f64) -> f64 {
    2.0 - (-PI * variance / 4.0).exp() - (-PI * variance).exp()
}

/// ξ₀ at the fault-tolerance variance in both scenarios:
/// `(pessimistic, symmetric)`.
pub fn ft_crossings() -> (f64, f64) {
    (
        pessimistic_crossing_xi0(GRID_FT_VARIANCE),
        symmetric_crossing_xi0(GRID_FT_VARIANCE),
    )
}
