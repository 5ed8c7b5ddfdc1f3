use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::operators::GridSpec;
use crate::{Error, Result};

/// Gaussian states never reach below this value of ξ on a GKP-valid grid.
pub const GAUSSIAN_BOUND: f64 = 1.0;
/// ξ₀ at or below which fault tolerance is guaranteed (pessimistic scenario).
pub const FT_SUFFICIENT_XI0: f64 = 0.135;
/// ξ₀ at or below which fault tolerance becomes possible (symmetric scenario).
pub const FT_NECESSARY_XI0: f64 = 0.312;
/// ξ₀ whose single-variance bounds put both grid squeezings below 0.089.
pub const FT_SYMMETRIC_XI0: f64 = 0.068;
/// Fault-tolerant grid squeezing in dB.
pub const GRID_FT_DB: f64 = -10.5;
/// Fault-tolerant grid squeezing variance behind the −10.5 dB figure.
pub const GRID_FT_VARIANCE: f64 = 0.089;

/// Reference constants gathered in one record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub gaussian_bound: f64,
    pub ft_sufficient_xi0: f64,
    pub ft_necessary_xi0: f64,
    pub ft_symmetric_xi0: f64,
    pub grid_ft_db: f64,
}

impl Thresholds {
    pub const fn standard() -> Self {
        Self {
            gaussian_bound: GAUSSIAN_BOUND,
            ft_sufficient_xi0: FT_SUFFICIENT_XI0,
            ft_necessary_xi0: FT_NECESSARY_XI0,
            ft_symmetric_xi0: FT_SYMMETRIC_XI0,
            grid_ft_db: GRID_FT_DB,
        }
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Self::standard()
    }
}

/// `10 log₁₀ ξ`. Non-positive input gives `-∞`.
pub fn db(xi: f64) -> f64 {
    if xi > 0.0 {
        10.0 * xi.log10()
    } else {
        f64::NEG_INFINITY
    }
}

/// Vacuum value `2 − e^{−a²} − e^{−b²}` of `2 sin²(ax) + 2 sin²(bp)`, the
/// minimum over mixtures of coherent states.
pub fn classical_bound(a: f64, b: f64) -> f64 {
    2.0 - (-a * a).exp() - (-b * b).exp()
}

/// `min_g 2 − e^{−a²/g} − e^{−b²g}` over squeezed vacua of variance ratio
/// `g`. `None` means all `g > 0`, where the infimum includes the limits
/// `g → 0, ∞` (value 1).
pub fn gaussian_bound(a: f64, b: f64, g_range: Option<(f64, f64)>) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParameter(format!("a, b must be positive (got {a}, {b})")));
    }
    let f = |g: f64| 2.0 - (-a * a / g).exp() - (-b * b * g).exp();
    match g_range {
        Some((lo, hi)) => {
            if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
                return Err(Error::InvalidParameter(format!("empty or invalid g range [{lo}, {hi}]")));
            }
            Ok(minimize_log(&f, lo.ln(), hi.ln()))
        }
        None => {
            // The interior minimiser sits near g = a/b; ±30 in ln g is far
            // into the flat tails.
            let c = (a / b).ln();
            Ok(minimize_log(&f, c - 30.0, c + 30.0).min(1.0))
        }
    }
}

/// Minimum of `f(eᵗ)` for `t ∈ [lo, hi]`: dense scan then golden-section
/// refinement around the best sample.
fn minimize_log(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    if hi - lo < 1e-15 {
        return f(lo.exp());
    }
    let n = 2001;
    let step = (hi - lo) / (n - 1) as f64;
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..n {
        let v = f((lo + step * i as f64).exp());
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let mut a = (lo + step * (best_i as f64 - 1.0)).max(lo);
    let mut b = (lo + step * (best_i as f64 + 1.0)).min(hi);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..100 {
        if f(c.exp()) < f(d.exp()) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    best.min(f((0.5 * (a + b)).exp()))
}

/// Classical bound of an arbitrary grid: the minimum of `⟨Q⟩` over
/// coherent states. With independent rows the displacement can zero both
/// offsets, leaving `2 − e^{−z₁²} − e^{−z₂²}` with `zᵢ = |cᵢ|`.
pub fn grid_classical_bound(grid: &GridSpec) -> f64 {
    let [r1, r2] = grid.rows();
    let (z1, z2) = (r1.scale(), r2.scale());
    if grid.det().abs() > 1e-12 * z1 * z2 {
        return classical_bound(z1, z2);
    }
    // Parallel rows: c₂ = λc₁, both arguments move along one line t.
    let lambda = if r1.cx.abs() >= r1.cp.abs() { r2.cx / r1.cx } else { r2.cp / r1.cp };
    let (e1, e2) = ((-z1 * z1).exp(), (-z2 * z2).exp());
    let f = |t: f64| 2.0 - e1 * (2.0 * (t + r1.d)).cos() - e2 * (2.0 * (lambda * t + r2.d)).cos();
    // f has period π in t only if λ is rational; a fine scan over a few
    // periods is accurate enough for a reported bound.
    let n = 200_000;
    let span = 4.0 * std::f64::consts::PI * (1.0 + lambda.abs().recip().min(10.0));
    (0..n)
        .map(|i| f(-span / 2.0 + span * i as f64 / (n - 1) as f64))
        .fold(f64::INFINITY, f64::min)
}

/// Gaussian bound of an arbitrary grid. A symplectic map carries any grid
/// with independent rows to `general(√D, √D)` with `D = |det C|`, and the
/// symmetric squeezed-vacuum family is optimal there: `min(1, 2 − 2e^{−D})`.
pub fn grid_gaussian_bound(grid: &GridSpec) -> f64 {
    let d = grid.det().abs();
    if d > LN_2 {
        GAUSSIAN_BOUND
    } else {
        2.0 - 2.0 * (-d).exp()
    }
}

/// Quality band of a ξ value on a GKP-valid grid, best first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    FtGuaranteed,
    FtPossible,
    #[serde(rename = "sub-Gaussian")]
    SubGaussian,
    SubClassical,
    None,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::FtGuaranteed => "ft-guaranteed",
            Classification::FtPossible => "ft-possible",
            Classification::SubGaussian => "sub-Gaussian",
            Classification::SubClassical => "sub-classical",
            Classification::None => "none",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Band of `xi`. The fault-tolerance bands use `≤`; the Gaussian and
/// classical bands need the value strictly below the bound, since states on
/// the bound are exactly what those bounds allow.
pub fn classify(xi: f64, classical: f64, gaussian: f64) -> Classification {
    if xi <= FT_SUFFICIENT_XI0 {
        Classification::FtGuaranteed
    } else if xi <= FT_NECESSARY_XI0 {
        Classification::FtPossible
    } else if xi < gaussian {
        Classification::SubGaussian
    } else if xi < classical {
        Classification::SubClassical
    } else {
        Classification::None
    }
}
