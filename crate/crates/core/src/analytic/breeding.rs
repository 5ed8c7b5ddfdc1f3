use std::f64::consts::FRAC_PI_2;

use super::approx::ApproxGKPParams;
use crate::operators::GridRow;
use crate::{Error, Result};

/// ξ on `general(a, b)` after one breeding step on two identical even
/// inputs: `4 s (1 − s) + 2 t` with `s = ⟨sin²(a x/√2)⟩`,
/// `t = ⟨sin²(b√2 p)⟩` evaluated on one input mode.
pub fn breeding_step_xi(sin2_half: f64, sin2_p: f64) -> Result<f64> {
    for (name, v) in [("sin²(a x/√2)", sin2_half), ("sin²(b√2 p)", sin2_p)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {v}")));
        }
    }
    Ok(4.0 * sin2_half * (1.0 - sin2_half) + 2.0 * sin2_p)
}

/// One point of the no-improvement scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreedingPoint {
    pub g: f64,
    /// `⟨sin²(a x/√2)⟩` on the input.
    pub sin2_half: f64,
    /// `⟨sin²(b√2 p)⟩` on the input.
    pub sin2_p: f64,
    /// Input ξ on the rescaled grid, `2s + 2t`.
    pub xi_in: f64,
    pub xi_out: f64,
}

/// Breeding towards the symmetric grid from logical-grid approximate
/// inputs `|0_g⟩` (`a = √π`). The rescaled input grid
/// `(a/√2, √2 b) = (√π/2, √π)` is the logical grid itself.
pub fn breeding_scan_point(g: f64, s_max: Option<usize>) -> Result<BreedingPoint> {
    let input = ApproxGKPParams::logical(g, s_max, 0)?;
    let c = FRAC_PI_2.sqrt();
    let s = super::approx_sin2(&input, &GridRow { cx: c / 2f64.sqrt(), cp: 0.0, d: 0.0 })?;
    let t = super::approx_sin2(&input, &GridRow { cx: 0.0, cp: c * 2f64.sqrt(), d: 0.0 })?;
    Ok(BreedingPoint {
        g,
        sin2_half: s,
        sin2_p: t,
        xi_in: 2.0 * s + 2.0 * t,
        xi_out: breeding_step_xi(s.clamp(0.0, 1.0), t.clamp(0.0, 1.0))?,
    })
}
