use std::f64::consts::PI;

use crate::operators::ChannelParams;
use crate::{Error, Result};

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (-1e-12..=1.0 + 1e-12).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {v}")))
    }
}

/// ξ on `general(a, b)` after the channel, from the input terms
/// `⟨sin²(a√η x)⟩` and `⟨sin²(b√η p)⟩`:
/// `2γx s + 2γp t + 2 − γx − γp` with `γ = e^{−2c²V}`.
pub fn channel_output_xi(sin2_x: f64, sin2_p: f64, ch: &ChannelParams, a: f64, b: f64) -> Result<f64> {
    check_unit("sin² x term", sin2_x)?;
    check_unit("sin² p term", sin2_p)?;
    let ch = ChannelParams::new(ch.eta, ch.n_thermal)?;
    let v = ch.variance();
    let gx = (-2.0 * a * a * v).exp();
    let gp = (-2.0 * b * b * v).exp();
    Ok(2.0 * gx * sin2_x + 2.0 * gp * sin2_p + 2.0 - gx - gp)
}

/// Noise variance seen in the scaled basis (quadratures divided by `√η`),
/// `V/η`. Pure loss gives `(1 − η)/(2η)`.
pub fn equivalent_variance(ch: &ChannelParams) -> f64 {
    ch.variance() / ch.eta
}

/// `γ = e^{−πV/η}` of the symmetric grid in the scaled basis.
pub fn scaled_gamma(ch: &ChannelParams) -> f64 {
    (-PI * equivalent_variance(ch)).exp()
}

/// Symmetric-grid ξ after the channel, measured on the grid rescaled by
/// `1/√η`: `ξ_out = γ ξ_in + 2(1 − γ)`.
pub fn scaled_basis_xi(xi_in: f64, ch: &ChannelParams) -> Result<f64> {
    if !(0.0..=4.0).contains(&xi_in) {
        return Err(Error::InvalidParameter(format!("ξ must lie in [0, 4], got {xi_in}")));
    }
    let ch = ChannelParams::new(ch.eta, ch.n_thermal)?;
    let g = scaled_gamma(&ch);
    Ok(g * xi_in + 2.0 * (1.0 - g))
}

/// `second ∘ first` as a single loss-plus-noise channel.
pub fn compose_channels(first: &ChannelParams, second: &ChannelParams) -> ChannelParams {
    ChannelParams {
        eta: first.eta * second.eta,
        n_thermal: second.eta * first.n_thermal + second.n_thermal,
    }
}

/// Smallest transmission for which an ideal input (`ξ_in = 0`) still ends
/// at or below `threshold` in the scaled basis, with `n_thermal` added
/// noise. `None` if no `η ≤ 1` suffices.
pub fn critical_eta(threshold: f64, n_thermal: f64) -> Option<f64> {
    if threshold >= 2.0 {
        return Some(f64::MIN_POSITIVE);
    }
    if threshold < 0.0 {
        return None;
    }
    // 2(1 − e^{−πv}) ≤ threshold  ⇔  v ≤ v*
    let v_star = -(1.0 - threshold / 2.0).ln() / PI;
    let eta = (n_thermal + 0.5) / (v_star + 0.5);
    (eta <= 1.0).then_some(eta)
}
