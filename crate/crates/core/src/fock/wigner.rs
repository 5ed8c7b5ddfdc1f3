use num_complex::Complex64;

use super::{FockState, PhaseSpacePoint};
use crate::exec;

/// Columns `0..ncols` of the displacement matrix `⟨m|D(β)|n⟩`, rows
/// `0..nrows`, stored column-major. Uses `D|0⟩ = |β⟩` and
/// `√n D_{m,n} = √m D_{m−1,n−1} − β* D_{m,n−1}`.
pub fn displacement_columns(beta: Complex64, nrows: usize, ncols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); nrows * ncols];
    if nrows == 0 || ncols == 0 {
        return out;
    }
    let mut c = Complex64::new((-0.5 * beta.norm_sqr()).exp(), 0.0);
    out[0] = c;
    for m in 1..nrows {
        c = c * beta / (m as f64).sqrt();
        out[m] = c;
    }
    let bc = beta.conj();
    for n in 1..ncols {
        let sn = (n as f64).sqrt();
        let (prev, cur) = out.split_at_mut(n * nrows);
        let prev = &prev[(n - 1) * nrows..];
        let cur = &mut cur[..nrows];
        cur[0] = -bc * prev[0] / sn;
        for m in 1..nrows {
            cur[m] = ((m as f64).sqrt() * prev[m - 1] - bc * prev[m]) / sn;
        }
    }
    out
}

/// Rows needed so that a state on `dim` levels displaced by `|β|` keeps
/// essentially all of its weight.
fn displaced_cutoff(dim: usize, beta_abs: f64) -> usize {
    let r = (dim as f64).sqrt() + beta_abs + 8.0;
    (r * r).ceil() as usize
}

/// Wigner function via the displaced parity
/// `W(x, p) = (1/π) ⟨ψ| D(α) Π D(α)† |ψ⟩`, `α = (x + ip)/√2`.
pub fn wigner(state: &FockState, points: &[PhaseSpacePoint]) -> Vec<f64> {
    let dim = state.dim();
    let amps = state.amplitudes();
    exec::map(points, |pt| {
        let alpha = Complex64::new(pt.x, pt.p) * std::f64::consts::FRAC_1_SQRT_2;
        let rows = displaced_cutoff(dim, alpha.norm());
        let d = displacement_columns(-alpha, rows, dim);
        let mut parity = 0.0;
        for m in 0..rows {
            let mut v = Complex64::new(0.0, 0.0);
            for n in 0..dim {
                v += d[n * rows + m] * amps[n];
            }
            let w = v.norm_sqr();
            parity += if m % 2 == 0 { w } else { -w };
        }
        parity / std::f64::consts::PI
    })
}
