use std::f64::consts::{FRAC_PI_2, PI};

use super::estimate::{estimate_xi, EstimateOptions, SqueezingReport, DEFAULT_ANGLE_TOLERANCE};
use super::nelder_mead;
use super::samples::QuadratureSamples;
use crate::exec;
use crate::operators::GridSpec;
use crate::{Error, Result};

/// Squeeze parameter range searched by the optimiser.
pub const R_LIMIT: f64 = 1.5;
/// Largest `ln(det C / (π/2))` allowed when the GKP constraint is relaxed.
const S_LIMIT: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    /// Keep `det C = π/2`; otherwise allow `det C ≥ π/2`.
    pub constrain_gkp_valid: bool,
    pub restarts: usize,
    pub estimate: EstimateOptions,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            constrain_gkp_valid: true,
            restarts: 8,
            estimate: EstimateOptions {
                angle_tolerance: DEFAULT_ANGLE_TOLERANCE,
                ..EstimateOptions::default()
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizedXi {
    pub xi_opt: f64,
    /// `−ln ξ_opt`.
    pub m_gkp: f64,
    pub best_grid: GridSpec,
    /// Estimate at the best grid, with `m_gkp` filled in.
    pub report: SqueezingReport,
}

/// Mean of `cos(2zq)` and `sin(2zq)`.
fn char_means(values: &[f64], z: f64) -> (f64, f64) {
    let [c, s] = exec::chunked_sum(values, |q| {
        let (s, c) = (2.0 * z * q).sin_cos();
        [c, s]
    });
    let n = values.len() as f64;
    (c / n, s / n)
}

/// `min_d 2·mean sin²(zq + d) = 1 − |mean e^{2izq}|`, and the minimising `d`.
fn best_offset(values: &[f64], z: f64) -> (f64, f64) {
    let (c, s) = char_means(values, z);
    let d = (-0.5 * s.atan2(c)).rem_euclid(PI);
    (1.0 - c.hypot(s), d)
}

struct Candidate {
    value: f64,
    pair: (usize, usize),
    z: (f64, f64),
}

/// Minimise ξ̂ over grids whose two rows point along measured angles.
///
/// A row along angle φ with scale z is `z x(φ)`; for rows at φ₁ < φ₂ the
/// determinant is `z₁ z₂ sin(φ₂ − φ₁)`, so `z₁ = κeʳ`, `z₂ = κe⁻ʳ` with
/// `κ² sin(φ₂ − φ₁) = π/2` spans every GKP-valid grid on that angle pair.
/// Offsets are optimal in closed form, leaving a search over `r` (and over
/// `s = ln(det/(π/2)) ≥ 0` when unconstrained).
pub fn optimize_xi(samples: &QuadratureSamples, opts: &OptimizeOptions) -> Result<OptimizedXi> {
    let records = samples.records();
    if records.len() < 2 {
        return Err(Error::InsufficientAngles {
            needed: 2,
            found: records.len(),
        });
    }
    let restarts = opts.restarts.max(1);
    let mut trace = Vec::new();
    let mut best: Option<Candidate> = None;
    for i in 0..records.len() {
        for j in i + 1..records.len() {
            let sin_d = (records[j].angle - records[i].angle).sin();
            if sin_d < 1e-9 {
                continue;
            }
            let kappa = (FRAC_PI_2 / sin_d).sqrt();
            let (vi, vj) = (&records[i].values, &records[j].values);
            let scales = |x: &[f64]| -> (f64, f64) {
                let r = x[0].clamp(-R_LIMIT, R_LIMIT);
                let s = if opts.constrain_gkp_valid { 0.0 } else { x[1].abs().min(S_LIMIT) };
                let k = kappa * (0.5 * s).exp();
                (k * r.exp(), k * (-r).exp())
            };
            let objective = |x: &[f64]| {
                let (z1, z2) = scales(x);
                best_offset(vi, z1).0 + best_offset(vj, z2).0
            };
            for k in 0..restarts {
                let r0 = if restarts == 1 {
                    0.0
                } else {
                    -R_LIMIT + 2.0 * R_LIMIT * k as f64 / (restarts - 1) as f64
                };
                let (x0, step) = if opts.constrain_gkp_valid {
                    (vec![r0], vec![0.2])
                } else {
                    (vec![r0, 0.0], vec![0.2, 0.3])
                };
                let m = nelder_mead::minimize(&objective, &x0, &step, 1e-12, 400);
                if !m.value.is_finite() {
                    trace.push(format!(
                        "angles ({}, {}), start r = {r0}: non-finite objective after {} iterations",
                        records[i].angle, records[j].angle, m.iterations
                    ));
                    continue;
                }
                if best.as_ref().is_none_or(|b| m.value < b.value) {
                    best = Some(Candidate {
                        value: m.value,
                        pair: (i, j),
                        z: scales(&m.x),
                    });
                }
            }
        }
    }
    let Some(best) = best else {
        if trace.is_empty() {
            trace.push("no pair of measured angles spans the phase plane".into());
        }
        return Err(Error::OptimizationFailed(trace));
    };
    let (i, j) = best.pair;
    let (phi1, phi2) = (records[i].angle, records[j].angle);
    let (z1, z2) = best.z;
    let d1 = best_offset(&records[i].values, z1).1;
    let d2 = best_offset(&records[j].values, z2).1;
    let grid = GridSpec::new(
        z1 * phi1.cos(),
        z1 * phi1.sin(),
        z2 * phi2.cos(),
        z2 * phi2.sin(),
        d1,
        d2,
    )?
    .with_label("optimized");
    let mut report = estimate_xi(samples, &grid, &opts.estimate)?;
    let m_gkp = -report.xi.ln();
    report.m_gkp = Some(m_gkp);
    report.notes.push(format!(
        "optimized over grids with rows along measured angles; best pair ({phi1}, {phi2}) rad, r range [-{R_LIMIT}, {R_LIMIT}], {restarts} starts per pair"
    ));
    report
        .notes
        .push("std_error does not include the selection effect of the optimization".into());
    if !opts.constrain_gkp_valid {
        report.notes.push("determinant constraint relaxed to det >= pi/2".into());
    }
    Ok(OptimizedXi {
        xi_opt: report.xi,
        m_gkp,
        best_grid: grid,
        report,
    })
}
