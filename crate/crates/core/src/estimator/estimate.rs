use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::samples::{reduce_angle, QuadratureSamples};
use crate::analytic::{classify, db, grid_classical_bound, grid_gaussian_bound, Classification};
use crate::exec;
use crate::operators::{GridRow, GridSpec};
use crate::{Error, Result};

/// Default tolerance when matching a grid row's angle to a recorded angle.
pub const DEFAULT_ANGLE_TOLERANCE: f64 = 1e-6;
/// Confidence multiplier applied before classifying.
pub const CLASSIFICATION_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorMethod {
    /// First-order propagation of the sample variances.
    Delta,
    /// Resampling within each angle, seeded.
    Bootstrap { resamples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOptions {
    pub angle_tolerance: f64,
    pub error_method: ErrorMethod,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            angle_tolerance: DEFAULT_ANGLE_TOLERANCE,
            error_method: ErrorMethod::Delta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleCount {
    pub angle: f64,
    pub count: usize,
}

/// ξ estimate with its context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqueezingReport {
    pub xi: f64,
    pub std_error: f64,
    pub xi_db: f64,
    pub grid: GridSpec,
    pub classification: Classification,
    pub classical_bound: f64,
    pub gaussian_bound: f64,
    pub sample_counts: Vec<AngleCount>,
    /// `−ln ξ_opt`, set by the optimiser.
    pub m_gkp: Option<f64>,
    pub notes: Vec<String>,
}

/// A grid row as `z · x(φ) + d` with `φ ∈ [0, π)`, `z > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PolarRow {
    pub z: f64,
    pub phi: f64,
    pub d: f64,
}

impl PolarRow {
    pub fn from_row(row: &GridRow) -> Self {
        let (phi, flip) = reduce_angle(row.cp.atan2(row.cx));
        // sin²(−u + d) = sin²(u − d)
        Self {
            z: row.scale(),
            phi,
            d: if flip { -row.d } else { row.d },
        }
    }
}

/// Record index matching `phi` and whether its values must be negated.
pub(crate) fn match_angle(samples: &QuadratureSamples, phi: f64, tol: f64) -> Option<(usize, bool)> {
    samples.records().iter().enumerate().find_map(|(i, r)| {
        let diff = phi - r.angle;
        if diff.abs() <= tol {
            Some((i, false))
        } else if (diff.abs() - PI).abs() <= tol {
            Some((i, true))
        } else {
            None
        }
    })
}

/// Each grid row resolved to `(record, sign, z, d)` so that the row's
/// argument is `z·sign·q + d` for outcomes `q` of that record.
fn resolve(samples: &QuadratureSamples, grid: &GridSpec, tol: f64) -> Result<Vec<(usize, f64, f64, f64)>> {
    let polar: Vec<PolarRow> = grid.rows().iter().map(PolarRow::from_row).collect();
    let mut out = Vec::with_capacity(2);
    let mut missing = Vec::new();
    for p in &polar {
        match match_angle(samples, p.phi, tol) {
            Some((i, flip)) => out.push((i, if flip { -1.0 } else { 1.0 }, p.z, p.d)),
            None => missing.push(p.phi),
        }
    }
    if !missing.is_empty() {
        let mut required: Vec<f64> = polar.iter().map(|p| p.phi).collect();
        required.dedup_by(|a, b| (*a - *b).abs() <= tol);
        return Err(Error::UnmeasurableGrid { required });
    }
    Ok(out)
}

/// `Σ_rows 2 sin²(zᵢ sᵢ q + dᵢ)` evaluated at one outcome of a record.
fn record_terms(rows: &[(f64, f64, f64)], q: f64) -> f64 {
    rows.iter().map(|&(s, z, d)| 2.0 * (z * s * q + d).sin().powi(2)).sum()
}

/// Mean and variance of the mean for one record's combined terms.
fn mean_and_var(values: &[f64], rows: &[(f64, f64, f64)]) -> (f64, f64) {
    let n = values.len() as f64;
    let [s1, s2] = exec::chunked_sum(values, |q| {
        let h = record_terms(rows, q);
        [h, h * h]
    });
    let mean = s1 / n;
    let var = if values.len() > 1 {
        ((s2 - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    (mean, var / n)
}

/// Rows grouped by the record that measures them.
fn group(resolved: &[(usize, f64, f64, f64)]) -> Vec<(usize, Vec<(f64, f64, f64)>)> {
    let mut groups: Vec<(usize, Vec<(f64, f64, f64)>)> = Vec::new();
    for &(i, s, z, d) in resolved {
        match groups.iter_mut().find(|g| g.0 == i) {
            Some(g) => g.1.push((s, z, d)),
            None => groups.push((i, vec![(s, z, d)])),
        }
    }
    groups
}

/// Plug-in ξ and its standard error. Rows sharing a record are estimated
/// jointly, so their correlation enters the error.
pub(crate) fn xi_and_error(
    samples: &QuadratureSamples,
    grid: &GridSpec,
    opts: &EstimateOptions,
) -> Result<(f64, f64)> {
    let groups = group(&resolve(samples, grid, opts.angle_tolerance)?);
    let mut xi = 0.0;
    let mut var = 0.0;
    for (i, rows) in &groups {
        let (m, v) = mean_and_var(&samples.records()[*i].values, rows);
        xi += m;
        var += v;
    }
    let se = match opts.error_method {
        ErrorMethod::Delta => var.sqrt(),
        ErrorMethod::Bootstrap { resamples, seed } => bootstrap_error(samples, &groups, resamples, seed)?,
    };
    Ok((xi, se))
}

fn bootstrap_error(
    samples: &QuadratureSamples,
    groups: &[(usize, Vec<(f64, f64, f64)>)],
    resamples: usize,
    seed: u64,
) -> Result<f64> {
    if resamples < 2 {
        return Err(Error::InvalidParameter("bootstrap needs at least 2 resamples".into()));
    }
    // Precompute the per-outcome terms; a resample only re-draws indices.
    let terms: Vec<Vec<f64>> = groups
        .iter()
        .map(|(i, rows)| samples.records()[*i].values.iter().map(|&q| record_terms(rows, q)).collect())
        .collect();
    let stats = exec::map_range(resamples, |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        terms
            .iter()
            .map(|t| {
                let n = t.len();
                (0..n).map(|_| t[rng.random_range(0..n)]).sum::<f64>() / n as f64
            })
            .sum::<f64>()
    });
    let mean = stats.iter().sum::<f64>() / resamples as f64;
    let var = stats.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (resamples - 1) as f64;
    Ok(var.sqrt())
}

/// Band of a GKP-squeezing estimate for `grid`, judged on `ξ + 3σ`.
/// Fault-tolerance bands only apply to GKP-valid grids.
pub fn classify_estimate(xi: f64, std_error: f64, grid: &GridSpec) -> (Classification, Vec<String>) {
    let upper = xi + CLASSIFICATION_SIGMAS * std_error;
    let classical = grid_classical_bound(grid);
    let gaussian = grid_gaussian_bound(grid);
    let mut notes = vec![format!(
        "classification uses the upper confidence value xi + {CLASSIFICATION_SIGMAS} std_error = {upper}"
    )];
    let mut c = classify(upper, classical, gaussian);
    if !grid.gkp_valid() && matches!(c, Classification::FtGuaranteed | Classification::FtPossible) {
        notes.push("grid is not GKP-valid (det != pi/2); fault-tolerance bands not applied".into());
        c = if upper < gaussian {
            Classification::SubGaussian
        } else if upper < classical {
            Classification::SubClassical
        } else {
            Classification::None
        };
    }
    (c, notes)
}

/// ξ̂ from homodyne samples: `2 mean sin²(z₁q + d₁) + 2 mean sin²(z₂q + d₂)`
/// over the records at each row's angle.
pub fn estimate_xi(samples: &QuadratureSamples, grid: &GridSpec, opts: &EstimateOptions) -> Result<SqueezingReport> {
    let (xi, std_error) = xi_and_error(samples, grid, opts)?;
    let (classification, mut notes) = classify_estimate(xi, std_error, grid);
    if let ErrorMethod::Bootstrap { resamples, seed } = opts.error_method {
        notes.push(format!("standard error from {resamples} bootstrap resamples (seed {seed})"));
    }
    Ok(SqueezingReport {
        xi,
        std_error,
        xi_db: db(xi),
        grid: grid.clone(),
        classification,
        classical_bound: grid_classical_bound(grid),
        gaussian_bound: grid_gaussian_bound(grid),
        sample_counts: samples
            .counts()
            .into_iter()
            .map(|(angle, count)| AngleCount { angle, count })
            .collect(),
        m_gkp: None,
        notes,
    })
}

/// `⟨e^{−iuq}⟩` estimate with per-component standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementMean {
    pub mean: Complex64,
    pub se_re: f64,
    pub se_im: f64,
    /// Covariance of the real and imaginary estimates.
    pub cov: f64,
    pub n: usize,
}

pub fn estimate_displacement_mean(values: &[f64], u: f64) -> Result<DisplacementMean> {
    if values.is_empty() {
        return Err(Error::InvalidSamples("no values".into()));
    }
    let n = values.len() as f64;
    let [sc, ss, scc, sss, scs] = exec::chunked_sum(values, |q| {
        let (s, c) = (u * q).sin_cos();
        let s = -s;
        [c, s, c * c, s * s, c * s]
    });
    let (mc, ms) = (sc / n, ss / n);
    let denom = if values.len() > 1 { n - 1.0 } else { f64::INFINITY };
    let vc = ((scc - n * mc * mc) / denom).max(0.0);
    let vs = ((sss - n * ms * ms) / denom).max(0.0);
    let cov = (scs - n * mc * ms) / denom;
    Ok(DisplacementMean {
        mean: Complex64::new(mc, ms),
        se_re: (vc / n).sqrt(),
        se_im: (vs / n).sqrt(),
        cov: cov / n,
        n: values.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSqueezingEstimate {
    /// `+∞` when the mean displacement is not resolved from zero.
    pub delta_sq: f64,
    pub std_error: f64,
    pub phase: f64,
    /// False when `|mean| ≤ 3σ` or `|mean| > 1`.
    pub reliable: bool,
}

/// `Δ̂² = −(4/u²) ln|m̂|` with delta-method error through `|m̂|`.
pub fn estimate_grid_squeezing(values: &[f64], u: f64) -> Result<GridSqueezingEstimate> {
    let dm = estimate_displacement_mean(values, u)?;
    let r = dm.mean.norm();
    let (re, im) = (dm.mean.re, dm.mean.im);
    let var_r = if r > 0.0 {
        (re * re * dm.se_re.powi(2) + im * im * dm.se_im.powi(2) + 2.0 * re * im * dm.cov) / (r * r)
    } else {
        0.5 * (dm.se_re.powi(2) + dm.se_im.powi(2))
    };
    let se_r = var_r.max(0.0).sqrt();
    let k = 4.0 / (u * u);
    if r <= CLASSIFICATION_SIGMAS * se_r || r == 0.0 {
        return Ok(GridSqueezingEstimate {
            delta_sq: f64::INFINITY,
            std_error: f64::INFINITY,
            phase: dm.mean.arg(),
            reliable: false,
        });
    }
    Ok(GridSqueezingEstimate {
        delta_sq: -k * r.ln(),
        std_error: k * se_r / r,
        phase: dm.mean.arg(),
        reliable: r <= 1.0,
    })
}
