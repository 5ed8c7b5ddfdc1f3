use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fock::{quadrature_pdf, FockState};
use crate::{Error, Result};

/// Angles closer than this are merged into one record.
const SAME_ANGLE: f64 = 1e-12;
/// Points of the inverse-CDF grid.
const CDF_POINTS: usize = 65_536;

/// Homodyne outcomes of `x(θ) = x cos θ + p sin θ` at one phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub angle: f64,
    pub values: Vec<f64>,
}

/// Quadrature samples grouped by measurement angle, angles in `[0, π)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct QuadratureSamples {
    records: Vec<SampleRecord>,
}

/// Reduce `θ` into `[0, π)`; the flag says whether the quadrature flipped
/// sign, since `x(θ + π) = −x(θ)`.
pub(crate) fn reduce_angle(theta: f64) -> (f64, bool) {
    let t = theta.rem_euclid(2.0 * PI);
    let (t, flip) = if t >= PI { (t - PI, true) } else { (t, false) };
    // rem_euclid can land on π itself through rounding.
    if t >= PI - SAME_ANGLE {
        (0.0, !flip)
    } else {
        (t, flip)
    }
}

impl QuadratureSamples {
    /// Validate and normalise; angles outside `[0, π)` are folded back with
    /// their values negated, and records sharing an angle are merged.
    pub fn new(records: Vec<SampleRecord>) -> Result<Self> {
        let mut out = Self::default();
        for r in records {
            out.push(r.angle, r.values)?;
        }
        Ok(out)
    }

    pub fn push(&mut self, angle: f64, mut values: Vec<f64>) -> Result<()> {
        if !angle.is_finite() {
            return Err(Error::InvalidSamples(format!("non-finite angle {angle}")));
        }
        if values.is_empty() {
            return Err(Error::InvalidSamples(format!("no values at angle {angle}")));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSamples(format!("non-finite value {v} at angle {angle}")));
        }
        let (theta, flip) = reduce_angle(angle);
        if flip {
            values.iter_mut().for_each(|v| *v = -*v);
        }
        match self.records.iter_mut().find(|r| (r.angle - theta).abs() <= SAME_ANGLE) {
            Some(r) => r.values.extend(values),
            None => {
                self.records.push(SampleRecord { angle: theta, values });
                self.records.sort_by(|a, b| a.angle.total_cmp(&b.angle));
            }
        }
        Ok(())
    }

    pub fn records(&self) -> &[SampleRecord] {
        &self.records
    }

    pub fn angles(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.angle).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// `(angle, count)` per record.
    pub fn counts(&self) -> Vec<(f64, usize)> {
        self.records.iter().map(|r| (r.angle, r.values.len())).collect()
    }
}

/// Samples plus any warnings about the sampling grid.
#[derive(Debug, Clone)]
pub struct Synthesized {
    pub samples: QuadratureSamples,
    pub warnings: Vec<String>,
}

/// Draw `n_per_angle` outcomes at each angle by inverse-CDF sampling of the
/// quadrature density on a dense grid. Each angle uses its own stream of a
/// ChaCha8 generator seeded with `seed`, so output is reproducible and
/// independent of thread count.
pub fn synthesize_samples(state: &FockState, angles: &[f64], n_per_angle: usize, seed: u64) -> Result<Synthesized> {
    if angles.is_empty() {
        return Err(Error::InvalidParameter("no angles requested".into()));
    }
    if n_per_angle == 0 {
        return Err(Error::InvalidParameter("n_per_angle must be positive".into()));
    }
    let lim = (2.0 * state.dim() as f64 + 1.0).sqrt() + 10.0;
    let grid: Vec<f64> = (0..CDF_POINTS)
        .map(|i| -lim + 2.0 * lim * i as f64 / (CDF_POINTS - 1) as f64)
        .collect();
    let mut warnings = Vec::new();
    let mut samples = QuadratureSamples::default();
    for (idx, &angle) in angles.iter().enumerate() {
        let pdf = quadrature_pdf(state, angle, &grid);
        if pdf.narrow_grid {
            warnings.push(format!(
                "sampling grid holds probability mass {} at angle {angle}; tails truncated",
                pdf.mass
            ));
        }
        let cdf = cumulative(&grid, &pdf.density);
        let total = *cdf.last().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64);
        let values = (0..n_per_angle)
            .map(|_| invert(&grid, &cdf, rng.random::<f64>() * total))
            .collect();
        samples.push(angle, values)?;
    }
    Ok(Synthesized { samples, warnings })
}

fn cumulative(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut c = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    c.push(0.0);
    for i in 1..x.len() {
        acc += 0.5 * (y[i] + y[i - 1]).max(0.0) * (x[i] - x[i - 1]);
        c.push(acc);
    }
    c
}

/// Linear interpolation of the inverse of a non-decreasing table.
fn invert(x: &[f64], cdf: &[f64], u: f64) -> f64 {
    let k = cdf.partition_point(|&c| c < u).clamp(1, cdf.len() - 1);
    let (c0, c1) = (cdf[k - 1], cdf[k]);
    let t = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
    x[k - 1] + t * (x[k] - x[k - 1])
}
