use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{BuildConfig, CMatrix, DensityMatrix, QuadratureBasis};
use crate::{Error, Result};

/// Trace drift above this marks the quadrature as unconverged.
const TRACE_FLAG: f64 = 1e-4;

/// Pure loss with intensity transmission `eta` followed by Gaussian noise
/// adding `n_thermal` to each quadrature variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub eta: f64,
    pub n_thermal: f64,
}

impl ChannelParams {
    pub fn new(eta: f64, n_thermal: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidParameter(format!("eta must lie in (0, 1], got {eta}")));
        }
        if !(n_thermal >= 0.0 && n_thermal.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "n_thermal must be finite and non-negative, got {n_thermal}"
            )));
        }
        Ok(Self { eta, n_thermal })
    }

    pub fn identity() -> Self {
        Self {
            eta: 1.0,
            n_thermal: 0.0,
        }
    }

    /// Added quadrature variance `V = n̄ + (1 − η)/2`.
    pub fn variance(&self) -> f64 {
        self.n_thermal + (1.0 - self.eta) / 2.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelConfig {
    /// Gauss–Hermite order per displacement direction.
    pub quadrature_order: usize,
    pub build: BuildConfig,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            quadrature_order: 32,
            build: BuildConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChannelOutput {
    pub rho: DensityMatrix,
    /// `|1 − Tr ρ_out|`.
    pub trace_defect: f64,
    /// False when the trace drifted by more than 1e−4.
    pub converged: bool,
}

/// Loss then thermal noise, output on `cutoff` levels.
pub fn apply_channel(
    rho: &DensityMatrix,
    ch: &ChannelParams,
    cutoff: usize,
    config: &ChannelConfig,
) -> Result<ChannelOutput> {
    let ch = ChannelParams::new(ch.eta, ch.n_thermal)?;
    if cutoff < rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: cutoff,
        });
    }
    let mut out = pure_loss(&rho.padded(cutoff), ch.eta);
    if ch.n_thermal > 0.0 {
        if config.quadrature_order == 0 {
            return Err(Error::InvalidParameter("quadrature order must be positive".into()));
        }
        let gh = QuadratureBasis::new(config.quadrature_order)?;
        let basis = QuadratureBasis::new(config.build.build_dim(cutoff)?)?;
        let spread = (2.0 * ch.n_thermal).sqrt();
        // Shift along x is exp(−iδp), along p is exp(iδx).
        out = kick_average(&out, &gh, |delta| basis.exp_block(0.0, -spread * delta, 0.0, cutoff))?;
        out = kick_average(&out, &gh, |delta| basis.exp_block(spread * delta, 0.0, 0.0, cutoff))?;
    }
    let out = crate::fock::hermitize(&out);
    let trace_defect = (1.0 - out.trace().re).abs();
    Ok(ChannelOutput {
        rho: DensityMatrix::from_entries_unchecked(out),
        trace_defect,
        converged: trace_defect <= TRACE_FLAG,
    })
}

/// `Σₖ Eₖ ρ Eₖ†` with `(Eₖ)_{n−k,n} = √C(n,k) η^{(n−k)/2} (1−η)^{k/2}`.
fn pure_loss(rho: &CMatrix, eta: f64) -> CMatrix {
    let n = rho.nrows();
    if eta == 1.0 {
        return rho.clone();
    }
    let mut ln_fact = vec![0.0; n + 1];
    for k in 1..=n {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    let (ln_eta, ln_loss) = (eta.ln(), (1.0 - eta).ln());
    let amp = |m: usize, k: usize| -> f64 {
        let total = m + k;
        (0.5 * (ln_fact[total] - ln_fact[m] - ln_fact[k] + m as f64 * ln_eta + k as f64 * ln_loss)).exp()
    };
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n - i.max(j) {
                acc += rho[(i + k, j + k)] * (amp(i, k) * amp(j, k));
            }
            out[(i, j)] = acc;
        }
    }
    out
}

fn kick_average<F>(rho: &CMatrix, gh: &QuadratureBasis, unitary: F) -> Result<CMatrix>
where
    F: Fn(f64) -> Result<CMatrix> + Sync,
{
    let weights = gh.weights();
    let nodes: Vec<(f64, f64)> = gh.nodes().iter().copied().zip(weights).collect();
    let terms = crate::exec::map(&nodes, &|&(t, w): &(f64, f64)| -> Result<CMatrix> {
        let u = unitary(t)?;
        Ok((&u * rho * u.adjoint()) * Complex64::new(w, 0.0))
    });
    let n = rho.nrows();
    let mut acc = CMatrix::zeros(n, n);
    for term in terms {
        acc += term?;
    }
    Ok(acc)
}
