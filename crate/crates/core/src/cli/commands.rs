use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::io::{num, Table};
use crate::analytic::{
    classical_bound, classify, critical_eta, db, equivalent_variance, fidelity_bounds, ft_crossings, grid_classical_bound,
    grid_gaussian_bound, scaled_basis_xi, xi_approx_symmetric, xi_finite_superposition, ApproxGKPParams,
    Classification, FT_NECESSARY_XI0, FT_SUFFICIENT_XI0, FT_SYMMETRIC_XI0, GAUSSIAN_BOUND, GRID_FT_DB,
    GRID_FT_VARIANCE,
};
use crate::estimator::{
    estimate_xi, optimize_xi, synthesize_samples, EstimateOptions, OptimizeOptions, QuadratureSamples,
    SqueezingReport,
};
use crate::fock::{wigner, BuildConfig, FockState, PhaseSpacePoint};
use crate::operators::{build_operator, ground_state, preset_grid, ChannelParams, GridSpec, Topology};
use crate::{Error, Result};

/// `topology, N, xi_min, xi_min_db, degeneracy` for every pair.
pub fn ground_sweep(topologies: &[Topology], dims: &[usize], config: &BuildConfig) -> Result<Table> {
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("dimensions must be strictly ascending".into()));
    }
    let mut jobs = Vec::new();
    for &t in topologies {
        for &n in dims {
            config.build_dim(n)?;
            jobs.push((t, n));
        }
    }
    let results = crate::exec::map(&jobs, |&(t, n)| -> Result<_> {
        let op = build_operator(&preset_grid(t)?, n, config)?;
        Ok(ground_state(&op)?)
    });
    let mut table = Table::new(&["topology", "N", "xi_min", "xi_min_db", "degeneracy"]);
    for ((t, n), r) in jobs.iter().zip(results) {
        let gs = r?;
        table.push(vec![
            t.name(),
            n.to_string(),
            num(gs.xi_min),
            num(db(gs.xi_min)),
            gs.degeneracy.to_string(),
        ]);
    }
    Ok(table)
}

/// Wigner function of the ground state on a `resolution²` grid over
/// `[−extent, extent]²`. Resolution 1 is the origin alone.
pub fn wigner_grid(topology: Topology, n: usize, extent: f64, resolution: usize, config: &BuildConfig) -> Result<Table> {
    if resolution == 0 {
        return Err(Error::InvalidParameter("resolution must be at least 1".into()));
    }
    if !(extent > 0.0 && extent.is_finite()) {
        return Err(Error::InvalidParameter(format!("extent must be positive, got {extent}")));
    }
    let op = build_operator(&preset_grid(topology)?, n, config)?;
    let gs = ground_state(&op)?;
    let axis: Vec<f64> = if resolution == 1 {
        vec![0.0]
    } else {
        (0..resolution)
            .map(|i| -extent + 2.0 * extent * i as f64 / (resolution - 1) as f64)
            .collect()
    };
    let points: Vec<PhaseSpacePoint> = axis
        .iter()
        .flat_map(|&x| axis.iter().map(move |&p| PhaseSpacePoint::new(x, p)))
        .collect();
    let w = wigner(&gs.state, &points);
    let mut table = Table::new(&["x", "p", "W"]);
    table.comment(format!(
        "topology={topology} N={n} extent={extent} resolution={resolution} xi_min={}",
        gs.xi_min
    ));
    for (pt, v) in points.iter().zip(w) {
        table.push(vec![num(pt.x), num(pt.p), num(v)]);
    }
    Ok(table)
}

/// Fidelity bounds for each `(g, F)`, with the reference levels as columns.
pub fn fidelity_sweep(g_list: &[f64], f_grid: &[f64]) -> Result<Table> {
    let s = (PI / 2.0).sqrt();
    let mut table = Table::new(&[
        "F",
        "g",
        "lower",
        "upper",
        "classical_bound",
        "gaussian_bound",
        "ft_possible",
        "ft_guaranteed",
    ]);
    for &g in g_list {
        for &f in f_grid {
            let (lo, hi) = fidelity_bounds(f, g)?;
            table.push(vec![
                num(f),
                num(g),
                num(lo),
                num(hi),
                num(classical_bound(s, s)),
                num(GAUSSIAN_BOUND),
                num(FT_NECESSARY_XI0),
                num(FT_SUFFICIENT_XI0),
            ]);
        }
    }
    Ok(table)
}

/// Band on the symmetric grid, which is what the scaled-basis map describes.
fn band(xi: f64) -> &'static str {
    let s = FRAC_PI_2.sqrt();
    classify(xi, classical_bound(s, s), GAUSSIAN_BOUND).as_str()
}

/// Scaled-basis symmetric-grid map `ξ_out = γ ξ_in + 2(1 − γ)` over a grid
/// of transmissions and input values.
pub fn channel_sweep(eta_list: &[f64], nbar: f64, xi_in: &[f64]) -> Result<Table> {
    let mut table = Table::new(&["eta", "nbar", "V_equivalent", "xi_in", "xi_out", "band"]);
    table.comment("scaled-basis affine map on the symmetric grid: xi_out = gamma*xi_in + 2(1-gamma), gamma = exp(-pi*V/eta)");
    for (name, th) in [("ft-guaranteed", FT_SUFFICIENT_XI0), ("ft-possible", FT_NECESSARY_XI0)] {
        match critical_eta(th, nbar) {
            Some(eta) => table.comment(format!(
                "smallest eta for which an ideal input still reaches {name} (xi <= {th}): {eta} (loss {})",
                1.0 - eta
            )),
            None => table.comment(format!("no eta <= 1 lets an ideal input reach {name} at nbar={nbar}")),
        }
    }
    for &eta in eta_list {
        let ch = ChannelParams::new(eta, nbar)?;
        for &x in xi_in {
            let out = scaled_basis_xi(x, &ch)?;
            table.push(vec![
                num(eta),
                num(nbar),
                num(equivalent_variance(&ch)),
                num(x),
                num(out),
                band(out).to_string(),
            ]);
        }
    }
    Ok(table)
}

/// ξ of approximate states over `g` and the number of peaks.
pub fn peaks_sweep(g_list: &[f64], s_max_list: &[usize], grid: &GridSpec, a: f64) -> Result<Table> {
    let mut table = Table::new(&["g", "s_max", "xi", "xi_limit"]);
    table.comment(format!("grid={} peak half-spacing a={a}; xi_limit = 2 - 2exp(-pi g/2)", grid.name()));
    for &g in g_list {
        for &s in s_max_list {
            let p = ApproxGKPParams::new(g, a, Some(s), 0)?;
            table.push(vec![
                num(g),
                s.to_string(),
                num(xi_finite_superposition(&p, grid)?),
                num(xi_approx_symmetric(g)),
            ]);
        }
    }
    Ok(table)
}

/// State to draw samples from.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleSource {
    Vacuum,
    /// Ground state of the topology's operator on `N` levels.
    GroundState(Topology, usize),
    /// Approximate state on the symmetric grid with `g`, on `N` levels.
    Approximate { g: f64, s_max: Option<usize>, n: usize },
}

pub fn synthesize(
    source: &SampleSource,
    angles: &[f64],
    n_per_angle: usize,
    seed: u64,
    config: &BuildConfig,
) -> Result<(QuadratureSamples, Vec<String>)> {
    let state = match source {
        SampleSource::Vacuum => FockState::vacuum(1)?,
        SampleSource::GroundState(t, n) => ground_state(&build_operator(&preset_grid(*t)?, *n, config)?)?.state,
        SampleSource::Approximate { g, s_max, n } => {
            crate::analytic::approximate_state_fock(&ApproxGKPParams::symmetric(*g, *s_max)?, *n)?
        }
    };
    let s = synthesize_samples(&state, angles, n_per_angle, seed)?;
    Ok((s.samples, s.warnings))
}

/// Versioned JSON form of a report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportJson<'a> {
    pub schema_version: u32,
    pub xi: f64,
    pub std_error: f64,
    pub xi_db: f64,
    pub grid: GridJson,
    pub classification: Classification,
    pub classical_bound: f64,
    pub gaussian_bound: f64,
    pub sample_counts: &'a [crate::estimator::AngleCount],
    pub m_gkp: Option<f64>,
    pub notes: &'a [String],
}

#[derive(Debug, Clone, Serialize)]
pub struct GridJson {
    pub label: Option<String>,
    pub c11: f64,
    pub c12: f64,
    pub c21: f64,
    pub c22: f64,
    pub d1: f64,
    pub d2: f64,
    pub determinant: f64,
    pub gkp_valid: bool,
}

impl From<&GridSpec> for GridJson {
    fn from(g: &GridSpec) -> Self {
        Self {
            label: g.label.clone(),
            c11: g.c11,
            c12: g.c12,
            c21: g.c21,
            c22: g.c22,
            d1: g.d1,
            d2: g.d2,
            determinant: g.det(),
            gkp_valid: g.gkp_valid(),
        }
    }
}

pub fn report_json(report: &SqueezingReport) -> String {
    let j = ReportJson {
        schema_version: 1,
        xi: report.xi,
        std_error: report.std_error,
        xi_db: report.xi_db,
        grid: GridJson::from(&report.grid),
        classification: report.classification,
        classical_bound: report.classical_bound,
        gaussian_bound: report.gaussian_bound,
        sample_counts: &report.sample_counts,
        m_gkp: report.m_gkp,
        notes: &report.notes,
    };
    serde_json::to_string_pretty(&j).expect("report serialises") + "\n"
}

pub fn estimate(
    samples: &QuadratureSamples,
    grid: Option<&GridSpec>,
    optimize: Option<OptimizeOptions>,
    opts: &EstimateOptions,
) -> Result<SqueezingReport> {
    match (optimize, grid) {
        (Some(o), _) => Ok(optimize_xi(samples, &OptimizeOptions { estimate: *opts, ..o })?.report),
        (None, Some(g)) => estimate_xi(samples, g, opts),
        (None, None) => Err(Error::InvalidParameter("give a grid (--topology or --grid) or --optimize".into())),
    }
}

/// Bounds, thresholds and conversion formulas for `grid`, as text lines.
pub fn thresholds(grid: &GridSpec) -> Vec<String> {
    let (pess, sym) = ft_crossings();
    let mut out = vec![
        format!("grid: {}", grid.name()),
        format!(
            "coefficients: c = [[{}, {}], [{}, {}]], d = ({}, {}), det = {}, gkp_valid = {}",
            grid.c11,
            grid.c12,
            grid.c21,
            grid.c22,
            grid.d1,
            grid.d2,
            grid.det(),
            grid.gkp_valid()
        ),
        format!(
            "classical bound (vacuum value 2 - exp(-|c1|^2) - exp(-|c2|^2)): {} ({:.2} dB)",
            grid_classical_bound(grid),
            db(grid_classical_bound(grid))
        ),
        format!("gaussian bound: {} ({:.2} dB)", grid_gaussian_bound(grid), db(grid_gaussian_bound(grid))),
        format!("ft-guaranteed: xi0 <= {FT_SUFFICIENT_XI0} ({:.2} dB)", db(FT_SUFFICIENT_XI0)),
        format!("ft-possible: xi0 <= {FT_NECESSARY_XI0} ({:.2} dB)", db(FT_NECESSARY_XI0)),
        format!(
            "both single-variance bounds near the threshold: xi0 = {FT_SYMMETRIC_XI0} ({:.2} dB)",
            db(FT_SYMMETRIC_XI0)
        ),
        format!("grid squeezing threshold: Delta^2 = {GRID_FT_VARIANCE} ({GRID_FT_DB} dB)"),
        "grid squeezing bounds, logical grid: Delta^2_{x,sqrt(pi)} <= -(4/pi) ln(1 - xi0), Delta^2_{p,2sqrt(pi)} <= -(1/pi) ln(1 - xi0)".into(),
        "grid squeezing bounds, symmetric grid: Delta^2_{x,sqrt(2pi)}, Delta^2_{p,sqrt(2pi)} <= -(2/pi) ln(1 - xi_s0)".into(),
        format!(
            "xi0 at Delta^2 = {GRID_FT_VARIANCE}: symmetric scenario {sym}, pessimistic scenario (converted pair, -(2/pi) ln(1 - xi0)) {pess}"
        ),
    ];
    if grid.label.as_deref().is_some_and(|l| l == "q0" || l == "q1") {
        let c = classical_bound(PI.sqrt() / 2.0, PI.sqrt());
        let alt = 2.0 - (-PI / 2.0).exp() - (-PI).exp();
        out.push(format!(
            "note: the logical-grid classical bound is the vacuum value 2 - exp(-pi/4) - exp(-pi) = {c}; \
             the expression 2 - exp(-pi/2) - exp(-pi) = {alt} is sometimes quoted for it and does not match the operator"
        ));
    }
    out
}
