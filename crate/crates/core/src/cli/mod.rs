//! The `gkpsq` command-line front end.
//!
//! Every subcommand writes CSV (or JSON for `estimate`) to `--output` or
//! stdout. Exit codes: 0 success, 2 configuration error, 3 resource cap,
//! 4 input parse error, 1 anything else.

mod commands;
mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};

pub use commands::{
    channel_sweep, estimate, fidelity_sweep, ground_sweep, peaks_sweep, report_json, synthesize, thresholds,
    wigner_grid, SampleSource,
};
pub use io::{num, parse_samples, read_samples, samples_to_csv, Table};

use crate::estimator::{ErrorMethod, EstimateOptions, OptimizeOptions, DEFAULT_ANGLE_TOLERANCE};
use crate::fock::{BuildConfig, DEFAULT_MAX_BUILD_DIM, DEFAULT_OVERSAMPLE};
use crate::operators::{preset_grid, GridSpec, Topology};
use crate::Error;

/// Environment variable overriding the build-dimension cap.
pub const MAX_BUILD_DIM_ENV: &str = "GKP_MAX_BUILD_DIM";

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Config(String),
    Parse { line: usize, message: String },
    Input(String),
    Io(String),
}

impl CliError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) => match e {
                Error::ResourceCap { .. } => 3,
                Error::InvalidSamples(_) => 4,
                Error::InvalidDimension(_)
                | Error::InvalidGrid(_)
                | Error::UnknownTopology(_)
                | Error::InvalidParameter(_)
                | Error::UnsupportedGrid(_)
                | Error::NotSymplectic(_)
                | Error::UnmeasurableGrid { .. }
                | Error::InsufficientAngles { .. } => 2,
                _ => 1,
            },
            CliError::Config(_) => 2,
            CliError::Parse { .. } | CliError::Input(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            CliError::Input(m) => write!(f, "cannot read input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "gkpsq", version, about = "GKP squeezing: operators, bounds, sweeps and estimation")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Output file (stdout if omitted).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Build dimension as a multiple of the target dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_OVERSAMPLE)]
    pub oversample: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal eigenvalue of truncated operators for each topology and N.
    GroundSweep {
        #[arg(long, default_value = "q0,q1,s0,s1,hex")]
        topology: String,
        #[arg(long, default_value = "3,5,10,20,50")]
        dims: String,
        #[command(flatten)]
        common: Common,
    },
    /// Wigner function of a ground state on a square grid.
    Wigner {
        #[arg(long, default_value = "q0")]
        topology: String,
        /// Number of Fock levels N.
        #[arg(long, default_value = "5")]
        dims: usize,
        /// Half-width of the phase-space window.
        #[arg(long, default_value_t = 6.0)]
        extent: f64,
        /// Points per axis.
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Bounds on ξ for states with a given fidelity to an approximate state.
    FidelitySweep {
        #[arg(long, default_value = "0.1,0.2,0.3")]
        g: String,
        #[arg(long = "fidelity-grid", default_value = "0:1:11")]
        fidelity_grid: String,
        #[command(flatten)]
        common: Common,
    },
    /// ξ after loss and noise in the scaled basis.
    ChannelSweep {
        #[arg(long, default_value = "1,0.95,0.9,0.85,0.8")]
        eta: String,
        #[arg(long, default_value_t = 0.0)]
        nbar: f64,
        /// Input ξ values.
        #[arg(long = "xi-in", default_value = "0:1:11")]
        xi_in: String,
        #[command(flatten)]
        common: Common,
    },
    /// ξ of approximate states versus g and the number of peaks.
    PeaksSweep {
        #[arg(long, default_value = "0.1,0.2,0.3")]
        g: String,
        #[arg(long, default_value = "0,1,2,3,4,6")]
        smax: String,
        /// Axis-aligned grid: s0 or q0 (the peak spacing follows the grid).
        #[arg(long, default_value = "s0")]
        topology: String,
        #[command(flatten)]
        common: Common,
    },
    /// Draw homodyne samples from a state into an `angle,value` file.
    Synthesize {
        /// `vacuum`, a topology (ground state on --dims levels), or `approx:g`.
        #[arg(long, default_value = "vacuum")]
        topology: String,
        #[arg(long, default_value_t = 50)]
        dims: usize,
        #[arg(long, default_value = "0,1.5707963267948966")]
        angles: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        smax: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate ξ from a sample file and print a JSON report.
    Estimate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        topology: Option<String>,
        /// Explicit grid `c11,c12,c21,c22,d1,d2`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Optimise the grid over measured angles.
        #[arg(long)]
        optimize: bool,
        /// Keep det C = π/2 while optimising.
        #[arg(long = "gkp-valid", default_value_t = true, action = ArgAction::Set)]
        gkp_valid: bool,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long = "angle-tolerance", default_value_t = DEFAULT_ANGLE_TOLERANCE)]
        angle_tolerance: f64,
        /// Bootstrap resamples for the standard error (delta method if 0).
        #[arg(long, default_value_t = 0)]
        bootstrap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Print bounds, thresholds and conversion formulas for a grid.
    Thresholds {
        #[arg(long, default_value = "q0")]
        topology: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Floats as a comma list or `start:stop:count`.
pub fn parse_float_list(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = |m: &str| CliError::Config(format!("`{s}`: {m}"));
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("ranges are start:stop:count"));
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad("bad start"))?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad("bad stop"))?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad("bad count"))?;
        return match count {
            0 => Err(bad("count must be positive")),
            1 => Ok(vec![start]),
            _ => Ok((0..count)
                .map(|i| {
                    if i == count - 1 {
                        stop
                    } else {
                        start + (stop - start) * i as f64 / (count - 1) as f64
                    }
                })
                .collect()),
        };
    }
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| bad("not a number")))
        .collect()
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("`{v}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_topologies(s: &str) -> Result<Vec<Topology>, CliError> {
    // `general:a,b` contains a comma, so split on commas not followed by a
    // digit-only continuation of a general spec.
    let mut out = Vec::new();
    let mut pending: Option<String> = None;
    for part in s.split(',') {
        if let Some(p) = pending.take() {
            out.push(format!("{p},{part}").parse::<Topology>()?);
        } else if part.trim().starts_with("general:") {
            pending = Some(part.to_string());
        } else {
            out.push(part.parse::<Topology>()?);
        }
    }
    if let Some(p) = pending {
        return Err(CliError::Lib(Error::UnknownTopology(p)));
    }
    Ok(out)
}

fn parse_grid(s: &str) -> Result<GridSpec, CliError> {
    let v = parse_float_list(s)?;
    if v.len() != 6 {
        return Err(CliError::Config(format!("grid needs 6 numbers c11,c12,c21,c22,d1,d2, got {}", v.len())));
    }
    Ok(GridSpec::new(v[0], v[1], v[2], v[3], v[4], v[5])?)
}

/// Build configuration from flags and the environment cap override.
pub fn build_config(oversample: usize) -> Result<BuildConfig, CliError> {
    if oversample == 0 {
        return Err(CliError::Config("oversample must be at least 1".into()));
    }
    let cap = match std::env::var(MAX_BUILD_DIM_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Config(format!("{MAX_BUILD_DIM_ENV}=`{v}` is not an integer")))?,
        Err(_) => DEFAULT_MAX_BUILD_DIM,
    };
    Ok(BuildConfig {
        oversample,
        max_build_dim: cap,
    })
}

fn execute(cfg: RunConfig) -> Result<(), CliError> {
    match cfg.command {
        Command::GroundSweep { topology, dims, common } => {
            let t = ground_sweep(
                &parse_topologies(&topology)?,
                &parse_usize_list(&dims)?,
                &build_config(common.oversample)?,
            )?;
            io::emit(common.output.as_deref(), &t.to_csv_string())
        }
        Command::Wigner {
            topology,
            dims,
            extent,
            resolution,
            common,
        } => {
            let t = wigner_grid(
                topology.parse()?,
                dims,
                extent,
                resolution,
                &build_config(common.oversample)?,
            )?;
            io::emit(common.output.as_deref(), &t.to_csv_string())
        }
        Command::FidelitySweep { g, fidelity_grid, common } => {
            let t = fidelity_sweep(&parse_float_list(&g)?, &parse_float_list(&fidelity_grid)?)?;
            io::emit(common.output.as_deref(), &t.to_csv_string())
        }
        Command::ChannelSweep { eta, nbar, xi_in, common } => {
            let t = channel_sweep(&parse_float_list(&eta)?, nbar, &parse_float_list(&xi_in)?)?;
            io::emit(common.output.as_deref(), &t.to_csv_string())
        }
        Command::PeaksSweep { g, smax, topology, common } => {
            let top: Topology = topology.parse()?;
            let a = match top {
                Topology::S0 => (std::f64::consts::PI / 2.0).sqrt(),
                Topology::Q0 => std::f64::consts::PI.sqrt(),
                other => {
                    return Err(CliError::Lib(Error::UnsupportedGrid(format!(
                        "peaks-sweep supports s0 and q0, got {other}"
                    ))))
                }
            };
            let t = peaks_sweep(
                &parse_float_list(&g)?,
                &parse_usize_list(&smax)?,
                &preset_grid(top)?,
                a,
            )?;
            io::emit(common.output.as_deref(), &t.to_csv_string())
        }
        Command::Synthesize {
            topology,
            dims,
            angles,
            samples,
            seed,
            smax,
            common,
        } => {
            let source = if topology == "vacuum" {
                SampleSource::Vacuum
            } else if let Some(g) = topology.strip_prefix("approx:") {
                let g: f64 = g.parse().map_err(|_| CliError::Config(format!("bad g in `{topology}`")))?;
                SampleSource::Approximate { g, s_max: smax, n: dims }
            } else {
                SampleSource::GroundState(topology.parse()?, dims)
            };
            let (s, warnings) = synthesize(
                &source,
                &parse_float_list(&angles)?,
                samples,
                seed,
                &build_config(common.oversample)?,
            )?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            io::emit(common.output.as_deref(), &samples_to_csv(&s))
        }
        Command::Estimate {
            input,
            topology,
            grid,
            optimize,
            gkp_valid,
            restarts,
            angle_tolerance,
            bootstrap,
            seed,
            common,
        } => {
            let samples = read_samples(&input)?;
            let grid = match (topology, grid) {
                (Some(_), Some(_)) => return Err(CliError::Config("give either --topology or --grid".into())),
                (Some(t), None) => Some(preset_grid(t.parse()?)?),
                (None, Some(g)) => Some(parse_grid(&g)?),
                (None, None) => None,
            };
            let opts = EstimateOptions {
                angle_tolerance,
                error_method: if bootstrap > 0 {
                    ErrorMethod::Bootstrap { resamples: bootstrap, seed }
                } else {
                    ErrorMethod::Delta
                },
            };
            let opt = optimize.then_some(OptimizeOptions {
                constrain_gkp_valid: gkp_valid,
                restarts,
                estimate: opts,
            });
            let report = estimate(&samples, grid.as_ref(), opt, &opts)?;
            io::emit(common.output.as_deref(), &report_json(&report))
        }
        Command::Thresholds { topology, common } => {
            let text = thresholds(&preset_grid(topology.parse()?)?).join("\n") + "\n";
            io::emit(common.output.as_deref(), &text)
        }
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
