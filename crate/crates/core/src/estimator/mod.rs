//! Estimation of GKP squeezing and grid squeezing from homodyne samples.

mod estimate;
mod nelder_mead;
mod optimize;
mod samples;

pub use estimate::{
    classify_estimate, estimate_displacement_mean, estimate_grid_squeezing, estimate_xi, AngleCount,
    DisplacementMean, ErrorMethod, EstimateOptions, GridSqueezingEstimate, SqueezingReport, CLASSIFICATION_SIGMAS,
    DEFAULT_ANGLE_TOLERANCE,
};
pub use optimize::{optimize_xi, OptimizeOptions, OptimizedXi, R_LIMIT};
pub use samples::{synthesize_samples, QuadratureSamples, SampleRecord, Synthesized};
