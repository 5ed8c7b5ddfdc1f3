//! Closed-form results: bounds, approximate states, grid squeezing,
//! fidelity bounds, decoherence and breeding.

mod approx;
mod bounds;
mod breeding;
mod decoherence;
mod grid_squeezing;

pub use approx::{
    approx_sin2, approximate_state_fock, fidelity_bounds, fidelity_bounds_from_xi, xi_approx_symmetric, xi_finite_superposition,
    ApproxGKPParams,
};
pub use bounds::{
    classical_bound, classify, db, gaussian_bound, grid_classical_bound, grid_gaussian_bound, Classification,
    Thresholds, FT_NECESSARY_XI0, FT_SUFFICIENT_XI0, FT_SYMMETRIC_XI0, GAUSSIAN_BOUND, GRID_FT_DB,
    GRID_FT_VARIANCE,
};
pub use breeding::{breeding_scan_point, breeding_step_xi, BreedingPoint};
pub use decoherence::{
    channel_output_xi, compose_channels, critical_eta, equivalent_variance, scaled_basis_xi, scaled_gamma,
};
pub use grid_squeezing::{
    ft_crossings, grid_squeezing, grid_squeezing_bounds_from_xi, pessimistic_crossing_xi0, symmetric_crossing_xi0,
    xi_from_grid_squeezing, GridSqueezing, GridSqueezingBounds, GridSqueezingPair, GridSqueezingStatus, SquareGrid,
    XiFromGridSqueezing,
};
