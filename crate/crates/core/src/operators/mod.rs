//! GKP-squeezing operators in a truncated Fock basis.

mod build;
mod channel;
mod grid;

pub use build::{
    build_operator, expectation, ground_state, sin2_expectation, GroundState, StateRef,
    TruncatedOperator,
};
pub use channel::{apply_channel, ChannelConfig, ChannelOutput, ChannelParams};
pub use grid::{preset_grid, transform_grid, GridRow, GridSpec, Topology};
