//! Passive beamforming: phase alignment, beamforming gains, the closed-form
//! cross gain of a tuned LOS surface, IRS-user association, and the SINR
//! predicted when every surface is interference-free towards all users it
//! does not serve.

mod association;
mod gains;

pub use association::{
    associate_exhaustive, associate_greedy, Association, EXHAUSTIVE_LIMIT,
};
pub use gains::{
    aic_cross_gain_los, apply_association, max_gain_matrix, optimal_phases, passive_gain,
    realized_gains, theoretical_min_sinr, GainMatrix, PhaseConfig,
};
