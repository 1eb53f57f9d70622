//! Channel synthesis: array responses, path loss, rank-one BS-IRS links,
//! IRS-user links, composite BS-user channels and the IRS-free baseline.
//!
//! Channels are kept in factored form (complex gain plus angles) wherever the
//! structure allows, so surfaces with thousands of elements stay cheap. The
//! dense matrices are only built on request for checking.

mod composite;
mod fading;
mod geometry;
mod steering;

pub use composite::{composite_channel, CompositeChannel};
pub use fading::{
    conventional_channel, sample_bs_irs, sample_irs_user, BaselineNormalization, IrsUserChannel,
    IrsUserKind, LinkKind, RankOneChannel,
};
pub use geometry::{
    angles_from_geometry, path_loss_gain, Angles, ArrayOrientation, Node, PathLossModel, Position,
};
pub use steering::{ula_response, upa_response, ArrayGeometry, DEFAULT_SPACING};
