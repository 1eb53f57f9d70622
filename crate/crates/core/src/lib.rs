//! Joint active and passive beamforming for downlinks assisted by several
//! intelligent reflecting surfaces (IRSs).
//!
//! The crate is split into four layers:
//!
//! * [`channel`]: steering vectors, path loss, rank-one BS-IRS channels,
//!   LOS/Rayleigh IRS-user channels, composite BS-user channels and the
//!   IRS-free multipath baseline.
//! * [`active`]: max-min SINR precoding and power allocation for a fixed set
//!   of composite channels (fixed-point iteration on the dual powers).
//! * [`passive`]: phase alignment, passive beamforming gains, the closed-form
//!   cross gain of a tuned LOS surface, and IRS-user association by
//!   exhaustive enumeration or greedy selection.
//! * [`experiment`]: scenarios, seeded Monte-Carlo trials, sweeps, and the
//!   config/CSV formats used by the `irs-sim` binary.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod active;
pub mod channel;
pub mod error;
pub mod experiment;
mod linalg;
pub mod passive;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex column vector used throughout the crate.
pub type CVector = nalgebra::DVector<Complex64>;
/// Complex dense matrix used throughout the crate.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
