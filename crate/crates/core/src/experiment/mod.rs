//! Scenarios, seeded Monte-Carlo trials and parameter sweeps.
//!
//! Every trial draws its channels from rngs derived from
//! `(master_seed, trial_index)` alone (see [`trial_rng`]), so sweeps are
//! paired across sweep values and the output never depends on the number of
//! worker threads.

mod config;
mod scenario;
mod sweep;
mod trial;

pub use config::{
    load_config, parse_config, parse_methods, write_config, Geometry, Method, PowerLevel, ScenarioConfig,
    UserPlacement,
};
pub use scenario::{build_setup1, build_setup2, Setup};
pub use sweep::{sweep, write_csv, SweepResult, SweepRow, SweepVariable, CSV_HEADER};
pub use trial::{run_trial, trial_rng, MethodOutcome, RngStream, TrialResult};

/// `10 log10(x)`.
pub fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// dBm to watts: `10^((dBm - 30) / 10)`.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}
