use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::active::{fixed_point_q, per_user_sinr, power_alloc, precoders};
use crate::channel::{
    composite_channel, conventional_channel, sample_bs_irs, sample_irs_user, ArrayGeometry,
    CompositeChannel, IrsUserChannel, RankOneChannel,
};
use crate::error::{Error, Result};
use crate::passive::{
    apply_association, associate_exhaustive, associate_greedy, max_gain_matrix,
    theoretical_min_sinr, Association, GainMatrix,
};

use super::config::{Method, ScenarioConfig};
use super::to_db;

/// Independent random streams of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RngStream {
    /// User offsets, BS-IRS gains and IRS-user links, in that order.
    Irs = 0,
    /// Multipath channels of the IRS-free baseline.
    Baseline = 1,
}

/// ChaCha20 keyed by `seed_from_u64(master_seed)` on stream
/// `2 * trial_index + stream`.
pub fn trial_rng(master_seed: u64, trial_index: u64, stream: RngStream) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index.wrapping_mul(2).wrapping_add(stream as u64));
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodOutcome {
    pub method: Method,
    pub min_sinr: f64,
    pub min_sinr_db: f64,
    /// Serving user per IRS, for the IRS-assisted methods.
    pub association: Option<Vec<usize>>,
    /// Fixed-point iterations; `None` for the closed-form prediction.
    pub iterations: Option<usize>,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct TrialResult {
    pub trial_index: u64,
    pub outcomes: Vec<MethodOutcome>,
    pub elapsed: Duration,
}

impl TrialResult {
    pub fn outcome(&self, method: Method) -> Option<&MethodOutcome> {
        self.outcomes.iter().find(|o| o.method == method)
    }

    pub fn min_sinr_db(&self, method: Method) -> Option<f64> {
        self.outcome(method).map(|o| o.min_sinr_db)
    }
}

struct TrialChannels {
    bs_irs: Vec<RankOneChannel>,
    irs_user: Vec<Vec<IrsUserChannel>>,
    max_gains: GainMatrix,
}

fn draw_irs_channels(
    config: &ScenarioConfig,
    arrays: &ArrayGeometry,
    trial_index: u64,
) -> Result<TrialChannels> {
    let g = &config.geometry;
    let model = config.los_model()?;
    let mut rng = trial_rng(config.master_seed, trial_index, RngStream::Irs);
    let users: Vec<_> = g
        .users
        .iter()
        .map(|u| {
            let offset = rng.random_range(0.0..=u.y_max);
            u.position(config.user_distance, offset)
        })
        .collect();
    let bs_irs = g
        .irs
        .iter()
        .map(|node| sample_bs_irs(&g.bs, node, &model, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let irs_user = g
        .irs
        .iter()
        .map(|node| {
            users
                .iter()
                .map(|u| sample_irs_user(node, u, arrays, &model, config.link_kind, &mut rng))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let max_gains = max_gain_matrix(&bs_irs, &irs_user)?;
    Ok(TrialChannels {
        bs_irs,
        irs_user,
        max_gains,
    })
}

fn user_positions_for_baseline(config: &ScenarioConfig, trial_index: u64) -> Vec<crate::channel::Position> {
    // same offsets as the IRS stream so both systems see identical users
    let mut rng = trial_rng(config.master_seed, trial_index, RngStream::Irs);
    config
        .geometry
        .users
        .iter()
        .map(|u| {
            let offset = rng.random_range(0.0..=u.y_max);
            u.position(config.user_distance, offset)
        })
        .collect()
}

// Converged only if the fixed point converged and the balancing system has
// a positive solution; otherwise the fixed-point SINR is reported.
fn active_outcome(
    method: Method,
    h: &CompositeChannel,
    config: &ScenarioConfig,
    association: Option<Vec<usize>>,
) -> Result<MethodOutcome> {
    let (power, noise) = (config.tx_power.watts(), config.noise_power.watts());
    let fp = fixed_point_q(h, power, noise, &config.solver)?;
    let f = precoders(h, &fp.dual_powers, noise)?;
    let (min_sinr, balanced) = match power_alloc(h, &f, fp.balanced_sinr, noise) {
        Ok(p) => {
            let sinr = per_user_sinr(h, &f, &p, noise)?;
            (sinr.into_iter().fold(f64::INFINITY, f64::min), true)
        }
        Err(Error::InfeasibleBalancing(_)) => (fp.balanced_sinr, false),
        Err(e) => return Err(e),
    };
    Ok(MethodOutcome {
        method,
        min_sinr,
        min_sinr_db: to_db(min_sinr),
        association,
        iterations: Some(fp.iterations),
        converged: fp.converged && balanced,
    })
}

fn proposed_outcome(
    method: Method,
    assoc: &Association,
    channels: &TrialChannels,
    arrays: &ArrayGeometry,
    config: &ScenarioConfig,
) -> Result<MethodOutcome> {
    let phases = apply_association(assoc, arrays, &channels.bs_irs, &channels.irs_user)?;
    let h = composite_channel(arrays, &channels.bs_irs, &channels.irs_user, &phases)?;
    active_outcome(method, &h, config, Some(assoc.assignment().to_vec()))
}

/// Runs one Monte-Carlo trial of every enabled method on freshly drawn
/// channels.
///
/// The theoretical prediction uses the exhaustive association, falling back
/// to the greedy one when the assignment space is too large to enumerate.
pub fn run_trial(config: &ScenarioConfig, trial_index: u64) -> Result<TrialResult> {
    config.validate()?;
    let start = Instant::now();
    let arrays = config.arrays()?;
    let needs_irs = config.methods.iter().any(Method::uses_irs);
    let channels = if needs_irs {
        Some(draw_irs_channels(config, &arrays, trial_index)?)
    } else {
        None
    };

    let mut exhaustive: Option<Association> = None;
    let mut greedy: Option<Association> = None;
    let mut outcomes = Vec::with_capacity(config.methods.len());
    for &method in &config.methods {
        let outcome = match method {
            Method::Exhaustive | Method::Greedy | Method::Theoretical => {
                let ch = channels.as_ref().expect("IRS channels drawn for IRS methods");
                let assoc = match method {
                    Method::Greedy => greedy
                        .get_or_insert(associate_greedy(&ch.max_gains)?)
                        .clone(),
                    Method::Exhaustive => exhaustive
                        .get_or_insert(associate_exhaustive(&ch.max_gains)?.0)
                        .clone(),
                    _ => match &exhaustive {
                        Some(a) => a.clone(),
                        None => match associate_exhaustive(&ch.max_gains) {
                            Ok((a, _)) => exhaustive.insert(a).clone(),
                            Err(Error::ExhaustiveLimit { .. }) => associate_greedy(&ch.max_gains)?,
                            Err(e) => return Err(e),
                        },
                    },
                };
                if method == Method::Theoretical {
                    let sinr = theoretical_min_sinr(
                        &assoc,
                        &ch.max_gains,
                        config.tx_power.watts(),
                        config.bs_antennas,
                        config.irs_elements(),
                        config.noise_power.watts(),
                    )?;
                    MethodOutcome {
                        method,
                        min_sinr: sinr,
                        min_sinr_db: to_db(sinr),
                        association: Some(assoc.assignment().to_vec()),
                        iterations: None,
                        converged: true,
                    }
                } else {
                    proposed_outcome(method, &assoc, ch, &arrays, config)?
                }
            }
            Method::Conventional => {
                let model = config.nlos_model()?;
                let mut rng = trial_rng(config.master_seed, trial_index, RngStream::Baseline);
                let bs = config.geometry.bs.position;
                let columns = user_positions_for_baseline(config, trial_index)
                    .iter()
                    .map(|u| {
                        let variance = model.gain((u - bs).norm())?;
                        conventional_channel(
                            config.bs_antennas,
                            config.baseline_paths,
                            variance,
                            config.baseline_normalization,
                            config.element_spacing,
                            &mut rng,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                let h = CompositeChannel::from_columns(&columns)?;
                active_outcome(method, &h, config, None)?
            }
        };
        outcomes.push(outcome);
    }
    Ok(TrialResult {
        trial_index,
        outcomes,
        elapsed: start.elapsed(),
    })
}
