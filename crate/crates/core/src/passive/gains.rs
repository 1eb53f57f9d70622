use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::association::Association;
use crate::channel::{Angles, ArrayGeometry, IrsUserChannel, RankOneChannel};
use crate::error::{invalid, Error, Result};
use crate::{CMatrix, CVector};

// rem_euclid can round up to exactly 2pi for tiny negative inputs
fn wrap_phase(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Per-surface phase shifts; `phases[l][m]` is element `m` of IRS `l`, in
/// the row-major element order of the UPA response.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig {
    phases: Vec<Vec<f64>>,
}

impl PhaseConfig {
    /// Phases are reduced into `[0, 2pi)`.
    pub fn new(phases: Vec<Vec<f64>>) -> Result<Self> {
        let m = phases.first().map(Vec::len).unwrap_or(0);
        if phases.iter().any(|p| p.len() != m) {
            return Err(invalid("every IRS must have the same element count"));
        }
        if phases.iter().flatten().any(|t| !t.is_finite()) {
            return Err(invalid("phase shifts must be finite"));
        }
        let phases = phases
            .into_iter()
            .map(|p| p.into_iter().map(wrap_phase).collect())
            .collect();
        Ok(Self { phases })
    }

    pub fn irs_count(&self) -> usize {
        self.phases.len()
    }

    pub fn elements(&self) -> usize {
        self.phases.first().map(Vec::len).unwrap_or(0)
    }

    pub fn phases(&self, l: usize) -> &[f64] {
        &self.phases[l]
    }

    /// Diagonal of the reflection matrix of IRS `l`.
    pub fn reflection(&self, l: usize) -> CVector {
        CVector::from_iterator(
            self.phases[l].len(),
            self.phases[l].iter().map(|&t| Complex64::from_polar(1.0, t)),
        )
    }
}

/// L x K matrix of maximum achievable gain magnitudes `|w*_{l,k}|`.
#[derive(Debug, Clone, PartialEq)]
pub struct GainMatrix {
    entries: DMatrix<f64>,
}

impl GainMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if entries.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(invalid("gain magnitudes must be finite and nonnegative"));
        }
        Ok(Self { entries })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let l = rows.len();
        let k = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != k) {
            return Err(invalid("ragged gain matrix"));
        }
        Self::new(DMatrix::from_fn(l, k, |i, j| rows[i][j]))
    }

    pub fn irs_count(&self) -> usize {
        self.entries.nrows()
    }

    pub fn users(&self) -> usize {
        self.entries.ncols()
    }

    pub fn get(&self, l: usize, k: usize) -> f64 {
        self.entries[(l, k)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// Phases that align every reflected component of `h` with the IRS steering
/// vector `a_r`: `theta_m = arg h(m) - arg a_r(m)` mod 2pi. Elements with a
/// zero coefficient get phase 0.
pub fn optimal_phases(link: &IrsUserChannel, irs_steering: &CVector) -> Result<Vec<f64>> {
    let h = &link.coefficients;
    if h.len() != irs_steering.len() {
        return Err(invalid(format!(
            "channel has {} elements but steering vector has {}",
            h.len(),
            irs_steering.len()
        )));
    }
    Ok(h.iter()
        .zip(irs_steering.iter())
        .map(|(hm, am)| {
            if *hm == Complex64::new(0.0, 0.0) {
                0.0
            } else {
                wrap_phase(hm.arg() - am.arg())
            }
        })
        .collect())
}

/// Passive beamforming gain `w = conj(alpha) a_r^H Phi^H h / sqrt(M)`.
pub fn passive_gain(
    phases: &[f64],
    alpha: Complex64,
    irs_steering: &CVector,
    h: &CVector,
) -> Result<Complex64> {
    let m = h.len();
    if phases.len() != m || irs_steering.len() != m {
        return Err(invalid("phase, steering and channel lengths differ"));
    }
    let sum: Complex64 = phases
        .iter()
        .zip(irs_steering.iter().zip(h.iter()))
        .map(|(&t, (a, hm))| a.conj() * Complex64::from_polar(1.0, -t) * hm)
        .sum();
    Ok(alpha.conj() * sum / (m as f64).sqrt())
}

fn check_links(
    arrays: &ArrayGeometry,
    bs_irs: &[RankOneChannel],
    irs_user: &[Vec<IrsUserChannel>],
) -> Result<(usize, usize)> {
    let l = bs_irs.len();
    if l == 0 {
        return Err(invalid("at least one IRS is required"));
    }
    if irs_user.len() != l {
        return Err(invalid(format!(
            "{l} BS-IRS links but {} rows of IRS-user links",
            irs_user.len()
        )));
    }
    let k = irs_user[0].len();
    let m = arrays.irs_elements();
    for row in irs_user {
        if row.len() != k {
            return Err(invalid("every IRS needs a link to every user"));
        }
        if row.iter().any(|h| h.elements() != m) {
            return Err(invalid(format!("IRS-user links must have {m} elements")));
        }
    }
    Ok((l, k))
}

/// Realized gains `w_{l,k}` for a phase configuration, as an L x K matrix.
pub fn realized_gains(
    arrays: &ArrayGeometry,
    bs_irs: &[RankOneChannel],
    irs_user: &[Vec<IrsUserChannel>],
    phases: &PhaseConfig,
) -> Result<CMatrix> {
    let (l_count, k_count) = check_links(arrays, bs_irs, irs_user)?;
    if phases.irs_count() != l_count || phases.elements() != arrays.irs_elements() {
        return Err(invalid(format!(
            "phase configuration is {}x{}, expected {}x{}",
            phases.irs_count(),
            phases.elements(),
            l_count,
            arrays.irs_elements()
        )));
    }
    let mut w = CMatrix::zeros(l_count, k_count);
    for (l, g) in bs_irs.iter().enumerate() {
        let ar = g.irs_response(arrays);
        for k in 0..k_count {
            w[(l, k)] = passive_gain(phases.phases(l), g.gain, &ar, &irs_user[l][k].coefficients)?;
        }
    }
    Ok(w)
}

/// `|w*_{l,k}| = |alpha_l| / M * sum_m |h_{l,k}(m)|`.
pub fn max_gain_matrix(
    bs_irs: &[RankOneChannel],
    irs_user: &[Vec<IrsUserChannel>],
) -> Result<GainMatrix> {
    let l_count = bs_irs.len();
    if irs_user.len() != l_count || l_count == 0 {
        return Err(invalid("need one row of IRS-user links per BS-IRS link"));
    }
    let k_count = irs_user[0].len();
    if irs_user.iter().any(|r| r.len() != k_count) {
        return Err(invalid("every IRS needs a link to every user"));
    }
    GainMatrix::new(DMatrix::from_fn(l_count, k_count, |l, k| {
        let h = &irs_user[l][k].coefficients;
        if h.is_empty() {
            return 0.0;
        }
        let sum: f64 = h.iter().map(|c| c.norm()).sum();
        bs_irs[l].gain.norm() * sum / h.len() as f64
    }))
}

// sinc(M x) / sinc(x) = sin(M x) / (M sin x), with the removable
// singularities at multiples of pi taken as magnitude 1.
fn dirichlet_ratio(x: f64, m: usize) -> f64 {
    let s = x.sin();
    if s.abs() < 1e-12 {
        return 1.0;
    }
    ((m as f64 * x).sin() / (m as f64 * s)).abs()
}

/// Closed-form `|w_{l,k'}|` for a LOS surface whose phases are tuned to the
/// `serving` direction, evaluated towards the `victim` direction.
///
/// Only the departure directions matter for the magnitude; the arrival
/// direction of the BS signal cancels.
pub fn aic_cross_gain_los(
    alpha: Complex64,
    victim_gain: Complex64,
    serving: &Angles,
    victim: &Angles,
    rows: usize,
    cols: usize,
    spacing: f64,
) -> f64 {
    let delta = victim.elevation.cos() * victim.azimuth.sin()
        - serving.elevation.cos() * serving.azimuth.sin();
    let gamma = victim.elevation.sin() - serving.elevation.sin();
    let x = PI * spacing * delta;
    let y = PI * spacing * gamma;
    (alpha * victim_gain).norm() * dirichlet_ratio(x, rows) * dirichlet_ratio(y, cols)
}

/// Tunes every IRS to the user it is assigned to.
pub fn apply_association(
    assoc: &Association,
    arrays: &ArrayGeometry,
    bs_irs: &[RankOneChannel],
    irs_user: &[Vec<IrsUserChannel>],
) -> Result<PhaseConfig> {
    let (l_count, k_count) = check_links(arrays, bs_irs, irs_user)?;
    if assoc.irs_count() != l_count || assoc.users() != k_count {
        return Err(invalid("association does not match the channel set"));
    }
    let phases = bs_irs
        .iter()
        .enumerate()
        .map(|(l, g)| optimal_phases(&irs_user[l][assoc.serving(l)], &g.irs_response(arrays)))
        .collect::<Result<Vec<_>>>()?;
    PhaseConfig::new(phases)
}

/// SINR predicted when each surface only couples to its assigned user:
/// `P N M^2 / sigma^2 / sum_k (sum_{l -> k} |w*_{l,k}|^2)^-1`.
///
/// For LOS links `|w*_{l,k}| = |alpha_l beta_{l,k}|`.
pub fn theoretical_min_sinr(
    assoc: &Association,
    gains: &GainMatrix,
    power: f64,
    antennas: usize,
    elements: usize,
    noise: f64,
) -> Result<f64> {
    if assoc.irs_count() != gains.irs_count() || assoc.users() != gains.users() {
        return Err(invalid("association does not match the gain matrix"));
    }
    if !(power > 0.0 && noise > 0.0) {
        return Err(invalid("power and noise must be positive"));
    }
    let mut inverse_sum = 0.0;
    for k in 0..assoc.users() {
        let served: f64 = assoc
            .served_by(k)
            .map(|l| gains.get(l, k).powi(2))
            .sum();
        if served <= 0.0 {
            return Err(Error::Infeasible(format!("user {k} is not served by any IRS")));
        }
        inverse_sum += 1.0 / served;
    }
    let m = elements as f64;
    Ok(power * antennas as f64 * m * m / noise / inverse_sum)
}
