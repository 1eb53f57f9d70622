//! Max-min SINR active beamforming for fixed composite channels.
//!
//! The dual (virtual uplink) powers `q` are found by the fixed-point
//! iteration `q_k <- P * g_k / sum_i g_i` with
//! `g_k = 1 / h_k^H (sum_{i != k} q_i h_i h_i^H + sigma^2 I)^-1 h_k`.
//! MMSE-type precoders follow in closed form from `q`, and the downlink
//! powers that equalize every SINR at the balanced level come from a K x K
//! linear system.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::CompositeChannel;
use crate::error::{invalid, Error, Result};
use crate::linalg::{solve_dense, solve_hpd};
use crate::{CMatrix, CVector};

/// Starting point of the fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Initialization {
    /// `q = P/K` for every user.
    #[default]
    Uniform,
    /// Uniformly random positive start normalized to `P`, seeded.
    Random(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Relative fixed-point residual at which the iteration stops.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub initialization: Initialization,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 500,
            initialization: Initialization::Uniform,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(invalid("solver tolerance must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(invalid("solver needs at least one iteration"));
        }
        Ok(())
    }
}

/// Result of the dual-power iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub dual_powers: Vec<f64>,
    pub balanced_sinr: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `max_k |q_k - tau / g_k^-1| / q_k` at the returned iterate.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeamformingSolution {
    /// N x K, unit-norm columns.
    pub precoders: CMatrix,
    pub powers: Vec<f64>,
    pub dual_powers: Vec<f64>,
    pub balanced_sinr: f64,
    pub iterations: usize,
    pub converged: bool,
    pub residual: f64,
}

fn check_inputs(h: &CompositeChannel, power: f64, noise: f64) -> Result<()> {
    if h.users() == 0 || h.antennas() == 0 {
        return Err(invalid("composite channel is empty"));
    }
    if !(power > 0.0 && power.is_finite()) {
        return Err(invalid("total power must be positive"));
    }
    if !(noise > 0.0 && noise.is_finite()) {
        return Err(invalid("noise power must be positive"));
    }
    for k in 0..h.users() {
        let norm = h.matrix().column(k).norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::DegenerateChannel { user: k });
        }
    }
    Ok(())
}

// Channels divided by sigma so the regularized matrix is I + sum q h h^H.
fn whitened(h: &CompositeChannel, noise: f64) -> CMatrix {
    h.matrix() / Complex64::from(noise.sqrt())
}

fn solve_regularized(hs: &CMatrix, q: &[f64], k: usize) -> Result<CVector> {
    let n = hs.nrows();
    let mut r = CMatrix::identity(n, n);
    for (i, &qi) in q.iter().enumerate() {
        if i == k {
            continue;
        }
        let col = hs.column(i);
        r += (&col * col.adjoint()) * Complex64::from(qi);
    }
    let rhs = hs.column(k).into_owned();
    solve_hpd(r, &rhs).ok_or_else(|| {
        Error::InfeasibleBalancing(format!("interference matrix of user {k} is not positive definite"))
    })
}

/// `h_k^H (sum_{i != k} q_i h_i h_i^H + sigma^2 I)^-1 h_k` for every user.
pub fn quadratic_forms(h: &CompositeChannel, q: &[f64], noise: f64) -> Result<Vec<f64>> {
    if q.len() != h.users() {
        return Err(invalid("one dual power per user is required"));
    }
    if !(noise > 0.0) {
        return Err(invalid("noise power must be positive"));
    }
    let hs = whitened(h, noise);
    (0..h.users())
        .map(|k| {
            let x = solve_regularized(&hs, q, k)?;
            Ok(hs.column(k).dotc(&x).re)
        })
        .collect()
}

/// Woodbury-reduced form of the quadratic form for channels
/// `h_k = sqrt(N M^2) B w_k` with orthonormal steering columns `B`:
/// `w_k^H (I - W_k (s Q_k^-1 + W_k^H W_k)^-1 W_k^H) w_k / s`, where
/// `s = sigma^2 / (N M^2)`, `W_k` drops column `k` of `gains` (L x K) and
/// `Q_k` drops entry `k` of `q`.
pub fn reduced_quadratic_form(gains: &CMatrix, q: &[f64], k: usize, scaled_noise: f64) -> Result<f64> {
    let users = gains.ncols();
    if q.len() != users || k >= users {
        return Err(invalid("dual powers and gain columns disagree"));
    }
    if q.iter().enumerate().any(|(i, &v)| i != k && !(v > 0.0)) {
        return Err(invalid("dual powers must be positive"));
    }
    let wk = gains.column(k).into_owned();
    let others: Vec<usize> = (0..users).filter(|&i| i != k).collect();
    let base = wk.norm_squared();
    if others.is_empty() {
        return Ok(base / scaled_noise);
    }
    let wo = CMatrix::from_columns(&others.iter().map(|&i| gains.column(i)).collect::<Vec<_>>());
    let mut inner = wo.adjoint() * &wo;
    for (j, &i) in others.iter().enumerate() {
        inner[(j, j)] += Complex64::from(scaled_noise / q[i]);
    }
    let proj = wo.adjoint() * &wk;
    let y = solve_hpd(inner, &proj)
        .ok_or_else(|| invalid("reduced interference matrix is not positive definite"))?;
    Ok((base - proj.dotc(&y).re) / scaled_noise)
}

fn initial_dual_powers(k: usize, power: f64, init: Initialization) -> Vec<f64> {
    match init {
        Initialization::Uniform => vec![power / k as f64; k],
        Initialization::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
            let s: f64 = raw.iter().sum();
            raw.into_iter().map(|v| power * v / s).collect()
        }
    }
}

/// Fixed-point iteration for the dual powers `q` and the balanced SINR.
///
/// Stops once the relative residual drops to `settings.tolerance`. When
/// `max_iterations` is exhausted the iterate with the smallest residual is
/// returned with `converged = false`.
pub fn fixed_point_q(
    h: &CompositeChannel,
    power: f64,
    noise: f64,
    settings: &SolverSettings,
) -> Result<FixedPoint> {
    check_inputs(h, power, noise)?;
    settings.validate()?;
    let k = h.users();
    let mut q = initial_dual_powers(k, power, settings.initialization);
    let mut best: Option<FixedPoint> = None;
    for iteration in 1..=settings.max_iterations {
        let quad = quadratic_forms(h, &q, noise)?;
        let inv: Vec<f64> = quad.iter().map(|g| 1.0 / g).collect();
        let tau = power / inv.iter().sum::<f64>();
        let next: Vec<f64> = inv.iter().map(|v| tau * v).collect();
        let residual = q
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs() / a)
            .fold(0.0, f64::max);
        let candidate = FixedPoint {
            dual_powers: q,
            balanced_sinr: tau,
            iterations: iteration,
            converged: residual <= settings.tolerance,
            residual,
        };
        if candidate.converged {
            return Ok(candidate);
        }
        if best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(candidate);
        }
        q = next;
    }
    let mut best = best.expect("at least one iteration ran");
    best.iterations = settings.max_iterations;
    Ok(best)
}

/// Unit-norm precoders `f_k ∝ (sum_{i != k} q_i h_i h_i^H + sigma^2 I)^-1 h_k`.
pub fn precoders(h: &CompositeChannel, q: &[f64], noise: f64) -> Result<CMatrix> {
    if q.len() != h.users() {
        return Err(invalid("one dual power per user is required"));
    }
    if q.iter().any(|v| !(*v > 0.0)) {
        return Err(invalid("dual powers must be positive"));
    }
    check_inputs(h, 1.0, noise)?;
    let hs = whitened(h, noise);
    let cols = (0..h.users())
        .map(|k| {
            let x = solve_regularized(&hs, q, k)?;
            let norm = x.norm();
            Ok(x / Complex64::from(norm))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_columns(&cols))
}

// |h_k^H f_i|^2 for all (k, i)
fn coupling(h: &CompositeChannel, f: &CMatrix) -> DMatrix<f64> {
    (h.matrix().adjoint() * f).map(|c| c.norm_sqr())
}

/// Downlink powers that put every user exactly at `tau`:
/// solves `A p = tau sigma^2 1` with `A_kk = |h_k^H f_k|^2` and
/// `A_ki = -tau |h_k^H f_i|^2`.
pub fn power_alloc(h: &CompositeChannel, f: &CMatrix, tau: f64, noise: f64) -> Result<Vec<f64>> {
    if f.ncols() != h.users() || f.nrows() != h.antennas() {
        return Err(invalid("precoder matrix does not match the channel"));
    }
    if !(tau > 0.0 && noise > 0.0) {
        return Err(invalid("target SINR and noise must be positive"));
    }
    let c = coupling(h, f);
    let k = h.users();
    let a = DMatrix::from_fn(k, k, |r, s| if r == s { c[(r, s)] } else { -tau * c[(r, s)] });
    let b = DVector::from_element(k, tau * noise);
    let p = solve_dense(a, b)
        .ok_or_else(|| Error::InfeasibleBalancing("power balancing system is singular".into()))?;
    if let Some((user, v)) = p.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::InfeasibleBalancing(format!(
            "power of user {user} would be {v:e}; target SINR {tau:e} is not achievable"
        )));
    }
    Ok(p.iter().copied().collect())
}

/// `SINR_k = p_k |h_k^H f_k|^2 / (sum_{i != k} p_i |h_k^H f_i|^2 + sigma^2)`.
pub fn per_user_sinr(h: &CompositeChannel, f: &CMatrix, p: &[f64], noise: f64) -> Result<Vec<f64>> {
    if f.ncols() != h.users() || f.nrows() != h.antennas() || p.len() != h.users() {
        return Err(invalid("precoders, powers and channels disagree in size"));
    }
    let c = coupling(h, f);
    Ok((0..h.users())
        .map(|k| {
            let interference: f64 = (0..h.users())
                .filter(|&i| i != k)
                .map(|i| p[i] * c[(k, i)])
                .sum();
            p[k] * c[(k, k)] / (interference + noise)
        })
        .collect())
}

/// Full active pipeline: dual powers, precoders, then downlink powers.
pub fn solve_active(
    h: &CompositeChannel,
    power: f64,
    noise: f64,
    settings: &SolverSettings,
) -> Result<BeamformingSolution> {
    let fp = fixed_point_q(h, power, noise, settings)?;
    let f = precoders(h, &fp.dual_powers, noise)?;
    let p = power_alloc(h, &f, fp.balanced_sinr, noise)?;
    Ok(BeamformingSolution {
        precoders: f,
        powers: p,
        dual_powers: fp.dual_powers,
        balanced_sinr: fp.balanced_sinr,
        iterations: fp.iterations,
        converged: fp.converged,
        residual: fp.residual,
    })
}

impl BeamformingSolution {
    pub fn sinrs(&self, h: &CompositeChannel, noise: f64) -> Result<Vec<f64>> {
        per_user_sinr(h, &self.precoders, &self.powers, noise)
    }

    pub fn min_sinr(&self, h: &CompositeChannel, noise: f64) -> Result<f64> {
        Ok(self.sinrs(h, noise)?.into_iter().fold(f64::INFINITY, f64::min))
    }
}
