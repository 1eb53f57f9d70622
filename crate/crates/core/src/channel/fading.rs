use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::Rng;

use super::geometry::{angles_from_geometry, Angles, Node, PathLossModel, Position};
use super::steering::{ula_response, ArrayGeometry};
use crate::error::{invalid, Result};
use crate::linalg::complex_gaussian;
use crate::{CMatrix, CVector};

/// Rank-one BS-to-IRS channel `sqrt(NM) alpha a_r(aoa) a_t(aod)^H`, kept
/// factored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOneChannel {
    pub gain: Complex64,
    /// Direction of the BS seen from the IRS.
    pub aoa: Angles,
    /// Azimuth of the IRS seen from the BS array.
    pub aod_azimuth: f64,
}

impl RankOneChannel {
    pub fn irs_response(&self, arrays: &ArrayGeometry) -> CVector {
        arrays.irs_response(&self.aoa)
    }

    pub fn bs_response(&self, arrays: &ArrayGeometry) -> CVector {
        arrays.bs_response(self.aod_azimuth)
    }

    /// Dense M x N matrix. Only meant for checks on small arrays.
    pub fn materialize(&self, arrays: &ArrayGeometry) -> CMatrix {
        let n = arrays.bs_antennas() as f64;
        let m = arrays.irs_elements() as f64;
        let ar = self.irs_response(arrays);
        let at = self.bs_response(arrays);
        (ar * at.adjoint()) * (self.gain * (n * m).sqrt())
    }
}

/// Which IRS-user propagation model to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkKind {
    Los,
    Rayleigh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IrsUserKind {
    Los { gain: Complex64, aod: Angles },
    Rayleigh { variance: f64 },
}

/// IRS-to-user channel: one coefficient per reflecting element.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsUserChannel {
    pub coefficients: CVector,
    pub kind: IrsUserKind,
}

impl IrsUserChannel {
    /// LOS channel `beta sqrt(M) a_r(aod)`.
    pub fn los(gain: Complex64, aod: Angles, arrays: &ArrayGeometry) -> Self {
        let m = arrays.irs_elements() as f64;
        let coefficients = arrays.irs_response(&aod) * (gain * m.sqrt());
        Self {
            coefficients,
            kind: IrsUserKind::Los { gain, aod },
        }
    }

    pub fn zeros(elements: usize) -> Self {
        Self {
            coefficients: CVector::zeros(elements),
            kind: IrsUserKind::Rayleigh { variance: 0.0 },
        }
    }

    pub fn elements(&self) -> usize {
        self.coefficients.len()
    }
}

/// Draws the BS-IRS link: `alpha ~ CN(0, kappa)` with `kappa` from the
/// path-loss model, angles from the node geometry.
pub fn sample_bs_irs<R: Rng + ?Sized>(
    bs: &Node,
    irs: &Node,
    model: &PathLossModel,
    rng: &mut R,
) -> Result<RankOneChannel> {
    let aod = angles_from_geometry(&bs.position, &irs.position, &bs.orientation)?;
    let aoa = angles_from_geometry(&irs.position, &bs.position, &irs.orientation)?;
    let kappa = model.gain((irs.position - bs.position).norm())?;
    Ok(RankOneChannel {
        gain: complex_gaussian(rng, kappa),
        aoa,
        aod_azimuth: aod.azimuth,
    })
}

/// Draws the IRS-user link.
///
/// LOS: `beta ~ CN(0, rho)` along the geometric departure direction.
/// Rayleigh: i.i.d. `CN(0, zeta)` entries with `zeta` taken from the same
/// path-loss model.
pub fn sample_irs_user<R: Rng + ?Sized>(
    irs: &Node,
    user: &Position,
    arrays: &ArrayGeometry,
    model: &PathLossModel,
    kind: LinkKind,
    rng: &mut R,
) -> Result<IrsUserChannel> {
    let aod = angles_from_geometry(&irs.position, user, &irs.orientation)?;
    let power = model.gain((user - irs.position).norm())?;
    Ok(match kind {
        LinkKind::Los => IrsUserChannel::los(complex_gaussian(rng, power), aod, arrays),
        LinkKind::Rayleigh => IrsUserChannel {
            coefficients: CVector::from_fn(arrays.irs_elements(), |_, _| {
                complex_gaussian(rng, power)
            }),
            kind: IrsUserKind::Rayleigh { variance: power },
        },
    })
}

/// Variance convention for the per-path gains of the IRS-free baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaselineNormalization {
    /// Every path has variance `kappa`, so the mean power grows with the
    /// path count.
    #[default]
    PerPath,
    /// Every path has variance `kappa / paths`.
    Total,
}

/// Multipath BS-user channel `sqrt(N) sum_l alpha_l a_t(psi_l)` for the
/// system without surfaces. `psi_l` is uniform on [-pi/2, pi/2] and
/// `alpha_l ~ CN(0, variance)` per `normalization`.
///
/// All path parameters are drawn before the array size is used, so the same
/// rng state gives the same paths for any antenna count.
pub fn conventional_channel<R: Rng + ?Sized>(
    antennas: usize,
    paths: usize,
    variance: f64,
    normalization: BaselineNormalization,
    spacing: f64,
    rng: &mut R,
) -> Result<CVector> {
    if paths == 0 {
        return Err(invalid("baseline needs at least one path"));
    }
    if antennas == 0 {
        return Err(invalid("BS must have at least one antenna"));
    }
    let per_path = match normalization {
        BaselineNormalization::PerPath => variance,
        BaselineNormalization::Total => variance / paths as f64,
    };
    let draws: Vec<(Complex64, f64)> = (0..paths)
        .map(|_| {
            let gain = complex_gaussian(rng, per_path);
            let psi = rng.random_range(-FRAC_PI_2..=FRAC_PI_2);
            (gain, psi)
        })
        .collect();
    let mut h = CVector::zeros(antennas);
    for (gain, psi) in draws {
        h += ula_response(psi, antennas, spacing)? * gain;
    }
    Ok(h * Complex64::from((antennas as f64).sqrt()))
}
