use num_complex::Complex64;

use super::fading::{IrsUserChannel, RankOneChannel};
use super::steering::ArrayGeometry;
use crate::error::{invalid, Result};
use crate::passive::{realized_gains, PhaseConfig};
use crate::{CMatrix, CVector};

/// Effective BS-to-user channels, one column of length N per user.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeChannel {
    matrix: CMatrix,
}

impl CompositeChannel {
    pub fn from_matrix(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn from_columns(columns: &[CVector]) -> Result<Self> {
        let n = columns
            .first()
            .ok_or_else(|| invalid("at least one user channel is required"))?
            .len();
        if columns.iter().any(|c| c.len() != n) {
            return Err(invalid("user channels must share one length"));
        }
        Ok(Self {
            matrix: CMatrix::from_columns(columns),
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn antennas(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn users(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn user(&self, k: usize) -> CVector {
        self.matrix.column(k).into_owned()
    }
}

/// Composite channels `h_k = sum_l G_l^H Phi_l^H h_{l,k}`.
///
/// Evaluated in factored form as `sqrt(N M^2) sum_l a_t(psi_l) w_{l,k}`, so
/// no M x N matrix is ever formed. `irs_user[l][k]` is the link from IRS `l`
/// to user `k`.
pub fn composite_channel(
    arrays: &ArrayGeometry,
    bs_irs: &[RankOneChannel],
    irs_user: &[Vec<IrsUserChannel>],
    phases: &PhaseConfig,
) -> Result<CompositeChannel> {
    let gains = realized_gains(arrays, bs_irs, irs_user, phases)?;
    let n = arrays.bs_antennas();
    let m = arrays.irs_elements() as f64;
    let users = gains.ncols();
    if users == 0 {
        return Err(invalid("at least one user is required"));
    }
    let steering = CMatrix::from_columns(
        &bs_irs
            .iter()
            .map(|g| g.bs_response(arrays))
            .collect::<Vec<_>>(),
    );
    let scale = Complex64::from((n as f64).sqrt() * m);
    Ok(CompositeChannel {
        matrix: steering * gains * scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{
        sample_bs_irs, sample_irs_user, ArrayOrientation, LinkKind, Node, PathLossModel, Position,
    };
    use crate::passive::optimal_phases;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    struct Instance {
        arrays: ArrayGeometry,
        bs_irs: Vec<RankOneChannel>,
        irs_user: Vec<Vec<IrsUserChannel>>,
    }

    fn instance(kind: LinkKind, seed: u64) -> Instance {
        let arrays = ArrayGeometry::new(8, 4, 4, 0.5).unwrap();
        let model = PathLossModel::new(-30.0, 1.0, 2.0).unwrap();
        let bs = Node::new(Position::new(30.0, 0.0, 0.3), ArrayOrientation::facing_neg_x());
        let irs = [
            Node::new(Position::new(0.0, -5.0, 0.3), ArrayOrientation::facing_pos_x()),
            Node::new(Position::new(0.0, 5.0, 0.3), ArrayOrientation::facing_pos_x()),
        ];
        let users = [Position::new(5.0, -3.0, 0.0), Position::new(5.0, 7.0, 0.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bs_irs = irs
            .iter()
            .map(|n| sample_bs_irs(&bs, n, &model, &mut rng).unwrap())
            .collect();
        let irs_user = irs
            .iter()
            .map(|n| {
                users
                    .iter()
                    .map(|u| sample_irs_user(n, u, &arrays, &model, kind, &mut rng).unwrap())
                    .collect()
            })
            .collect();
        Instance {
            arrays,
            bs_irs,
            irs_user,
        }
    }

    fn random_phases(l: usize, m: usize, seed: u64) -> PhaseConfig {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        PhaseConfig::new(
            (0..l)
                .map(|_| (0..m).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect())
                .collect(),
        )
        .unwrap()
    }

    // direct sum of G_l^H Phi_l^H h_{l,k} with materialized matrices
    fn dense_composite(inst: &Instance, phases: &PhaseConfig) -> CMatrix {
        let n = inst.arrays.bs_antennas();
        let k_users = inst.irs_user[0].len();
        let mut out = CMatrix::zeros(n, k_users);
        for (l, g) in inst.bs_irs.iter().enumerate() {
            let gm = g.materialize(&inst.arrays);
            let phi_h = CMatrix::from_diagonal(&phases.reflection(l).map(|c| c.conj()));
            for k in 0..k_users {
                let col = gm.adjoint() * (&phi_h * &inst.irs_user[l][k].coefficients);
                let mut dst = out.column_mut(k);
                dst += col;
            }
        }
        out
    }

    #[test]
    fn factored_matches_dense_evaluation() {
        for (kind, seed) in [(LinkKind::Los, 1), (LinkKind::Rayleigh, 2)] {
            let inst = instance(kind, seed);
            let phases = random_phases(2, 16, seed + 10);
            let h = composite_channel(&inst.arrays, &inst.bs_irs, &inst.irs_user, &phases).unwrap();
            let dense = dense_composite(&inst, &phases);
            let err = (h.matrix() - &dense).norm() / dense.norm();
            assert!(err < 1e-10, "relative error {err}");
        }
    }

    #[test]
    fn identity_phases_with_matched_user_channel() {
        let inst = instance(LinkKind::Los, 4);
        let g = inst.bs_irs[0];
        let ar = g.irs_response(&inst.arrays);
        let link = IrsUserChannel {
            coefficients: ar,
            kind: crate::channel::IrsUserKind::Rayleigh { variance: 1.0 },
        };
        let phases = PhaseConfig::new(vec![vec![0.0; 16]]).unwrap();
        let h = composite_channel(&inst.arrays, &[g], &[vec![link]], &phases).unwrap();
        let expect = g.bs_response(&inst.arrays) * (g.gain.conj() * 128f64.sqrt());
        assert!((h.user(0) - expect).norm() < 1e-12 * h.user(0).norm());
    }

    #[test]
    fn tuned_single_irs_norm() {
        let inst = instance(LinkKind::Los, 5);
        let g = inst.bs_irs[0];
        let link = inst.irs_user[0][0].clone();
        let theta = optimal_phases(&link, &g.irs_response(&inst.arrays)).unwrap();
        let phases = PhaseConfig::new(vec![theta]).unwrap();
        let h = composite_channel(&inst.arrays, &[g], &[vec![link.clone()]], &phases).unwrap();
        let crate::channel::IrsUserKind::Los { gain: beta, .. } = link.kind else {
            unreachable!()
        };
        let expect = 8f64.sqrt() * 16.0 * (g.gain * beta).norm();
        assert!((h.user(0).norm() - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn zero_user_links_give_zero_channel() {
        let inst = instance(LinkKind::Los, 6);
        let zeros = vec![vec![IrsUserChannel::zeros(16); 2]; 2];
        let phases = random_phases(2, 16, 3);
        let h = composite_channel(&inst.arrays, &inst.bs_irs, &zeros, &phases).unwrap();
        assert_eq!(h.matrix().norm(), 0.0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let inst = instance(LinkKind::Los, 7);
        let phases = random_phases(1, 16, 3);
        assert!(composite_channel(&inst.arrays, &inst.bs_irs, &inst.irs_user, &phases).is_err());
        let phases = random_phases(2, 15, 3);
        assert!(composite_channel(&inst.arrays, &inst.bs_irs, &inst.irs_user, &phases).is_err());
    }
}
