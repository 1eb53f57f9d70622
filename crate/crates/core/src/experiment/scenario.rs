use crate::active::SolverSettings;
use crate::channel::{
    ArrayOrientation, BaselineNormalization, LinkKind, Node, Position, DEFAULT_SPACING,
};
use crate::error::{invalid, Result};

use super::config::{Geometry, Method, PowerLevel, ScenarioConfig, UserPlacement};

/// Horizontal BS offset from the first IRS pair.
const BS_X: f64 = 30.0;
/// Height of the BS and every IRS.
const MOUNT_Z: f64 = 0.3;
const USER_Y_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setup {
    /// Four IRSs, four users.
    One,
    /// Two IRSs, two users.
    Two,
}

impl Setup {
    pub fn build(self, d: f64) -> Result<ScenarioConfig> {
        match self {
            Setup::One => build_setup1(d),
            Setup::Two => build_setup2(d),
        }
    }
}

impl std::str::FromStr for Setup {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Setup::One),
            "2" => Ok(Setup::Two),
            other => Err(invalid(format!("unknown setup `{other}`, expected 1 or 2"))),
        }
    }
}

fn irs(x: f64, y: f64, facing: ArrayOrientation) -> Node {
    Node::new(Position::new(x, y, MOUNT_Z), facing)
}

fn user(anchor_x: f64, direction_x: f64, y_sign: f64) -> UserPlacement {
    UserPlacement {
        anchor_x,
        direction_x,
        y_sign,
        y_max: USER_Y_MAX,
        z: 0.0,
    }
}

fn defaults(geometry: Geometry, d: f64) -> ScenarioConfig {
    ScenarioConfig {
        geometry,
        user_distance: d,
        bs_antennas: 32,
        irs_rows: 20,
        irs_cols: 20,
        element_spacing: DEFAULT_SPACING,
        tx_power: PowerLevel::from_dbm(-10.0),
        noise_power: PowerLevel::from_dbm(-80.0),
        c0_db: -30.0,
        reference_distance: 1.0,
        a_los: 2.0,
        a_nlos: 3.5,
        baseline_paths: 100,
        baseline_normalization: BaselineNormalization::PerPath,
        link_kind: LinkKind::Los,
        trials: 200,
        master_seed: 0,
        methods: Method::ALL.to_vec(),
        solver: SolverSettings::default(),
    }
}

fn check_distance(d: f64) -> Result<()> {
    if !(d > 0.0 && d < BS_X) {
        return Err(invalid(format!("user distance must lie in (0, {BS_X}) m, got {d}")));
    }
    Ok(())
}

/// Four IRSs serving four users.
///
/// BS at (30, 0, 0.3) facing -x; IRSs at (0, -5), (0, 5) facing +x and
/// (60, -3), (60, 3) facing -x, all at 0.3 m height; users at
/// (d, -u1, 0), (d, u2, 0), (60 - d, -u3, 0), (60 - d, u4, 0) with every
/// `u` drawn uniformly from [0, 10] m per trial.
pub fn build_setup1(d: f64) -> Result<ScenarioConfig> {
    check_distance(d)?;
    let far = 2.0 * BS_X;
    let geometry = Geometry {
        bs: Node::new(
            Position::new(BS_X, 0.0, MOUNT_Z),
            ArrayOrientation::facing_neg_x(),
        ),
        irs: vec![
            irs(0.0, -5.0, ArrayOrientation::facing_pos_x()),
            irs(0.0, 5.0, ArrayOrientation::facing_pos_x()),
            irs(far, -3.0, ArrayOrientation::facing_neg_x()),
            irs(far, 3.0, ArrayOrientation::facing_neg_x()),
        ],
        users: vec![
            user(0.0, 1.0, -1.0),
            user(0.0, 1.0, 1.0),
            user(far, -1.0, -1.0),
            user(far, -1.0, 1.0),
        ],
    };
    Ok(defaults(geometry, d))
}

/// The BS, IRS-1, IRS-2, U1 and U2 of [`build_setup1`].
pub fn build_setup2(d: f64) -> Result<ScenarioConfig> {
    let mut cfg = build_setup1(d)?;
    cfg.geometry.irs.truncate(2);
    cfg.geometry.users.truncate(2);
    Ok(cfg)
}
