use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::active::SolverSettings;
use crate::channel::{
    ArrayGeometry, ArrayOrientation, BaselineNormalization, LinkKind, Node, PathLossModel,
    Position,
};
use crate::error::{invalid, Error, Result};

use super::dbm_to_watts;

/// A power given in dBm, converted to watts once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLevel {
    dbm: f64,
    watts: f64,
}

impl PowerLevel {
    pub fn from_dbm(dbm: f64) -> Self {
        Self {
            dbm,
            watts: dbm_to_watts(dbm),
        }
    }

    pub fn dbm(&self) -> f64 {
        self.dbm
    }

    pub fn watts(&self) -> f64 {
        self.watts
    }
}

/// How a user's position is drawn each trial: `x = anchor_x +
/// direction_x * d`, `y = y_sign * U[0, y_max]`, fixed `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserPlacement {
    pub anchor_x: f64,
    pub direction_x: f64,
    pub y_sign: f64,
    pub y_max: f64,
    pub z: f64,
}

impl UserPlacement {
    pub fn position(&self, distance: f64, offset: f64) -> Position {
        Position::new(
            self.anchor_x + self.direction_x * distance,
            self.y_sign * offset,
            self.z,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub bs: Node,
    pub irs: Vec<Node>,
    pub users: Vec<UserPlacement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Exhaustive association, then the active solver.
    Exhaustive,
    /// Greedy association, then the active solver.
    Greedy,
    /// Interference-free prediction on the exhaustive association.
    Theoretical,
    /// Massive MIMO without surfaces over a multipath channel.
    Conventional,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Exhaustive,
        Method::Greedy,
        Method::Theoretical,
        Method::Conventional,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Greedy => "greedy",
            Method::Theoretical => "theoretical",
            Method::Conventional => "conventional",
        }
    }

    pub fn uses_irs(&self) -> bool {
        !matches!(self, Method::Conventional)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| invalid(format!("unknown method `{s}`")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn parse_methods(s: &str) -> Result<Vec<Method>> {
    let methods = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(Method::from_str)
        .collect::<Result<Vec<_>>>()?;
    if methods.is_empty() {
        return Err(invalid("at least one method is required"));
    }
    Ok(methods)
}

/// Everything needed to run trials of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub geometry: Geometry,
    /// User distance `d` fed to every [`UserPlacement`].
    pub user_distance: f64,
    pub bs_antennas: usize,
    pub irs_rows: usize,
    pub irs_cols: usize,
    pub element_spacing: f64,
    pub tx_power: PowerLevel,
    pub noise_power: PowerLevel,
    pub c0_db: f64,
    pub reference_distance: f64,
    pub a_los: f64,
    pub a_nlos: f64,
    pub baseline_paths: usize,
    pub baseline_normalization: BaselineNormalization,
    pub link_kind: LinkKind,
    pub trials: usize,
    pub master_seed: u64,
    pub methods: Vec<Method>,
    pub solver: SolverSettings,
}

impl ScenarioConfig {
    pub fn arrays(&self) -> Result<ArrayGeometry> {
        ArrayGeometry::new(
            self.bs_antennas,
            self.irs_rows,
            self.irs_cols,
            self.element_spacing,
        )
    }

    pub fn irs_elements(&self) -> usize {
        self.irs_rows * self.irs_cols
    }

    pub fn los_model(&self) -> Result<PathLossModel> {
        PathLossModel::new(self.c0_db, self.reference_distance, self.a_los)
    }

    pub fn nlos_model(&self) -> Result<PathLossModel> {
        PathLossModel::new(self.c0_db, self.reference_distance, self.a_nlos)
    }

    pub fn validate(&self) -> Result<()> {
        self.arrays()?;
        self.los_model()?;
        self.nlos_model()?;
        self.solver.validate()?;
        if self.trials == 0 {
            return Err(invalid("at least one trial is required"));
        }
        if self.methods.is_empty() {
            return Err(invalid("at least one method is required"));
        }
        let (l, k) = (self.geometry.irs.len(), self.geometry.users.len());
        if k == 0 {
            return Err(invalid("scenario has no users"));
        }
        if self.methods.iter().any(Method::uses_irs) && l < k {
            return Err(Error::Infeasible(format!(
                "{l} IRSs cannot serve {k} users with an IRS-assisted method"
            )));
        }
        if self.methods.contains(&Method::Conventional) && self.baseline_paths == 0 {
            return Err(invalid("baseline needs at least one path"));
        }
        if !(self.user_distance.is_finite()) {
            return Err(invalid("user distance must be finite"));
        }
        if self.geometry.users.iter().any(|u| !(u.y_max >= 0.0)) {
            return Err(invalid("user offset range must be nonnegative"));
        }
        Ok(())
    }
}

fn fmt_list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Serializes a config in the `key = value` format read by [`load_config`].
pub fn write_config(config: &ScenarioConfig) -> String {
    let g = &config.geometry;
    let mut out = String::new();
    let mut put = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    put(
        "bs_position",
        fmt_list([g.bs.position.x, g.bs.position.y, g.bs.position.z]),
    );
    put("bs_normal_azimuth", g.bs.orientation.normal_azimuth.to_string());
    put("irs_x", fmt_list(g.irs.iter().map(|n| n.position.x)));
    put("irs_y", fmt_list(g.irs.iter().map(|n| n.position.y)));
    put("irs_z", fmt_list(g.irs.iter().map(|n| n.position.z)));
    put(
        "irs_normal_azimuth",
        fmt_list(g.irs.iter().map(|n| n.orientation.normal_azimuth)),
    );
    put("user_anchor_x", fmt_list(g.users.iter().map(|u| u.anchor_x)));
    put("user_direction_x", fmt_list(g.users.iter().map(|u| u.direction_x)));
    put("user_y_sign", fmt_list(g.users.iter().map(|u| u.y_sign)));
    put("user_y_max", fmt_list(g.users.iter().map(|u| u.y_max)));
    put("user_z", fmt_list(g.users.iter().map(|u| u.z)));
    put("user_distance", config.user_distance.to_string());
    put("bs_antennas", config.bs_antennas.to_string());
    put("irs_rows", config.irs_rows.to_string());
    put("irs_cols", config.irs_cols.to_string());
    put("element_spacing", config.element_spacing.to_string());
    put("tx_power_dbm", config.tx_power.dbm().to_string());
    put("noise_power_dbm", config.noise_power.dbm().to_string());
    put("c0_db", config.c0_db.to_string());
    put("reference_distance", config.reference_distance.to_string());
    put("a_los", config.a_los.to_string());
    put("a_nlos", config.a_nlos.to_string());
    put("baseline_paths", config.baseline_paths.to_string());
    put(
        "baseline_per_path_normalization",
        (config.baseline_normalization == BaselineNormalization::Total).to_string(),
    );
    put(
        "irs_user_channel",
        match config.link_kind {
            LinkKind::Los => "los",
            LinkKind::Rayleigh => "rayleigh",
        }
        .to_string(),
    );
    put("trials", config.trials.to_string());
    put("master_seed", config.master_seed.to_string());
    put("methods", fmt_list(config.methods.iter().map(Method::name)));
    put("solver_tolerance", config.solver.tolerance.to_string());
    put("solver_max_iterations", config.solver.max_iterations.to_string());
    out
}

#[derive(Default)]
struct VectorGroup {
    first_line: Option<usize>,
    fields: Vec<(&'static str, Option<Vec<f64>>)>,
}

impl VectorGroup {
    fn new(names: &[&'static str]) -> Self {
        Self {
            first_line: None,
            fields: names.iter().map(|n| (*n, None)).collect(),
        }
    }

    fn offer(&mut self, key: &str, line: usize, values: &str) -> Option<Result<()>> {
        let slot = self.fields.iter_mut().find(|(n, _)| *n == key)?;
        self.first_line.get_or_insert(line);
        Some(parse_floats(values, line).map(|v| slot.1 = Some(v)))
    }

    // None when untouched; otherwise every field with one shared length
    fn finish(self) -> Result<Option<Vec<Vec<f64>>>> {
        let Some(line) = self.first_line else {
            return Ok(None);
        };
        let mut cols = Vec::new();
        for (name, v) in self.fields {
            let v = v.ok_or_else(|| Error::Parse {
                line,
                message: format!("missing `{name}` for this group of per-node vectors"),
            })?;
            cols.push(v);
        }
        let len = cols[0].len();
        if cols.iter().any(|c| c.len() != len) {
            return Err(Error::Parse {
                line,
                message: "per-node vectors have different lengths".into(),
            });
        }
        Ok(Some(cols))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: FromStr>(s: &str, line: usize) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("cannot parse `{}`", s.trim())))
}

fn parse_floats(s: &str, line: usize) -> Result<Vec<f64>> {
    s.split(',').map(|t| parse_num(t, line)).collect()
}

/// Parses the `key = value` format. Keys that are absent keep the values of
/// the default scenario (setup 1 at `d = 5` m); unknown keys are rejected.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let mut cfg = super::scenario::build_setup1(5.0)?;
    let mut irs = VectorGroup::new(&["irs_x", "irs_y", "irs_z", "irs_normal_azimuth"]);
    let mut users = VectorGroup::new(&[
        "user_anchor_x",
        "user_direction_x",
        "user_y_sign",
        "user_y_max",
        "user_z",
    ]);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if let Some(r) = irs.offer(key, line, value) {
            r?;
            continue;
        }
        if let Some(r) = users.offer(key, line, value) {
            r?;
            continue;
        }
        match key {
            "bs_position" => {
                let v = parse_floats(value, line)?;
                if v.len() != 3 {
                    return Err(parse_err(line, "bs_position needs three coordinates"));
                }
                cfg.geometry.bs.position = Position::new(v[0], v[1], v[2]);
            }
            "bs_normal_azimuth" => {
                cfg.geometry.bs.orientation = ArrayOrientation::facing(parse_num(value, line)?)
            }
            "user_distance" => cfg.user_distance = parse_num(value, line)?,
            "bs_antennas" => cfg.bs_antennas = parse_num(value, line)?,
            "irs_rows" => cfg.irs_rows = parse_num(value, line)?,
            "irs_cols" => cfg.irs_cols = parse_num(value, line)?,
            "element_spacing" => cfg.element_spacing = parse_num(value, line)?,
            "tx_power_dbm" => cfg.tx_power = PowerLevel::from_dbm(parse_num(value, line)?),
            "noise_power_dbm" => cfg.noise_power = PowerLevel::from_dbm(parse_num(value, line)?),
            "c0_db" => cfg.c0_db = parse_num(value, line)?,
            "reference_distance" => cfg.reference_distance = parse_num(value, line)?,
            "a_los" => cfg.a_los = parse_num(value, line)?,
            "a_nlos" => cfg.a_nlos = parse_num(value, line)?,
            "baseline_paths" => cfg.baseline_paths = parse_num(value, line)?,
            "baseline_per_path_normalization" => {
                cfg.baseline_normalization = match value {
                    "true" => BaselineNormalization::Total,
                    "false" => BaselineNormalization::PerPath,
                    other => return Err(parse_err(line, format!("expected true|false, got `{other}`"))),
                }
            }
            "irs_user_channel" => {
                cfg.link_kind = match value.to_ascii_lowercase().as_str() {
                    "los" => LinkKind::Los,
                    "rayleigh" => LinkKind::Rayleigh,
                    other => return Err(parse_err(line, format!("expected los|rayleigh, got `{other}`"))),
                }
            }
            "trials" => cfg.trials = parse_num(value, line)?,
            "master_seed" => cfg.master_seed = parse_num(value, line)?,
            "methods" => {
                cfg.methods = parse_methods(value).map_err(|e| parse_err(line, e.to_string()))?
            }
            "solver_tolerance" => cfg.solver.tolerance = parse_num(value, line)?,
            "solver_max_iterations" => cfg.solver.max_iterations = parse_num(value, line)?,
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    if let Some(cols) = irs.finish()? {
        cfg.geometry.irs = (0..cols[0].len())
            .map(|i| {
                Node::new(
                    Position::new(cols[0][i], cols[1][i], cols[2][i]),
                    ArrayOrientation::facing(cols[3][i]),
                )
            })
            .collect();
    }
    if let Some(cols) = users.finish()? {
        cfg.geometry.users = (0..cols[0].len())
            .map(|i| UserPlacement {
                anchor_x: cols[0][i],
                direction_x: cols[1][i],
                y_sign: cols[2][i],
                y_max: cols[3][i],
                z: cols[4][i],
            })
            .collect();
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::build_setup2;

    #[test]
    fn round_trip_preserves_config() {
        for mut cfg in [build_setup1_default(), build_setup2(3.5).unwrap()] {
            cfg.link_kind = LinkKind::Rayleigh;
            cfg.baseline_normalization = BaselineNormalization::Total;
            cfg.master_seed = u64::MAX - 3;
            cfg.element_spacing = 0.1 + 0.2;
            let back = parse_config(&write_config(&cfg)).unwrap();
            assert_eq!(back, cfg);
        }
    }

    fn build_setup1_default() -> ScenarioConfig {
        crate::experiment::build_setup1(5.0).unwrap()
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_config("# header\ntrials = 3\nfoo\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(matches!(
            parse_config("bogus = 1").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn bad_number_and_partial_groups_rejected() {
        assert!(matches!(parse_config("\n\ntrials = x").unwrap_err(), Error::Parse { line: 3, .. }));
        assert!(parse_config("irs_x = 0,0").is_err());
        assert!(parse_config("irs_x = 0\nirs_y = 1,2\nirs_z = 0\nirs_normal_azimuth = 0").is_err());
    }

    #[test]
    fn comments_defaults_and_units() {
        let cfg = parse_config("  # defaults otherwise\ntrials = 7 # trailing\ntx_power_dbm = -10\n").unwrap();
        assert_eq!(cfg.trials, 7);
        assert!((cfg.tx_power.watts() - 1e-4).abs() < 1e-18);
        assert!((cfg.noise_power.watts() - 1e-11).abs() < 1e-25);
    }

    #[test]
    fn methods_parse() {
        assert_eq!(
            parse_methods("greedy, conventional").unwrap(),
            vec![Method::Greedy, Method::Conventional]
        );
        assert!(parse_methods("nope").is_err());
    }
}
