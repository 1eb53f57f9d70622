use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};

use super::config::{Method, ScenarioConfig};
use super::trial::{run_trial, TrialResult};

pub const CSV_HEADER: &str = "sweep_var,value,method,min_sinr_db_mean,min_sinr_db_std,trials,seed";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Total IRS elements; the vertical size is `M / irs_rows`.
    Elements,
    /// BS antennas.
    Antennas,
    /// User distance `d`.
    Distance,
}

impl SweepVariable {
    pub fn name(&self) -> &'static str {
        match self {
            SweepVariable::Elements => "M",
            SweepVariable::Antennas => "N",
            SweepVariable::Distance => "d",
        }
    }

    /// Config with this variable set to `value`.
    pub fn apply(&self, base: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let mut cfg = base.clone();
        match self {
            SweepVariable::Elements => {
                let m = as_count(value, "M")?;
                if m % cfg.irs_rows != 0 {
                    return Err(invalid(format!(
                        "M = {m} is not a multiple of the {} horizontal IRS elements",
                        cfg.irs_rows
                    )));
                }
                cfg.irs_cols = m / cfg.irs_rows;
            }
            SweepVariable::Antennas => cfg.bs_antennas = as_count(value, "N")?,
            SweepVariable::Distance => {
                if !(value > 0.0 && value.is_finite()) {
                    return Err(invalid("user distance must be positive"));
                }
                cfg.user_distance = value;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Current value of this variable in `config`.
    pub fn current(&self, config: &ScenarioConfig) -> f64 {
        match self {
            SweepVariable::Elements => config.irs_elements() as f64,
            SweepVariable::Antennas => config.bs_antennas as f64,
            SweepVariable::Distance => config.user_distance,
        }
    }
}

fn as_count(value: f64, name: &str) -> Result<usize> {
    if value >= 1.0 && value.fract() == 0.0 && value.is_finite() {
        Ok(value as usize)
    } else {
        Err(invalid(format!("{name} must be a positive integer, got {value}")))
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" => Ok(SweepVariable::Elements),
            "N" => Ok(SweepVariable::Antennas),
            "d" => Ok(SweepVariable::Distance),
            other => Err(invalid(format!("unknown sweep variable `{other}`, expected M, N or d"))),
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub method: Method,
    pub mean_db: f64,
    pub std_db: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub methods: Vec<Method>,
    pub trials: usize,
    pub seed: u64,
    /// One row per (value, method), value-major.
    pub rows: Vec<SweepRow>,
    /// `results[v][t]` is trial `t` at `values[v]`.
    pub results: Vec<Vec<TrialResult>>,
}

impl SweepResult {
    pub fn row(&self, value_index: usize, method: Method) -> Option<&SweepRow> {
        let m = self.methods.iter().position(|&x| x == method)?;
        self.rows.get(value_index * self.methods.len() + m)
    }

    pub fn mean_db(&self, value_index: usize, method: Method) -> Option<f64> {
        self.row(value_index, method).map(|r| r.mean_db)
    }

    /// Per-trial min-SINR in dB at one sweep value.
    pub fn trial_db(&self, value_index: usize, method: Method) -> Vec<f64> {
        self.results[value_index]
            .iter()
            .filter_map(|t| t.min_sinr_db(method))
            .collect()
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs `trials` trials at every value. Trial `t` uses the same derived
/// seed at every value, so curves are paired.
pub fn sweep(
    config: &ScenarioConfig,
    variable: SweepVariable,
    values: &[f64],
    trials: usize,
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(invalid("sweep needs at least one value"));
    }
    if values.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("sweep values must be strictly increasing"));
    }
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    let configs = values
        .iter()
        .map(|&v| variable.apply(config, v))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, u64)> = (0..values.len())
        .flat_map(|v| (0..trials as u64).map(move |t| (v, t)))
        .collect();
    let flat = jobs
        .par_iter()
        .map(|&(v, t)| run_trial(&configs[v], t))
        .collect::<Result<Vec<_>>>()?;
    let mut results: Vec<Vec<TrialResult>> = Vec::with_capacity(values.len());
    let mut it = flat.into_iter();
    for _ in values {
        results.push(it.by_ref().take(trials).collect());
    }
    let mut rows = Vec::with_capacity(values.len() * config.methods.len());
    for (v, &value) in values.iter().enumerate() {
        for &method in &config.methods {
            let db: Vec<f64> = results[v].iter().filter_map(|t| t.min_sinr_db(method)).collect();
            let (mean_db, std_db) = mean_std(&db);
            rows.push(SweepRow {
                value,
                method,
                mean_db,
                std_db,
            });
        }
    }
    Ok(SweepResult {
        variable,
        values: values.to_vec(),
        methods: config.methods.clone(),
        trials,
        seed: config.master_seed,
        rows,
        results,
    })
}

/// Writes the sweep in the CSV layout given by [`CSV_HEADER`].
pub fn write_csv(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_csv_to(result, &mut out)?;
    out.flush()?;
    Ok(())
}

pub(crate) fn write_csv_to<W: Write>(result: &SweepResult, out: &mut W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            result.variable.name(),
            row.value,
            row.method.name(),
            row.mean_db,
            row.std_db,
            result.trials,
            result.seed
        )?;
    }
    Ok(())
}
