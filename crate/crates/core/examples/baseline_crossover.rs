//! Two surfaces against a conventional multipath channel without IRSs: the
//! element count at which the IRS link overtakes the baseline.

use irs_beamforming::channel::BaselineNormalization;
use irs_beamforming::experiment::{build_setup2, sweep, Method, SweepVariable};

fn main() -> irs_beamforming::Result<()> {
    let mut cfg = build_setup2(5.0)?;
    cfg.methods = vec![Method::Greedy, Method::Conventional];
    let values: Vec<f64> = (0..=25).map(|i| 100.0 + 20.0 * i as f64).collect();
    for norm in [BaselineNormalization::PerPath, BaselineNormalization::Total] {
        cfg.baseline_normalization = norm;
        let s = sweep(&cfg, SweepVariable::Elements, &values, 200)?;
        let diff: Vec<f64> = (0..values.len())
            .map(|v| s.mean_db(v, Method::Greedy).unwrap() - s.mean_db(v, Method::Conventional).unwrap())
            .collect();
        let cross = (1..diff.len())
            .find(|&v| diff[v - 1] < 0.0 && diff[v] >= 0.0)
            .map(|v| values[v - 1] + 20.0 * diff[v - 1] / (diff[v - 1] - diff[v]));
        println!(
            "{norm:?}: baseline {:.2} dB, greedy {:.2} -> {:.2} dB, crossover {}",
            s.mean_db(0, Method::Conventional).unwrap(),
            s.mean_db(0, Method::Greedy).unwrap(),
            s.mean_db(values.len() - 1, Method::Greedy).unwrap(),
            cross.map_or("none".to_string(), |m| format!("at M = {m:.0}"))
        );
    }
    Ok(())
}
