//! Mean max-min SINR against the number of BS antennas at M = 400.

use irs_beamforming::experiment::{build_setup1, sweep, SweepVariable};

fn main() -> irs_beamforming::Result<()> {
    let cfg = build_setup1(5.0)?;
    let values = [16.0, 32.0, 64.0, 128.0];
    let s = sweep(&cfg, SweepVariable::Antennas, &values, 100)?;
    for row in &s.rows {
        println!("N = {:>4}  {:>12}  {:>7.2} dB  (std {:.2})", row.value, row.method.name(), row.mean_db, row.std_db);
    }
    Ok(())
}
