//! Users moving away from their surfaces: SINR against user distance d.

use irs_beamforming::experiment::{build_setup2, sweep, Method, SweepVariable};

fn main() -> irs_beamforming::Result<()> {
    let mut cfg = build_setup2(5.0)?;
    cfg.irs_cols = 25;
    cfg.methods = vec![Method::Exhaustive, Method::Greedy, Method::Theoretical];
    let d: Vec<f64> = (1..=7).map(|i| 2.0 * i as f64).collect();
    let s = sweep(&cfg, SweepVariable::Distance, &d, 200)?;
    println!("{:>4} {:>12} {:>12} {:>12}", "d", "exhaustive", "greedy", "theoretical");
    for (v, value) in d.iter().enumerate() {
        println!(
            "{value:>4} {:>9.2} dB {:>9.2} dB {:>9.2} dB",
            s.mean_db(v, Method::Exhaustive).unwrap(),
            s.mean_db(v, Method::Greedy).unwrap(),
            s.mean_db(v, Method::Theoretical).unwrap()
        );
    }
    Ok(())
}
