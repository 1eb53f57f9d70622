//! Mean max-min SINR against the number of IRS elements (four surfaces,
//! four users). Doubling M should add about 6 dB.

use irs_beamforming::experiment::{build_setup1, sweep, Method, SweepVariable};

fn main() -> irs_beamforming::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let cfg = build_setup1(5.0)?;
    let values = [100.0, 200.0, 400.0, 800.0];
    let s = sweep(&cfg, SweepVariable::Elements, &values, trials)?;
    print!("{:>6}", "M");
    for m in &s.methods {
        print!(" {:>13}", m.name());
    }
    println!();
    for (v, value) in values.iter().enumerate() {
        print!("{value:>6}");
        for &m in &s.methods {
            print!(" {:>10.2} dB", s.mean_db(v, m).unwrap());
        }
        println!();
    }
    // paired trials keep the gap estimate tight
    let gaps: Vec<f64> = s
        .trial_db(2, Method::Exhaustive)
        .iter()
        .zip(s.trial_db(1, Method::Exhaustive))
        .map(|(a, b)| a - b)
        .collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    println!("exhaustive gap 200 -> 400 over {trials} paired trials: {mean:.2} dB");
    Ok(())
}
