//! Writes a config file, reads it back and runs a short sweep to CSV, the
//! same path `irs-sim run` takes.

use irs_beamforming::experiment::{
    build_setup2, load_config, sweep, write_config, write_csv, Method, SweepVariable,
};

fn main() -> irs_beamforming::Result<()> {
    let dir = std::env::temp_dir().join("irs-config-example");
    std::fs::create_dir_all(&dir)?;
    let mut cfg = build_setup2(5.0)?;
    cfg.trials = 20;
    cfg.methods = vec![Method::Greedy, Method::Conventional];
    let path = dir.join("setup2.cfg");
    std::fs::write(&path, write_config(&cfg))?;
    println!("wrote {}:\n{}", path.display(), std::fs::read_to_string(&path)?);

    let loaded = load_config(&path)?;
    assert_eq!(loaded, cfg);
    let s = sweep(&loaded, SweepVariable::Elements, &[200.0, 400.0], loaded.trials)?;
    let csv = dir.join("results.csv");
    write_csv(&s, &csv)?;
    print!("{}", std::fs::read_to_string(&csv)?);
    Ok(())
}
