use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use irs_beamforming::experiment::{
    load_config, parse_methods, sweep, write_csv, Setup, SweepVariable,
};

#[derive(Parser)]
#[command(name = "irs-sim", about = "Monte-Carlo sweeps for IRS-assisted MU-MISO beamforming")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep (or a single point) and print mean min-SINR per method.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Variable to sweep: M, N or d.
        #[arg(long)]
        sweep: Option<SweepVariable>,
        /// Sweep values, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        values: Vec<f64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated subset of exhaustive,greedy,theoretical,conventional.
        #[arg(long)]
        methods: Option<String>,
        /// Replace the geometry with a built-in layout.
        #[arg(long)]
        setup: Option<Setup>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> irs_beamforming::Result<()> {
    let Command::Run {
        config,
        sweep: variable,
        values,
        trials,
        seed,
        out,
        methods,
        setup,
    } = cli.command;
    let mut cfg = load_config(&config)?;
    if let Some(setup) = setup {
        cfg.geometry = setup.build(cfg.user_distance)?.geometry;
    }
    if let Some(m) = methods {
        cfg.methods = parse_methods(&m)?;
    }
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if let Some(s) = seed {
        cfg.master_seed = s;
    }
    cfg.validate()?;
    let variable = variable.unwrap_or(SweepVariable::Elements);
    let values = if values.is_empty() {
        vec![variable.current(&cfg)]
    } else {
        values
    };
    let result = sweep(&cfg, variable, &values, cfg.trials)?;

    print!("{:>8}", variable.name());
    for m in &result.methods {
        print!(" {:>14}", m.name());
    }
    println!();
    for (v, value) in result.values.iter().enumerate() {
        print!("{value:>8}");
        for &m in &result.methods {
            let mean = result.mean_db(v, m).unwrap_or(f64::NAN);
            print!(" {:>11.2} dB", mean);
        }
        println!();
    }
    println!(
        "{} trials per point, seed {}",
        result.trials, result.seed
    );
    if let Some(path) = out {
        write_csv(&result, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
