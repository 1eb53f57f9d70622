//! Exhaustive and greedy IRS-user association on one drawn trial of the
//! four-surface layout, plus the closed-form SINR of each choice.

use irs_beamforming::channel::{sample_bs_irs, sample_irs_user};
use irs_beamforming::experiment::{build_setup1, to_db, trial_rng, RngStream};
use irs_beamforming::passive::{associate_exhaustive, associate_greedy, max_gain_matrix, theoretical_min_sinr};
use rand::Rng;

fn main() -> irs_beamforming::Result<()> {
    let cfg = build_setup1(5.0)?;
    let arrays = cfg.arrays()?;
    let mut rng = trial_rng(7, 0, RngStream::Irs);
    let users: Vec<_> = cfg
        .geometry
        .users
        .iter()
        .map(|u| u.position(cfg.user_distance, rng.random_range(0.0..=u.y_max)))
        .collect();
    let bs_irs = cfg
        .geometry
        .irs
        .iter()
        .map(|s| sample_bs_irs(&cfg.geometry.bs, s, &cfg.los_model()?, &mut rng))
        .collect::<irs_beamforming::Result<Vec<_>>>()?;
    let mut links = Vec::new();
    for s in &cfg.geometry.irs {
        let row = users
            .iter()
            .map(|u| sample_irs_user(s, u, &arrays, &cfg.los_model()?, cfg.link_kind, &mut rng))
            .collect::<irs_beamforming::Result<Vec<_>>>()?;
        links.push(row);
    }
    let w = max_gain_matrix(&bs_irs, &links)?;
    println!("max passive gains (IRS x user):\n{:.3e}", w.matrix());

    let (best, objective) = associate_exhaustive(&w)?;
    let greedy = associate_greedy(&w)?;
    let (p, s) = (cfg.tx_power.watts(), cfg.noise_power.watts());
    for (name, a) in [("exhaustive", &best), ("greedy", &greedy)] {
        let sinr = theoretical_min_sinr(a, &w, p, cfg.bs_antennas, arrays.irs_elements(), s)?;
        println!(
            "{name:>10}: serving users {:?}, objective {:.4e}, predicted min-SINR {:.2} dB",
            a.assignment(),
            a.objective(&w),
            to_db(sinr)
        );
    }
    assert_eq!(best.objective(&w), objective);
    Ok(())
}
