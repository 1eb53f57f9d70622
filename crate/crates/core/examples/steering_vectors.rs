//! Array responses and the rank-one BS-IRS channel for one surface of the
//! first layout.

use irs_beamforming::channel::{sample_bs_irs, ula_response, upa_response};
use irs_beamforming::experiment::build_setup1;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> irs_beamforming::Result<()> {
    let a = ula_response(0.3, 8, 0.5)?;
    println!("ULA, N = 8, psi = 0.3 rad, |a| = {:.3}", a.norm());
    for (n, z) in a.iter().enumerate().take(3) {
        println!("  a[{n}] = {:.4} {:+.4}j", z.re, z.im);
    }

    let b = upa_response(0.4, -0.1, 4, 5, 0.5)?;
    println!("UPA 4 x 5: {} elements, |a| = {:.3}", b.len(), b.norm());

    let cfg = build_setup1(5.0)?;
    let arrays = cfg.arrays()?;
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let g = sample_bs_irs(&cfg.geometry.bs, &cfg.geometry.irs[0], &cfg.los_model()?, &mut rng)?;
    println!(
        "BS -> IRS 1: |alpha|^2 = {:.3e}, AoA az {:.3} el {:.3}, AoD az {:.3}",
        g.gain.norm_sqr(),
        g.aoa.azimuth,
        g.aoa.elevation,
        g.aod_azimuth
    );
    let svd = g.materialize(&arrays).svd(false, false);
    let s = svd.singular_values;
    println!("G is {} x {}, s1 = {:.3e}, s2 / s1 = {:.1e}", arrays.irs_elements(), arrays.bs_antennas(), s[0], s[1] / s[0]);
    Ok(())
}
