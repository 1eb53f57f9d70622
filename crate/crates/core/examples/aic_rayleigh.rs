//! Under Rayleigh fading the cross gain of a tuned surface, relative to the
//! best gain toward the same user, shrinks roughly as 1/sqrt(M).

use irs_beamforming::channel::{Angles, ArrayGeometry, IrsUserChannel, IrsUserKind};
use irs_beamforming::passive::{optimal_phases, passive_gain};
use irs_beamforming::{CVector, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

fn rayleigh(rng: &mut impl Rng, m: usize) -> IrsUserChannel {
    let coefficients = CVector::from_fn(m, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / 2f64.sqrt()
    });
    IrsUserChannel { coefficients, kind: IrsUserKind::Rayleigh { variance: 1.0 } }
}

fn main() -> irs_beamforming::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let draws = 200;
    let aoa = Angles { azimuth: 0.2, elevation: 0.1 };
    let alpha = Complex64::new(1.0, 0.0);
    for side in [10usize, 20, 40] {
        let arrays = ArrayGeometry::new(1, side, side, 0.5)?;
        let m = arrays.irs_elements();
        let ar = arrays.irs_response(&aoa);
        let mut mean = 0.0;
        for _ in 0..draws {
            let (served, victim) = (rayleigh(&mut rng, m), rayleigh(&mut rng, m));
            let theta = optimal_phases(&served, &ar)?;
            let cross = passive_gain(&theta, alpha, &ar, &victim.coefficients)?.norm();
            let best = victim.coefficients.iter().map(|z| z.norm()).sum::<f64>() / m as f64;
            mean += cross / best / draws as f64;
        }
        println!("M = {m:>5}: mean cross/best = {mean:.4}, times sqrt(M) = {:.3}", mean * (m as f64).sqrt());
    }
    Ok(())
}
