//! Cross gain of a tuned surface toward another LOS user, closed form
//! against the element-by-element sum, as the array grows.

use irs_beamforming::channel::{Angles, ArrayGeometry, IrsUserChannel};
use irs_beamforming::passive::{aic_cross_gain_los, optimal_phases, passive_gain};
use irs_beamforming::Complex64;

fn main() -> irs_beamforming::Result<()> {
    let alpha = Complex64::new(1.0, 0.0);
    let (beta_k, beta_v) = (Complex64::new(0.8, 0.6), Complex64::new(0.0, 1.0));
    let aoa = Angles { azimuth: -0.2, elevation: 0.0 };
    let serve = Angles { azimuth: 0.3, elevation: -0.05 };
    let victim = Angles { azimuth: 0.7, elevation: 0.25 };
    println!("{:>8} {:>12} {:>12} {:>12}", "M", "tuned", "cross", "closed");
    for cols in [5, 10, 20, 40] {
        let arrays = ArrayGeometry::new(1, 20, cols, 0.5)?;
        let ar = arrays.irs_response(&aoa);
        let served = IrsUserChannel::los(beta_k, serve, &arrays);
        let theta = optimal_phases(&served, &ar)?;
        let tuned = passive_gain(&theta, alpha, &ar, &served.coefficients)?.norm();
        let other = IrsUserChannel::los(beta_v, victim, &arrays);
        let cross = passive_gain(&theta, alpha, &ar, &other.coefficients)?.norm();
        let closed = aic_cross_gain_los(alpha, beta_v, &serve, &victim, 20, cols, 0.5);
        println!("{:>8} {tuned:>12.6} {cross:>12.3e} {closed:>12.3e}", arrays.irs_elements());
    }
    Ok(())
}
