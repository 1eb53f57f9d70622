//! Max-min SINR balancing on a random four-user channel.

use irs_beamforming::active::{solve_active, SolverSettings};
use irs_beamforming::channel::CompositeChannel;
use irs_beamforming::experiment::to_db;
use irs_beamforming::{CMatrix, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

fn main() -> irs_beamforming::Result<()> {
    let (n, k) = (8, 4);
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let h = CompositeChannel::from_matrix(CMatrix::from_fn(n, k, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / 2f64.sqrt()
    }));
    let (power, noise) = (1.0, 0.1);
    let sol = solve_active(&h, power, noise, &SolverSettings::default())?;
    println!(
        "converged = {} after {} iterations (residual {:.1e})",
        sol.converged, sol.iterations, sol.residual
    );
    println!("balanced SINR = {:.3} dB", to_db(sol.balanced_sinr));
    for (u, s) in sol.sinrs(&h, noise)?.iter().enumerate() {
        println!("  user {u}: p = {:.4}, q = {:.4}, SINR = {:.6} dB", sol.powers[u], sol.dual_powers[u], to_db(*s));
    }
    println!("sum p = {:.12}, sum q = {:.12}", sol.powers.iter().sum::<f64>(), sol.dual_powers.iter().sum::<f64>());
    Ok(())
}
