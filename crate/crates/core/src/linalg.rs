//! Small dense solves shared by the solvers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{CMatrix, CVector};

/// Relative pivot threshold below which a real system is declared singular.
pub(crate) const PIVOT_THRESHOLD: f64 = 1e-12;

/// Solves `R x = b` for a Hermitian positive-definite `R`.
///
/// Returns `None` when the Cholesky factorization breaks down.
pub(crate) fn solve_hpd(r: CMatrix, b: &CVector) -> Option<CVector> {
    let chol = r.cholesky()?;
    Some(chol.solve(b))
}

/// Gaussian elimination with partial pivoting on a small real system.
///
/// Fails when a pivot falls below `PIVOT_THRESHOLD` times the largest
/// absolute entry of `a`.
pub(crate) fn solve_dense(mut a: DMatrix<f64>, mut b: DVector<f64>) -> Option<DVector<f64>> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    debug_assert_eq!(n, b.len());
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, a[(r, col)].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs <= PIVOT_THRESHOLD * scale {
            return None;
        }
        if pivot_row != col {
            a.swap_rows(pivot_row, col);
            b.swap_rows(pivot_row, col);
        }
        for r in col + 1..n {
            let factor = a[(r, col)] / a[(col, col)];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[(r, c)] -= factor * a[(col, c)];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = DVector::zeros(n);
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| a[(r, c)] * x[c]).sum();
        x[r] = (b[r] - tail) / a[(r, r)];
    }
    Some(x)
}

/// Draws a circularly-symmetric complex Gaussian with the given variance.
pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let sd = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(sd * re, sd * im)
}
