use super::gains::GainMatrix;
use crate::error::{invalid, Error, Result};

/// Largest assignment space the exhaustive search will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000_000;

/// Serving user of every IRS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Association {
    assignment: Vec<usize>,
    users: usize,
}

impl Association {
    pub fn new(assignment: Vec<usize>, users: usize) -> Result<Self> {
        if users == 0 {
            return Err(invalid("association needs at least one user"));
        }
        if let Some(&k) = assignment.iter().find(|&&k| k >= users) {
            return Err(invalid(format!("user index {k} out of range for {users} users")));
        }
        Ok(Self { assignment, users })
    }

    pub fn irs_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn serving(&self, irs: usize) -> usize {
        self.assignment[irs]
    }

    /// IRSs assigned to `user`, in increasing index order.
    pub fn served_by(&self, user: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, &k)| k == user)
            .map(|(l, _)| l)
    }

    pub fn covers_all_users(&self) -> bool {
        let mut seen = vec![false; self.users];
        for &k in &self.assignment {
            seen[k] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `sum_k 1 / ||w_k||^2` with `w_k` restricted to the assigned IRSs;
    /// infinite if a user is left unserved.
    pub fn objective(&self, gains: &GainMatrix) -> f64 {
        objective(&self.assignment, gains)
    }
}

fn objective(assignment: &[usize], gains: &GainMatrix) -> f64 {
    let mut power = vec![0.0; gains.users()];
    for (l, &k) in assignment.iter().enumerate() {
        power[k] += gains.get(l, k).powi(2);
    }
    power
        .into_iter()
        .map(|p| if p > 0.0 { 1.0 / p } else { f64::INFINITY })
        .sum()
}

fn check_feasible(gains: &GainMatrix) -> Result<()> {
    let (l, k) = (gains.irs_count(), gains.users());
    if k == 0 {
        return Err(invalid("gain matrix has no users"));
    }
    if l < k {
        return Err(Error::Infeasible(format!(
            "{l} IRSs cannot serve {k} users; need at least one IRS per user"
        )));
    }
    Ok(())
}

/// Global minimizer of the association objective over all `K^L`
/// assignments.
///
/// Assignments are visited in lexicographic order (IRS 0 most significant)
/// and only a strictly better objective replaces the incumbent, so ties go to
/// the lexicographically smallest assignment.
pub fn associate_exhaustive(gains: &GainMatrix) -> Result<(Association, f64)> {
    check_feasible(gains)?;
    let (l, k) = (gains.irs_count(), gains.users());
    let space = (k as u128).checked_pow(l as u32).unwrap_or(u128::MAX);
    if space > EXHAUSTIVE_LIMIT as u128 {
        return Err(Error::ExhaustiveLimit {
            assignments: space,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut current = vec![0usize; l];
    let mut best = current.clone();
    let mut best_obj = f64::INFINITY;
    loop {
        let obj = objective(&current, gains);
        if obj < best_obj {
            best_obj = obj;
            best.copy_from_slice(&current);
        }
        // odometer increment from the least significant IRS
        let mut pos = l;
        loop {
            if pos == 0 {
                let assoc = Association::new(best, k)?;
                if !best_obj.is_finite() {
                    return Err(Error::Infeasible(
                        "every assignment leaves a user without gain".into(),
                    ));
                }
                return Ok((assoc, best_obj));
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < k {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Greedy association.
///
/// First every user receives one IRS: the largest remaining entry among
/// unassigned IRSs and unserved users is picked and its row and column are
/// retired. Each leftover IRS then joins the user with its largest entry.
/// Ties go to the smallest `(irs, user)` pair.
pub fn associate_greedy(gains: &GainMatrix) -> Result<Association> {
    check_feasible(gains)?;
    let (l_count, k_count) = (gains.irs_count(), gains.users());
    let mut assignment: Vec<Option<usize>> = vec![None; l_count];
    let mut served = vec![false; k_count];
    for _ in 0..k_count {
        let mut pick: Option<(usize, usize, f64)> = None;
        for l in (0..l_count).filter(|&l| assignment[l].is_none()) {
            for k in (0..k_count).filter(|&k| !served[k]) {
                let v = gains.get(l, k);
                if pick.is_none_or(|(_, _, best)| v > best) {
                    pick = Some((l, k, v));
                }
            }
        }
        let (l, k, _) = pick.expect("L >= K leaves a free pair every round");
        assignment[l] = Some(k);
        served[k] = true;
    }
    for _ in k_count..l_count {
        let mut pick: Option<(usize, usize, f64)> = None;
        for l in (0..l_count).filter(|&l| assignment[l].is_none()) {
            for k in 0..k_count {
                let v = gains.get(l, k);
                if pick.is_none_or(|(_, _, best)| v > best) {
                    pick = Some((l, k, v));
                }
            }
        }
        let (l, k, _) = pick.expect("an unassigned IRS remains");
        assignment[l] = Some(k);
    }
    Association::new(assignment.into_iter().map(|k| k.unwrap()).collect(), k_count)
}
