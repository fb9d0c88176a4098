//! Dense two-phase simplex over the rationals with Bland's pivoting rule.
//!
//! Solves `max c.x` subject to `A x <= b`, `x >= 0`.

use num_traits::{One, Signed, Zero};

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: Vec<Rat> },
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    cost: Vec<Rat>,
    value: Rat,
    basis: Vec<usize>,
    allowed: usize,
}

impl Tableau {
    fn pivot(&mut self, p: usize, q: usize) {
        let inv = Rat::one() / &self.rows[p][q];
        for x in self.rows[p].iter_mut() {
            *x *= &inv;
        }
        self.rhs[p] *= &inv;
        let prow = self.rows[p].clone();
        let prhs = self.rhs[p].clone();
        for i in 0..self.rows.len() {
            if i == p || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.cost[q].is_zero() {
            let f = self.cost[q].clone();
            for (x, y) in self.cost.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            // value tracks -(objective), updated like the cost row
            self.value -= &f * &prhs;
        }
        self.basis[p] = q;
    }

    /// Runs simplex iterations on the current cost row; `false` means unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let Some(q) = (0..self.allowed).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((p, _)) => self.pivot(p, q),
                None => return false,
            }
        }
    }

    fn set_cost(&mut self, c: &[Rat]) {
        let ncols = self.rows.first().map_or(c.len(), |r| r.len());
        let mut cost: Vec<Rat> = (0..ncols).map(|j| c.get(j).cloned().unwrap_or_else(Rat::zero)).collect();
        let mut value = Rat::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c.get(b).cloned().unwrap_or_else(Rat::zero);
            if cb.is_zero() {
                continue;
            }
            for (x, y) in cost.iter_mut().zip(&self.rows[i]) {
                *x -= &cb * y;
            }
            value -= &cb * &self.rhs[i];
        }
        self.cost = cost;
        self.value = value;
    }
}

/// `max c.x` subject to `A x <= b`, `x >= 0`.
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpResult {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m);
    let neg_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let ncols = n + m + neg_rows.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n);
        let mut row = vec![Rat::zero(); ncols];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = if flip { -Rat::one() } else { Rat::one() };
        if flip {
            let k = neg_rows.iter().position(|&r| r == i).expect("listed");
            row[n + m + k] = Rat::one();
            basis.push(n + m + k);
            rhs.push(-b[i].clone());
        } else {
            basis.push(n + i);
            rhs.push(b[i].clone());
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, rhs, cost: Vec::new(), value: Rat::zero(), basis, allowed: ncols };

    if !neg_rows.is_empty() {
        let mut phase1 = vec![Rat::zero(); ncols];
        for k in 0..neg_rows.len() {
            phase1[n + m + k] = -Rat::one();
        }
        t.set_cost(&phase1);
        t.optimize();
        if !t.value.is_zero() {
            return LpResult::Infeasible;
        }
        // drive remaining artificial variables out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + m {
                match (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        t.allowed = n + m;
        for row in t.rows.iter_mut() {
            row.truncate(n + m);
        }
    }
    t.set_cost(c);
    if !t.optimize() {
        return LpResult::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rhs[i].clone();
        }
    }
    LpResult::Optimal { value: -t.value.clone(), x }
}

/// Whether `A x <= b`, `x >= 0` has a solution.
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    !matches!(maximize(&vec![Rat::zero(); n], a, b), LpResult::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 → 36 at (2, 6)
        let res = maximize(&r(&[3, 5]), &[r(&[1, 0]), r(&[0, 2]), r(&[3, 2])], &r(&[4, 12, 18]));
        assert_eq!(res, LpResult::Optimal { value: rat_int(36), x: r(&[2, 6]) });
    }

    #[test]
    fn phase_one_cases() {
        // x + y >= 2, x <= 1, y <= 1 → exactly (1,1)
        let res = maximize(&r(&[1, -1]), &[r(&[-1, -1]), r(&[1, 0]), r(&[0, 1])], &r(&[-2, 1, 1]));
        assert_eq!(res, LpResult::Optimal { value: rat_int(0), x: r(&[1, 1]) });
        // x >= 3 and x <= 2
        assert_eq!(maximize(&r(&[1]), &[r(&[-1]), r(&[1])], &r(&[-3, 2])), LpResult::Infeasible);
        assert_eq!(maximize(&r(&[1, 0]), &[r(&[0, 1])], &r(&[1])), LpResult::Unbounded);
        let res = maximize(&r(&[1]), &[r(&[2])], &r(&[1]));
        assert_eq!(res, LpResult::Optimal { value: rat(1, 2), x: vec![rat(1, 2)] });
    }

    #[test]
    fn degenerate_equalities() {
        // x + y = 1 written twice, max x - y
        let a = [r(&[1, 1]), r(&[-1, -1]), r(&[1, 1]), r(&[-1, -1])];
        let res = maximize(&r(&[1, -1]), &a, &r(&[1, -1, 1, -1]));
        assert_eq!(res, LpResult::Optimal { value: rat_int(1), x: r(&[1, 0]) });
    }
}
