//! Dense two-phase primal simplex with Bland's anti-cycling rule.
//!
//! Problems are `minimize c.x` subject to linear rows and `x >= 0`. The
//! solver is generic over [`Field`]: with `f64` comparisons use the field's
//! pivot tolerance, with `BigRational` every pivot is exact.

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct LinearProgram<F> {
    n_vars: usize,
    objective: Vec<F>,
    rows: Vec<(Vec<(usize, F)>, Relation, F)>,
}

#[derive(Debug, Clone)]
pub struct LpSolution<F> {
    pub value: F,
    pub x: Vec<F>,
    pub pivots: usize,
}

impl<F: Field> LinearProgram<F> {
    /// `minimize objective . x` over `x >= 0`.
    pub fn minimize(objective: Vec<F>) -> Self {
        LinearProgram { n_vars: objective.len(), objective, rows: Vec::new() }
    }

    /// Adds `sum coeffs[k].1 * x[coeffs[k].0]  rel  rhs`; repeated indices add up.
    pub fn constraint(&mut self, coeffs: Vec<(usize, F)>, rel: Relation, rhs: F) -> Result<()> {
        if let Some(&(j, _)) = coeffs.iter().find(|(j, _)| *j >= self.n_vars) {
            return Err(Error::InvalidArgument(format!("variable {j} out of range")));
        }
        self.rows.push((coeffs, rel, rhs));
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_constraints(&self) -> usize {
        self.rows.len()
    }

    /// Solves to optimality; errors on infeasible or unbounded programs and
    /// when the pivot cap is exceeded.
    pub fn solve(&self) -> Result<LpSolution<F>> {
        Tableau::build(self).run(self)
    }
}

struct Tableau<F> {
    /// `rows x cols` with the right-hand side in the last column.
    a: Vec<Vec<F>>,
    basis: Vec<usize>,
    n_struct: usize,
    n_total: usize,
    first_artificial: usize,
    pivots: usize,
}

impl<F: Field> Tableau<F> {
    fn build(lp: &LinearProgram<F>) -> Self {
        let m = lp.rows.len();
        let n = lp.n_vars;
        let n_slack = lp.rows.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
        // normalized relations after making every rhs nonnegative
        let rels: Vec<Relation> = lp
            .rows
            .iter()
            .map(|(_, rel, rhs)| match (rel, rhs.is_negative()) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => *r,
            })
            .collect();
        let n_art = rels.iter().filter(|r| **r != Relation::Le).count();
        let first_artificial = n + n_slack;
        let n_total = first_artificial + n_art;
        let mut a = vec![vec![F::zero(); n_total + 1]; m];
        let mut basis = vec![0; m];
        let (mut slack, mut art) = (n, first_artificial);
        for (i, ((coeffs, rel, rhs), norm)) in lp.rows.iter().zip(&rels).enumerate() {
            let flip = rhs.is_negative();
            for (j, c) in coeffs {
                if flip {
                    a[i][*j] -= c.clone();
                } else {
                    a[i][*j] += c.clone();
                }
            }
            a[i][n_total] = if flip { -rhs.clone() } else { rhs.clone() };
            if *rel != Relation::Eq {
                a[i][slack] = if *norm == Relation::Le { F::one() } else { -F::one() };
                if *norm == Relation::Le {
                    basis[i] = slack;
                }
                slack += 1;
            }
            if *norm != Relation::Le {
                a[i][art] = F::one();
                basis[i] = art;
                art += 1;
            }
        }
        Tableau { a, basis, n_struct: n, n_total, first_artificial, pivots: 0 }
    }

    fn cap(&self) -> usize {
        (50 * (self.a.len() + self.n_total)).max(10_000)
    }

    fn run(mut self, lp: &LinearProgram<F>) -> Result<LpSolution<F>> {
        let tol = F::pivot_tolerance();
        if self.first_artificial < self.n_total {
            let mut phase1 = vec![F::zero(); self.n_total];
            for c in &mut phase1[self.first_artificial..] {
                *c = F::one();
            }
            let value = self.optimize(&phase1, self.n_total)?;
            if value > tol.clone() * F::from_ratio(1000, 1) {
                return Err(Error::Lp("infeasible"));
            }
            self.evict_artificials();
        }
        let mut cost = vec![F::zero(); self.n_total];
        cost[..self.n_struct].clone_from_slice(&lp.objective);
        let value = self.optimize(&cost, self.first_artificial)?;
        let mut x = vec![F::zero(); self.n_struct];
        let rhs = self.n_total;
        for (row, &b) in self.a.iter().zip(&self.basis) {
            if b < self.n_struct {
                x[b] = row[rhs].clone();
            }
        }
        Ok(LpSolution { value, x, pivots: self.pivots })
    }

    /// Minimizes `cost` letting only columns `< allowed` enter; returns the
    /// optimal value.
    fn optimize(&mut self, cost: &[F], allowed: usize) -> Result<F> {
        let tol = F::pivot_tolerance();
        let rhs = self.n_total;
        loop {
            // reduced costs c_j - c_B B^-1 A_j, computed from the tableau
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (row, &b) in self.a.iter().zip(&self.basis) {
                    if !cost[b].is_zero() && !row[j].is_zero() {
                        d -= cost[b].clone() * row[j].clone();
                    }
                }
                if d < -tol.clone() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                let mut value = F::zero();
                for (row, &b) in self.a.iter().zip(&self.basis) {
                    value += cost[b].clone() * row[rhs].clone();
                }
                return Ok(value);
            };
            let mut leave: Option<(usize, F)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if row[j] > tol {
                    let ratio = row[rhs].clone() / row[j].clone();
                    let better = match &leave {
                        None => true,
                        Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let (i, _) = leave.ok_or(Error::Lp("unbounded"))?;
            self.pivot(i, j);
            if self.pivots > self.cap() {
                return Err(Error::Lp("not solved within the pivot cap"));
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let p = self.a[r][c].clone();
        for v in &mut self.a[r] {
            if !v.is_zero() {
                *v /= p.clone();
            }
        }
        let pivot_row = std::mem::take(&mut self.a[r]);
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &nz {
                row[k] -= f.clone() * pivot_row[k].clone();
            }
            row[c] = F::zero();
        }
        self.a[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Pivots basic artificials (at level zero) out; rows with no other
    /// nonzero entry are redundant and dropped.
    fn evict_artificials(&mut self) {
        let tol = F::pivot_tolerance();
        let mut i = 0;
        while i < self.a.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| self.a[i][j].abs() > tol && !self.basis.contains(&j)) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.a.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}
