//! Exact two-phase simplex over `BigRational` with Bland's rule.
//!
//! Variables are implicitly non-negative. Problem sizes here are tiny (a few
//! dozen columns), so reduced costs are recomputed from scratch at every step.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, point: Vec<BigRational> },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn objective(&self, cost: &[BigRational]) -> BigRational {
        let mut z = BigRational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            z += &cost[b] * self.rhs(i);
        }
        z
    }

    /// Runs simplex iterations to optimality. Returns false if unbounded.
    fn run(&mut self, cost: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.width {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x >= 0`.
pub fn maximize(objective: &[BigRational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    let mut slack_cols = 0;
    let mut art_cols = 0;
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint width");
        let flipped = c.rhs.is_negative();
        let rel = effective_relation(c.relation, flipped);
        match rel {
            Relation::Le => slack_cols += 1,
            Relation::Ge => {
                slack_cols += 1;
                art_cols += 1
            }
            Relation::Eq => art_cols += 1,
        }
    }
    let width = n + slack_cols + art_cols;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_slack = n;
    let mut next_art = n + slack_cols;
    for c in constraints {
        let flipped = c.rhs.is_negative();
        let sign = if flipped { -BigRational::from_integer(1.into()) } else { BigRational::from_integer(1.into()) };
        let mut row = vec![BigRational::zero(); width + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a * &sign;
        }
        row[width] = &c.rhs * &sign;
        match effective_relation(c.relation, flipped) {
            Relation::Le => {
                row[next_slack] = BigRational::from_integer(1.into());
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = BigRational::from_integer((-1).into());
                next_slack += 1;
                row[next_art] = BigRational::from_integer(1.into());
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = BigRational::from_integer(1.into());
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, width };
    let art_start = n + slack_cols;
    let is_art = |j: usize| j >= art_start;

    if art_cols > 0 {
        let cost: Vec<BigRational> = (0..width)
            .map(|j| if is_art(j) { BigRational::from_integer((-1).into()) } else { BigRational::zero() })
            .collect();
        let allowed = vec![true; width];
        t.run(&cost, &allowed);
        if t.objective(&cost).is_negative() {
            return LpOutcome::Infeasible;
        }
        let mut i = 0;
        while i < t.rows.len() {
            if is_art(t.basis[i]) {
                if let Some(j) = (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![BigRational::zero(); width];
    cost[..n].clone_from_slice(objective);
    let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
    if !t.run(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal { value: t.objective(&cost), point }
}

fn effective_relation(r: Relation, flipped: bool) -> Relation {
    match (r, flipped) {
        (Relation::Le, true) => Relation::Ge,
        (Relation::Ge, true) => Relation::Le,
        (r, _) => r,
    }
}
