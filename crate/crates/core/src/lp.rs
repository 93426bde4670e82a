//! Exact two-phase primal simplex over the rationals.
//!
//! Variables are nonnegative. Bland's rule is used for both entering and
//! leaving choices, so the method terminates on degenerate problems.

use num::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    // reduced-cost row; last entry holds -objective
    obj: Vec<Rational>,
    ncols: usize,
}

impl Tableau {
    fn price_out(&mut self, costs: &[Rational]) {
        let mut obj = costs.to_vec();
        obj.resize(self.ncols + 1, Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if costs[b].is_zero() {
                continue;
            }
            let cb = costs[b].clone();
            for (o, r) in obj.iter_mut().zip(row) {
                *o -= &cb * r;
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over columns `< allowed`. Returns false when
    /// the objective is unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn value(&self) -> Rational {
        -self.obj[self.ncols].clone()
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x ≥ 0`.
pub fn maximize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let nvars = objective.len();
    let m = constraints.len();
    let nslack = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let art_start = nvars + nslack;
    let ncols = art_start + m;

    let mut rows = Vec::with_capacity(m);
    let mut slack = nvars;
    for (i, con) in constraints.iter().enumerate() {
        debug_assert_eq!(con.coeffs.len(), nvars);
        let mut row = vec![Rational::zero(); ncols + 1];
        row[..nvars].clone_from_slice(&con.coeffs);
        match con.relation {
            Relation::Le => {
                row[slack] = Rational::from_integer(1.into());
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = Rational::from_integer((-1).into());
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[ncols] = con.rhs.clone();
        if con.rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[art_start + i] = Rational::from_integer(1.into());
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        basis: (art_start..ncols).collect(),
        obj: Vec::new(),
        ncols,
    };

    // phase 1: maximize -(sum of artificials)
    let mut phase1 = vec![Rational::zero(); ncols];
    for c in phase1.iter_mut().skip(art_start) {
        *c = Rational::from_integer((-1).into());
    }
    t.price_out(&phase1);
    t.optimize(ncols);
    if t.value().is_negative() {
        return LpOutcome::Infeasible;
    }

    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art_start {
            match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut costs = objective.to_vec();
    costs.resize(ncols, Rational::zero());
    t.price_out(&costs);
    if !t.optimize(art_start) {
        return LpOutcome::Unbounded;
    }

    let mut point = vec![Rational::zero(); nvars];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < nvars {
            point[b] = row[ncols].clone();
        }
    }
    LpOutcome::Optimal {
        value: t.value(),
        point,
    }
}

/// Whether the constraint system has a nonnegative solution.
pub fn feasible(nvars: usize, constraints: &[Constraint]) -> bool {
    let zero = vec![Rational::zero(); nvars];
    !matches!(maximize(&zero, constraints), LpOutcome::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(coeffs.iter().map(|&v| int(v)).collect(), rel, int(rhs))
    }

    #[test]
    fn textbook_max() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let out = maximize(
            &[int(3), int(5)],
            &[
                c(&[1, 0], Relation::Le, 4),
                c(&[0, 2], Relation::Le, 12),
                c(&[3, 2], Relation::Le, 18),
            ],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: int(36),
                point: vec![int(2), int(6)]
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let out = maximize(
            &[int(1)],
            &[c(&[1], Relation::Ge, 3), c(&[1], Relation::Le, 2)],
        );
        assert_eq!(out, LpOutcome::Infeasible);
        let out = maximize(&[int(1), int(0)], &[c(&[1, -1], Relation::Le, 1)]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // x + y = 1, x - y >= -1/2 (as -x + y <= 1/2), max y -> 3/4
        let out = maximize(
            &[int(0), int(1)],
            &[
                c(&[1, 1], Relation::Eq, 1),
                Constraint::new(vec![int(1), int(-1)], Relation::Ge, frac(-1, 2)),
            ],
        );
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(3, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let out = maximize(
            &[int(1), int(1)],
            &[
                c(&[1, 1], Relation::Eq, 2),
                c(&[2, 2], Relation::Eq, 4),
                c(&[1, 0], Relation::Le, 1),
            ],
        );
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
