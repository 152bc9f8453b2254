//! Dense two-phase simplex over exact rationals.
//!
//! Bland's rule throughout (smallest improving column enters, ties in the
//! ratio test go to the smallest basic index), so the method terminates
//! without perturbation. Problem sizes here are tiny (tens of rows), so the
//! tableau is dense; row updates skip zero entries.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

/// Maximize `objective · x` subject to the constraints, with `x_j ≥ 0`
/// unless `free[j]`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Q>,
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { objective: vec![Q::zero(); num_vars], free: vec![false; num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) {
        assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Q>>, // each row: coefficients then rhs
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    // original var j -> (positive column, optional negative column)
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut kinds = Vec::new();
        let mut var_cols = Vec::new();
        for &free in &lp.free {
            let pos = kinds.len();
            kinds.push(ColKind::Structural);
            let neg = if free {
                kinds.push(ColKind::Structural);
                Some(pos + 1)
            } else {
                None
            };
            var_cols.push((pos, neg));
        }
        let m = lp.constraints.len();
        // normalize to nonnegative rhs
        let normalized: Vec<(Vec<Q>, Relation, Q)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|a| -a).collect(), rel, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let mut extra: Vec<Vec<(usize, Q)>> = vec![Vec::new(); m];
        let mut basis = vec![0; m];
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            match rel {
                Relation::Le => {
                    let c = kinds.len();
                    kinds.push(ColKind::Slack);
                    extra[i].push((c, Q::one()));
                    basis[i] = c;
                }
                Relation::Ge => {
                    let s = kinds.len();
                    kinds.push(ColKind::Slack);
                    extra[i].push((s, -Q::one()));
                    let a = kinds.len();
                    kinds.push(ColKind::Artificial);
                    extra[i].push((a, Q::one()));
                    basis[i] = a;
                }
                Relation::Eq => {
                    let a = kinds.len();
                    kinds.push(ColKind::Artificial);
                    extra[i].push((a, Q::one()));
                    basis[i] = a;
                }
            }
        }
        let width = kinds.len();
        let rows = normalized
            .into_iter()
            .enumerate()
            .map(|(i, (coeffs, _, rhs))| {
                let mut row = vec![Q::zero(); width + 1];
                for (j, a) in coeffs.into_iter().enumerate() {
                    let (pos, neg) = var_cols[j];
                    if let Some(neg) = neg {
                        row[neg] = -&a;
                    }
                    row[pos] = a;
                }
                for (c, v) in extra[i].drain(..) {
                    row[c] = v;
                }
                row[width] = rhs;
                row
            })
            .collect();
        Tableau { rows, basis, kinds, var_cols }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &nz {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Maximize `cost · x` over the current basis; columns with
    /// `allowed[j] == false` never enter. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        let width = self.width();
        loop {
            let mut entering = None;
            for j in 0..width {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                // reduced profit c_j - c_B B^-1 A_j
                let mut rc = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        let cb = &cost[self.basis[i]];
                        if !cb.is_zero() {
                            rc -= cb * &row[j];
                        }
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[width] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, c);
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let width = self.width();
        let has_artificial = self.kinds.contains(&ColKind::Artificial);
        if has_artificial {
            let cost: Vec<Q> =
                self.kinds.iter().map(|k| if *k == ColKind::Artificial { -Q::one() } else { Q::zero() }).collect();
            let allowed = vec![true; width];
            self.optimize(&cost, &allowed);
            let infeasible = self
                .basis
                .iter()
                .enumerate()
                .any(|(i, &b)| self.kinds[b] == ColKind::Artificial && !self.rows[i][width].is_zero());
            if infeasible {
                return LpOutcome::Infeasible;
            }
            // drive zero-valued artificials out of the basis
            let mut i = 0;
            while i < self.rows.len() {
                if self.kinds[self.basis[i]] == ColKind::Artificial {
                    let col = (0..width).find(|&j| self.kinds[j] != ColKind::Artificial && !self.rows[i][j].is_zero());
                    match col {
                        Some(j) => self.pivot(i, j),
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut cost = vec![Q::zero(); width];
        for (j, a) in lp.objective.iter().enumerate() {
            let (pos, neg) = self.var_cols[j];
            cost[pos] = a.clone();
            if let Some(neg) = neg {
                cost[neg] = -a;
            }
        }
        let allowed: Vec<bool> = self.kinds.iter().map(|k| *k != ColKind::Artificial).collect();
        if !self.optimize(&cost, &allowed) {
            return LpOutcome::Unbounded;
        }
        let mut col_value = vec![Q::zero(); width];
        for (i, &b) in self.basis.iter().enumerate() {
            col_value[b] = self.rows[i][width].clone();
        }
        let x: Vec<Q> = self
            .var_cols
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &col_value[pos] - &col_value[neg],
                None => col_value[pos].clone(),
            })
            .collect();
        let value = x.iter().zip(&lp.objective).fold(Q::zero(), |acc, (a, b)| acc + a * b);
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&a| q(a, 1)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.objective = qs(&[3, 5]);
        lp.add(qs(&[1, 0]), Relation::Le, q(4, 1));
        lp.add(qs(&[0, 2]), Relation::Le, q(12, 1));
        lp.add(qs(&[3, 2]), Relation::Le, q(18, 1));
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: qs(&[2, 6]), value: q(36, 1) });
    }

    #[test]
    fn equality_and_free_variable() {
        // max d s.t. d - x <= 0, d - y <= 0, x + y = 1, d free -> d = 1/2
        let mut lp = LinearProgram::new(3);
        lp.objective = qs(&[0, 0, 1]);
        lp.free[2] = true;
        lp.add(qs(&[-1, 0, 1]), Relation::Le, q(0, 1));
        lp.add(qs(&[0, -1, 1]), Relation::Le, q(0, 1));
        lp.add(qs(&[1, 1, 0]), Relation::Eq, q(1, 1));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(qs(&[1]), Relation::Ge, q(2, 1));
        lp.add(qs(&[1]), Relation::Le, q(1, 1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.objective = qs(&[1]);
        lp.add(qs(&[1]), Relation::Ge, q(1, 1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // max -x s.t. -x <= -3  -> x = 3
        let mut lp = LinearProgram::new(1);
        lp.objective = qs(&[-1]);
        lp.add(qs(&[-1]), Relation::Le, q(-3, 1));
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: qs(&[3]), value: q(-3, 1) });
    }

    #[test]
    fn degenerate_problem_terminates() {
        // classic Beale-style cycling example, Bland's rule must terminate
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![q(3, 4), q(-150, 1), q(1, 50), q(-6, 1)];
        lp.add(vec![q(1, 4), q(-60, 1), q(-1, 25), q(9, 1)], Relation::Le, q(0, 1));
        lp.add(vec![q(1, 2), q(-90, 1), q(-1, 50), q(3, 1)], Relation::Le, q(0, 1));
        lp.add(vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)], Relation::Le, q(1, 1));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
