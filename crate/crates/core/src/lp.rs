//! Exact two-phase simplex over the rationals.
//!
//! Problems are `minimize c·x` subject to linear rows and `x >= 0`. The
//! tableau is dense; pivoting skips zero entries, which is where most of the
//! time would otherwise go with big rationals.

use crate::rational::{zero, Rational};
use num_traits::{Signed, Zero};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize objective·x` subject to `rows` and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Rational, Vec<Rational>)> {
        match self {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

/// Entering-variable rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest improving index; never cycles.
    Bland,
    /// Most negative reduced cost, switching to Bland's rule during runs of
    /// degenerate pivots so that cycling cannot occur.
    #[default]
    DantzigWithBlandFallback,
}

/// Consecutive degenerate pivots tolerated before Bland's rule takes over.
const DEGENERATE_STREAK: usize = 8;

impl LinearProgram {
    pub fn new(num_vars: usize) -> LinearProgram {
        LinearProgram {
            num_vars,
            objective: vec![zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn minimize(&mut self, objective: Vec<Rational>) {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push(Row { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        self.solve_with(PivotRule::default())
    }

    pub fn solve_with(&self, rule: PivotRule) -> LpOutcome {
        Tableau::build(self).run(self, rule)
    }

    /// Plain-text dump of the problem with exact coefficients.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let vec = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "vars {}", self.num_vars);
        let _ = writeln!(out, "min {}", vec(&self.objective));
        for r in &self.rows {
            let rel = match r.relation {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            let _ = writeln!(out, "{} {} {}", vec(&r.coeffs), rel, r.rhs);
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Original,
    Slack,
    Artificial,
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<Kind>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.rows.len();
        let n = lp.num_vars;
        let slacks = lp.rows.iter().filter(|r| r.relation != Relation::Eq).count();
        let mut kinds = vec![Kind::Original; n];
        kinds.extend(std::iter::repeat(Kind::Slack).take(slacks));
        let mut a = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack_col = n;
        let mut artificial_rows = Vec::new();
        for (i, row) in lp.rows.iter().enumerate() {
            // Negating `>= 0` rows lets their slack start in the basis.
            let flip = row.rhs.is_negative() || (row.rhs.is_zero() && row.relation == Relation::Ge);
            let mut coeffs: Vec<Rational> = row
                .coeffs
                .iter()
                .map(|c| if flip { -c } else { c.clone() })
                .collect();
            coeffs.resize(n + slacks, zero());
            let relation = match (row.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match relation {
                Relation::Le => {
                    coeffs[slack_col] = Rational::from_integer(1.into());
                    basis.push(slack_col);
                    slack_col += 1;
                }
                Relation::Ge => {
                    coeffs[slack_col] = Rational::from_integer((-1).into());
                    slack_col += 1;
                    basis.push(usize::MAX);
                    artificial_rows.push(i);
                }
                Relation::Eq => {
                    basis.push(usize::MAX);
                    artificial_rows.push(i);
                }
            }
            a.push(coeffs);
            rhs.push(if flip { -&row.rhs } else { row.rhs.clone() });
        }
        let width = n + slacks + artificial_rows.len();
        for row in a.iter_mut() {
            row.resize(width, zero());
        }
        for (k, &i) in artificial_rows.iter().enumerate() {
            let col = n + slacks + k;
            a[i][col] = Rational::from_integer(1.into());
            basis[i] = col;
            kinds.push(Kind::Artificial);
        }
        Tableau { a, rhs, basis, kinds }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut z = cost.to_vec();
        for (i, row) in self.a.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    z[j] -= cb * v;
                }
            }
        }
        z
    }

    fn pivot(&mut self, r: usize, c: usize, z: &mut [Rational]) {
        let piv = self.a[r][c].clone();
        let nz: Vec<usize> = (0..self.width()).filter(|&j| !self.a[r][j].is_zero()).collect();
        for &j in &nz {
            self.a[r][j] /= &piv;
        }
        self.rhs[r] /= &piv;
        let (pivot_row, pivot_rhs) = (self.a[r].clone(), self.rhs[r].clone());
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.a[i][j] -= d;
            }
            let d = &f * &pivot_rhs;
            self.rhs[i] -= d;
        }
        if !z[c].is_zero() {
            let f = z[c].clone();
            for &j in &nz {
                z[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on reduced costs `z`; returns false if unbounded.
    fn optimize(&mut self, z: &mut [Rational], allowed: &[bool], rule: PivotRule) -> bool {
        let mut streak = 0usize;
        loop {
            let use_bland = rule == PivotRule::Bland || streak >= DEGENERATE_STREAK;
            let mut entering: Option<usize> = None;
            for j in 0..self.width() {
                if !allowed[j] || !z[j].is_negative() {
                    continue;
                }
                if use_bland {
                    entering = Some(j);
                    break;
                }
                if entering.map_or(true, |e| z[j] < z[e]) {
                    entering = Some(j);
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.a[i][c];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else { return false };
            if ratio.is_zero() {
                streak += 1;
            } else {
                streak = 0;
            }
            self.pivot(r, c, z);
        }
    }

    fn run(mut self, lp: &LinearProgram, rule: PivotRule) -> LpOutcome {
        let width = self.width();
        if self.kinds.contains(&Kind::Artificial) {
            let cost: Vec<Rational> = self
                .kinds
                .iter()
                .map(|k| Rational::from_integer(num_bigint::BigInt::from((*k == Kind::Artificial) as i32)))
                .collect();
            let mut z = self.reduced_costs(&cost);
            let all = vec![true; width];
            self.optimize(&mut z, &all, rule);
            let infeasibility: Rational = (0..self.a.len())
                .filter(|&i| self.kinds[self.basis[i]] == Kind::Artificial)
                .map(|i| self.rhs[i].clone())
                .sum();
            if infeasibility.is_positive() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-valued artificials out of the basis; drop redundant rows.
            let mut i = 0;
            while i < self.a.len() {
                if self.kinds[self.basis[i]] == Kind::Artificial {
                    let col = (0..width)
                        .find(|&j| self.kinds[j] != Kind::Artificial && !self.a[i][j].is_zero());
                    match col {
                        Some(j) => {
                            let mut dummy = vec![zero(); width];
                            self.pivot(i, j, &mut dummy);
                        }
                        None => {
                            self.a.remove(i);
                            self.rhs.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut cost = vec![zero(); width];
        cost[..lp.num_vars].clone_from_slice(&lp.objective);
        let mut z = self.reduced_costs(&cost);
        let allowed: Vec<bool> = self.kinds.iter().map(|k| *k != Kind::Artificial).collect();
        if !self.optimize(&mut z, &allowed, rule) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![zero(); lp.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < lp.num_vars {
                x[b] = self.rhs[i].clone();
            }
        }
        let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { value, x }
    }
}

/// Whether `point` is a convex combination of `points`, with weights if so.
pub fn convex_combination(points: &[Vec<Rational>], point: &[Rational]) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let m = points.len();
    let mut lp = LinearProgram::new(m);
    for d in 0..point.len() {
        lp.add(points.iter().map(|p| p[d].clone()).collect(), Relation::Eq, point[d].clone());
    }
    lp.add(vec![Rational::from_integer(1.into()); m], Relation::Eq, Rational::from_integer(1.into()));
    lp.solve().optimal().map(|(_, x)| x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_maximization() {
        // max 3x + 2y st x + y <= 4, x + 3y <= 6, x <= 3
        let mut lp = LinearProgram::new(2);
        lp.minimize(v(&[-3, -2]));
        lp.add(v(&[1, 1]), Relation::Le, int(4));
        lp.add(v(&[1, 3]), Relation::Le, int(6));
        lp.add(v(&[1, 0]), Relation::Le, int(3));
        for rule in [PivotRule::Bland, PivotRule::DantzigWithBlandFallback] {
            let (value, x) = lp.solve_with(rule).optimal().unwrap();
            assert_eq!(value, int(-11));
            assert_eq!(x, v(&[3, 1]));
        }
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + 2y st x + y = 1, x - y >= -1/2
        let mut lp = LinearProgram::new(2);
        lp.minimize(v(&[1, 2]));
        lp.add(v(&[1, 1]), Relation::Eq, int(1));
        lp.add(v(&[1, -1]), Relation::Ge, ratio(-1, 2));
        let (value, x) = lp.solve().optimal().unwrap();
        assert_eq!(value, int(1));
        assert_eq!(x, vec![int(1), int(0)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(v(&[1]), Relation::Ge, int(2));
        lp.add(v(&[1]), Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(2);
        lp.minimize(v(&[-1, 0]));
        lp.add(v(&[1, -1]), Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.minimize(v(&[1, 1]));
        lp.add(v(&[1, 1]), Relation::Eq, int(2));
        lp.add(v(&[2, 2]), Relation::Eq, int(4));
        assert_eq!(lp.solve().optimal().unwrap().0, int(2));
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // A classic instance on which the textbook largest-coefficient rule cycles.
        let mut lp = LinearProgram::new(4);
        lp.minimize(vec![ratio(-3, 4), int(150), ratio(-1, 50), int(6)]);
        lp.add(vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)], Relation::Le, int(0));
        lp.add(vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)], Relation::Le, int(0));
        lp.add(v(&[0, 0, 1, 0]), Relation::Le, int(1));
        for rule in [PivotRule::Bland, PivotRule::DantzigWithBlandFallback] {
            assert_eq!(lp.solve_with(rule).optimal().unwrap().0, ratio(-1, 20));
        }
    }

    #[test]
    fn convex_combination_membership() {
        let pts = vec![v(&[1, 0]), v(&[0, 1])];
        assert!(convex_combination(&pts, &[ratio(1, 3), ratio(2, 3)]).is_some());
        assert!(convex_combination(&pts, &[ratio(1, 3), ratio(1, 3)]).is_none());
    }

    #[test]
    fn dump_lists_rows() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![ratio(1, 2)], Relation::Ge, int(1));
        assert!(lp.dump().contains("1/2 >= 1"));
    }
}
