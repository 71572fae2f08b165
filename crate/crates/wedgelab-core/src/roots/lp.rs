//! Exact-rational two-phase simplex for the small cone LPs.
//!
//! Floating data is first rounded to the best rational approximation with
//! denominator at most [`MAX_DENOMINATOR`]; everything after that is exact.
//! Bland's rule guarantees termination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub const MAX_DENOMINATOR: i64 = 1_000_000;

/// Best rational approximation of `x` with denominator at most `max_den`.
pub fn rationalize(x: f64, max_den: i64) -> Q {
    let exact = match Q::from_float(x) {
        Some(q) => q,
        None => return Q::zero(),
    };
    let max_den = BigInt::from(max_den);
    if exact.denom() <= &max_den {
        return exact;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (exact.numer().clone(), exact.denom().clone());
    loop {
        let a = floor_div(&n, &d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (&max_den - &q0) / &q1;
    let b1 = Q::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let b2 = Q::new(p1, q1);
    if (&b2 - &exact).abs() <= (&b1 - &exact).abs() {
        b2
    } else {
        b1
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a / b;
    if (a % b != BigInt::zero()) && ((a < &BigInt::zero()) != (b < &BigInt::zero())) {
        q - 1
    } else {
        q
    }
}

pub fn rationalize_vec(v: &[f64]) -> Vec<Q> {
    v.iter().map(|x| rationalize(*x, MAX_DENOMINATOR)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..self.rows[i].len() {
                    let delta = &f * &self.rows[r][j];
                    self.rows[i][j] -= delta;
                }
                let delta = &f * &self.rhs[r];
                self.rhs[i] -= delta;
            }
        }
        self.basis[r] = c;
    }

    /// Maximize `cost · x` over columns with `allowed[j]`. Returns `false`
    /// when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let n = cost.len();
            let mut entering = None;
            for j in 0..n {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    r -= &cost[b] * &self.rows[i][j];
                }
                if r.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximize `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn solve(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect();
        for k in 0..m {
            row.push(if k == i { Q::one() } else { Q::zero() });
        }
        rows.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect() };
    let mut phase1 = vec![Q::zero(); n + m];
    for v in phase1.iter_mut().skip(n) {
        *v = -Q::one();
    }
    let all = vec![true; n + m];
    t.optimize(&phase1, &all);
    let infeasibility: Q = t
        .basis
        .iter()
        .zip(t.rhs.iter())
        .filter(|(b, _)| **b >= n)
        .map(|(_, v)| v.clone())
        .fold(Q::zero(), |acc, v| acc + v);
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
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
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat_n(Q::zero(), m));
    let mut allowed = vec![true; n];
    allowed.extend(std::iter::repeat_n(false, m));
    if !t.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rhs[i].clone();
        }
    }
    let value = x.iter().zip(c.iter()).fold(Q::zero(), |acc, (xi, ci)| acc + xi * ci);
    LpOutcome::Optimal { x, value }
}

/// Rank of a rational matrix (rows).
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..ncols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn transpose(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Is `x` a non-negative combination of `gens`?
pub fn in_cone(gens: &[Vec<Q>], x: &[Q]) -> bool {
    let dim = x.len();
    if gens.is_empty() {
        return x.iter().all(|v| v.is_zero());
    }
    let a = transpose(gens, dim);
    matches!(solve(&a, x, &vec![Q::zero(); gens.len()]), LpOutcome::Optimal { .. })
}

/// `cone(gens)` contains no line: `max Σλ` over `Gλ = 0`, `Σλ ≤ 1`,
/// `λ ≥ 0` is zero and no generator vanishes.
pub fn generators_pointed(gens: &[Vec<Q>], dim: usize) -> bool {
    if gens.iter().any(|g| g.iter().all(|v| v.is_zero())) {
        return false;
    }
    let k = gens.len();
    let mut a = transpose(gens, dim);
    for row in a.iter_mut() {
        row.push(Q::zero());
    }
    let mut last = vec![Q::one(); k];
    last.push(Q::one());
    a.push(last);
    let mut b = vec![Q::zero(); dim];
    b.push(Q::one());
    let mut c = vec![Q::one(); k];
    c.push(Q::zero());
    match solve(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => value.is_zero(),
        _ => false,
    }
}

/// `cone(gens)` spans the space.
pub fn generators_generating(gens: &[Vec<Q>], dim: usize) -> bool {
    rank(gens) == dim
}

/// `{x : fᵢ·x ≥ 0}` contains no line.
pub fn inequalities_pointed(ineqs: &[Vec<Q>], dim: usize) -> bool {
    rank(ineqs) == dim
}

/// `{x : fᵢ·x ≥ 0}` has interior: some `x` has `fᵢ·x ≥ 1` for all `i`.
pub fn inequalities_generating(ineqs: &[Vec<Q>], dim: usize) -> bool {
    let m = ineqs.len();
    if m == 0 {
        return true;
    }
    // x = u − v, F(u − v) − s = 1, u, v, s ≥ 0
    let a: Vec<Vec<Q>> = ineqs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut row: Vec<Q> = f.clone();
            row.extend(f.iter().map(|v| -v.clone()));
            row.extend((0..m).map(|k| if k == i { -Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let b = vec![Q::one(); m];
    matches!(solve(&a, &b, &vec![Q::zero(); 2 * dim + m]), LpOutcome::Optimal { .. })
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationalize_examples() {
        assert_eq!(rationalize(0.5, MAX_DENOMINATOR), q(1, 2));
        assert_eq!(rationalize(-2.0, MAX_DENOMINATOR), q(-2, 1));
        assert_eq!(rationalize(1.0 / 3.0, MAX_DENOMINATOR), q(1, 3));
        assert_eq!(rationalize(std::f64::consts::PI, 1000), q(355, 113));
        assert_eq!(rationalize(-1.0 / 3.0, MAX_DENOMINATOR), q(-1, 3));
    }

    #[test]
    fn simple_lp() {
        // max x + y  s.t. x + 2y + s = 4, 3x + y + t = 6
        let a = vec![
            vec![q(1, 1), q(2, 1), q(1, 1), q(0, 1)],
            vec![q(3, 1), q(1, 1), q(0, 1), q(1, 1)],
        ];
        let b = vec![q(4, 1), q(6, 1)];
        let c = vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)];
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(14, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![q(1, 1)]];
        assert_eq!(solve(&a, &[q(-1, 1)], &[q(0, 1)]), LpOutcome::Infeasible);
        let a = vec![vec![q(1, 1), q(-1, 1)]];
        assert_eq!(solve(&a, &[q(0, 1)], &[q(1, 1), q(0, 1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn cone_predicates() {
        let quadrant = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        assert!(in_cone(&quadrant, &[q(2, 1), q(3, 1)]));
        assert!(!in_cone(&quadrant, &[q(-1, 1), q(3, 1)]));
        assert!(generators_pointed(&quadrant, 2));
        assert!(generators_generating(&quadrant, 2));
        let halfplane = vec![vec![q(1, 1), q(0, 1)], vec![q(-1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        assert!(!generators_pointed(&halfplane, 2));
        assert!(inequalities_pointed(&quadrant, 2));
        assert!(inequalities_generating(&quadrant, 2));
        let line = vec![vec![q(1, 1), q(0, 1)], vec![q(-1, 1), q(0, 1)]];
        assert!(!inequalities_generating(&line, 2));
        assert!(!inequalities_pointed(&line[..1], 2));
    }
}
