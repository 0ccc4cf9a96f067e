//! Exact strict-feasibility test for a cone by a small simplex.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vector::primitive_big;
use super::Cone;

/// Dense tableau for `max c x` with `A x <= b`, `x >= 0`, `b >= 0`, so the slack
/// basis is feasible from the start. Pivots follow Bland's rule.
struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    /// Reduced costs `c_j - z_j`; optimal once none is positive.
    cost: Vec<BigRational>,
    value: BigRational,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(a: Vec<Vec<BigRational>>, b: Vec<BigRational>, c: Vec<BigRational>) -> Self {
        let m = a.len();
        let nv = c.len();
        let rows = a
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let mut cost = c;
        cost.extend(std::iter::repeat_n(BigRational::zero(), m));
        Tableau { rows, rhs: b, cost, value: BigRational::zero(), basis: (nv..nv + m).collect() }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, y) in self.cost.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Run to optimality; every problem built here is bounded.
    fn solve(&mut self) {
        while let Some(c) = self.cost.iter().position(|x| x.is_positive()) {
            let mut best: Option<(BigRational, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &row[c];
                let better = match &best {
                    None => true,
                    Some((r, k)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*k]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
            let (_, r) = best.expect("bounded by the box rows");
            self.pivot(r, c);
        }
    }

    fn primal(&self, nv: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); nv];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < nv {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A point strictly inside every strict row and on the right side of every
/// other row, as a primitive integer vector; `None` if there is none.
///
/// Variables are `ω = ω⁺ - ω⁻` and a margin `t`, all boxed by 1; the LP
/// maximises `t` subject to `<v, ω> >= t` on strict rows.
pub fn strict_feasible(c: &Cone) -> Option<Vec<i64>> {
    let d = c.dim;
    let nv = 2 * d + 1;
    let mut a: Vec<Vec<BigRational>> = Vec::new();
    let mut b: Vec<BigRational> = Vec::new();
    let mut push = |v: &[i64], margin: bool| {
        // -<v, ω> (+ t) <= 0
        let mut row: Vec<BigRational> = v.iter().map(|&x| q(-x)).collect();
        row.extend(v.iter().map(|&x| q(x)));
        row.push(if margin { BigRational::one() } else { BigRational::zero() });
        a.push(row);
        b.push(BigRational::zero());
    };
    for v in &c.strict {
        push(v, true);
    }
    for v in &c.nonstrict {
        push(v, false);
    }
    for v in &c.equalities {
        push(v, false);
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        push(&neg, false);
    }
    for k in 0..nv {
        let mut row = vec![BigRational::zero(); nv];
        row[k] = BigRational::one();
        a.push(row);
        b.push(BigRational::one());
    }
    let mut cost = vec![BigRational::zero(); nv];
    cost[nv - 1] = BigRational::one();
    let mut t = Tableau::new(a, b, cost);
    t.solve();
    if !t.value.is_positive() {
        return None;
    }
    let x = t.primal(nv);
    let omega: Vec<BigRational> = (0..d).map(|k| &x[k] - &x[d + k]).collect();
    Some(primitive_big(&omega))
}
