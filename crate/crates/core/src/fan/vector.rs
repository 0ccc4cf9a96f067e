//! Small integer vector helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divide by the gcd of the entries.
pub fn primitive(v: &[i128]) -> Result<Vec<i64>> {
    let g = gcd_all(v);
    v.iter()
        .map(|&x| {
            let y = if g == 0 { 0 } else { x / g };
            i64::try_from(y).map_err(|_| Error::Overflow("primitive vector"))
        })
        .collect()
}

pub fn primitive_i64(v: &[i64]) -> Vec<i64> {
    let w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    primitive(&w).expect("dividing never grows entries")
}

/// Clear denominators, then divide by the gcd.
pub fn primitive_big(v: &[BigRational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { 0 } else { (x / &g).to_i64().expect("small coordinates") })
        .collect()
}

/// `a p + b q`, made primitive.
pub fn combine(a: i128, p: &[i64], b: i128, q: &[i64]) -> Result<Vec<i64>> {
    let v: Vec<i128> = p
        .iter()
        .zip(q)
        .map(|(&x, &y)| {
            a.checked_mul(x as i128)
                .zip(b.checked_mul(y as i128))
                .and_then(|(s, t)| s.checked_add(t))
                .ok_or(Error::Overflow("ray combination"))
        })
        .collect::<Result<_>>()?;
    primitive(&v)
}

/// Sign normalisation: first non-zero entry positive. Returns the flip applied.
pub fn canonical_sign(v: &[i64]) -> (Vec<i64>, i8) {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => (v.iter().map(|y| -y).collect(), -1),
        _ => (v.to_vec(), 1),
    }
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(rows: &[&[i64]]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rk, p);
        for i in rk + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (f, g) = (m[rk][c].clone(), m[i][c].clone());
            for j in 0..cols {
                let v = &m[i][j] * &f - &m[rk][j] * &g;
                m[i][j] = v;
            }
            let h = m[i].iter().fold(BigInt::zero(), |h, x| h.gcd(x));
            if h.is_positive() {
                for x in m[i].iter_mut() {
                    *x /= &h;
                }
            }
        }
        rk += 1;
    }
    rk
}
