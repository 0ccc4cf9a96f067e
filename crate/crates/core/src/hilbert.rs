//! Exact univariate polynomials, Gotzmann decompositions and level profiles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_integers(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| q(v)).collect())
    }

    /// `t + c`.
    pub fn linear(c: BigRational) -> Self {
        UniPoly::new(vec![c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&q(t))
    }

    /// `p(t + s)`.
    pub fn shift(&self, s: i64) -> UniPoly {
        let lin = UniPoly::linear(q(s));
        let mut out = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &UniPoly::constant(c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        self + &(-o)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = abs.is_one();
            if k == 0 || !unit {
                write!(f, "{abs}")?;
            }
            if k > 0 && !unit {
                f.write_str("*")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<String>,
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson { coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pj = PolyJson::deserialize(d)?;
        let coeffs = pj
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(coeffs))
    }
}

/// Parse expressions such as `6t-3`, `3*t+1`, `t^2`, `1/2t^2+3/2t+1`.
pub fn parse_polynomial(text: &str) -> Result<UniPoly> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut acc = UniPoly::zero();
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    let skip_ws = |i: &mut usize| {
        while *i < b.len() && b[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let read_int = |i: &mut usize| -> Option<BigInt> {
        let s = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        (s < *i).then(|| text[s..*i].parse().expect("digits"))
    };
    skip_ws(&mut i);
    if i == b.len() {
        return Err(err(0, "empty polynomial"));
    }
    let mut first = true;
    while i < b.len() {
        skip_ws(&mut i);
        let mut sign = 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            if b[i] == b'-' {
                sign = -1;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(err(i, "expected `+` or `-`"));
        }
        first = false;
        let start = i;
        let mut coef = BigRational::one();
        let mut have_coef = false;
        if let Some(num) = read_int(&mut i) {
            have_coef = true;
            coef = BigRational::from_integer(num);
            skip_ws(&mut i);
            if i < b.len() && b[i] == b'/' {
                i += 1;
                skip_ws(&mut i);
                let den = read_int(&mut i).ok_or_else(|| err(i, "expected denominator"))?;
                if den.is_zero() {
                    return Err(err(i, "zero denominator"));
                }
                coef /= BigRational::from_integer(den);
            }
            skip_ws(&mut i);
        }
        let mut power = 0u32;
        if i < b.len() && b[i] == b'*' {
            if !have_coef {
                return Err(err(i, "unexpected `*`"));
            }
            i += 1;
            skip_ws(&mut i);
            if i >= b.len() || b[i] != b't' {
                return Err(err(i, "expected `t` after `*`"));
            }
        }
        if i < b.len() && b[i] == b't' {
            i += 1;
            power = 1;
            skip_ws(&mut i);
            if i < b.len() && b[i] == b'^' {
                i += 1;
                skip_ws(&mut i);
                let e = read_int(&mut i).ok_or_else(|| err(i, "expected exponent"))?;
                power = e.to_u32().ok_or_else(|| err(i, "exponent too large"))?;
            }
        } else if !have_coef {
            return Err(err(start, "expected a term"));
        }
        skip_ws(&mut i);
        let mut c = vec![BigRational::zero(); power as usize + 1];
        c[power as usize] = coef * q(sign);
        acc = &acc + &UniPoly::new(c);
    }
    Ok(acc)
}

/// `C(t + c, a)` as a polynomial in `t`; `C(., 0) = 1`.
pub fn binomial_poly(c: i64, a: u32) -> UniPoly {
    let mut p = UniPoly::constant(BigRational::one());
    let mut fact = BigInt::one();
    for k in 1..=a as i64 {
        p = &p * &UniPoly::linear(q(c - a as i64 + k));
        fact *= k;
    }
    p.scale(&BigRational::new(BigInt::one(), fact))
}

/// Integer binomial `C(m, k)` with `C(m, k) = 0` for `k < 0` or `0 <= m < k`.
pub fn binomial(m: i64, k: i64) -> BigInt {
    if k < 0 || (m >= 0 && m < k) {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= m - j;
        den *= j + 1;
    }
    num / den
}

/// `i`-fold backward difference.
pub fn finite_difference(p: &UniPoly, i: usize) -> UniPoly {
    let mut d = p.clone();
    for _ in 0..i {
        d = &d - &d.shift(-1);
    }
    d
}

/// A Hilbert polynomial with its Gotzmann decomposition `a_1 >= ... >= a_r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HilbertPolynomial {
    pub poly: UniPoly,
    pub gotzmann: Vec<u32>,
    pub r: usize,
}

/// Greedy decomposition `p(t) = sum_i C(t + a_i - i + 1, a_i)`.
pub fn gotzmann_decomposition(p: &UniPoly) -> Result<HilbertPolynomial> {
    let guard = p
        .eval_int(20)
        .to_integer()
        .to_i64()
        .map_or(200, |v| v.saturating_mul(4).max(200)) as usize;
    let mut f = p.clone();
    let mut a: Vec<u32> = Vec::new();
    while !f.is_zero() {
        if a.len() >= guard {
            return Err(Error::NotHilbertPolynomial(format!(
                "no termination after {guard} steps"
            )));
        }
        let i = a.len() as i64 + 1;
        let lead = f.leading().expect("nonzero");
        if lead.is_negative() {
            return Err(Error::NotHilbertPolynomial(format!(
                "step {i}: remainder {f} has negative leading coefficient"
            )));
        }
        let ai = f.degree().expect("nonzero") as u32;
        if a.last().is_some_and(|&prev| ai > prev) {
            return Err(Error::NotHilbertPolynomial(format!(
                "step {i}: a_{i} = {ai} exceeds a_{} = {}",
                i - 1,
                a[a.len() - 1]
            )));
        }
        f = &f - &binomial_poly(ai as i64 - i + 1, ai);
        a.push(ai);
    }
    let r = a.len();
    Ok(HilbertPolynomial { poly: p.clone(), gotzmann: a, r })
}

/// Reassemble `sum_i C(t + a_i - i + 1, a_i)`.
pub fn reconstruct(hp: &HilbertPolynomial) -> UniPoly {
    hp.gotzmann.iter().enumerate().fold(UniPoly::zero(), |acc, (k, &ai)| {
        &acc + &binomial_poly(ai as i64 - k as i64, ai)
    })
}

/// `q(t) = C(t + n, n) - p(t)`.
pub fn volume_polynomial(hp: &HilbertPolynomial, n: usize) -> Result<UniPoly> {
    if n == 0 {
        return Err(Error::ImproperSubscheme("ambient space must have n >= 1".into()));
    }
    if hp.poly.degree().is_some_and(|d| d >= n) {
        return Err(Error::ImproperSubscheme(format!(
            "deg p = {} is not below n = {n}",
            hp.poly.degree().unwrap()
        )));
    }
    let qp = &binomial_poly(n as i64, n as u32) - &hp.poly;
    if qp.is_zero() {
        return Err(Error::ImproperSubscheme("p(t) equals C(t+n, n)".into()));
    }
    if qp.eval_int(hp.r as i64).is_negative() {
        return Err(Error::ImproperSubscheme(format!("q({}) < 0", hp.r)));
    }
    Ok(qp)
}

/// Per-level counts `|J_0|, ..., |J_n|` at degree `r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LevelProfile {
    pub n: usize,
    pub r: usize,
    pub counts: Vec<usize>,
    pub q_r: usize,
}

impl LevelProfile {
    /// `|J_{>=i}|`.
    pub fn at_least(&self, i: usize) -> usize {
        self.counts[i..].iter().sum()
    }
}

pub fn level_profile(hp: &HilbertPolynomial, n: usize) -> Result<LevelProfile> {
    let qp = volume_polynomial(hp, n)?;
    let (ni, r) = (n as i64, hp.r as i64);
    let mut diffs = Vec::with_capacity(n + 2);
    let mut d = hp.poly.clone();
    for _ in 0..n + 2 {
        diffs.push(d.eval_int(r));
        d = &d - &d.shift(-1);
    }
    let mut counts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ii = i as i64;
        let c = BigRational::from_integer(binomial(ni + r - ii - 1, ni - ii)) - &diffs[i]
            + &diffs[i + 1];
        if !c.is_integer() || c.is_negative() {
            return Err(Error::InfeasibleProfile {
                level: i,
                count: c.to_integer().to_i64().unwrap_or(i64::MIN),
            });
        }
        counts.push(c.to_integer().to_usize().ok_or(Error::Overflow("level count"))?);
    }
    let q_r = qp.eval_int(r).to_integer().to_usize().ok_or(Error::Overflow("q(r)"))?;
    if counts.iter().sum::<usize>() != q_r {
        return Err(Error::Internal(format!("level counts do not sum to q(r) = {q_r}")));
    }
    Ok(LevelProfile { n, r: hp.r, counts, q_r })
}
