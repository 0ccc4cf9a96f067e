//! Exponent-vector monomials, the Borel partial order, elementary moves,
//! term-order matrices and weight vectors.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x0^e0 * ... * xn^en` in `n + 1` variables, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The pure power `x_i^e` in `len` variables.
    pub fn power(len: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; len];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Number of variables (`n + 1`).
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `|a|_i = a_i + ... + a_n`.
    pub fn suffix_sum(&self, i: usize) -> u32 {
        self.exps[i..].iter().sum()
    }

    /// Index of the smallest variable dividing the monomial (`min x^a`).
    pub fn min_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    /// Index of the largest variable dividing the monomial (`max x^a`).
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect()))
    }

    /// Multiply by `x_i`.
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps }
    }

    /// `self + o`, if every exponent stays non-negative.
    pub fn shift(&self, o: &Offset) -> Option<Monomial> {
        if o.delta.len() != self.exps.len() {
            return None;
        }
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&e, &d) in self.exps.iter().zip(&o.delta) {
            let v = e as i64 + d;
            if v < 0 {
                return None;
            }
            exps.push(u32::try_from(v).ok()?);
        }
        Some(Monomial { exps })
    }

    /// Parse the ASCII form `x0^2*x1` (or `1`) in `len` variables.
    pub fn parse(text: &str, len: usize) -> Result<Monomial> {
        let mut exps = vec![0u32; len];
        let t = text.trim();
        if t == "1" {
            return Ok(Monomial { exps });
        }
        let mut pos = text.len() - text.trim_start().len();
        for factor in t.split('*') {
            let err = |msg: &str| Error::Parse { pos, msg: msg.to_string() };
            let f = factor.trim();
            let rest = f.strip_prefix('x').ok_or_else(|| err("expected `x`"))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                None => (rest, 1),
            };
            let i: usize = idx.parse().map_err(|_| err("bad variable index"))?;
            if i >= len {
                return Err(err("variable index out of range"));
            }
            exps[i] = exps[i].checked_add(exp).ok_or(Error::Overflow("monomial parse"))?;
            pos += factor.len() + 1;
        }
        Ok(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_vars(f, &self.exps, 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes `x{first}^e0*x{first+1}^e1...`, suppressing zero exponents.
pub(crate) fn fmt_vars(f: &mut fmt::Formatter<'_>, exps: &[u32], first: usize) -> fmt::Result {
    let mut wrote = false;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if wrote {
            f.write_str("*")?;
        }
        write!(f, "x{}", i + first)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
        wrote = true;
    }
    if !wrote {
        f.write_str("1")?;
    }
    Ok(())
}

/// Outcome of a Borel comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BorelCmp {
    Greater,
    Less,
    Equal,
    Incomparable,
}

fn check_pair(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Compare two monomials of equal degree in the Borel order via suffix sums.
pub fn borel_compare(a: &Monomial, b: &Monomial) -> Result<BorelCmp> {
    check_pair(a, b)?;
    let (da, db) = (a.degree(), b.degree());
    if da != db {
        return Err(Error::DegreeMismatch(da, db));
    }
    Ok(borel_compare_unchecked(a.exps(), b.exps()))
}

pub(crate) fn borel_compare_unchecked(a: &[u32], b: &[u32]) -> BorelCmp {
    let (mut sa, mut sb) = (0u32, 0u32);
    let (mut ge, mut le) = (true, true);
    for i in (1..a.len()).rev() {
        sa += a[i];
        sb += b[i];
        match sa.cmp(&sb) {
            Ordering::Greater => le = false,
            Ordering::Less => ge = false,
            Ordering::Equal => {}
        }
    }
    match (ge, le) {
        (true, true) => BorelCmp::Equal,
        (true, false) => BorelCmp::Greater,
        (false, true) => BorelCmp::Less,
        (false, false) => BorelCmp::Incomparable,
    }
}

/// An elementary move: `Increasing(i)` multiplies by `x_{i+1}/x_i`,
/// `Decreasing(j)` multiplies by `x_{j-1}/x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Increasing(usize),
    Decreasing(usize),
}

/// Apply a move; `None` when it is inadmissible or its index is out of range.
pub fn apply_move(m: &Monomial, mv: Move) -> Option<Monomial> {
    let len = m.len();
    let (from, to) = match mv {
        Move::Increasing(i) if i + 1 < len => (i, i + 1),
        Move::Decreasing(j) if j >= 1 && j < len => (j, j - 1),
        _ => return None,
    };
    if m.exps[from] == 0 {
        return None;
    }
    let mut exps = m.exps.clone();
    exps[from] -= 1;
    exps[to] += 1;
    Some(Monomial { exps })
}

/// Net exponent displacement of a composition of moves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Offset {
    pub delta: Vec<i64>,
}

impl Offset {
    pub fn zero(len: usize) -> Self {
        Offset { delta: vec![0; len] }
    }

    /// `b - a`.
    pub fn between(a: &Monomial, b: &Monomial) -> Self {
        Offset {
            delta: a.exps().iter().zip(b.exps()).map(|(&x, &y)| y as i64 - x as i64).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.delta.iter().all(|&d| d == 0)
    }
}

/// True when the offset is realised by decreasing moves alone.
pub fn offset_is_decreasing(o: &Offset) -> Result<bool> {
    let sum: i64 = o.delta.iter().sum();
    if sum != 0 {
        return Err(Error::NonZeroSum(sum));
    }
    let mut s = 0i64;
    for i in (1..o.delta.len()).rev() {
        s += o.delta[i];
        if s > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn lcm_of_denominators(row: &[BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scale a rational row by the positive lcm of its denominators.
pub(crate) fn scale_to_integers(row: &[BigRational]) -> Result<Vec<i64>> {
    let l = lcm_of_denominators(row);
    row.iter()
        .map(|q| {
            (q.numer() * (&l / q.denom()))
                .to_i64()
                .ok_or(Error::Overflow("scaling rational row"))
        })
        .collect()
}

pub(crate) fn dot_i64(row: &[i64], a: &[u32]) -> i128 {
    row.iter().zip(a).map(|(&r, &e)| r as i128 * e as i128).sum()
}

/// A full-rank rational matrix whose rows compare monomials lexicographically.
#[derive(Clone, PartialEq, Eq)]
pub struct TermOrderMatrix {
    rows: Vec<Vec<BigRational>>,
    int_rows: Vec<Vec<i64>>,
}

impl fmt::Debug for TermOrderMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(|r| {
            r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
        })).finish()
    }
}

impl TermOrderMatrix {
    /// Validate and build; rows must be square, full rank and refine `x0 < ... < xn`.
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidMatrix(format!("expected a square matrix, got {m} rows")));
        }
        if rank(&rows) != m {
            return Err(Error::InvalidMatrix("matrix is not of full rank".into()));
        }
        for k in 0..m {
            if let Some(first) = rows.iter().map(|r| &r[k]).find(|q| !q.is_zero()) {
                if first.is_negative() {
                    return Err(Error::InvalidMatrix(format!("x{k} does not compare above 1")));
                }
            }
        }
        for k in 1..m {
            let first = rows.iter().map(|r| &r[k] - &r[k - 1]).find(|q| !q.is_zero());
            if !first.is_some_and(|q| q.is_positive()) {
                return Err(Error::InvalidMatrix(format!("order does not give x{k} > x{}", k - 1)));
            }
        }
        let int_rows = rows.iter().map(|r| scale_to_integers(r)).collect::<Result<Vec<_>>>()?;
        Ok(TermOrderMatrix { rows, int_rows })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Graded lexicographic order with `x0 < ... < xn`.
    pub fn deglex(n: usize) -> Self {
        let len = n + 1;
        let mut rows = vec![vec![1i64; len]];
        for k in (1..len).rev() {
            rows.push((0..len).map(|j| i64::from(j == k)).collect());
        }
        Self::from_integers(&rows).expect("DegLex matrix is valid")
    }

    /// Graded reverse lexicographic order with `x0 < ... < xn`.
    pub fn revlex(n: usize) -> Self {
        let len = n + 1;
        let mut rows = vec![vec![1i64; len]];
        for k in 0..n {
            rows.push((0..len).map(|j| -i64::from(j == k)).collect());
        }
        Self::from_integers(&rows).expect("RevLex matrix is valid")
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Sort key: larger key means larger monomial.
    pub fn key(&self, a: &Monomial) -> Vec<i128> {
        self.int_rows.iter().map(|r| dot_i64(r, a.exps())).collect()
    }

    pub(crate) fn compare_unchecked(&self, a: &[u32], b: &[u32]) -> Ordering {
        for r in &self.int_rows {
            let c = dot_i64(r, a).cmp(&dot_i64(r, b));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

/// Lexicographic sign of `M (a - b)`.
pub fn term_order_compare(m: &TermOrderMatrix, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    check_pair(a, b)?;
    if a.len() != m.dim() {
        return Err(Error::LengthMismatch(m.dim(), a.len()));
    }
    Ok(m.compare_unchecked(a.exps(), b.exps()))
}

/// A rational weight vector.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightVector {
    w: Vec<BigRational>,
    scaled: Vec<i64>,
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.w.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl WeightVector {
    pub fn new(w: Vec<BigRational>) -> Result<Self> {
        let scaled = scale_to_integers(&w)?;
        Ok(WeightVector { w, scaled })
    }

    pub fn from_integers(w: &[i64]) -> Self {
        WeightVector {
            w: w.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
            scaled: w.to_vec(),
        }
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.w
    }

    /// The vector scaled by a positive integer so that all entries are integers.
    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// Membership in `W`: `0 < w0 < w1 < ... < wn`.
    pub fn in_open_cone(&self) -> bool {
        self.w[0].is_positive() && self.w.windows(2).all(|p| p[0] < p[1])
    }

    /// Shift by `c (1,...,1)`, `c = 1 - min`, when some entry is not positive.
    pub fn shifted_positive(&self) -> WeightVector {
        let min = self.w.iter().min().cloned().unwrap_or_else(BigRational::zero);
        if min.is_positive() {
            return self.clone();
        }
        let c = BigRational::one() - min;
        WeightVector::new(self.w.iter().map(|q| q + &c).collect()).expect("shift keeps scale")
    }

    pub(crate) fn compare_unchecked(&self, a: &[u32], b: &[u32]) -> Ordering {
        dot_i64(&self.scaled, a).cmp(&dot_i64(&self.scaled, b))
    }
}

/// Sign of `<a - b, w>`.
pub fn weight_compare(w: &WeightVector, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    check_pair(a, b)?;
    if a.len() != w.len() {
        return Err(Error::LengthMismatch(w.len(), a.len()));
    }
    Ok(w.compare_unchecked(a.exps(), b.exps()))
}

/// Either a term order or a weight order on monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparator {
    Term(TermOrderMatrix),
    Weight(WeightVector),
}

impl Comparator {
    pub fn dim(&self) -> usize {
        match self {
            Comparator::Term(m) => m.dim(),
            Comparator::Weight(w) => w.len(),
        }
    }

    /// Term orders never tie on distinct monomials.
    pub fn is_total(&self) -> bool {
        matches!(self, Comparator::Term(_))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        match self {
            Comparator::Term(m) => term_order_compare(m, a, b),
            Comparator::Weight(w) => weight_compare(w, a, b),
        }
    }

    pub(crate) fn compare_unchecked(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            Comparator::Term(m) => m.compare_unchecked(a, b),
            Comparator::Weight(w) => w.compare_unchecked(a, b),
        }
    }
}

/// Rank of a rational matrix by Gaussian elimination.
pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rk, p);
        for i in rk + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[rk][c];
            for j in c..cols {
                let v = &f * &m[rk][j];
                m[i][j] -= v;
            }
        }
        rk += 1;
    }
    rk
}
