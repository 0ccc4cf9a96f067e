//! Orienting the Borel graph, the orders ⪰ and ⪰⪰, and conversions between
//! weight vectors and term orders.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::adjacency::BorelGraph;
use crate::error::{Error, Result};
use crate::ideal::{MonomialSpace, StronglyStableIdeal};
use crate::monomial::{rank, Comparator, Monomial, TermOrderMatrix, WeightVector};

pub mod registry;

pub use registry::{OrderFamily, OrderRegistry};

/// Direction of an edge `(i, j)`, `i < j`: forward means `J_i → J_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeState {
    Forward,
    Backward,
    Undirected,
}

/// A Borel graph with every edge oriented from the ideal whose Borel maximum
/// wins under a comparator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationGraph {
    pub base: BorelGraph,
    pub states: Vec<EdgeState>,
    pub comparator: String,
}

/// Compact textual form of a comparator, kept with oriented graphs.
pub fn describe(cmp: &Comparator) -> String {
    let row = |r: &[BigRational]| r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
    match cmp {
        Comparator::Weight(w) => format!("weight:{}", row(w.entries())),
        Comparator::Term(m) => {
            format!("matrix:{}", m.rows().iter().map(|r| format!("[{}]", row(r))).collect::<Vec<_>>().join(""))
        }
    }
}

pub fn orient(g: &BorelGraph, cmp: &Comparator) -> Result<DegenerationGraph> {
    if let Some(v) = g.vertices.first() {
        if cmp.dim() != v.n() + 1 {
            return Err(Error::LengthMismatch(v.n() + 1, cmp.dim()));
        }
    }
    let states = g
        .edges
        .iter()
        .map(|e| match cmp.compare_unchecked(e.label.a.exps(), e.label.a_prime.exps()) {
            Ordering::Greater => EdgeState::Forward,
            Ordering::Less => EdgeState::Backward,
            Ordering::Equal => EdgeState::Undirected,
        })
        .collect();
    Ok(DegenerationGraph { base: g.clone(), states, comparator: describe(cmp) })
}

impl DegenerationGraph {
    pub fn is_directed(&self) -> bool {
        self.states.iter().all(|s| *s != EdgeState::Undirected)
    }

    /// Directed arcs `(from, to)`, skipping undirected edges.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.base
            .edges
            .iter()
            .zip(&self.states)
            .filter_map(|(e, s)| match s {
                EdgeState::Forward => Some((e.i, e.j)),
                EdgeState::Backward => Some((e.j, e.i)),
                EdgeState::Undirected => None,
            })
            .collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.base.len()];
        for (_, to) in self.arcs() {
            deg[to] += 1;
        }
        deg
    }

    /// A topological order of the directed part, or `None` if it has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.base.len();
        let mut deg = self.in_degrees();
        let mut out_adj = vec![Vec::new(); n];
        for (a, b) in self.arcs() {
            out_adj[a].push(b);
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &out_adj[v] {
                deg[w] -= 1;
                if deg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// `reach[u][v]`: there is a directed path from `u` to `v` (of length ≥ 1).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.base.len();
        let mut out_adj = vec![Vec::new(); n];
        for (a, b) in self.arcs() {
            out_adj[a].push(b);
        }
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = out_adj[s].clone();
                while let Some(v) = stack.pop() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.extend(&out_adj[v]);
                    }
                }
                seen
            })
            .collect()
    }
}

/// Vertices with no incoming edge, i.e. the maxima of ⪰.
pub fn sources(dg: &DegenerationGraph) -> Result<Vec<usize>> {
    if !dg.is_directed() {
        return Err(Error::MixedGraph);
    }
    Ok(dg.in_degrees().iter().enumerate().filter(|(_, &d)| d == 0).map(|(v, _)| v).collect())
}

/// Result of comparing two ideals under ⪰⪰.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DoubleOrder {
    JAbove,
    JPrimeAbove,
    Equal,
    Incomparable,
}

/// Position of every monomial of `T^n_r` under a term order (larger is bigger),
/// so that ⪰⪰ reduces to comparing sorted integer sequences.
pub struct OrderRanks {
    rank: Vec<u32>,
}

impl OrderRanks {
    pub fn new(space: &MonomialSpace, m: &TermOrderMatrix) -> Self {
        let mut idx: Vec<usize> = (0..space.len()).collect();
        idx.sort_by(|&a, &b| m.compare_unchecked(space.monomial(a).exps(), space.monomial(b).exps()));
        let mut rank = vec![0; space.len()];
        for (pos, i) in idx.into_iter().enumerate() {
            rank[i] = pos as u32;
        }
        OrderRanks { rank }
    }

    /// The ideal's members, ranked and sorted in decreasing order.
    pub fn sorted(&self, j: &StronglyStableIdeal) -> Vec<u32> {
        let mut v: Vec<u32> = j.bits().ones().map(|i| self.rank[i]).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

fn compare_sorted(a: &[u32], b: &[u32]) -> DoubleOrder {
    let (mut ge, mut le) = (true, true);
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Greater => le = false,
            Ordering::Less => ge = false,
            Ordering::Equal => {}
        }
    }
    match (ge, le) {
        (true, true) => DoubleOrder::Equal,
        (true, false) => DoubleOrder::JAbove,
        (false, true) => DoubleOrder::JPrimeAbove,
        (false, false) => DoubleOrder::Incomparable,
    }
}

pub fn double_order_compare(j: &StronglyStableIdeal, jp: &StronglyStableIdeal, m: &TermOrderMatrix) -> Result<DoubleOrder> {
    if !j.same_context(jp) {
        return Err(Error::ContextMismatch);
    }
    if m.dim() != j.n() + 1 {
        return Err(Error::LengthMismatch(j.n() + 1, m.dim()));
    }
    let ranks = OrderRanks::new(j.space(), m);
    Ok(compare_sorted(&ranks.sorted(j), &ranks.sorted(jp)))
}

/// Indices (into `candidates`) of the members not strictly below another member under ⪰⪰.
pub fn double_order_maxima_ranked(ranks: &OrderRanks, candidates: &[&StronglyStableIdeal]) -> Vec<usize> {
    let sorted: Vec<Vec<u32>> = candidates.iter().map(|j| ranks.sorted(j)).collect();
    (0..sorted.len())
        .filter(|&k| {
            !(0..sorted.len()).any(|l| l != k && compare_sorted(&sorted[l], &sorted[k]) == DoubleOrder::JAbove)
        })
        .collect()
}

/// Positions in `ideals` of the ⪰⪰-maximal ideals.
pub fn double_order_maxima(ideals: &[StronglyStableIdeal], m: &TermOrderMatrix) -> Result<Vec<usize>> {
    let Some(first) = ideals.first() else { return Ok(Vec::new()) };
    if ideals.iter().any(|j| !j.same_context(first)) {
        return Err(Error::ContextMismatch);
    }
    if m.dim() != first.n() + 1 {
        return Err(Error::LengthMismatch(first.n() + 1, m.dim()));
    }
    let ranks = OrderRanks::new(first.space(), m);
    let refs: Vec<&StronglyStableIdeal> = ideals.iter().collect();
    Ok(double_order_maxima_ranked(&ranks, &refs))
}

/// Refine a weight in `W̄` by a tie-breaking term order. Zero or negative
/// entries are first shifted into positivity; rows of the tiebreak that
/// become linearly dependent are dropped.
pub fn term_order_from_weight(w: &WeightVector, tiebreak: &TermOrderMatrix) -> Result<TermOrderMatrix> {
    if w.len() != tiebreak.dim() {
        return Err(Error::InvalidWeight(format!("length {} for {} variables", w.len(), tiebreak.dim())));
    }
    let e = w.entries();
    if e.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::InvalidWeight("entries must be non-decreasing".into()));
    }
    let w = w.shifted_positive();
    let mut rows = vec![w.entries().to_vec()];
    for r in tiebreak.rows() {
        let mut trial = rows.clone();
        trial.push(r.clone());
        if rank(&trial) == trial.len() {
            rows = trial;
        }
        if rows.len() == tiebreak.dim() {
            break;
        }
    }
    TermOrderMatrix::new(rows)
}

/// The weight constructed from the rows of `M`, lying in the open fan cone
/// of the `M`-degeneration graph.
pub fn weight_from_term_order(m: &TermOrderMatrix, dg: &DegenerationGraph) -> Result<WeightVector> {
    let (raw, _) = weight_from_term_order_raw(m, dg)?;
    let w0 = raw.entries()[0].clone();
    if w0.is_positive() {
        return Ok(raw);
    }
    let c = BigRational::one() - w0;
    WeightVector::new(raw.entries().iter().map(|x| x + &c).collect())
}

/// `(ω, λ)` before the positivity shift.
pub fn weight_from_term_order_raw(m: &TermOrderMatrix, dg: &DegenerationGraph) -> Result<(WeightVector, Vec<BigRational>)> {
    if !dg.is_directed() {
        return Err(Error::MixedGraph);
    }
    let rows = m.rows();
    let dim = m.dim();
    let dot = |r: &[BigRational], d: &[i64]| -> BigRational {
        r.iter().zip(d).map(|(x, &y)| x * BigRational::from_integer(y.into())).sum()
    };
    let first_nonzero = |vals: &[BigRational]| vals.iter().position(|v| !v.is_zero());
    // Per edge and per variable, the row values that decide them.
    let mut edge_vals: Vec<Vec<BigRational>> = Vec::new();
    for (e, s) in dg.base.edges.iter().zip(&dg.states) {
        let (win, lose) = match s {
            EdgeState::Forward => (&e.label.a, &e.label.a_prime),
            EdgeState::Backward => (&e.label.a_prime, &e.label.a),
            EdgeState::Undirected => unreachable!(),
        };
        let d = diff(win, lose);
        edge_vals.push(rows.iter().map(|r| dot(r, &d)).collect());
    }
    let var_vals: Vec<Vec<BigRational>> =
        (1..dim).map(|k| rows.iter().map(|r| &r[k] - &r[k - 1]).collect()).collect();
    let mut e_sets: Vec<Vec<usize>> = vec![Vec::new(); dim];
    let mut x_sets: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for (k, v) in edge_vals.iter().enumerate() {
        let i = first_nonzero(v).ok_or_else(|| Error::Internal("edge tied under a term order".into()))?;
        if !v[i].is_positive() {
            return Err(Error::Internal("graph is not oriented by this term order".into()));
        }
        e_sets[i].push(k);
    }
    for (k, v) in var_vals.iter().enumerate() {
        let i = first_nonzero(v).ok_or_else(|| Error::InvalidMatrix("two equal columns".into()))?;
        x_sets[i].push(k);
    }
    let mut lambda = vec![BigRational::zero(); dim];
    let Some(s) = (0..dim).rev().find(|&i| !e_sets[i].is_empty() || !x_sets[i].is_empty()) else {
        return Err(Error::Internal("no row decides anything".into()));
    };
    lambda[s] = BigRational::one();
    for i in (0..s).rev() {
        let bound = |vals: &Vec<BigRational>| -> BigRational {
            let tail: BigRational = (i + 1..dim).map(|j| &lambda[j] * &vals[j]).sum();
            -tail / &vals[i]
        };
        let candidates: Vec<BigRational> = e_sets[i]
            .iter()
            .map(|&k| bound(&edge_vals[k]))
            .chain(x_sets[i].iter().map(|&k| bound(&var_vals[k])))
            .collect();
        if let Some(mx) = candidates.into_iter().max() {
            lambda[i] = mx + BigRational::one();
        }
    }
    let omega: Vec<BigRational> =
        (0..dim).map(|c| (0..dim).map(|i| &lambda[i] * &rows[i][c]).sum()).collect();
    Ok((WeightVector::new(omega)?, lambda))
}

pub(crate) fn diff(a: &Monomial, b: &Monomial) -> Vec<i64> {
    a.exps().iter().zip(b.exps()).map(|(&x, &y)| x as i64 - y as i64).collect()
}

impl fmt::Display for DoubleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DoubleOrder::JAbove => "J above",
            DoubleOrder::JPrimeAbove => "J' above",
            DoubleOrder::Equal => "equal",
            DoubleOrder::Incomparable => "incomparable",
        };
        f.write_str(s)
    }
}
