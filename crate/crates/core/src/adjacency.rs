//! Borel adjacency, the Borel graph and flat Borel deformations.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::StronglyStableIdeal;
use crate::monomial::{offset_is_decreasing, BorelCmp, Monomial, Offset};

/// Witness of Borel adjacency, read from the side of the first ideal:
/// `a` is the Borel maximum of `J \ J'`, `a_prime` that of `J' \ J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub a: Monomial,
    pub a_prime: Monomial,
    /// Sorted, always starting with the zero offset.
    pub offsets: Vec<Offset>,
    pub size: usize,
}

impl EdgeLabel {
    /// The same edge seen from the other endpoint.
    pub fn swapped(&self) -> EdgeLabel {
        EdgeLabel { a: self.a_prime.clone(), a_prime: self.a.clone(), offsets: self.offsets.clone(), size: self.size }
    }

    /// `(a + o, a' + o)` for every offset.
    pub fn pairs(&self) -> Vec<(Monomial, Monomial)> {
        self.offsets
            .iter()
            .map(|o| {
                let h = self.a.shift(o).expect("offset admissible for a");
                let t = self.a_prime.shift(o).expect("offset admissible for a'");
                (h, t)
            })
            .collect()
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⇋ {}", self.a, self.a_prime)
    }
}

fn difference(j: &StronglyStableIdeal, k: &StronglyStableIdeal) -> FixedBitSet {
    let mut d = j.bits().clone();
    d.difference_with(k.bits());
    d
}

/// The Borel maximum of a set of monomial indices, if it exists.
fn borel_maximum(j: &StronglyStableIdeal, set: &FixedBitSet) -> Option<usize> {
    // A Borel maximum is also the DegLex maximum, which has the smallest index.
    let top = set.ones().next()?;
    let sp = j.space();
    set.ones()
        .all(|i| i == top || sp.borel(top, i) == BorelCmp::Greater)
        .then_some(top)
}

fn offsets_from(j: &StronglyStableIdeal, max: usize, set: &FixedBitSet) -> BTreeSet<Offset> {
    let sp = j.space();
    let a = sp.monomial(max);
    set.ones().map(|i| Offset::between(a, sp.monomial(i))).collect()
}

/// Which of the two adjacency conditions holds for a pair of ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Adjacency {
    Adjacent(EdgeLabel),
    /// `J \ J'` (side 0) or `J' \ J` (side 1) has several Borel-maximal elements.
    NoBorelMaximum { side: u8, maximal: Vec<Monomial> },
    /// Both maxima exist but the offset sets differ.
    OffsetsDiffer { left: Vec<Offset>, right: Vec<Offset> },
}

fn maximal_elements(j: &StronglyStableIdeal, set: &FixedBitSet) -> Vec<Monomial> {
    let sp = j.space();
    set.ones()
        .filter(|&i| !set.ones().any(|k| sp.borel(k, i) == BorelCmp::Greater))
        .map(|i| sp.monomial(i).clone())
        .collect()
}

/// Check both adjacency conditions, reporting the first one that fails.
pub fn classify_pair(j: &StronglyStableIdeal, jp: &StronglyStableIdeal) -> Result<Adjacency> {
    if !j.same_context(jp) {
        return Err(Error::ContextMismatch);
    }
    if j == jp {
        return Err(Error::SameIdeal);
    }
    let d = difference(j, jp);
    let dp = difference(jp, j);
    let Some(a) = borel_maximum(j, &d) else {
        return Ok(Adjacency::NoBorelMaximum { side: 0, maximal: maximal_elements(j, &d) });
    };
    let Some(ap) = borel_maximum(j, &dp) else {
        return Ok(Adjacency::NoBorelMaximum { side: 1, maximal: maximal_elements(j, &dp) });
    };
    let offs = offsets_from(j, a, &d);
    let offs_p = offsets_from(j, ap, &dp);
    if offs != offs_p {
        return Ok(Adjacency::OffsetsDiffer { left: offs.into_iter().collect(), right: offs_p.into_iter().collect() });
    }
    for o in &offs {
        if !offset_is_decreasing(o)? {
            return Err(Error::Internal(format!("offset {:?} is not decreasing", o.delta)));
        }
    }
    let sp = j.space();
    Ok(Adjacency::Adjacent(EdgeLabel {
        a: sp.monomial(a).clone(),
        a_prime: sp.monomial(ap).clone(),
        size: offs.len(),
        offsets: offs.into_iter().collect(),
    }))
}

/// Decide Borel adjacency of `J` and `J'`.
pub fn borel_adjacent(j: &StronglyStableIdeal, jp: &StronglyStableIdeal) -> Result<Option<EdgeLabel>> {
    Ok(match classify_pair(j, jp)? {
        Adjacency::Adjacent(l) => Some(l),
        _ => None,
    })
}

/// An edge `{i, j}` with `i < j`; the label is read from vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub label: EdgeLabel,
}

/// Vertices are ideals, edges are Borel adjacent pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorelGraph {
    pub vertices: Vec<StronglyStableIdeal>,
    pub edges: Vec<Edge>,
}

impl BorelGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Neighbour lists as `(vertex, edge index)`.
    pub fn neighbours(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.i].push((e.j, k));
            adj[e.j].push((e.i, k));
        }
        adj
    }

    /// Edge between `u` and `v`, with the label read from `u`.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeLabel> {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        let e = self.edges.iter().find(|e| e.i == i && e.j == j)?;
        Some(if u == i { e.label.clone() } else { e.label.swapped() })
    }

    /// Edges incident to `v`, each label read from `v`, paired with the other endpoint.
    pub fn incident(&self, v: usize) -> Vec<(usize, EdgeLabel)> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.i == v {
                    Some((e.j, e.label.clone()))
                } else if e.j == v {
                    Some((e.i, e.label.swapped()))
                } else {
                    None
                }
            })
            .collect()
    }
}

/// All-pairs Borel adjacency; edges are sorted by `(i, j)`.
pub fn borel_graph(ideals: &[StronglyStableIdeal]) -> Result<BorelGraph> {
    if let Some(first) = ideals.first() {
        if ideals.iter().any(|j| !j.same_context(first)) {
            return Err(Error::ContextMismatch);
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..ideals.len()).flat_map(|i| (i + 1..ideals.len()).map(move |j| (i, j))).collect();
    let found: Vec<Option<Edge>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if ideals[i] == ideals[j] {
                return Ok(None);
            }
            Ok(borel_adjacent(&ideals[i], &ideals[j])?.map(|label| Edge { i, j, label }))
        })
        .collect::<Result<_>>()?;
    Ok(BorelGraph { vertices: ideals.to_vec(), edges: found.into_iter().flatten().collect() })
}

/// BFS distances from `src`; `None` for unreachable vertices.
pub fn distances(g: &BorelGraph, src: usize) -> Vec<Option<usize>> {
    let adj = g.neighbours();
    let mut dist = vec![None; g.len()];
    let mut queue = VecDeque::from([src]);
    dist[src] = Some(0);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("visited");
        for &(v, _) in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn is_connected(g: &BorelGraph) -> bool {
    g.is_empty() || distances(g, 0).iter().all(Option::is_some)
}

/// Largest pairwise distance, `None` if the graph is disconnected.
pub fn diameter(g: &BorelGraph) -> Option<usize> {
    (0..g.len())
        .map(|s| distances(g, s).into_iter().try_fold(0, |m, d| d.map(|d| m.max(d))))
        .try_fold(0, |m, d| d.map(|d| m.max(d)))
}

/// One generator of the Borel deformation: a shared monomial, or the
/// pencil `y0 * head + y1 * tail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeformationGenerator {
    Pure(Monomial),
    Pencil { head: Monomial, tail: Monomial },
}

impl fmt::Display for DeformationGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeformationGenerator::Pure(m) => write!(f, "{m}"),
            DeformationGenerator::Pencil { head, tail } => write!(f, "y0*{head} + y1*{tail}"),
        }
    }
}

fn check_label(j: &StronglyStableIdeal, jp: &StronglyStableIdeal, label: &EdgeLabel) -> Result<Vec<(Monomial, Monomial)>> {
    if !j.same_context(jp) {
        return Err(Error::ContextMismatch);
    }
    let mut heads = BTreeSet::new();
    let mut tails = BTreeSet::new();
    let mut pairs = Vec::new();
    for o in &label.offsets {
        let (Some(h), Some(t)) = (label.a.shift(o), label.a_prime.shift(o)) else {
            return Err(Error::LabelMismatch);
        };
        heads.insert(h.clone());
        tails.insert(t.clone());
        pairs.push((h, t));
    }
    let d: BTreeSet<Monomial> = difference(j, jp).ones().map(|i| j.space().monomial(i).clone()).collect();
    let dp: BTreeSet<Monomial> = difference(jp, j).ones().map(|i| j.space().monomial(i).clone()).collect();
    if heads != d || tails != dp || label.size != d.len() {
        return Err(Error::LabelMismatch);
    }
    Ok(pairs)
}

/// Generators of the Borel deformation joining `J` (at `y1 = 0`) and `J'` (at `y0 = 0`).
pub fn deformation_generators(
    j: &StronglyStableIdeal,
    jp: &StronglyStableIdeal,
    label: &EdgeLabel,
) -> Result<Vec<DeformationGenerator>> {
    let pairs = check_label(j, jp, label)?;
    let mut shared = j.bits().clone();
    shared.intersect_with(jp.bits());
    let mut out: Vec<DeformationGenerator> =
        pairs.into_iter().map(|(head, tail)| DeformationGenerator::Pencil { head, tail }).collect();
    out.extend(shared.ones().map(|i| DeformationGenerator::Pure(j.space().monomial(i).clone())));
    Ok(out)
}

/// A syzygy `x_i * head - x_h * partner` that did not lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyFailure {
    pub head: Monomial,
    pub i: usize,
    pub h: usize,
    pub partner: Monomial,
    /// The leftover is `T` times the sum of these signed monomials.
    pub residual: Vec<(i32, Monomial)>,
}

impl fmt::Display for SyzygyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}*{} - x{}*{} leaves ", self.i, self.head, self.h, self.partner)?;
        for (k, (c, m)) in self.residual.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            write!(f, "{sign}T*{m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyReport {
    pub checked: usize,
    pub failures: Vec<SyzygyFailure>,
}

impl SyzygyReport {
    pub fn lifts(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that every Eliahou–Kervaire syzygy among the heads of the marked set
/// `(J ∩ J') ∪ {head + T * tail}` lifts.
///
/// Without an explicit pairing the pairs come from the adjacency label, and a
/// non-adjacent pair is rejected with `NotAPairing`.
pub fn verify_syzygy_lifting(
    j: &StronglyStableIdeal,
    jp: &StronglyStableIdeal,
    pairing: Option<&[(Monomial, Monomial)]>,
) -> Result<SyzygyReport> {
    if !j.same_context(jp) {
        return Err(Error::ContextMismatch);
    }
    let sp = j.space();
    let pairs: Vec<(Monomial, Monomial)> = match pairing {
        Some(p) => {
            let heads: BTreeSet<&Monomial> = p.iter().map(|(h, _)| h).collect();
            let tails: BTreeSet<&Monomial> = p.iter().map(|(_, t)| t).collect();
            let d = difference(j, jp);
            let dp = difference(jp, j);
            let ok = heads.len() == p.len()
                && tails.len() == p.len()
                && heads.iter().all(|h| sp.index_of(h).is_some_and(|i| d.contains(i)))
                && tails.iter().all(|t| sp.index_of(t).is_some_and(|i| dp.contains(i)))
                && heads.len() == d.count_ones(..)
                && tails.len() == dp.count_ones(..);
            if !ok {
                return Err(Error::NotAPairing);
            }
            p.to_vec()
        }
        None => match borel_adjacent(j, jp)? {
            Some(label) => label.pairs(),
            None => return Err(Error::NotAPairing),
        },
    };
    let tail_of: HashMap<&Monomial, &Monomial> = pairs.iter().map(|(h, t)| (h, t)).collect();
    let in_shared = |m: &Monomial| sp.index_of(m).is_some_and(|i| j.contains_index(i) && jp.contains_index(i));
    let mut report = SyzygyReport { checked: 0, failures: Vec::new() };
    for (b, tail) in &pairs {
        let h = b.min_var().expect("positive degree");
        for i in h + 1..b.len() {
            report.checked += 1;
            let c = b.times_var(i).div(&Monomial::power(b.len(), h, 1)).expect("x_h divides b");
            let lifted_tail = tail.times_var(i);
            let residual = if let Some(tc) = tail_of.get(&c) {
                let other = tc.times_var(h);
                if other == lifted_tail {
                    continue;
                }
                vec![(1, lifted_tail), (-1, other)]
            } else {
                let quotient = lifted_tail.div(&Monomial::power(b.len(), h, 1));
                if quotient.as_ref().is_some_and(in_shared) {
                    continue;
                }
                vec![(1, lifted_tail)]
            };
            report.failures.push(SyzygyFailure { head: b.clone(), i, h, partner: c, residual });
        }
    }
    Ok(report)
}
