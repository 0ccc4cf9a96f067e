//! Spanning trees through hilb-segment ideals, maximality and segment cones,
//! irregular ideals and the lower bound on the number of components.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adjacency::{borel_adjacent, BorelGraph, EdgeLabel};
use crate::error::{Error, Result};
use crate::fan::{strict_feasible, Cone, GFan};
use crate::ideal::{borel_extremes, hyperplane_section, is_hilb_segment, SaturatedGenerators, StronglyStableIdeal};
use crate::monomial::{BorelCmp, Comparator, TermOrderMatrix, WeightVector};
use crate::orders::{diff, double_order_maxima_ranked, orient, sources, term_order_from_weight, OrderRanks};

fn borel_ge(j: &StronglyStableIdeal, a: usize, c: usize) -> bool {
    matches!(j.space().borel(a, c), BorelCmp::Greater | BorelCmp::Equal)
}

/// A Borel-adjacent ideal `I` with `I ≻_Ω J`, where `L` is the Ω-hilb-segment ideal.
pub fn dominating_adjacent(
    j: &StronglyStableIdeal,
    l: &StronglyStableIdeal,
    m: &TermOrderMatrix,
) -> Result<StronglyStableIdeal> {
    if !j.same_context(l) {
        return Err(Error::ContextMismatch);
    }
    if !is_hilb_segment(l, &Comparator::Term(m.clone()))? {
        return Err(Error::NotSegment);
    }
    if j.bits() == l.bits() {
        return Err(Error::SameIdeal);
    }
    let sp = j.space();
    let omega = |x: usize, y: usize| m.compare_unchecked(sp.monomial(x).exps(), sp.monomial(y).exps());
    let mut a_set: Vec<usize> = l.bits().ones().filter(|&i| !j.contains_index(i)).collect();
    let b_set: Vec<usize> = j.bits().ones().filter(|&i| !l.contains_index(i)).collect();
    let len = sp.monomial(0).len();

    loop {
        let a = *a_set
            .iter()
            .max_by(|&&x, &&y| omega(x, y))
            .ok_or_else(|| Error::Internal("segment procedure exhausted".into()))?;
        let k = sp.level(a);
        let b = *b_set
            .iter()
            .filter(|&&c| sp.level(c) == k)
            .min_by(|&&x, &&y| omega(x, y))
            .ok_or_else(|| Error::Internal(format!("no monomial of level {k} to swap")))?;
        let e: Vec<usize> = b_set.iter().copied().filter(|&c| borel_ge(j, b, c)).collect();

        // (†) every offset of E applies to x^a, landing outside J.
        let (ea, eb) = (sp.monomial(a).exps(), sp.monomial(b).exps());
        let mut f = Vec::with_capacity(e.len());
        for &c in &e {
            let ec = sp.monomial(c).exps();
            let img: Option<Vec<u32>> =
                (0..len).map(|t| u32::try_from(ea[t] as i64 + ec[t] as i64 - eb[t] as i64).ok()).collect();
            match img.and_then(|v| sp.index_of(&crate::monomial::Monomial::new(v))) {
                Some(i) if !j.contains_index(i) => f.push(i),
                _ => break,
            }
        }
        // (‡) the images form an outer border of J.
        let ok = f.len() == e.len()
            && f.iter().all(|&i| sp.increasing(i).iter().all(|&h| j.contains_index(h) || f.contains(&h)));
        if ok {
            let mut set: FixedBitSet = j.bits().clone();
            for &c in &e {
                set.set(c, false);
            }
            for &i in &f {
                set.insert(i);
            }
            return StronglyStableIdeal::from_set(sp.clone(), set);
        }
        a_set.retain(|&c| !borel_ge(j, a, c));
    }
}

/// A tree over the ideals rooted at the hilb-segment ideal; `parent[child] = (parent, label)`
/// with the label read from the parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub root: usize,
    pub parent: BTreeMap<usize, (usize, EdgeLabel)>,
}

impl SpanningTree {
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &EdgeLabel)> {
        self.parent.iter().map(|(&c, (p, l))| (*p, c, l))
    }
}

/// Index of the Ω-hilb-segment ideal, if the set has one.
pub fn segment_ideal(ideals: &[StronglyStableIdeal], m: &TermOrderMatrix) -> Result<Option<usize>> {
    let cmp = Comparator::Term(m.clone());
    for (k, j) in ideals.iter().enumerate() {
        if is_hilb_segment(j, &cmp)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Every ideal hangs from the ideal returned by [`dominating_adjacent`].
/// Positions in `ideals` serve as vertex ids.
pub fn spanning_tree(ideals: &[StronglyStableIdeal], m: &TermOrderMatrix) -> Result<SpanningTree> {
    let root = segment_ideal(ideals, m)?.ok_or(Error::NoSegmentIdeal)?;
    let pos: HashMap<&FixedBitSet, usize> = ideals.iter().enumerate().map(|(k, j)| (j.bits(), k)).collect();
    let l = &ideals[root];
    let parent = (0..ideals.len())
        .into_par_iter()
        .filter(|&k| k != root)
        .map(|k| {
            let i = dominating_adjacent(&ideals[k], l, m)?;
            let p = *pos.get(i.bits()).ok_or_else(|| Error::Internal("parent outside the ideal list".into()))?;
            let label = borel_adjacent(&ideals[p], &ideals[k])?
                .ok_or_else(|| Error::Internal("parent is not Borel adjacent".into()))?;
            Ok((k, (p, label)))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(SpanningTree { root, parent })
}

/// `MC(J)`: weights in `W` under which vertex `v` has no incoming edge.
pub fn maximality_cone(g: &BorelGraph, v: usize) -> Cone {
    let mut c = Cone::w(g.vertices[v].n());
    for (_, label) in g.incident(v) {
        c.push_strict(&diff(&label.a, &label.a_prime));
    }
    c.strict.sort();
    c.strict.dedup();
    c
}

/// `SC(J)`: weights in `W` under which `J` is a segment, from Borel-extremal pairs.
pub fn segment_cone(j: &StronglyStableIdeal) -> Cone {
    let mut c = Cone::w(j.n());
    let (mins, maxs) = borel_extremes(j);
    for a in &mins {
        for b in &maxs {
            c.push_strict(&diff(a, b));
        }
    }
    c.strict.sort();
    c.strict.dedup();
    c
}

/// `MC(J)` is non-empty and some segment row fails somewhere inside it.
pub fn is_irregular(g: &BorelGraph, v: usize) -> bool {
    let mc = maximality_cone(g, v);
    if strict_feasible(&mc).is_none() {
        return false;
    }
    let sc = segment_cone(&g.vertices[v]);
    let w_rows = Cone::w(g.vertices[v].n()).strict;
    sc.strict.iter().filter(|r| !w_rows.contains(r)).any(|row| {
        let mut probe = mc.clone();
        probe.nonstrict.push(row.iter().map(|x| -x).collect());
        strict_feasible(&probe).is_some()
    })
}

/// Bound data for one maximal cone and one tiebreak.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeBound {
    pub cone: usize,
    pub interior: Vec<i64>,
    pub tiebreak: usize,
    pub source_count: usize,
    pub double_max_count: usize,
    /// Ideal positions of the ⪰⪰-maxima.
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBoundReport {
    pub records: Vec<ConeBound>,
    pub m_sources: usize,
    pub m_certified: usize,
    /// Cones where some tiebreak gives fewer ⪰⪰-maxima than sources.
    pub conjecture_gap: Vec<usize>,
}

impl ComponentBoundReport {
    /// Number of cones per source count.
    pub fn source_distribution(&self) -> BTreeMap<usize, usize> {
        let mut per_cone: BTreeMap<usize, usize> = BTreeMap::new();
        for r in &self.records {
            per_cone.insert(r.cone, r.source_count);
        }
        let mut out = BTreeMap::new();
        for c in per_cone.values() {
            *out.entry(*c).or_insert(0) += 1;
        }
        out
    }

    /// Distinct witness sets attaining `m_certified`.
    pub fn certified_witnesses(&self) -> Vec<Vec<usize>> {
        let mut w: Vec<Vec<usize>> = self
            .records
            .iter()
            .filter(|r| r.double_max_count == self.m_certified)
            .map(|r| r.witnesses.clone())
            .collect();
        w.sort();
        w.dedup();
        w
    }
}

/// Per cone and tiebreak, the sources of the degeneration graph and their
/// ⪰⪰-maxima. The maxima among sources are the maxima over all ideals,
/// since every ideal is reached from some source by a refinement chain.
pub fn component_lower_bound(
    g: &BorelGraph,
    f: &GFan,
    tiebreaks: &[TermOrderMatrix],
) -> Result<ComponentBoundReport> {
    let Some(first) = g.vertices.first() else {
        return Ok(ComponentBoundReport { records: vec![], m_sources: 0, m_certified: 0, conjecture_gap: vec![] });
    };
    let space = first.space().clone();
    let records: Vec<ConeBound> = f
        .cones
        .par_iter()
        .enumerate()
        .map(|(k, c)| -> Result<Vec<ConeBound>> {
            let w = WeightVector::from_integers(&c.interior);
            let dg = orient(g, &Comparator::Weight(w.clone()))?;
            let src = sources(&dg)?;
            let refs: Vec<&StronglyStableIdeal> = src.iter().map(|&s| &g.vertices[s]).collect();
            tiebreaks
                .iter()
                .enumerate()
                .map(|(t, tb)| {
                    let m = term_order_from_weight(&w, tb)?;
                    let ranks = OrderRanks::new(&space, &m);
                    let witnesses: Vec<usize> =
                        double_order_maxima_ranked(&ranks, &refs).into_iter().map(|i| src[i]).collect();
                    Ok(ConeBound {
                        cone: k,
                        interior: c.interior.clone(),
                        tiebreak: t,
                        source_count: src.len(),
                        double_max_count: witnesses.len(),
                        witnesses,
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let m_sources = records.iter().map(|r| r.source_count).max().unwrap_or(0);
    let m_certified = records.iter().map(|r| r.double_max_count).max().unwrap_or(0);
    let mut conjecture_gap: Vec<usize> =
        records.iter().filter(|r| r.double_max_count != r.source_count).map(|r| r.cone).collect();
    conjecture_gap.dedup();
    Ok(ComponentBoundReport { records, m_sources, m_certified, conjecture_gap })
}

/// Ideals grouped by hyperplane section; larger groups first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionGroup {
    pub section: SaturatedGenerators,
    pub members: Vec<usize>,
}

pub fn hyperplane_section_groups(ideals: &[StronglyStableIdeal]) -> Vec<SectionGroup> {
    let mut groups: Vec<SectionGroup> = Vec::new();
    let mut at: HashMap<SaturatedGenerators, usize> = HashMap::new();
    for (k, j) in ideals.iter().enumerate() {
        let h = hyperplane_section(j);
        match at.get(&h) {
            Some(&g) => groups[g].members.push(k),
            None => {
                at.insert(h.clone(), groups.len());
                groups.push(SectionGroup { section: h, members: vec![k] });
            }
        }
    }
    groups.sort_by(|a, b| b.members.len().cmp(&a.members.len()).then_with(|| cmp_first(a, b)));
    groups
}

fn cmp_first(a: &SectionGroup, b: &SectionGroup) -> Ordering {
    a.members[0].cmp(&b.members[0])
}

/// Ideals whose maximality cones meet, with a point of the common interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibleSet {
    pub members: Vec<usize>,
    pub witness: Vec<i64>,
}

/// Inclusion-maximal sets of ideals with non-empty joint maximality cone,
/// taking at most one ideal per hyperplane section. Ideals with empty
/// maximality cone are left out; regular ones end up as singletons.
pub fn irregular_intersection_search(g: &BorelGraph) -> Vec<CompatibleSet> {
    let cones: Vec<Cone> = (0..g.len()).map(|v| maximality_cone(g, v)).collect();
    let alive: Vec<bool> = cones.par_iter().map(|c| strict_feasible(c).is_some()).collect();
    let groups: Vec<Vec<usize>> = hyperplane_section_groups(&g.vertices)
        .into_iter()
        .map(|s| s.members.into_iter().filter(|&v| alive[v]).collect::<Vec<_>>())
        .filter(|m| !m.is_empty())
        .collect();

    struct Search<'a> {
        cones: &'a [Cone],
        groups: &'a [Vec<usize>],
        found: Vec<CompatibleSet>,
    }
    impl Search<'_> {
        fn run(&mut self, depth: usize, chosen: &mut Vec<usize>, cone: &Cone, witness: &[i64]) {
            if depth == self.groups.len() {
                if !chosen.is_empty() {
                    let mut members = chosen.clone();
                    members.sort_unstable();
                    self.found.push(CompatibleSet { members, witness: witness.to_vec() });
                }
                return;
            }
            for &v in &self.groups[depth] {
                let next = cone.intersect(&self.cones[v]);
                if let Some(w) = strict_feasible(&next) {
                    chosen.push(v);
                    self.run(depth + 1, chosen, &next, &w);
                    chosen.pop();
                }
            }
            self.run(depth + 1, chosen, cone, witness);
        }
    }

    let n = g.vertices.first().map_or(0, |j| j.n());
    let mut s = Search { cones: &cones, groups: &groups, found: Vec::new() };
    s.run(0, &mut Vec::new(), &Cone::w(n), &[]);
    let found = s.found;
    let subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|x| b.contains(x));
    let mut out: Vec<CompatibleSet> =
        found.iter().filter(|s| !found.iter().any(|t| subset(&s.members, &t.members))).cloned().collect();
    out.sort_by(|a, b| b.members.len().cmp(&a.members.len()).then_with(|| a.members.cmp(&b.members)));
    out
}
