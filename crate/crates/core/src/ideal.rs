//! Strongly stable ideals as Borel sets of degree-`r` monomials.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{level_profile, HilbertPolynomial};
use crate::monomial::{borel_compare_unchecked, fmt_vars, BorelCmp, Comparator, Monomial};

/// All monomials of degree `r` in `n + 1` variables, indexed by DegLex rank
/// (index 0 is `x_n^r`, the largest).
pub struct MonomialSpace {
    n: usize,
    r: usize,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    level: Vec<usize>,
    inc: Vec<Vec<usize>>,
    dec: Vec<Vec<usize>>,
}

impl fmt::Debug for MonomialSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}_{}", self.n, self.r)
    }
}

fn all_monomials(len: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == len {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=deg {
            prefix.push(e);
            rec(len, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, deg, &mut Vec::with_capacity(len), &mut out);
    out
}

/// DegLex on equal-degree exponent vectors: compare `x_n` first, then `x_{n-1}`, ...
pub(crate) fn deglex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

type SpaceCache = Mutex<HashMap<(usize, usize), Arc<MonomialSpace>>>;

impl MonomialSpace {
    /// The process-wide space for `(n, r)`, built on first use.
    pub fn new(n: usize, r: usize) -> Arc<Self> {
        static CACHE: OnceLock<SpaceCache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(sp) = cache.lock().expect("space cache").get(&(n, r)) {
            return sp.clone();
        }
        let sp = Self::build(n, r);
        cache.lock().expect("space cache").entry((n, r)).or_insert(sp).clone()
    }

    fn build(n: usize, r: usize) -> Arc<Self> {
        let mut raw = all_monomials(n + 1, r as u32);
        raw.sort_by(|a, b| deglex_cmp(b, a));
        let monos: Vec<Monomial> = raw.into_iter().map(Monomial::new).collect();
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let level = monos.iter().map(|m| m.min_var().unwrap_or(n)).collect();
        let step = |m: &Monomial, from: usize, to: usize| -> Option<usize> {
            if m.exps()[from] == 0 {
                return None;
            }
            let mut e = m.exps().to_vec();
            e[from] -= 1;
            e[to] += 1;
            Some(index[&Monomial::new(e)])
        };
        let inc = monos.iter().map(|m| (0..n).filter_map(|i| step(m, i, i + 1)).collect()).collect();
        let dec = monos.iter().map(|m| (1..=n).filter_map(|j| step(m, j, j - 1)).collect()).collect();
        Arc::new(MonomialSpace { n, r, monos, index, level, inc, dec })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `min` variable index of monomial `i`.
    pub fn level(&self, i: usize) -> usize {
        self.level[i]
    }

    /// Indices of the admissible increasing-move images of monomial `i`.
    pub fn increasing(&self, i: usize) -> &[usize] {
        &self.inc[i]
    }

    /// Indices of the admissible decreasing-move images of monomial `i`.
    pub fn decreasing(&self, i: usize) -> &[usize] {
        &self.dec[i]
    }

    pub(crate) fn borel(&self, i: usize, j: usize) -> BorelCmp {
        borel_compare_unchecked(self.monos[i].exps(), self.monos[j].exps())
    }
}

/// A strongly stable ideal `J`, represented by its Borel set in degree `r`.
#[derive(Clone)]
pub struct StronglyStableIdeal {
    space: Arc<MonomialSpace>,
    set: FixedBitSet,
    id: usize,
}

impl PartialEq for StronglyStableIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.space.n == o.space.n && self.space.r == o.space.r && self.set == o.set
    }
}

impl Eq for StronglyStableIdeal {}

impl Hash for StronglyStableIdeal {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.space.n.hash(h);
        self.space.r.hash(h);
        self.set.hash(h);
    }
}

impl fmt::Debug for StronglyStableIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J#{} {}", self.id, saturate(self))
    }
}

impl StronglyStableIdeal {
    /// Wrap a Borel set, validating closure under increasing moves.
    pub fn from_set(space: Arc<MonomialSpace>, set: FixedBitSet) -> Result<Self> {
        let ok = set.ones().all(|i| space.inc[i].iter().all(|&j| set.contains(j)));
        if !ok {
            return Err(Error::Internal("set is not closed under increasing moves".into()));
        }
        Ok(StronglyStableIdeal { space, set, id: 0 })
    }

    /// The degree-`r` part of the ideal generated by `gens`.
    pub fn from_generators(space: Arc<MonomialSpace>, gens: &[Monomial]) -> Result<Self> {
        let len = space.n + 1;
        if let Some(g) = gens.iter().find(|g| g.len() != len) {
            return Err(Error::LengthMismatch(len, g.len()));
        }
        let mut set = FixedBitSet::with_capacity(space.len());
        for (i, m) in space.monos.iter().enumerate() {
            if gens.iter().any(|g| g.divides(m)) {
                set.insert(i);
            }
        }
        Self::from_set(space, set)
    }

    /// Parse `(x3^2, x2*x3, x2^4)` and truncate in degree `r`.
    pub fn parse(text: &str, n: usize, r: usize) -> Result<Self> {
        let gens = parse_generators(text, n + 1)?;
        Self::from_generators(MonomialSpace::new(n, r), &gens)
    }

    pub fn space(&self) -> &Arc<MonomialSpace> {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn r(&self) -> usize {
        self.space.r
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn size(&self) -> usize {
        self.set.count_ones(..)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.space.index_of(m).is_some_and(|i| self.set.contains(i))
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.set.contains(i)
    }

    /// The Borel set in decreasing DegLex order.
    pub fn gens(&self) -> Vec<Monomial> {
        self.set.ones().map(|i| self.space.monos[i].clone()).collect()
    }

    /// The complement in `T^n_r`, in decreasing DegLex order.
    pub fn complement(&self) -> Vec<Monomial> {
        self.set.zeroes().map(|i| self.space.monos[i].clone()).collect()
    }

    /// `|J_0|, ..., |J_n|`.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.space.n + 1];
        for i in self.set.ones() {
            c[self.space.level[i]] += 1;
        }
        c
    }

    pub(crate) fn same_context(&self, o: &Self) -> bool {
        self.space.n == o.space.n && self.space.r == o.space.r
    }

    /// Canonical comparison of the decreasing-DegLex member lists.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        for (a, b) in self.set.ones().zip(o.set.ones()) {
            if a != b {
                return b.cmp(&a);
            }
        }
        self.size().cmp(&o.size())
    }
}

/// JSON form of an ideal: `{"id", "n", "r", "gens", "sat"}` with exponent vectors.
#[derive(Serialize, Deserialize)]
struct IdealRecord {
    #[serde(default)]
    id: usize,
    n: usize,
    r: usize,
    gens: Vec<Vec<u32>>,
    sat: Vec<Vec<u32>>,
}

impl Serialize for StronglyStableIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealRecord {
            id: self.id,
            n: self.n(),
            r: self.r(),
            gens: self.gens().into_iter().map(|m| m.exps().to_vec()).collect(),
            sat: saturate(self).gens.into_iter().map(|m| m.exps().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StronglyStableIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = IdealRecord::deserialize(d)?;
        let space = MonomialSpace::new(rec.n, rec.r);
        let mut set = FixedBitSet::with_capacity(space.len());
        for e in rec.gens {
            let i = space.index_of(&Monomial::new(e)).ok_or_else(|| D::Error::custom("monomial outside T^n_r"))?;
            set.insert(i);
        }
        StronglyStableIdeal::from_set(space, set)
            .map(|j| j.with_id(rec.id))
            .map_err(D::Error::custom)
    }
}

/// Closure of a same-degree set under admissible increasing moves.
pub fn is_borel_set(s: &[Monomial]) -> Result<bool> {
    let Some(first) = s.first() else { return Ok(true) };
    let deg = first.degree();
    let len = first.len();
    if s.iter().any(|m| m.degree() != deg) {
        return Err(Error::MixedDegrees);
    }
    if let Some(m) = s.iter().find(|m| m.len() != len) {
        return Err(Error::LengthMismatch(len, m.len()));
    }
    let set: BTreeSet<&Monomial> = s.iter().collect();
    for m in s {
        for i in 0..len - 1 {
            if let Some(img) = crate::monomial::apply_move(m, crate::monomial::Move::Increasing(i)) {
                if !set.contains(&img) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Minimal monomial generators, possibly in mixed degrees, of a saturated
/// ideal in the variables `x_first, ..., x_n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SaturatedGenerators {
    pub first_var: usize,
    pub gens: Vec<Monomial>,
}

impl SaturatedGenerators {
    /// Minimalize and sort: degree ascending, then RevLex descending.
    pub fn new(first_var: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let minimal: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        let mut gens = minimal;
        gens.sort_by(|a, b| {
            a.degree().cmp(&b.degree()).then_with(|| {
                // RevLex descending: smaller exponent of the smallest variable first.
                a.exps().cmp(b.exps())
            })
        });
        SaturatedGenerators { first_var, gens }
    }

    /// Parse `(x3, x2^6)` as generators in `x_first..x_n`.
    pub fn parse(text: &str, first_var: usize, n: usize) -> Result<Self> {
        let full = parse_generators(text, n + 1)?;
        if full.iter().any(|m| m.exps()[..first_var].iter().any(|&e| e > 0)) {
            return Err(Error::Parse { pos: 0, msg: format!("variables below x{first_var} not allowed") });
        }
        let gens = full.into_iter().map(|m| Monomial::new(m.exps()[first_var..].to_vec())).collect();
        Ok(SaturatedGenerators::new(first_var, gens))
    }

    /// The unit ideal `(1)`.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == 0)
    }
}

impl fmt::Display for SaturatedGenerators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            fmt_vars(f, g.exps(), self.first_var)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SaturatedGenerators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse a parenthesised, comma separated monomial list in `len` variables.
pub fn parse_generators(text: &str, len: usize) -> Result<Vec<Monomial>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or(Error::Parse { pos: 0, msg: "expected `( ... )`".into() })?;
    let mut out = Vec::new();
    let mut pos = 1;
    for part in inner.split(',') {
        out.push(Monomial::parse(part, len).map_err(|e| match e {
            Error::Parse { pos: p, msg } => Error::Parse { pos: pos + p, msg },
            other => other,
        })?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Strip the full power of `x_v` (relative index `v`) from each monomial, then minimalize.
fn saturate_by(ms: impl Iterator<Item = Monomial>, v: usize, first_var: usize) -> SaturatedGenerators {
    let gens = ms
        .map(|m| {
            let mut e = m.exps().to_vec();
            e[v] = 0;
            Monomial::new(e)
        })
        .collect();
    SaturatedGenerators::new(first_var, gens)
}

/// Minimal generators of `J^sat`.
pub fn saturate(j: &StronglyStableIdeal) -> SaturatedGenerators {
    saturate_by(j.set.ones().map(|i| j.space.monos[i].clone()), 0, 0)
}

/// Saturation of `J + (x_0)` in `K[x_1, ..., x_n]`.
pub fn hyperplane_section(j: &StronglyStableIdeal) -> SaturatedGenerators {
    let upper = j
        .set
        .ones()
        .filter(|&i| j.space.level[i] >= 1)
        .map(|i| Monomial::new(j.space.monos[i].exps()[1..].to_vec()));
    saturate_by(upper, 0, 1)
}

/// `(min_B J, max_B J^c)`, each in decreasing DegLex order.
pub fn borel_extremes(j: &StronglyStableIdeal) -> (Vec<Monomial>, Vec<Monomial>) {
    let sp = &j.space;
    let minimal = j
        .set
        .ones()
        .filter(|&i| sp.dec[i].iter().all(|&k| !j.set.contains(k)))
        .map(|i| sp.monos[i].clone())
        .collect();
    let maximal = j
        .set
        .zeroes()
        .filter(|&i| sp.inc[i].iter().all(|&k| j.set.contains(k)))
        .map(|i| sp.monos[i].clone())
        .collect();
    (minimal, maximal)
}

/// Every member of `J` beats every member of `J^c` under `cmp`.
pub fn is_hilb_segment(j: &StronglyStableIdeal, cmp: &Comparator) -> Result<bool> {
    if cmp.dim() != j.n() + 1 {
        return Err(Error::LengthMismatch(j.n() + 1, cmp.dim()));
    }
    let (mins, maxs) = borel_extremes(j);
    let mut tie = false;
    for a in &mins {
        for b in &maxs {
            match cmp.compare_unchecked(a.exps(), b.exps()) {
                Ordering::Greater => {}
                Ordering::Less => return Ok(false),
                Ordering::Equal => tie = true,
            }
        }
    }
    if tie {
        return Err(Error::AmbiguousUnderWeights);
    }
    Ok(true)
}

/// All strongly stable ideals with Hilbert polynomial `p` in `P^n`, in canonical order.
pub fn enumerate(hp: &HilbertPolynomial, n: usize) -> Result<Vec<StronglyStableIdeal>> {
    let profile = level_profile(hp, n)?;
    if hp.r == 0 {
        return Err(Error::EmptyDegree);
    }
    let space = MonomialSpace::new(n, hp.r);
    let mut layers = Layers::new(n);
    let sets = borel_sets(&space, &mut layers, 0, &profile.counts);
    let mut ideals = Vec::with_capacity(sets.len());
    for set in sets {
        let j = StronglyStableIdeal::from_set(space.clone(), set)?;
        if j.level_counts() != profile.counts {
            return Err(Error::Internal("level counts drifted during enumeration".into()));
        }
        ideals.push(j);
    }
    ideals.sort_by(|a, b| a.canonical_cmp(b));
    Ok(ideals.into_iter().enumerate().map(|(k, j)| j.with_id(k)).collect())
}

/// Monomials of one degree in `x_s, ..., x_n`, in increasing DegLex order,
/// so decreasing-move images always come first.
struct Layer {
    monos: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    dec: Vec<Vec<usize>>,
}

struct Layers {
    n: usize,
    cache: HashMap<(usize, usize), Arc<Layer>>,
}

impl Layers {
    fn new(n: usize) -> Self {
        Layers { n, cache: HashMap::new() }
    }

    fn get(&mut self, s: usize, d: usize) -> Arc<Layer> {
        let n = self.n;
        self.cache
            .entry((s, d))
            .or_insert_with(|| {
                let mut monos: Vec<Vec<u32>> = all_monomials(n + 1 - s, d as u32)
                    .into_iter()
                    .map(|tail| {
                        let mut e = vec![0; s];
                        e.extend(tail);
                        e
                    })
                    .collect();
                monos.sort_by(|a, b| deglex_cmp(a, b));
                let index: HashMap<Vec<u32>, usize> =
                    monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
                let dec = monos
                    .iter()
                    .map(|m| {
                        (s + 1..=n)
                            .filter(|&j| m[j] > 0)
                            .map(|j| {
                                let mut e = m.clone();
                                e[j] -= 1;
                                e[j - 1] += 1;
                                index[&e]
                            })
                            .collect()
                    })
                    .collect();
                Arc::new(Layer { monos, index, dec })
            })
            .clone()
    }
}

/// Borel sets in `T(x_f, ..., x_n)_r` whose level counts are `counts[f..]`, as
/// bitsets over `space`.
///
/// The part above level `f` comes from the recursive call. Writing the level-`f`
/// members as `x_f^(r-d) m` with `m` free of `x_f`, the missing `m` of each degree
/// `d` form a set `N_d` closed under decreasing moves, with `N_d` containing
/// `N_(d+1) : x_(f+1)`. Those chains are searched degree by degree, from the
/// complement of the upper part downwards.
fn borel_sets(space: &MonomialSpace, layers: &mut Layers, f: usize, counts: &[usize]) -> Vec<FixedBitSet> {
    let n = space.n;
    let r = space.r;
    if f == n {
        let mut set = FixedBitSet::with_capacity(space.len());
        return match counts[n] {
            0 => vec![set],
            1 => {
                set.insert(0);
                vec![set]
            }
            _ => Vec::new(),
        };
    }
    let level_size = layers.get(f, r - 1).monos.len();
    let Some(missing) = level_size.checked_sub(counts[f]) else { return Vec::new() };
    let s = f + 1;
    let top = layers.get(s, r);
    let max_below: Vec<usize> = (0..=r).scan(0, |acc, d| {
        let before = *acc;
        *acc += layers.get(s, d).monos.len();
        Some(before)
    }).collect();
    let mut out = Vec::new();
    for upper in borel_sets(space, layers, s, counts) {
        let mut n_top = FixedBitSet::with_capacity(top.monos.len());
        for (i, m) in top.monos.iter().enumerate() {
            if !upper.contains(space.index[&Monomial::new(m.clone())]) {
                n_top.insert(i);
            }
        }
        let mut chain = ChainSearch { layers, s, max_below: &max_below, stack: Vec::new(), found: Vec::new() };
        chain.run(r, n_top, missing);
        for found in chain.found {
            let mut set = upper.clone();
            // found[k] is N_(r-1-k)
            for (k, nd) in found.iter().enumerate() {
                let d = r - 1 - k;
                let layer = layers.get(s, d);
                for i in nd.zeroes() {
                    let mut e = layer.monos[i].clone();
                    e[f] += (r - d) as u32;
                    set.insert(space.index[&Monomial::new(e)]);
                }
            }
            out.push(set);
        }
    }
    out
}

struct ChainSearch<'a> {
    layers: &'a mut Layers,
    s: usize,
    /// `max_below[d]`: number of monomials of degree `< d` in `x_s, ..., x_n`.
    max_below: &'a [usize],
    stack: Vec<FixedBitSet>,
    found: Vec<Vec<FixedBitSet>>,
}

impl ChainSearch<'_> {
    /// `N_(d-1) ⊇ N_d : x_s`, as a bitset over the degree `d - 1` layer.
    fn colon(&mut self, d: usize, nd: &FixedBitSet) -> FixedBitSet {
        let upper = self.layers.get(self.s, d);
        let lower = self.layers.get(self.s, d - 1);
        let mut out = FixedBitSet::with_capacity(lower.monos.len());
        for i in nd.ones() {
            let m = &upper.monos[i];
            if m[self.s] > 0 {
                let mut e = m.clone();
                e[self.s] -= 1;
                out.insert(lower.index[&e]);
            }
        }
        out
    }

    /// Least total size of `N_(d-1), ..., N_0` forced by `N_d`.
    fn forced_below(&mut self, d: usize, nd: &FixedBitSet) -> usize {
        let mut total = 0;
        let mut cur = nd.clone();
        for e in (1..=d).rev() {
            cur = self.colon(e, &cur);
            let c = cur.count_ones(..);
            if c == 0 {
                break;
            }
            total += c;
        }
        total
    }

    /// `prev` is `N_d`; choose `N_(d-1), ..., N_0` with `budget` members in total.
    fn run(&mut self, d: usize, prev: FixedBitSet, budget: usize) {
        if d == 0 {
            if budget == 0 {
                self.found.push(self.stack.clone());
            }
            return;
        }
        let forced = self.colon(d, &prev);
        let lo = budget.saturating_sub(self.max_below[d - 1]);
        let floor = self.forced_below(d - 1, &forced);
        if floor > budget {
            return;
        }
        let hi = budget - floor;
        let layer = self.layers.get(self.s, d - 1);
        let mut options = Vec::new();
        downsets(&layer, forced, lo, hi, &mut options);
        for nd in options {
            let c = nd.count_ones(..);
            if self.forced_below(d - 1, &nd) + c > budget {
                continue;
            }
            self.stack.push(nd.clone());
            self.run(d - 1, nd, budget - c);
            self.stack.pop();
        }
    }
}

/// Every decreasing-move-closed subset of `layer` containing `base` (itself
/// closed) with size in `lo..=hi`.
fn downsets(layer: &Layer, base: FixedBitSet, lo: usize, hi: usize, out: &mut Vec<FixedBitSet>) {
    fn rec(layer: &Layer, i: usize, cur: &mut FixedBitSet, count: usize, lo: usize, hi: usize, out: &mut Vec<FixedBitSet>) {
        let len = layer.monos.len();
        if count > hi || count + (len - i) < lo {
            return;
        }
        if i == len {
            out.push(cur.clone());
            return;
        }
        if cur.contains(i) {
            rec(layer, i + 1, cur, count, lo, hi, out);
            return;
        }
        if layer.dec[i].iter().all(|&k| cur.contains(k)) {
            cur.insert(i);
            rec(layer, i + 1, cur, count + 1, lo, hi, out);
            cur.set(i, false);
        }
        rec(layer, i + 1, cur, count, lo, hi, out);
    }
    let count = base.count_ones(..);
    let mut cur = base;
    rec(layer, 0, &mut cur, count, lo, hi, out);
}

/// Exhaustive backtracking over the whole space; an independent route used to
/// cross-check [`enumerate`].
#[cfg(test)]
fn enumerate_exhaustive(hp: &HilbertPolynomial, n: usize) -> Vec<FixedBitSet> {
    let profile = level_profile(hp, n).unwrap();
    let space = MonomialSpace::new(n, hp.r);
    let mut search = Search::new(&space, profile.counts.clone());
    search.run(0);
    search.found
}

/// Backtracking over `T^n_r` in decreasing DegLex order.
#[cfg(test)]
struct Search<'a> {
    sp: &'a MonomialSpace,
    target: Vec<usize>,
    chosen: FixedBitSet,
    selected: Vec<usize>,
    /// Unprocessed, still selectable monomials per level.
    open: Vec<usize>,
    /// Number of excluded or blocked increasing-move images.
    blocked: Vec<u32>,
    found: Vec<FixedBitSet>,
}

#[cfg(test)]
impl<'a> Search<'a> {
    fn new(sp: &'a MonomialSpace, target: Vec<usize>) -> Self {
        let mut open = vec![0; sp.n + 1];
        for &l in &sp.level {
            open[l] += 1;
        }
        Search {
            sp,
            target,
            chosen: FixedBitSet::with_capacity(sp.len()),
            selected: vec![0; sp.n + 1],
            open,
            blocked: vec![0; sp.len()],
            found: Vec::new(),
        }
    }

    fn feasible(&self) -> bool {
        (0..self.target.len()).all(|l| {
            self.selected[l] <= self.target[l] && self.selected[l] + self.open[l] >= self.target[l]
        })
    }

    /// Mark every monomial below `i` as unselectable; `i` itself is already closed.
    fn block_below(&mut self, i: usize, undo: bool) {
        for k in 0..self.sp.dec[i].len() {
            let d = self.sp.dec[i][k];
            if undo {
                self.blocked[d] -= 1;
                if self.blocked[d] == 0 {
                    self.open[self.sp.level[d]] += 1;
                    self.block_below(d, true);
                }
            } else {
                self.blocked[d] += 1;
                if self.blocked[d] == 1 {
                    self.open[self.sp.level[d]] -= 1;
                    self.block_below(d, false);
                }
            }
        }
    }

    fn run(&mut self, i: usize) {
        if i == self.sp.len() {
            if self.selected == self.target {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        let l = self.sp.level[i];
        if self.blocked[i] > 0 {
            self.run(i + 1);
            return;
        }
        self.open[l] -= 1;
        self.selected[l] += 1;
        self.chosen.insert(i);
        if self.feasible() {
            self.run(i + 1);
        }
        self.chosen.set(i, false);
        self.selected[l] -= 1;
        self.block_below(i, false);
        if self.feasible() {
            self.run(i + 1);
        }
        self.block_below(i, true);
        self.open[l] += 1;
    }
}
