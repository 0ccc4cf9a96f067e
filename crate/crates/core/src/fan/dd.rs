//! Double description of pointed cones inside `W̄`: a cone is kept as its
//! extreme rays together with the inequalities that support them, and is cut
//! by one halfspace at a time.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

use super::vector::{combine, dot, rank};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub rays: Vec<Vec<i64>>,
    /// Inequalities `<v, ω> >= 0`, each tight on a maximal proper subset of rays.
    pub facets: Vec<Vec<i64>>,
}

/// Where a cell lies relative to the hyperplane `<v, ω> = 0`.
pub enum Split {
    Plus(Cell),
    Minus(Cell),
    Both(Cell, Cell),
}

impl Cell {
    /// `W̄ = {0 <= ω0 <= ω1 <= ... <= ω_(d-1)}`.
    pub fn w_closure(d: usize) -> Cell {
        let rays = (0..d).map(|k| (0..d).map(|j| i64::from(j >= k)).collect()).collect();
        let mut facets = vec![(0..d).map(|j| i64::from(j == 0)).collect::<Vec<i64>>()];
        for k in 1..d {
            facets.push((0..d).map(|j| if j == k { 1 } else if j + 1 == k { -1 } else { 0 }).collect());
        }
        Cell { rays, facets }
    }

    pub fn dim(&self) -> usize {
        let refs: Vec<&[i64]> = self.rays.iter().map(|r| r.as_slice()).collect();
        rank(&refs)
    }

    /// Sum of the extreme rays, a point of the relative interior.
    pub fn interior(&self) -> Vec<i64> {
        let d = self.rays.first().map_or(0, |r| r.len());
        let sum: Vec<i128> = (0..d).map(|k| self.rays.iter().map(|r| r[k] as i128).sum()).collect();
        super::vector::primitive(&sum).expect("ray sums stay small")
    }

    fn tight_sets(&self, facets: &[Vec<i64>]) -> Vec<FixedBitSet> {
        self.rays
            .iter()
            .map(|r| {
                let mut z = FixedBitSet::with_capacity(facets.len());
                for (k, f) in facets.iter().enumerate() {
                    if dot(f, r) == 0 {
                        z.insert(k);
                    }
                }
                z
            })
            .collect()
    }

    /// Keep `<v, ω> >= 0`; `vals` are the values of `v` on the rays.
    fn cut(&self, v: &[i64], vals: &[i128]) -> Result<Cell> {
        let z = self.tight_sets(&self.facets);
        let mut rays: Vec<Vec<i64>> =
            self.rays.iter().zip(vals).filter(|(_, &s)| s >= 0).map(|(r, _)| r.clone()).collect();
        for (p, &sp) in vals.iter().enumerate() {
            if sp <= 0 {
                continue;
            }
            for (q, &sq) in vals.iter().enumerate() {
                if sq >= 0 || !adjacent(&z, p, q) {
                    continue;
                }
                rays.push(combine(sp, &self.rays[q], -sq, &self.rays[p])?);
            }
        }
        rays.sort();
        rays.dedup();
        let mut facets = self.facets.clone();
        facets.push(v.to_vec());
        Ok(Cell::prune(rays, facets))
    }

    /// Drop inequalities that are not facets of the cone spanned by `rays`.
    fn prune(rays: Vec<Vec<i64>>, facets: Vec<Vec<i64>>) -> Cell {
        let n = rays.len();
        let tight: Vec<FixedBitSet> = facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(n);
                for (k, r) in rays.iter().enumerate() {
                    if dot(f, r) == 0 {
                        s.insert(k);
                    }
                }
                s
            })
            .collect();
        let mut keep: Vec<usize> = Vec::new();
        for (k, s) in tight.iter().enumerate() {
            let c = s.count_ones(..);
            if c == 0 || c == n {
                continue;
            }
            let dominated = tight.iter().enumerate().any(|(l, t)| {
                l != k && s.is_subset(t) && (t.count_ones(..) < n) && (s != t || l < k)
            });
            if !dominated {
                keep.push(k);
            }
        }
        let mut facets: Vec<Vec<i64>> = keep.into_iter().map(|k| facets[k].clone()).collect();
        facets.sort();
        Cell { rays, facets }
    }

    /// The part of the cell with `<v, ω> >= 0`, or `None` if only the origin remains.
    pub fn restrict(&self, v: &[i64]) -> Result<Option<Cell>> {
        let vals: Vec<i128> = self.rays.iter().map(|r| dot(v, r)).collect();
        if vals.iter().all(|&s| s >= 0) {
            let mut facets = self.facets.clone();
            facets.push(v.to_vec());
            return Ok(Some(Cell::prune(self.rays.clone(), facets)));
        }
        if vals.iter().all(|&s| s < 0) {
            return Ok(None);
        }
        let c = self.cut(v, &vals)?;
        Ok((!c.rays.is_empty()).then_some(c))
    }

    /// Split a full-dimensional cell by the hyperplane `v⊥`.
    pub fn split(self, v: &[i64]) -> Result<Split> {
        let vals: Vec<i128> = self.rays.iter().map(|r| dot(v, r)).collect();
        let pos = vals.iter().any(|&s| s > 0);
        let neg = vals.iter().any(|&s| s < 0);
        match (pos, neg) {
            (true, false) => Ok(Split::Plus(self)),
            (false, true) => Ok(Split::Minus(self)),
            (false, false) => Err(crate::error::Error::Internal("normal vanishes on a cell".into())),
            (true, true) => {
                let plus = self.cut(v, &vals)?;
                let w: Vec<i64> = v.iter().map(|x| -x).collect();
                let nvals: Vec<i128> = vals.iter().map(|x| -x).collect();
                let minus = self.cut(&w, &nvals)?;
                Ok(Split::Both(plus, minus))
            }
        }
    }
}

/// Rays `p` and `q` span a 2-face: no third ray is tight wherever both are.
fn adjacent(z: &[FixedBitSet], p: usize, q: usize) -> bool {
    let mut common = z[p].clone();
    common.intersect_with(&z[q]);
    !(0..z.len()).any(|r| r != p && r != q && common.is_subset(&z[r]))
}

/// Lexicographic order used to list rays.
pub fn ray_cmp(a: &[i64], b: &[i64]) -> Ordering {
    a.cmp(b)
}
