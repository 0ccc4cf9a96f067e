//! Polyhedral cones in weight space and the Gröbner fan of a Hilbert scheme.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adjacency::BorelGraph;
use crate::error::{Error, Result};
use crate::orders::diff;

pub mod dd;
pub mod lp;
pub mod vector;

pub use dd::Cell;
pub use lp::strict_feasible;

use vector::{canonical_sign, dot, primitive_i64};

/// `{ω : <v, ω> > 0 (strict), <v, ω> >= 0 (nonstrict), <v, ω> = 0 (equalities)}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Cone {
    pub dim: usize,
    pub strict: Vec<Vec<i64>>,
    pub nonstrict: Vec<Vec<i64>>,
    pub equalities: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
}

fn w_rows(d: usize) -> Vec<Vec<i64>> {
    Cell::w_closure(d).facets
}

impl Cone {
    pub fn new(dim: usize) -> Self {
        Cone { dim, ..Default::default() }
    }

    /// The open cone `W`: `0 < ω0 < ω1 < ... < ωn`.
    pub fn w(n: usize) -> Self {
        Cone { dim: n + 1, strict: w_rows(n + 1), ..Default::default() }
    }

    /// Its closure `W̄`.
    pub fn w_closure(n: usize) -> Self {
        Cone { dim: n + 1, nonstrict: w_rows(n + 1), ..Default::default() }
    }

    /// Add a strict row, made primitive.
    pub fn push_strict(&mut self, v: &[i64]) {
        self.strict.push(primitive_i64(v));
    }

    pub fn push_nonstrict(&mut self, v: &[i64]) {
        self.nonstrict.push(primitive_i64(v));
    }

    pub fn push_equality(&mut self, v: &[i64]) {
        self.equalities.push(canonical_sign(&primitive_i64(v)).0);
    }

    /// Strict rows turned into non-strict ones.
    pub fn closure(&self) -> Cone {
        let mut c = self.clone();
        c.nonstrict.append(&mut c.strict);
        c.rays = None;
        c
    }

    /// Conjunction of both systems.
    pub fn intersect(&self, o: &Cone) -> Cone {
        let mut c = self.clone();
        c.strict.extend(o.strict.iter().cloned());
        c.nonstrict.extend(o.nonstrict.iter().cloned());
        c.equalities.extend(o.equalities.iter().cloned());
        c.rays = None;
        c
    }

    pub fn is_empty(&self) -> bool {
        strict_feasible(self).is_none()
    }

    pub fn contains(&self, w: &[i64]) -> bool {
        self.strict.iter().chain(&self.nonstrict).all(|v| dot(v, w) >= 0)
            && self.equalities.iter().all(|v| dot(v, w) == 0)
    }

    pub fn contains_strictly(&self, w: &[i64]) -> bool {
        self.strict.iter().all(|v| dot(v, w) > 0)
            && self.nonstrict.iter().all(|v| dot(v, w) >= 0)
            && self.equalities.iter().all(|v| dot(v, w) == 0)
    }
}

/// Extreme rays of the closure of `c` intersected with `W̄`.
pub fn cone_rays(c: &Cone) -> Result<Vec<Vec<i64>>> {
    let mut cell = Cell::w_closure(c.dim);
    for v in c.strict.iter().chain(&c.nonstrict) {
        cell = cell.restrict(v)?.ok_or(Error::EmptyCone)?;
    }
    for v in &c.equalities {
        cell = cell.restrict(v)?.ok_or(Error::EmptyCone)?;
        let w: Vec<i64> = v.iter().map(|x| -x).collect();
        cell = cell.restrict(&w)?.ok_or(Error::EmptyCone)?;
    }
    if cell.rays.iter().all(|r| r.iter().all(|&x| x == 0)) {
        return Err(Error::EmptyCone);
    }
    let mut rays = cell.rays;
    rays.sort();
    Ok(rays)
}

/// A deduplicated edge normal; edge `k` has `a - a' = sign * v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanNormal {
    pub v: Vec<i64>,
    pub edges: Vec<(usize, i8)>,
}

/// A full-dimensional cone of the fan, given by the side of every normal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalCone {
    pub signs: Vec<i8>,
    /// Facet inequalities `<v, ω> >= 0` of the closure.
    pub facets: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
    pub interior: Vec<i64>,
}

impl MaximalCone {
    /// The open cone: `W` plus the signed normals, all strict.
    pub fn open_cone(&self, normals: &[FanNormal]) -> Cone {
        let d = self.interior.len();
        let mut c = Cone::w(d - 1);
        for (nv, &s) in normals.iter().zip(&self.signs) {
            c.strict.push(nv.v.iter().map(|x| x * s as i64).collect());
        }
        c
    }

    pub fn closure(&self) -> Cone {
        let d = self.interior.len();
        Cone { dim: d, nonstrict: self.facets.clone(), rays: Some(self.rays.clone()), ..Default::default() }
    }

    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

/// The Gröbner fan of `Hilb^n_p(t)` restricted to `W̄`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFan {
    pub n: usize,
    pub normals: Vec<FanNormal>,
    pub cones: Vec<MaximalCone>,
}

/// Primitive normals of the edges, with the sign of each edge against its normal.
pub fn edge_normals(g: &BorelGraph) -> Vec<FanNormal> {
    let mut out: Vec<FanNormal> = Vec::new();
    for (k, e) in g.edges.iter().enumerate() {
        let (v, s) = canonical_sign(&primitive_i64(&diff(&e.label.a, &e.label.a_prime)));
        match out.iter_mut().find(|f| f.v == v) {
            Some(f) => f.edges.push((k, s)),
            None => out.push(FanNormal { v, edges: vec![(k, s)] }),
        }
    }
    out
}

fn sign_key(s: &[i8]) -> Vec<u8> {
    s.iter().map(|&x| u8::from(x < 0)).collect()
}

/// Split `W̄` by every edge hyperplane; the resulting cells are the maximal cones.
pub fn groebner_fan(g: &BorelGraph) -> Result<GFan> {
    let n = g.vertices.first().ok_or(Error::Internal("empty Borel graph".into()))?.n();
    let normals = edge_normals(g);
    let mut cells: Vec<(Vec<i8>, Cell)> = vec![(Vec::new(), Cell::w_closure(n + 1))];
    for nv in &normals {
        let parts: Vec<Vec<(Vec<i8>, Cell)>> = cells
            .into_par_iter()
            .map(|(signs, cell)| -> Result<Vec<(Vec<i8>, Cell)>> {
                let with = |s: i8| {
                    let mut t = signs.clone();
                    t.push(s);
                    t
                };
                Ok(match cell.split(&nv.v)? {
                    dd::Split::Plus(c) => vec![(with(1), c)],
                    dd::Split::Minus(c) => vec![(with(-1), c)],
                    dd::Split::Both(p, m) => vec![(with(1), p), (with(-1), m)],
                })
            })
            .collect::<Result<_>>()?;
        cells = parts.into_iter().flatten().collect();
    }
    let mut cones: Vec<MaximalCone> = cells
        .into_iter()
        .map(|(signs, cell)| MaximalCone { interior: cell.interior(), signs, facets: cell.facets, rays: cell.rays })
        .collect();
    cones.sort_by_key(|c| sign_key(&c.signs));
    Ok(GFan { n, normals, cones })
}

/// Union of the extreme rays of all maximal cones, sorted.
pub fn fan_rays(f: &GFan) -> Vec<Vec<i64>> {
    let set: BTreeSet<Vec<i64>> = f.cones.iter().flat_map(|c| c.rays.iter().cloned()).collect();
    set.into_iter().collect()
}

/// Index of the maximal cone whose open interior contains `w`, if any.
pub fn locate(f: &GFan, w: &[i64]) -> Option<usize> {
    let signs: Option<Vec<i8>> = f
        .normals
        .iter()
        .map(|nv| match dot(&nv.v, w).signum() {
            1 => Some(1),
            -1 => Some(-1),
            _ => None,
        })
        .collect();
    let signs = signs?;
    f.cones.binary_search_by_key(&sign_key(&signs), |c| sign_key(&c.signs)).ok()
}

/// A maximal cone cut by the slicing plane, in the plane's coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub cone: usize,
    /// Vertices as `(u, v)`, counter-clockwise.
    pub vertices: Vec<(BigRational, BigRational)>,
}

/// Barycentric coordinates of a ray on the slicing plane: `ω / Σω` for `n = 2`,
/// and `(ω1, ω2, ω3) / Σ` on `ω0 = 0` for `n = 3`.
fn bary(n: usize, r: &[i64]) -> Option<[BigRational; 3]> {
    let part = if n == 2 { r } else { &r[1..] };
    if n == 3 && r[0] != 0 {
        return None;
    }
    let s: i64 = part.iter().sum();
    if s == 0 {
        return None;
    }
    let q = |x: i64| BigRational::new(BigInt::from(x), BigInt::from(s));
    Some([q(part[0]), q(part[1]), q(part[2])])
}

/// Each maximal cone intersected with the plane `Σω = 1` (`n = 2`) or with
/// `ω0 = 0, ω1 + ω2 + ω3 = 1` (`n = 3`). Coordinates are the last two
/// barycentric entries.
pub fn slice(f: &GFan) -> Result<Vec<Polygon>> {
    if f.n != 2 && f.n != 3 {
        return Err(Error::UnsupportedDimension(f.n));
    }
    let mut out = Vec::new();
    for (k, c) in f.cones.iter().enumerate() {
        let mut pts: Vec<(BigRational, BigRational)> =
            c.rays.iter().filter_map(|r| bary(f.n, r)).map(|[_, b, c]| (b, c)).collect();
        pts.sort();
        pts.dedup();
        let cx: f64 = pts.iter().map(|p| p.0.to_f64().unwrap_or(0.0)).sum::<f64>() / pts.len() as f64;
        let cy: f64 = pts.iter().map(|p| p.1.to_f64().unwrap_or(0.0)).sum::<f64>() / pts.len() as f64;
        let angle = |p: &(BigRational, BigRational)| {
            (p.1.to_f64().unwrap_or(0.0) - cy).atan2(p.0.to_f64().unwrap_or(0.0) - cx)
        };
        pts.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
        out.push(Polygon { cone: k, vertices: pts });
    }
    Ok(out)
}

/// Draw the slice inside an equilateral triangle.
pub fn slice_svg(polys: &[Polygon]) -> String {
    const SIZE: f64 = 400.0;
    const PAD: f64 = 20.0;
    let h = SIZE * 3f64.sqrt() / 2.0;
    // barycentric (a, b, c) → a*A + b*B + c*C with A bottom left, B bottom right, C top.
    let map = |b: &BigRational, c: &BigRational| {
        let (b, c) = (b.to_f64().unwrap_or(0.0), c.to_f64().unwrap_or(0.0));
        let x = PAD + b * SIZE + c * SIZE / 2.0;
        let y = PAD + h - c * h;
        (x, y)
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        SIZE + 2.0 * PAD,
        h + 2.0 * PAD,
        SIZE + 2.0 * PAD,
        h + 2.0 * PAD
    );
    for p in polys {
        let pts: Vec<String> = p
            .vertices
            .iter()
            .map(|(b, c)| {
                let (x, y) = map(b, c);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"  <polygon data-cone="{}" points="{}" fill="none" stroke="#000" stroke-width="1"/>"##,
            p.cone,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

/// `true` when `w` lies in no open maximal cone but on a hyperplane of the arrangement.
pub fn on_boundary(f: &GFan, w: &[i64]) -> bool {
    f.normals.iter().any(|nv| dot(&nv.v, w).is_zero())
}
