//! DOT and CSV writers.

use std::fmt::Write as _;

use hgf_core::adjacency::BorelGraph;
use hgf_core::analysis::{ComponentBoundReport, SpanningTree};
use hgf_core::fan::Polygon;
use hgf_core::ideal::{hyperplane_section, saturate, StronglyStableIdeal};
use hgf_core::orders::{DegenerationGraph, EdgeState};

use crate::McRow;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn nodes(out: &mut String, ideals: &[StronglyStableIdeal]) {
    for (k, j) in ideals.iter().enumerate() {
        let _ = writeln!(out, "  J{k} [label=\"J{k}\\n{}\"];", escape(&saturate(j).to_string()));
    }
}

pub fn borel_dot(g: &BorelGraph) -> String {
    let mut s = String::from("graph borel {\n  node [shape=box];\n");
    nodes(&mut s, &g.vertices);
    for e in &g.edges {
        let _ = writeln!(s, "  J{} -- J{} [label={}];", e.i, e.j, quote(&e.label.to_string()));
    }
    s.push_str("}\n");
    s
}

pub fn degeneration_dot(dg: &DegenerationGraph) -> String {
    let mut s = String::from("digraph degeneration {\n  node [shape=box];\n");
    let _ = writeln!(s, "  label={};", quote(&dg.comparator));
    nodes(&mut s, &dg.base.vertices);
    for (e, st) in dg.base.edges.iter().zip(&dg.states) {
        let label = quote(&e.label.to_string());
        let _ = match st {
            EdgeState::Forward => writeln!(s, "  J{} -> J{} [label={label}];", e.i, e.j),
            EdgeState::Backward => writeln!(s, "  J{} -> J{} [label={}];", e.j, e.i, quote(&e.label.swapped().to_string())),
            EdgeState::Undirected => writeln!(s, "  J{} -> J{} [label={label}, style=dotted, dir=none];", e.i, e.j),
        };
    }
    s.push_str("}\n");
    s
}

pub fn tree_dot(ideals: &[StronglyStableIdeal], t: &SpanningTree) -> String {
    let mut s = String::from("digraph tree {\n  node [shape=box];\n");
    nodes(&mut s, ideals);
    for (p, c, l) in t.edges() {
        let _ = writeln!(s, "  J{p} -> J{c} [label={}];", quote(&l.to_string()));
    }
    s.push_str("}\n");
    s
}

pub fn ideals_csv(ideals: &[StronglyStableIdeal]) -> String {
    let mut s = String::from("id,saturation,hyperplane_section\n");
    for (k, j) in ideals.iter().enumerate() {
        let _ = writeln!(
            s,
            "{k},{},{}",
            csv_field(&saturate(j).to_string()),
            csv_field(&hyperplane_section(j).to_string())
        );
    }
    s
}

pub fn edges_csv(g: &BorelGraph) -> String {
    let mut s = String::from("i,j,a,a_prime\n");
    for e in &g.edges {
        let _ = writeln!(s, "{},{},{},{}", e.i, e.j, e.label.a, e.label.a_prime);
    }
    s
}

pub fn arcs_csv(dg: &DegenerationGraph) -> String {
    let mut s = String::from("from,to,directed\n");
    for (e, st) in dg.base.edges.iter().zip(&dg.states) {
        let _ = match st {
            EdgeState::Forward => writeln!(s, "{},{},true", e.i, e.j),
            EdgeState::Backward => writeln!(s, "{},{},true", e.j, e.i),
            EdgeState::Undirected => writeln!(s, "{},{},false", e.i, e.j),
        };
    }
    s
}

pub fn rows_csv(rows: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", cells.join(","));
    }
    s
}

pub fn slice_csv(polys: &[Polygon]) -> String {
    let mut s = String::from("cone,vertex,u,v\n");
    for p in polys {
        for (k, (u, v)) in p.vertices.iter().enumerate() {
            let _ = writeln!(s, "{},{k},{u},{v}", p.cone);
        }
    }
    s
}

pub fn tree_csv(t: &SpanningTree) -> String {
    let mut s = String::from("parent,child,a,a_prime\n");
    for (p, c, l) in t.edges() {
        let _ = writeln!(s, "{p},{c},{},{}", l.a, l.a_prime);
    }
    s
}

/// One row per cone, maximised over tiebreaks.
pub fn bound_csv(rep: &ComponentBoundReport) -> String {
    let mut s = String::from("cone,m_sources,m_certified\n");
    let mut rows: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
    for r in &rep.records {
        let e = rows.entry(r.cone).or_insert((0, 0));
        e.0 = e.0.max(r.source_count);
        e.1 = e.1.max(r.double_max_count);
    }
    for (c, (a, b)) in rows {
        let _ = writeln!(s, "{c},{a},{b}");
    }
    s
}

pub fn mcones_csv(rows: &[McRow]) -> String {
    let mut s = String::from("id,saturation,section,mc_empty,segment,irregular\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.id,
            csv_field(&r.saturation),
            csv_field(&r.section),
            r.mc_rays.is_none(),
            r.segment,
            r.irregular
        );
    }
    s
}
