mod common;

use hgf_core::fan::{cone_rays, locate, on_boundary, strict_feasible, Cone};
use hgf_core::ideal::StronglyStableIdeal;
use hgf_core::monomial::{apply_move, borel_compare, offset_is_decreasing, BorelCmp, Monomial, Move};
use hgf_core::Error;
use proptest::prelude::*;

fn monomial(len: usize, deg: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=deg, len - 1).prop_map(move |cuts| {
        let mut cuts = cuts;
        cuts.sort();
        let mut exps = Vec::with_capacity(len);
        let mut prev = 0;
        for c in cuts {
            exps.push(c - prev);
            prev = c;
        }
        exps.push(deg - prev);
        Monomial::new(exps)
    })
}

fn flip(c: BorelCmp) -> BorelCmp {
    match c {
        BorelCmp::Greater => BorelCmp::Less,
        BorelCmp::Less => BorelCmp::Greater,
        x => x,
    }
}

proptest! {
    #[test]
    fn moves_keep_degree_and_climb(m in monomial(4, 6), i in 0usize..4) {
        if let Some(up) = apply_move(&m, Move::Increasing(i)) {
            prop_assert_eq!(up.degree(), m.degree());
            prop_assert_eq!(borel_compare(&up, &m).unwrap(), BorelCmp::Greater);
            prop_assert_eq!(apply_move(&up, Move::Decreasing(i + 1)), Some(m.clone()));
        }
    }

    #[test]
    fn borel_order_is_a_partial_order(a in monomial(4, 5), b in monomial(4, 5), c in monomial(4, 5)) {
        let ab = borel_compare(&a, &b).unwrap();
        prop_assert_eq!(flip(ab), borel_compare(&b, &a).unwrap());
        prop_assert_eq!(ab == BorelCmp::Equal, a == b);
        let bc = borel_compare(&b, &c).unwrap();
        if ab == BorelCmp::Greater && bc == BorelCmp::Greater {
            prop_assert_eq!(borel_compare(&a, &c).unwrap(), BorelCmp::Greater);
        }
    }

    #[test]
    fn offsets_between_comparable_monomials(a in monomial(4, 5), b in monomial(4, 5)) {
        let o = hgf_core::monomial::Offset::between(&a, &b);
        prop_assert_eq!(o.delta.iter().sum::<i64>(), 0);
        let down = offset_is_decreasing(&o).unwrap();
        prop_assert_eq!(down, matches!(borel_compare(&a, &b).unwrap(), BorelCmp::Greater | BorelCmp::Equal));
    }

    // Rays versus LP: the open cone is non-empty exactly when every strict
    // row is positive on some ray of the closure.
    #[test]
    fn rays_agree_with_lp(
        strict in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..3),
        nonstrict in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..3),
    ) {
        let mut c = Cone::w(3);
        for v in &strict { c.push_strict(v); }
        for v in &nonstrict { c.push_nonstrict(v); }
        let lp = strict_feasible(&c);
        if let Some(w) = &lp {
            prop_assert!(c.contains_strictly(w));
        }
        let by_rays = match cone_rays(&c) {
            Ok(rays) => {
                for r in &rays {
                    prop_assert!(c.closure().contains(r));
                }
                c.strict.iter().all(|s| rays.iter().any(|r| s.iter().zip(r).map(|(x, y)| x * y).sum::<i64>() > 0))
            }
            Err(Error::EmptyCone) => false,
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(lp.is_some(), by_rays);
    }

    #[test]
    fn points_of_w_locate(w0 in 1i64..50, d in proptest::collection::vec(1i64..50, 3)) {
        let s = five_t_minus_two();
        let w: Vec<i64> = std::iter::once(w0).chain(d.iter().scan(w0, |acc, x| { *acc += x; Some(*acc) })).collect();
        match locate(&s.fan, &w) {
            Some(k) => prop_assert!(s.fan.cones[k].closure().contains(&w)),
            None => prop_assert!(on_boundary(&s.fan, &w)),
        }
    }
}

fn five_t_minus_two() -> &'static common::Scheme {
    static S: std::sync::OnceLock<common::Scheme> = std::sync::OnceLock::new();
    S.get_or_init(|| common::scheme("5t-2", 3).unwrap())
}

#[test]
fn json_round_trip() {
    let s = common::scheme("8", 2).unwrap();
    let text = serde_json::to_string(&s.ideals).unwrap();
    let back: Vec<StronglyStableIdeal> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s.ideals);
    let text = serde_json::to_string(&s.graph).unwrap();
    assert_eq!(serde_json::from_str::<hgf_core::adjacency::BorelGraph>(&text).unwrap(), s.graph);
    let text = serde_json::to_string(&s.fan).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["cones"].as_array().unwrap().len(), 8);
}

#[test]
fn label_offsets_sum_to_zero() {
    for (p, n, _) in common::TABLE {
        let s = common::scheme(p, n).unwrap();
        for e in &s.graph.edges {
            assert!(e.label.offsets[0].is_zero());
            for o in &e.label.offsets {
                assert_eq!(o.delta.iter().sum::<i64>(), 0);
            }
            assert_eq!(e.label.offsets.len(), e.label.size);
        }
    }
}
