mod common;

use std::collections::BTreeMap;

use common::*;
use mgk::link::{
    apply_reidemeister, kauffman_bracket_generic, kauffman_bracket_with_cap, reidemeister_sites,
    unlink_bracket_matches, RMove,
};
use mgk::poly::{BracketPolynomial, LaurentPoly};
use mgk::{
    component_count, is_trivial_unlink, kauffman_bracket, resolve, Label, LinkDiagram, LinkError, TrivialityBudget,
    TrivialityVerdict,
};

fn link(text: &str) -> LinkDiagram {
    LinkDiagram::parse(text).unwrap()
}

fn poly(terms: &[(i32, i64)]) -> BTreeMap<i32, i64> {
    terms.iter().copied().collect()
}

#[test]
fn resolving_loop_changes_nothing() {
    let d = diag(LOOP);
    for l in [Label::A, Label::B] {
        assert_eq!(resolve(&d, l).canonical_code(), d.canonical_code());
    }
}

#[test]
fn bigon_resolutions_are_unknots() {
    let d = diag(BIGON);
    for l in [Label::A, Label::B] {
        let r = resolve(&d, l);
        assert_eq!(component_count(&r), 1);
        assert_eq!(r.crossing_count(), 0);
        assert_eq!(r.canonical_code(), diag(LOOP).canonical_code());
    }
}

#[test]
fn single_vertex_smoothings_differ_by_one_circle() {
    let d = diag(MONOGON_M);
    let a = component_count(&resolve(&d, Label::A)) as i64;
    let b = component_count(&resolve(&d, Label::B)) as i64;
    assert_eq!((a - b).abs(), 1);
}

#[test]
fn resolutions_stay_planar() {
    for d in marked_corpus(100, 31) {
        for l in [Label::A, Label::B] {
            let r = resolve(&d, l);
            let text = mgk::emit_mgd(&r.to_document());
            assert!(LinkDiagram::parse(&text).is_ok(), "{text}");
        }
    }
}

#[test]
fn component_counts() {
    assert_eq!(component_count(&diag(LOOP)), 1);
    assert_eq!(component_count(&diag(KINK)), 1);
    assert_eq!(component_count(&diag(HOPF)), 2);
    assert_eq!(component_count(&diag(TWO_LOOPS)), 2);
}

#[test]
fn reidemeister_site_examples() {
    let kink = link(KINK);
    let reducing: Vec<_> = reidemeister_sites(&kink)
        .into_iter()
        .filter(|(m, _)| *m == RMove::R1Minus)
        .collect();
    assert_eq!(reducing.len(), 1);
    let after = apply_reidemeister(&kink, &reducing[0].1).unwrap();
    assert_eq!(after.canonical_code(), diag(LOOP).canonical_code());

    let l = link(LOOP);
    let kinds: Vec<RMove> = reidemeister_sites(&l).into_iter().map(|(m, _)| m).collect();
    assert!(!kinds.is_empty());
    assert!(kinds.iter().all(|m| matches!(m, RMove::R1Plus | RMove::R2Plus)));

    let t = link(TREFOIL);
    assert!(reidemeister_sites(&t)
        .iter()
        .all(|(m, _)| !matches!(m, RMove::R1Minus | RMove::R2Minus)));
}

#[test]
fn r2_then_inverse_restores_code() {
    let l = link(TREFOIL);
    for (m, site) in reidemeister_sites(&l).into_iter().filter(|(m, _)| *m == RMove::R2Plus).take(20) {
        let after = apply_reidemeister(&l, &site).unwrap();
        let inv = mgk::inverse(&site, &l, &after).unwrap();
        assert_eq!(RMove::of(&inv), Some(RMove::R2Minus), "{m:?}");
        let back = apply_reidemeister(&after, &inv).unwrap();
        assert_eq!(back.canonical_code(), l.canonical_code());
    }
}

#[test]
fn r3_is_an_involution_on_six_crossing_samples() {
    let mut checked = 0;
    for d in link_corpus(TREFOIL, 60, 8, 17) {
        let l = LinkDiagram::new(d).unwrap();
        if l.crossing_count() != 6 {
            continue;
        }
        for (_, site) in reidemeister_sites(&l).into_iter().filter(|(m, _)| *m == RMove::R3) {
            let after = apply_reidemeister(&l, &site).unwrap();
            let back_site = mgk::inverse(&site, &l, &after).unwrap();
            assert_eq!(RMove::of(&back_site), Some(RMove::R3));
            let back = apply_reidemeister(&after, &back_site).unwrap();
            assert_eq!(back.canonical_code(), l.canonical_code());
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn stale_site_is_reported() {
    let kink = link(KINK);
    let (_, site) = reidemeister_sites(&kink)
        .into_iter()
        .find(|(m, _)| *m == RMove::R1Minus)
        .unwrap();
    let other = link(TREFOIL);
    assert!(matches!(apply_reidemeister(&other, &site), Err(mgk::MoveError::StaleSite(_))));
}

#[test]
fn bracket_small_values() {
    let d = -1i64;
    let delta = poly(&[(2, d), (-2, d)]);
    assert_eq!(as_map(&kauffman_bracket(&link(LOOP)).unwrap()), delta);
    assert_eq!(as_map(&kauffman_bracket(&link(TWO_LOOPS)).unwrap()), poly(&[(4, 1), (0, 2), (-4, 1)]));
    assert_eq!(as_map(&kauffman_bracket(&link(KINK)).unwrap()), poly(&[(5, 1), (1, 1)]));
}

/// Values frozen from an independent state-sum script written before the
/// library.
#[test]
fn bracket_frozen_values() {
    let cases = [
        (TREFOIL, poly(&[(7, 1), (3, 1), (-1, 1), (-9, -1)])),
        (HOPF, poly(&[(6, 1), (2, 1), (-2, 1), (-6, 1)])),
        (FIGURE8, poly(&[(10, -1), (-10, -1)])),
    ];
    for (text, expected) in cases {
        let l = link(text);
        assert_eq!(as_map(&kauffman_bracket(&l).unwrap()), expected, "{text}");
        assert_eq!(brute_bracket(&l), expected);
    }
    let t = kauffman_bracket(&link(TREFOIL)).unwrap();
    assert_eq!(t.to_string(), "A^7 + A^3 + A^-1 - A^-9");
    assert!(!unlink_bracket_matches(&t, 1, 30));
}

#[test]
fn bracket_matches_state_sum_on_corpus() {
    for seed_text in [LOOP, TREFOIL, HOPF, FIGURE8] {
        for d in link_corpus(seed_text, 25, 10, 5) {
            let l = LinkDiagram::new(d).unwrap();
            assert_eq!(as_map(&kauffman_bracket(&l).unwrap()), brute_bracket(&l));
        }
    }
}

#[test]
fn bracket_over_other_rings() {
    let l = link(TREFOIL);
    let wide: LaurentPoly<i128> = kauffman_bracket_generic(&l);
    let narrow = kauffman_bracket(&l).unwrap();
    let w: Vec<(i32, i64)> = wide.terms().map(|(e, &c)| (e, c as i64)).collect();
    let n: Vec<(i32, i64)> = narrow.terms().map(|(e, &c)| (e, c)).collect();
    assert_eq!(w, n);
    let real: LaurentPoly<f64> = kauffman_bracket_generic(&l);
    assert_eq!(real.coeff(-9), -1.0);
}

#[test]
fn bracket_cap() {
    let l = link(FIGURE8);
    assert_eq!(
        kauffman_bracket_with_cap(&l, 3).unwrap_err(),
        LinkError::TooLarge { crossings: 4, cap: 3 }
    );
}

#[test]
fn marked_vertices_are_refused() {
    assert_eq!(LinkDiagram::new(diag(BIGON)).unwrap_err(), LinkError::MarkedVertex);
}

#[test]
fn oracle_kink_is_trivial_in_one_move() {
    match is_trivial_unlink(&link(KINK), &TrivialityBudget::nodes(100)) {
        TrivialityVerdict::Trivial(trace) => {
            assert_eq!(trace.len(), 1);
            let end = trace.replay(&diag(KINK)).unwrap();
            assert_eq!(end.crossing_count(), 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn oracle_trefoil_is_nontrivial() {
    match is_trivial_unlink(&link(TREFOIL), &TrivialityBudget::nodes(100)) {
        TrivialityVerdict::Nontrivial { bracket, components, crossings } => {
            assert_eq!(components, 1);
            assert!(!unlink_bracket_matches(&bracket, components, crossings));
            let again = kauffman_bracket(&link(TREFOIL)).unwrap();
            assert!(bracket.framing_ratio(&again).is_some());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn oracle_hard_unknot() {
    let l = link(HARD_UNKNOT_14);
    assert_eq!(l.crossing_count(), 14);
    assert!(reidemeister_sites(&l)
        .iter()
        .all(|(m, _)| !matches!(m, RMove::R1Minus | RMove::R2Minus)));
    assert!(matches!(
        is_trivial_unlink(&l, &TrivialityBudget::nodes(10)),
        TrivialityVerdict::Unknown { nodes: 10 }
    ));
    match is_trivial_unlink(&l, &TrivialityBudget::nodes(100_000)) {
        TrivialityVerdict::Trivial(trace) => {
            assert_eq!(trace.replay(&l).unwrap().crossing_count(), 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unlink_bracket_framing_window() {
    let two = BracketPolynomial::loop_value().pow(2);
    assert!(unlink_bracket_matches(&two, 2, 0));
    let framed = &two * &BracketPolynomial::framing(-3);
    assert!(unlink_bracket_matches(&framed, 2, 3));
    assert!(!unlink_bracket_matches(&framed, 2, 2));
    assert!(!unlink_bracket_matches(&framed, 1, 3));
}

#[test]
fn bracket_moves_on_random_links() {
    for d in link_corpus(TREFOIL, 40, 9, 23) {
        let l = LinkDiagram::new(d).unwrap();
        let before = kauffman_bracket(&l).unwrap();
        for (m, site) in reidemeister_sites(&l) {
            let after = kauffman_bracket(&apply_reidemeister(&l, &site).unwrap()).unwrap();
            match m {
                RMove::R2Plus | RMove::R2Minus | RMove::R3 => assert_eq!(after, before),
                RMove::R1Plus | RMove::R1Minus => {
                    let k = after.framing_ratio(&before).expect("framing multiple");
                    assert_eq!(k.abs(), 1);
                }
            }
        }
    }
}
