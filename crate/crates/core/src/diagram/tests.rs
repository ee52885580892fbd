use super::*;
use crate::expr::{parse_expr, TangleExpr};

fn synth(src: &str) -> PlanarDiagram {
    synthesize(&parse_expr(src).unwrap()).unwrap()
}

#[test]
fn twist_regions() {
    let d = synth("3");
    assert_eq!(d.crossing_count(), 3);
    assert!(d.is_tangle());
    assert!(d.is_alternating());
    assert!(d.is_connected_tangle());

    let d = synth("[2,3,4]");
    assert_eq!(d.crossing_count(), 9);
    assert!(d.is_alternating());
    assert!(d.is_connected_tangle());
}

#[test]
fn zero_and_infinity_closures() {
    let zero = synth("0");
    let unknot = closure(&zero, Closure::Denominator);
    assert_eq!(unknot.components().unwrap(), 1);
    assert_eq!(unknot.crossing_count(), 0);
    let unlink = closure(&zero, Closure::Numerator);
    assert_eq!(unlink.components().unwrap(), 2);
    assert!(unlink.is_split());

    let inf = synthesize(&TangleExpr::Infinity).unwrap();
    assert_eq!(closure(&inf, Closure::Numerator).components().unwrap(), 1);
    assert_eq!(closure(&inf, Closure::Denominator).components().unwrap(), 2);
}

#[test]
fn torus_closures() {
    for k in 2..=9 {
        let d = synth(&format!("[0,{k}]"));
        let t = closure(&d, Closure::Denominator);
        assert_eq!(t.crossing_count(), k as usize);
        assert_eq!(t.components().unwrap(), if k % 2 == 0 { 2 } else { 1 });
        assert!(t.is_alternating());
        assert!(!t.is_split());
        assert!(t.is_reduced(), "T(2,{k}) diagram is reduced");
    }
}

#[test]
fn hopf_from_numerator_of_two() {
    let d = closure(&synth("2"), Closure::Numerator);
    assert_eq!(d.components().unwrap(), 2);
}

#[test]
fn component_parity_small() {
    for p in -8i64..=8 {
        for q in 1i64..=8 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let f = crate::fraction::Fraction::new(p, q).unwrap();
            let cf = crate::fraction::to_continued_fraction(&f).unwrap();
            let t = synthesize(&TangleExpr::Rational(cf)).unwrap();
            let n = closure(&t, Closure::Numerator).components().unwrap();
            let d = closure(&t, Closure::Denominator).components().unwrap();
            assert_eq!(n, if p.rem_euclid(2) == 0 { 2 } else { 1 }, "N({p}/{q})");
            assert_eq!(d, if q % 2 == 0 { 2 } else { 1 }, "D({p}/{q})");
        }
    }
}

#[test]
fn alternation_and_signs() {
    assert!(synth("[2,3,4]").is_alternating());
    assert!(synth("[-2,-3,-4]").is_alternating());
    assert!(synth("[0,-2] + [0,-1,-2]").is_alternating());
    assert!(!synth("1 + -1").is_alternating());
    assert!(!synth("[0,2] + [0,-2]").is_alternating());
}

#[test]
fn type_classification() {
    // All-negative standard diagrams are type 2, all-positive type 1.
    assert_eq!(synth("-1").classify_type().unwrap(), TangleType::Type2);
    assert_eq!(synth("[-3]").classify_type().unwrap(), TangleType::Type2);
    assert_eq!(synth("[0,-2]").classify_type().unwrap(), TangleType::Type2);
    assert_eq!(synth("3").classify_type().unwrap(), TangleType::Type1);
    assert_eq!(synth("[2,3,4]").classify_type().unwrap(), TangleType::Type1);
    // Mirror swaps the type.
    assert_eq!(synth("-([2,3,4])").classify_type().unwrap(), TangleType::Type2);
    // Disconnected and non-alternating inputs are rejected.
    assert_eq!(synth("0").classify_type(), Err(DiagramError::NotConnected));
    assert_eq!(synth("1 + -1").classify_type(), Err(DiagramError::NotAlternating));
}

#[test]
fn flips_preserve_type_and_alternation() {
    for src in ["[-2,-3]", "[0,-2] + [0,-1,-2]", "[-1,-2,-3]"] {
        let d = synth(src);
        let ty = d.classify_type().unwrap();
        for t in [flip_h(&d), flip_v(&d)] {
            assert!(t.is_alternating(), "flip of {src} alternates");
            assert_eq!(t.classify_type().unwrap(), ty, "flip of {src} keeps type");
        }
        // A mirror swaps it.
        assert_ne!(mirror(&d).classify_type().unwrap(), ty);
    }
}

#[test]
fn rotations_and_inversion() {
    let d = synth("[-2,-3]");
    let r = rotate_cw(&d);
    assert!(r.is_alternating());
    assert_eq!(rotate_ccw(&r).same_diagram(&d), true);
    let i = invert(&d);
    assert!(i.is_alternating());
}

#[test]
fn encirclement_shape() {
    let tau = encircle(&synth("-1")).unwrap();
    assert_eq!(tau.crossing_count(), 5);
    assert!(tau.is_alternating(), "encirclement of a type 2 tangle alternates");
    assert!(tau.is_connected_tangle());
    assert_eq!(tau.classify_type().unwrap(), TangleType::Type1);

    let tau = encircle(&synth("[0,-2] + [0,-1,-2]")).unwrap();
    assert!(tau.is_alternating());
    assert_eq!(tau.classify_type().unwrap(), TangleType::Type1);

    // The loop is an extra component of the denominator closure.
    let d = closure(&encircle(&synth("-1")).unwrap(), Closure::Denominator);
    assert_eq!(d.components().unwrap(), 2);
}

#[test]
fn encirclement_rejects_type_one() {
    assert_eq!(encircle(&synth("3")).unwrap_err(), DiagramError::EncircleType);
}

#[test]
fn predicate_examples() {
    let p = synth("[2,3,4]").predicates();
    assert!(p.is_alternating && p.is_connected_tangle && !p.is_split && p.is_reduced);

    // The cancelling pair is reducible only through its closures: the
    // denominator closure curls both crossings.
    let rr = synth("1 + -1");
    assert!(!closure(&rr, Closure::Denominator).is_reduced());
    assert!(closure(&rr, Closure::Numerator).is_reduced());

    // Integer tangles are not strongly alternating (one closure unwinds).
    assert!(!synth("[3]").predicates().is_strongly_alternating);
    // A pretzel-style sum of vertical twist columns is.
    assert!(synth("[0,-2] + [0,-3]").predicates().is_strongly_alternating);
}

#[test]
fn tn_family_properties() {
    for n in 1..=3u32 {
        for parity in [BoxParity::Even, BoxParity::Odd] {
            let t = build_tn(n, parity).unwrap();
            let p = t.predicates();
            assert!(p.is_alternating, "T_{n} {parity:?} alternating");
            assert!(p.is_connected_tangle);
            assert!(p.is_strongly_alternating, "T_{n} {parity:?} strongly alternating");
            assert_eq!(t.classify_type().unwrap(), TangleType::Type2);
            // Numerator closure is a knot.
            assert_eq!(closure(&t, Closure::Numerator).components().unwrap(), 1);
            let m = match parity {
                BoxParity::Even => 2 * n as usize,
                BoxParity::Odd => 2 * n as usize - 1,
            };
            assert_eq!(t.crossing_count(), 2 * m + 3, "crossing count linear in n");
        }
    }
}

#[test]
fn smoothing_drops_one_crossing() {
    let d = closure(&synth("[0,3]"), Closure::Denominator);
    for c in 0..3 {
        for kind in [SmoothKind::Zero, SmoothKind::Infinity] {
            let s = smooth(&d, c, kind).unwrap();
            assert_eq!(s.crossing_count(), 2);
        }
    }
    // Smoothing the only crossing of a kink diagram leaves a 0-crossing
    // unknot or a 2-component unlink.
    let kink = closure(&synth("1"), Closure::Numerator);
    let mut comp: Vec<usize> = [SmoothKind::Zero, SmoothKind::Infinity]
        .iter()
        .map(|&k| smooth(&kink, 0, k).unwrap().components().unwrap())
        .collect();
    comp.sort_unstable();
    assert_eq!(comp, vec![1, 2]);
}

#[test]
fn family_link_marks_last_crossing() {
    let t = synth("-1");
    let (d, marked) = family_link(&t, 1, 1).unwrap();
    assert_eq!(d.crossing_count(), 7); // 2 column + 1 tangle + 4 loop
    assert_eq!(marked, 6);
    assert!(!d.is_alternating(), "the junction genuinely breaks alternation");
    assert!(!d.is_split());
}

#[test]
fn replace_crossing_extends_columns() {
    // Replacing the top crossing of a vertical -1/2 column by a vertical
    // -1/2 tangle yields the -1/3 column (same closure determinant route:
    // check structure only here).
    let col = synth("[0,-2]");
    let rep = synth("[0,-2]");
    let bigger = replace_crossing(&col, 0, &rep).unwrap();
    assert_eq!(bigger.crossing_count(), 3);
    assert!(bigger.is_alternating());
    // Mismatched sign pattern is refused.
    let wrong = synth("[0,2]");
    assert_eq!(replace_crossing(&col, 0, &wrong).unwrap_err(), DiagramError::SignMismatch);
}
