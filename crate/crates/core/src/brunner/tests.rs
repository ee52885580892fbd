use super::*;
use crate::diagram::{closure, synthesize, Closure};
use crate::expr::parse_expr;
use crate::invariants::determinant;
use num_bigint::BigInt;

fn synth_closed(src: &str, kind: Closure) -> PlanarDiagram {
    closure(&synthesize(&parse_expr(src).unwrap()).unwrap(), kind)
}

#[test]
fn round_torus_band_merges() {
    // The round two-strand picture of T(2,3): one disk, one self-band of
    // label +-3 after merging the twist region.
    let spec = DiskBandSpec {
        bands: vec![(0, 0, 3)],
        rotations: vec![vec![(0, 0), (0, 1)]],
    };
    let (d, _) = disk_band_diagram(&spec).unwrap();
    assert_eq!(determinant(&d).unwrap(), BigInt::from(3));
    let dec = disk_band(&d).unwrap();
    assert_eq!(dec.disks.len(), 1);
    assert_eq!(dec.bands.len(), 1);
    assert_eq!(dec.bands[0].label.abs(), 3);
    assert_eq!(dec.regions.len(), 2);

    let pres = brunner_presentation(&d).unwrap();
    assert_eq!(abelianization_order(&pres).unwrap(), BigInt::from(3));
}

#[test]
fn flat_torus_closure_decomposition() {
    // The twist region of the synthesized T(2,3) closure merges into a
    // single band with label of magnitude 3.
    let d = synth_closed("[0,3]", Closure::Denominator);
    let dec = disk_band(&d).unwrap();
    assert_eq!(dec.bands.len(), 1);
    assert_eq!(dec.bands[0].label.abs(), 3);
    let pres = brunner_presentation(&d).unwrap();
    assert_eq!(abelianization_order(&pres).unwrap(), BigInt::from(3));
}

#[test]
fn one_crossing_unknot_band() {
    let d = synth_closed("1", Closure::Numerator);
    let dec = disk_band(&d).unwrap();
    assert_eq!(dec.bands.len(), 1);
    assert_eq!(dec.bands[0].label.abs(), 1);
    let pres = brunner_presentation(&d).unwrap();
    assert_eq!(abelianization_order(&pres).unwrap(), BigInt::from(1));
}

#[test]
fn unknot_presentation_is_trivial() {
    let d = synth_closed("0", Closure::Denominator);
    let pres = brunner_presentation(&d).unwrap();
    assert!(pres.edge_gens.is_empty());
    assert_eq!(abelianization_order(&pres).unwrap(), BigInt::from(1));
}

#[test]
fn abelianization_matches_determinant_sample() {
    for (src, kind) in [
        ("[2,3,4]", Closure::Numerator),
        ("[2,3,4]", Closure::Denominator),
        ("[0,-2] + [0,-3]", Closure::Numerator),
        ("[0,-2] + [0,-1,-2]", Closure::Numerator),
        ("[1,1,2] + 2", Closure::Numerator),
        ("[-1,-2,-3]", Closure::Denominator),
    ] {
        let d = synth_closed(src, kind);
        let pres = brunner_presentation(&d).unwrap();
        let order = abelianization_order(&pres).unwrap();
        let det = determinant(&d).unwrap();
        assert_eq!(order, det, "{src} {kind:?}");
    }
}

#[test]
fn encircled_family_abelianization() {
    // Brunner presentation of N(tau(-1)) has abelianization of order 8.
    let tau = synthesize(&parse_expr("tau(-1)").unwrap()).unwrap();
    let d = closure(&tau, Closure::Numerator);
    let pres = brunner_presentation(&d).unwrap();
    assert_eq!(abelianization_order(&pres).unwrap(), BigInt::from(8));
}

#[test]
fn graph_counts_match() {
    // #local relations = #bands; #cycles = #bounded connectivity regions
    // (edges - vertices + 1 for a connected graph).
    for (src, kind) in [("[2,3,4]", Closure::Numerator), ("[0,-2] + [0,-3]", Closure::Numerator)] {
        let d = synth_closed(src, kind);
        let dec = disk_band(&d).unwrap();
        let pres = brunner_presentation(&d).unwrap();
        let locals =
            pres.relations.iter().filter(|r| matches!(r, Relation::LocalEdge { .. })).count();
        assert_eq!(locals, dec.bands.len(), "{src}");
        let classes: std::collections::HashSet<(usize, usize)> = dec
            .bands
            .iter()
            .map(|b| (b.from_disk.min(b.to_disk), b.from_disk.max(b.to_disk)))
            .collect();
        let cycles =
            pres.relations.iter().filter(|r| matches!(r, Relation::GlobalCycle { .. })).count();
        assert_eq!(cycles as i64, classes.len() as i64 - dec.disks.len() as i64 + 1, "{src}");
    }
}

// ---- the transcribed example figure --------------------------------------

/// Expected relations of the example diagram, in the displayed numbering:
/// `W1 = R1^3, W2 = R2^-1 R1, W3 = R4^-1 R1, W4 = R2, W5 = R4,
/// W6 = (R3^-1 R2)^2 = (R4^-1 R3)^2`, cycles
/// `W1^-1 W2 W3 = W2^-1 W4 W6 = W5^-1 W6 W3 = 1`.
fn expected_example_presentation() -> GroupPresentation {
    let cycle = |letters: &[(u32, i8)]| Relation::GlobalCycle {
        word: Word(letters.iter().map(|&(i, e)| (Gen::W(i), e)).collect()),
    };
    GroupPresentation {
        edge_gens: (1..=6).map(Gen::W).collect(),
        n_regions: 5,
        relations: vec![
            Relation::LocalEdge { w: Gen::W(1), w_exp: 1, left: 0, right: 1, exp: 3 },
            Relation::LocalEdge { w: Gen::W(2), w_exp: 1, left: 2, right: 1, exp: 1 },
            Relation::LocalEdge { w: Gen::W(3), w_exp: 1, left: 4, right: 1, exp: 1 },
            Relation::LocalEdge { w: Gen::W(4), w_exp: 1, left: 0, right: 2, exp: 1 },
            Relation::LocalEdge { w: Gen::W(5), w_exp: 1, left: 0, right: 4, exp: 1 },
            Relation::LocalEdge { w: Gen::W(6), w_exp: 1, left: 3, right: 2, exp: 2 },
            Relation::LocalEdge { w: Gen::W(6), w_exp: 1, left: 4, right: 3, exp: 2 },
            cycle(&[(1, -1), (2, 1), (3, 1)]),
            cycle(&[(2, -1), (4, 1), (6, 1)]),
            cycle(&[(5, -1), (6, 1), (3, 1)]),
            Relation::Vanishing { region: 0 },
        ],
    }
}

#[test]
fn example_figure_presentation_matches() {
    let (d, _) = example_four_disk_diagram();
    let pres = brunner_presentation(&d).unwrap();
    let expected = expected_example_presentation();
    assert!(
        presentations_isomorphic(&pres, &expected),
        "emitted:\n{}\nexpected:\n{}",
        pres.display_text(),
        expected.display_text()
    );
    // And its abelianization matches the diagram determinant.
    assert_eq!(abelianization_order(&pres).unwrap(), determinant(&d).unwrap());
}

// ---- coarse presentations -------------------------------------------------

#[test]
fn coarse_relations_content() {
    for (p, q) in [(1i64, 1i64), (1, 2), (2, 3)] {
        let pres = coarse_family_presentation(&parse_expr("-1").unwrap(), p, q).unwrap();
        let locals: Vec<&Relation> = pres
            .relations
            .iter()
            .filter(|r| matches!(r, Relation::LocalEdge { .. }))
            .collect();
        assert_eq!(locals.len(), 5);
        assert_eq!(
            locals[0],
            &Relation::LocalEdge { w: Gen::W(1), w_exp: p, left: 0, right: 1, exp: p + q }
        );
        let cycles: Vec<String> = pres
            .relations
            .iter()
            .filter_map(|r| match r {
                Relation::GlobalCycle { word } => Some(word.to_string()),
                _ => None,
            })
            .collect();
        assert_eq!(cycles, vec!["W1^-1 W2 W3", "W5^-1 W4^-1 W2 W3", "W1^-1 W4 W5"]);
        // One coarse record per crossing on the top path of T = -1.
        let coarse =
            pres.relations.iter().filter(|r| matches!(r, Relation::LocalCoarse { .. })).count();
        assert_eq!(coarse, 1);
    }
}

#[test]
fn coarse_presentation_rejects_abelianization() {
    let pres = coarse_family_presentation(&parse_expr("-1").unwrap(), 1, 1).unwrap();
    assert_eq!(abelianization_order(&pres), Err(BrunnerError::CoarseNotAbelianizable));
}

#[test]
fn bundled_chains_validate() {
    for (p, q) in [(1i64, 1i64), (1, 2), (2, 3), (3, 5)] {
        let pres = coarse_family_presentation(&parse_expr("-1").unwrap(), p, q).unwrap();
        let chain = words::family_rewrite_chain(p, q);
        assert_eq!(rewrite_verify(&pres, &chain), ChainVerdict::Valid, "chain for {p}/{q}");
    }
}

#[test]
fn corrupted_chain_is_pinpointed() {
    let pres = coarse_family_presentation(&parse_expr("-1").unwrap(), 1, 2).unwrap();
    let mut chain = words::family_rewrite_chain(1, 2);
    // Swap two letters without a commutation license.
    let mid = chain.steps.len() / 2;
    let mut w = chain.steps[mid].to.0.clone();
    w.reverse();
    chain.steps[mid].to = Word(w);
    match rewrite_verify(&pres, &chain) {
        ChainVerdict::Failed { step, .. } => assert_eq!(step, mid),
        ChainVerdict::Valid => panic!("corruption not caught"),
    }
}

#[test]
fn simple_chain_examples() {
    let pres = coarse_family_presentation(&parse_expr("-1").unwrap(), 1, 1).unwrap();
    // (R3 R1^-1 R2)^2 -> R3 R1^-2 W1 R2 via W1 := R2 R3 then commutation.
    let (w1, r1, r2, r3) = (Gen::W(1), Gen::R(1), Gen::R(2), Gen::R(3));
    let chain = Chain {
        start: Word(vec![(r3, 1), (r1, -1), (r2, 1), (r3, 1), (r1, -1), (r2, 1)]),
        steps: vec![
            ChainStep {
                to: Word(vec![(r3, 1), (r1, -1), (Gen::W(4), 1), (r3, 1), (r1, -1), (r2, 1)]),
                just: Step::Relation(3),
            },
            ChainStep {
                to: Word(vec![(r3, 1), (r1, -1), (Gen::W(4), 1), (Gen::W(5), 1), (r1, -1), (r2, 1)]),
                just: Step::Relation(4),
            },
            ChainStep {
                to: Word(vec![(r3, 1), (r1, -1), (w1, 1), (r1, -1), (r2, 1)]),
                just: Step::Relation(7),
            },
            ChainStep {
                to: Word(vec![(r3, 1), (r1, -1), (r1, -1), (w1, 1), (r2, 1)]),
                just: Step::Commute(w1, r1),
            },
        ],
    };
    assert_eq!(rewrite_verify(&pres, &chain), ChainVerdict::Valid);

    // W W^-1 -> empty by free reduction.
    let chain = Chain {
        start: Word(vec![(w1, 1), (w1, -1)]),
        steps: vec![ChainStep { to: Word::empty(), just: Step::FreeReduce }],
    };
    assert_eq!(rewrite_verify(&pres, &chain), ChainVerdict::Valid);
}

#[test]
fn chain_json_round_trip() {
    let chain = words::family_rewrite_chain(2, 3);
    let v = chain.to_json();
    let back = Chain::from_json(&v).unwrap();
    let pres = coarse_family_presentation(&parse_expr("-1").unwrap(), 2, 3).unwrap();
    assert_eq!(rewrite_verify(&pres, &back), ChainVerdict::Valid);
}
