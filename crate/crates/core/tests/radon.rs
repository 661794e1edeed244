mod common;

use common::{fixture_points, lemma_violations, moment_curve, random_points};
use heptaknot::oracle::{classify_knot, PolygonalKnot};
use heptaknot::radon::{
    all_rs_matches, build_table, classify_by_radon, match_rs, RadonVerdict, RsPattern,
};
use heptaknot::{Heptagon, KnotClass, Labeling, PenetrationTable, Point3, Sign};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn heptagon_strategy() -> impl Strategy<Value = Heptagon> {
    proptest::collection::vec((0i64..400, 0i64..400, 0i64..400), 7)
        .prop_filter_map("general position", |c| {
            Heptagon::new(c.into_iter().map(|(x, y, z)| Point3::from_ints(x, y, z)).collect()).ok()
        })
}

fn figure8() -> Heptagon {
    Heptagon::new(fixture_points("figure8_heptagon.json")).unwrap()
}

#[test]
fn figure8_fixture_has_witness_and_satisfies_lemmas() {
    let h = figure8();
    let RadonVerdict::Figure8(m) = classify_by_radon(&h).unwrap() else {
        panic!("fixture not recognized")
    };
    let t = build_table(&h, m.labeling).unwrap();
    assert_eq!(t, m.pattern.instantiate(Sign::from_i8(m.global_sign)));
    assert!(lemma_violations(&t).is_empty());
    let all = all_rs_matches(&h).unwrap();
    assert_eq!(all[0], m);
    assert!(all.iter().all(|w| build_table(&h, w.labeling).unwrap()
        == w.pattern.instantiate(Sign::from_i8(w.global_sign))));
}

#[test]
fn figure8_witness_table_golden() {
    let h = figure8();
    let lab = Labeling::new(6, -1).unwrap();
    assert_eq!(build_table(&h, lab).unwrap().render(), "+ - x\n- x x\nx + x\n+ x x\nx - x\n- + x\nx + x\n");
    assert_eq!(match_rs(&build_table(&h, lab).unwrap()), Some((RsPattern::RS2, Sign::Positive)));
}

#[test]
fn moment_curve_is_not_figure8() {
    let h = Heptagon::new(moment_curve(7)).unwrap();
    assert_eq!(classify_by_radon(&h).unwrap(), RadonVerdict::NotFigure8);
    assert!(all_rs_matches(&h).unwrap().is_empty());
}

#[test]
fn templates_round_trip_through_render() {
    for p in RsPattern::ALL {
        for s in [Sign::Positive, Sign::Negative] {
            let t = p.instantiate(s);
            assert_eq!(PenetrationTable::parse(&t.render()), Some(t));
            assert_eq!(match_rs(&t), Some((p, s)));
            assert!(lemma_violations(&t).is_empty(), "{p} {s:?}");
        }
    }
}

#[test]
fn random_trefoil_heptagons_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut trefoils = 0;
    while trefoils < 20 {
        let pts = random_points(&mut rng, 7, 1000);
        let Ok(k) = PolygonalKnot::new(pts.clone()) else { continue };
        if classify_knot(&k).unwrap() == KnotClass::Trefoil {
            trefoils += 1;
            assert!(!classify_by_radon(&Heptagon::new(pts).unwrap()).unwrap().is_figure8());
        }
    }
}

#[test]
fn matcher_tracks_oracle_on_shuffled_fixture() {
    // Arbitrary permutations change the polygon; the matcher must track the
    // oracle on each of them.
    let base = fixture_points("figure8_heptagon.json");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let mut pts = base.clone();
        pts.shuffle(&mut rng);
        let oracle = classify_knot(&PolygonalKnot::new(pts.clone()).unwrap()).unwrap();
        let radon = classify_by_radon(&Heptagon::new(pts).unwrap()).unwrap();
        assert_eq!(radon.is_figure8(), oracle == KnotClass::Figure8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabeling_commutes_with_tables(h in heptagon_strategy()) {
        for lab in Labeling::all() {
            prop_assert_eq!(
                build_table(&h, lab).unwrap(),
                build_table(&h.relabeled(lab), Labeling::IDENTITY).unwrap()
            );
        }
    }

    #[test]
    fn verdict_is_invariant_under_relabeling(h in heptagon_strategy()) {
        let verdict = classify_by_radon(&h).unwrap().is_figure8();
        for lab in Labeling::all() {
            prop_assert_eq!(classify_by_radon(&h.relabeled(lab)).unwrap().is_figure8(), verdict);
        }
    }

    #[test]
    fn rotated_base_shifts_rows(h in heptagon_strategy(), b in 0usize..7) {
        let id = build_table(&h, Labeling::IDENTITY).unwrap();
        let rot = build_table(&h, Labeling::new(b, 1).unwrap()).unwrap();
        for r in 0..7 {
            prop_assert_eq!(rot.entries[r], id.entries[(r + b) % 7]);
        }
    }

    #[test]
    fn mirror_negates_tables(h in heptagon_strategy()) {
        let m = Heptagon::new(h.vertices().iter().map(Point3::mirrored).collect()).unwrap();
        prop_assert_eq!(build_table(&m, Labeling::IDENTITY).unwrap(), build_table(&h, Labeling::IDENTITY).unwrap().negated());
    }

    #[test]
    fn full_rows_never_match(cells in proptest::collection::vec(-1i8..=1, 21), row in 0usize..7) {
        let mut t = PenetrationTable::zero();
        for (i, c) in cells.iter().enumerate() {
            t.entries[i / 3][i % 3] = Sign::from_i8(*c);
        }
        t.entries[row] = [Sign::Positive, Sign::Negative, Sign::Positive];
        prop_assert_eq!(match_rs(&t), None);
    }

    #[test]
    fn figure8_tables_satisfy_lemmas(h in heptagon_strategy()) {
        if let RadonVerdict::Figure8(m) = classify_by_radon(&h).unwrap() {
            let t = build_table(&h, m.labeling).unwrap();
            prop_assert!(lemma_violations(&t).is_empty());
        }
    }
}
