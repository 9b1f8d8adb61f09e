mod common;

use brenke_core::brenke::{build_polynomials, BrenkeSet};
use brenke_core::dorth::{
    dual_functional_check, expanded_relation_d2, extract_recurrence, necessary_condition,
    theorem_delta_test, DeltaRange, FailureReason,
};
use brenke_core::families::{build_family, catalog, FamilySpec};
use brenke_core::scalar::Scalar;
use brenke_core::series::PowerSeries;
use common::{fr, int, nonzero_rational, random_pair, small_rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Verdicts of every oracle on `d = 2`, window `n <= 15`, `m <= 4`.
fn verdicts(set: &BrenkeSet) -> [bool; 4] {
    let (_, rec) = extract_recurrence(set, 2, 15).unwrap();
    let dual = dual_functional_check(set, 2, 4, 15).unwrap();
    let nec = theorem_delta_test(set, 2, 15, DeltaRange::NecessaryOnly).unwrap();
    let full = theorem_delta_test(set, 2, 15, DeltaRange::Full).unwrap();
    [
        rec.is_d_orthogonal,
        dual.is_d_orthogonal,
        nec.is_d_orthogonal,
        full.is_d_orthogonal,
    ]
}

#[test]
fn oracles_agree_on_catalog() {
    for e in catalog() {
        let set = build_family(&e.spec, 20).unwrap();
        assert_eq!(verdicts(&set), [true; 4], "{}", e.name);
    }
}

#[test]
fn oracles_agree_on_random_pairs() {
    for seed in 0..20 {
        let set = random_pair(seed, 20);
        assert_eq!(verdicts(&set), [false; 4], "seed {seed}");
    }
}

#[test]
fn delta_test_implies_necessary_condition() {
    let mut sets: Vec<BrenkeSet> = (0..10).map(|s| random_pair(100 + s, 14)).collect();
    sets.extend(catalog().iter().map(|e| build_family(&e.spec, 14).unwrap()));
    for set in &sets {
        let full = theorem_delta_test(set, 2, 13, DeltaRange::Full).unwrap();
        let nec = necessary_condition(set, 2, 13).unwrap();
        if full.is_d_orthogonal {
            assert!(nec.verdict.is_d_orthogonal);
        }
        assert_eq!(nec.expanded_forms_agree, Some(true));
    }
}

#[test]
fn verdict_survives_dilation() {
    let sample = |name: &str| {
        let e = catalog().into_iter().find(|e| e.name == name).unwrap();
        build_family(&e.spec, 16).unwrap()
    };
    let cases = vec![
        sample("hermite-a2"),
        sample("laguerre"),
        sample("chihara-b111"),
        random_pair(7, 16),
    ];
    for set in cases {
        for c in [fr(3, 2), int(-5), Scalar::omega()] {
            let b = set.b().transform_arg(&c, 1, 16);
            let scaled = build_polynomials(set.a(), &b, 16).unwrap();
            let (d0, v0) = extract_recurrence(&set, 2, 15).unwrap();
            let (d1, v1) = extract_recurrence(&scaled, 2, 15).unwrap();
            assert_eq!(v0, v1);
            assert_eq!(d0.residual_support, d1.residual_support);
        }
    }
}

#[test]
fn quartic_perturbation_widens_support() {
    let base = FamilySpec::HermiteType {
        c1: int(0),
        c2: int(1),
        c3: int(1),
        alpha: int(1),
    };
    let set = build_family(&base, 16).unwrap();
    for eps in [fr(1, 1), fr(-1, 3), fr(1, 1000)] {
        let mut a = set.a().coeffs().to_vec();
        a[4] = &a[4] + &eps;
        let bent = build_polynomials(&PowerSeries::new(a), set.b(), 16).unwrap();
        let (_, v) = extract_recurrence(&bent, 2, 15).unwrap();
        let w = v.witness.expect("negative");
        assert_eq!(w.reason, FailureReason::SupportTooWide);
        assert!(w.n <= 10);
    }
}

#[test]
fn hermite_relation_cancels() {
    // a1 = 0, a4 = a2^2 / 2 and Delta_n = alpha make the d = 2 relation vanish
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let (a2, a3, alpha) = (
            nonzero_rational(&mut rng),
            small_rational(&mut rng),
            nonzero_rational(&mut rng),
        );
        let a4 = &a2 * &a2 * fr(1, 2);
        let c = expanded_relation_d2(&Scalar::zero(), &a2, &a3, &a4);
        let total: Scalar = c.iter().map(|ci| ci * &alpha).sum();
        assert!(total.is_zero());
        let exp_a = PowerSeries::from_poly(&[int(0), int(0), a2.clone(), a3.clone()], 4)
            .exp_series(4)
            .unwrap();
        assert_eq!(exp_a.coeffs()[4], a4);
    }
}

#[test]
fn hermite_without_cubic_term_is_one_orthogonal() {
    let spec = FamilySpec::HermiteType {
        c1: int(0),
        c2: int(1),
        c3: int(0),
        alpha: int(1),
    };
    assert!(build_family(&spec, 16).is_err());
    let set = brenke_core::families::build_family_unvalidated(&spec, 16)
        .unwrap()
        .set;
    let (_, v2) = extract_recurrence(&set, 2, 15).unwrap();
    assert_eq!(
        v2.witness.map(|w| w.reason),
        Some(FailureReason::RegularityZero)
    );
    let (_, v1) = extract_recurrence(&set, 1, 15).unwrap();
    assert!(v1.is_d_orthogonal);
    let nec = necessary_condition(&set, 2, 15).unwrap();
    assert!(nec.relation_holds && !nec.regularity_holds);
}

#[test]
fn necessary_condition_is_not_sufficient() {
    // 1 + t breaks the relation outright: c3 = -1 while Delta_n = 1
    let exp = PowerSeries::from_fn(12, |k| (1..=k as i64).map(|j| fr(1, j)).product());
    let lin = build_polynomials(&PowerSeries::from_poly(&[int(1), int(1)], 12), &exp, 12).unwrap();
    assert_eq!(
        expanded_relation_d2(&int(1), &int(0), &int(0), &int(0))[0],
        int(-1)
    );
    assert!(!necessary_condition(&lin, 2, 11).unwrap().relation_holds);

    // exp(t^2 + t^3) up to t^4 with a5 moved: the m = 3 relation and
    // regularity only see a1..a4, the full test does not
    let mut a = common::exp_by_powers(&[int(0), int(0), int(1), int(1)], 12);
    a[5] = &a[5] + &int(1);
    let set = build_polynomials(&PowerSeries::new(a), &exp, 12).unwrap();
    let nec = necessary_condition(&set, 2, 11).unwrap();
    assert!(nec.verdict.is_d_orthogonal);
    let (_, v) = extract_recurrence(&set, 2, 11).unwrap();
    assert!(!v.is_d_orthogonal);
    let full = theorem_delta_test(&set, 2, 11, DeltaRange::Full).unwrap();
    assert!(!full.is_d_orthogonal);
    assert!(
        theorem_delta_test(&set, 2, 11, DeltaRange::NecessaryOnly)
            .unwrap()
            .is_d_orthogonal
    );
}
