mod common;

use brenke_core::brenke::DeltaSeq;
use brenke_core::classify::{characteristic_cubic, classify_case, eval_poly, minimal_annihilator};
use brenke_core::families::{build_family, catalog, CaseLabel, FamilySpec};
use brenke_core::scalar::Scalar;
use common::{fr, int, nonzero_rational, small_rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cubic_at(c: &[Scalar; 4], x: &Scalar) -> Scalar {
    eval_poly(&[c[3].clone(), c[2].clone(), c[1].clone(), c[0].clone()], x)
}

fn sorted(mut xs: Vec<Scalar>) -> Vec<String> {
    let mut s: Vec<String> = xs.drain(..).map(|x| x.to_string()).collect();
    s.sort();
    s
}

/// Annihilator roots implied by the family's `Delta` formula.
fn predicted_roots(spec: &FamilySpec) -> Option<Vec<Scalar>> {
    let w = Scalar::omega();
    Some(match spec {
        FamilySpec::HermiteType { c1, c2, .. } if c1.is_zero() && c2.is_zero() => return None,
        FamilySpec::HermiteType { .. } => vec![int(1)],
        FamilySpec::QAppellProduct { q, .. } => vec![q.clone()],
        FamilySpec::ChiharaTypeQ3 { q, gamma, .. } if gamma.is_zero() => vec![q.clone(), q * &w],
        FamilySpec::ChiharaTypeQ3 { q, .. } => vec![q.clone(), q * &w, q * &(&w * &w)],
        FamilySpec::B1312Family { q, .. } => vec![q.pow_u(2), q.pow_u(3)],
        FamilySpec::LittleQLaguerreType { q, .. } => vec![q.clone(), q.pow_u(3)],
        FamilySpec::LaguerreType { .. } => vec![int(1), int(1), int(1)],
        FamilySpec::SymmetricG1 { .. } | FamilySpec::SymmetricG2 { .. } => return None,
    })
}

#[test]
fn round_trip_on_every_window() {
    for e in catalog() {
        let set = build_family(&e.spec, 26).unwrap();
        for n_max in [15, 20, 25] {
            let c = classify_case(&set, n_max).unwrap();
            assert_eq!(c.label, e.label, "{} at {n_max}", e.name);
            for (name, value) in e.spec.recoverable_params() {
                assert_eq!(c.param(name), Some(&value), "{} {name} at {n_max}", e.name);
            }
        }
    }
}

#[test]
fn annihilator_roots_match_predictions() {
    for e in catalog() {
        let Some(expected) = predicted_roots(&e.spec) else {
            continue;
        };
        let set = build_family(&e.spec, 20).unwrap();
        let ann = minimal_annihilator(set.delta(), 3).unwrap();
        let roots: Vec<Scalar> = ann
            .roots
            .clone()
            .unwrap()
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m))
            .collect();
        assert_eq!(sorted(roots), sorted(expected), "{}", e.name);
    }
}

#[test]
fn cubic_vanishes_at_annihilator_roots() {
    for e in catalog() {
        let set = build_family(&e.spec, 20).unwrap();
        let Ok(ann) = minimal_annihilator(set.delta(), 3) else {
            continue;
        };
        let a = set.a().coeffs();
        let cubic = characteristic_cubic(&a[1], &a[2], &a[3], &a[4]);
        for (r, _) in ann.roots.unwrap() {
            assert!(cubic_at(&cubic, &r).is_zero(), "{} at {r}", e.name);
        }
    }
}

#[test]
fn cubic_factorization_when_a1_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (a2, a3, a4) = (
            small_rational(&mut rng),
            small_rational(&mut rng),
            small_rational(&mut rng),
        );
        let c = characteristic_cubic(&Scalar::zero(), &a2, &a3, &a4);
        // (r + 1)((a4 - a2^2) r^2 + a4)
        let lead = &a4 - &(&a2 * &a2);
        assert_eq!(c, [lead.clone(), lead, a4.clone(), a4.clone()]);
        assert!(cubic_at(&c, &int(-1)).is_zero());
    }
    let c = characteristic_cubic(&int(0), &int(1), &int(3), &fr(1, 5));
    let scaled: Vec<Scalar> = c.iter().map(|x| x * &int(-5)).collect();
    assert_eq!(scaled, [int(4), int(4), int(-1), int(-1)]);
    for r in [int(-1), fr(1, 2), fr(-1, 2)] {
        assert!(cubic_at(&c, &r).is_zero());
    }
}

#[test]
fn q_squared_relation_on_q_appell_sample() {
    let e = catalog()
        .into_iter()
        .find(|e| e.label == CaseLabel::A3_QAppell)
        .unwrap();
    let FamilySpec::QAppellProduct { q, .. } = &e.spec else {
        unreachable!()
    };
    let set = build_family(&e.spec, 8).unwrap();
    let a = set.a().coeffs();
    assert!(a[1].is_zero());
    let (a2, a4) = (&a[2], &a[4]);
    assert_eq!(q * q, a4 / &(a2 * a2 - a4.clone()));
}

#[test]
fn annihilator_is_minimal_on_random_c_finite_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let k = 1 + (rand::Rng::gen_range(&mut rng, 0..3usize));
        let roots: Vec<Scalar> = (0..k).map(|_| nonzero_rational(&mut rng)).collect();
        let weights: Vec<Scalar> = (0..k).map(|_| nonzero_rational(&mut rng)).collect();
        let delta: Vec<Scalar> = (0..12u64)
            .map(|n| {
                roots
                    .iter()
                    .zip(&weights)
                    .map(|(r, w)| w * &r.pow_u(n))
                    .sum()
            })
            .collect();
        let seq = DeltaSeq {
            r: delta.clone(),
            delta,
        };
        let ann = minimal_annihilator(&seq, 3).unwrap();
        let mut distinct = roots.clone();
        distinct.sort_by_key(|x| x.to_string());
        distinct.dedup();
        assert_eq!(ann.order(), distinct.len());
        let found: Vec<Scalar> = ann.roots.unwrap().into_iter().map(|(r, _)| r).collect();
        assert_eq!(sorted(found), sorted(distinct));
    }
}

#[test]
fn report_json_shape() {
    let e = catalog()
        .into_iter()
        .find(|e| e.name == "laguerre")
        .unwrap();
    let c = classify_case(&build_family(&e.spec, 16).unwrap(), 15).unwrap();
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["label"], "B32_Laguerre");
    assert_eq!(v["multiplicities"], serde_json::json!([3]));
    assert_eq!(v["recovered_params"]["gamma"]["u"], "3");
}
