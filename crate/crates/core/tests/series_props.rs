mod common;

use std::sync::Arc;

use brenke_core::error::Error;
use brenke_core::scalar::Scalar;
use brenke_core::series::PowerSeries;
use brenke_core::specfun::{e_q_stream, exp_stream, q_product_stream, q_shifted};
use common::{exp_by_powers, fr, int};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -3i64..=3)
        .prop_map(|(n, d, v)| Scalar::frac(n, d) + Scalar::from_int(v) * Scalar::omega())
}

fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
    proptest::collection::vec(scalar(), order + 1).prop_map(PowerSeries::new)
}

fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    series(order).prop_map(|s| {
        let mut c = s.into_coeffs();
        if c[0].is_zero() {
            c[0] = Scalar::one();
        }
        PowerSeries::new(c)
    })
}

fn zero_const_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    series(order).prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = Scalar::zero();
        PowerSeries::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn multiplication_laws(f in series(8), g in series(8), h in series(8)) {
        prop_assert_eq!(f.mul(&g, 8).unwrap(), g.mul(&f, 8).unwrap());
        let left = f.mul(&g, 8).unwrap().mul(&h, 8).unwrap();
        let right = f.mul(&g.mul(&h, 8).unwrap(), 8).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.mul(&PowerSeries::one(8), 8).unwrap(), f.clone());
    }

    #[test]
    fn reciprocal_is_an_involution(f in unit_series(8)) {
        let r = f.reciprocal(8).unwrap();
        prop_assert_eq!(f.mul(&r, 8).unwrap(), PowerSeries::one(8));
        prop_assert_eq!(r.reciprocal(8).unwrap(), f);
    }

    #[test]
    fn exp_turns_sums_into_products(f in zero_const_series(20), g in zero_const_series(20)) {
        let lhs = f.add(&g).exp_series(20).unwrap();
        let rhs = f.exp_series(20).unwrap().mul(&g.exp_series(20).unwrap(), 20).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitutions_compose(f in series(12), c in scalar(), c2 in scalar(), m in 1usize..4, m2 in 1usize..4) {
        let order = 12;
        let inner = f.transform_arg(&c2, m2, order);
        let twice = inner.transform_arg(&c, m, order);
        let once = f.transform_arg(&(&c2 * &c.pow_u(m2 as u64)), m * m2, order);
        let common = twice.order().min(once.order());
        prop_assert_eq!(twice.truncate(common).unwrap(), once.truncate(common).unwrap());
    }

    #[test]
    fn json_round_trip(f in series(6)) {
        let text = serde_json::to_string(&f).unwrap();
        let back: PowerSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn series_examples() {
    let p =
        |cs: &[i64], n| PowerSeries::from_poly(&cs.iter().map(|&c| int(c)).collect::<Vec<_>>(), n);
    assert_eq!(
        p(&[1, 1], 2).mul(&p(&[1, -1], 2), 2).unwrap(),
        p(&[1, 0, -1], 2)
    );
    assert_eq!(
        p(&[1, 1, 1], 3).mul(&p(&[1, -1], 3), 3).unwrap(),
        p(&[1, 0, 0, -1], 3)
    );
    let e = PowerSeries::new(vec![int(1), int(1), fr(1, 2)]);
    assert_eq!(e.mul(&e, 2).unwrap().coeffs(), &[int(1), int(2), int(2)]);
    assert_eq!(
        p(&[1, 1, 1], 7).reciprocal(7).unwrap().coeffs(),
        p(&[1, -1, 0, 1, -1, 0, 1, -1], 7).coeffs()
    );
    assert_eq!(p(&[2], 0).reciprocal(0).unwrap().coeffs(), &[fr(1, 2)]);
    assert!(matches!(
        p(&[0, 1], 3).reciprocal(3),
        Err(Error::NonUnitConstantTerm)
    ));
    assert_eq!(
        p(&[0, 1, 1], 3).exp_series(3).unwrap().coeffs(),
        &[int(1), int(1), fr(3, 2), fr(7, 6)]
    );
    assert!(matches!(
        p(&[1, 1], 3).exp_series(3),
        Err(Error::NonzeroConstantTerm)
    ));
    assert_eq!(
        p(&[1, 1], 4).transform_arg(&int(2), 3, 4).coeffs(),
        p(&[1, 0, 0, 2, 0], 4).coeffs()
    );
    assert!(matches!(
        p(&[1, 1], 2).mul(&p(&[1], 0), 2),
        Err(Error::OrderExceeded { .. })
    ));
}

#[test]
fn exp_ode_matches_power_expansion() {
    let poly = [int(0), fr(2, 3), int(-1), fr(5, 7)];
    let via_ode = PowerSeries::from_poly(&poly, 15).exp_series(15).unwrap();
    assert_eq!(via_ode.coeffs(), &exp_by_powers(&poly, 15)[..]);
}

#[test]
fn q_exponential_inverts_q_product() {
    for q in [fr(1, 2), fr(-2, 3), fr(3, 1), Scalar::omega() * fr(1, 2)] {
        let eq = e_q_stream(&q, &int(1)).unwrap().to_series(30);
        let prod = q_product_stream(&q, &int(1)).unwrap().to_series(30);
        assert_eq!(eq.mul(&prod, 30).unwrap(), PowerSeries::one(30), "q = {q}");
    }
}

#[test]
fn zero_f_zero_is_exp() {
    let t = PowerSeries::t(20);
    assert_eq!(exp_stream(&int(1)).to_series(20), t.exp_series(20).unwrap());
}

#[test]
fn q_product_matches_finite_product() {
    // (x t; q)_inf / (x q^K t; q)_inf = prod_{k<K} (1 - x q^k t)
    let order = 14;
    for (q, x) in [
        (fr(1, 3), fr(2, 5)),
        (fr(-2, 1), int(1)),
        (fr(1, 2), Scalar::omega()),
    ] {
        for big_k in [1usize, 4, 9, 20] {
            let head = q_product_stream(&q, &x).unwrap().to_series(order);
            let tail = q_product_stream(&q, &(&x * &q.pow_u(big_k as u64)))
                .unwrap()
                .to_series(order);
            let ratio = head.mul(&tail.reciprocal(order).unwrap(), order).unwrap();
            let mut prod = PowerSeries::one(order);
            for k in 0..big_k {
                let factor = PowerSeries::from_poly(&[int(1), -(&x * &q.pow_u(k as u64))], order);
                prod = prod.mul(&factor, order).unwrap();
            }
            assert_eq!(ratio, prod, "q = {q}, x = {x}, K = {big_k}");
        }
    }
}

#[test]
fn q_product_coefficients() {
    let q = fr(1, 2);
    let s = q_product_stream(&q, &int(-1)).unwrap().to_series(10);
    for n in 0..=10usize {
        let expected = q.pow_u((n * n.saturating_sub(1) / 2) as u64) / q_shifted(&q, &q, n);
        assert_eq!(s.coeffs()[n], expected);
    }
}

#[test]
fn streams_are_consistent_across_threads() {
    let expected = e_q_stream(&fr(1, 3), &fr(2, 1)).unwrap().prefix(40);
    let fresh = e_q_stream(&fr(1, 3), &fr(2, 1)).unwrap();
    let shared = Arc::new(fresh);
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let s = Arc::clone(&shared);
            std::thread::spawn(move || {
                (0..40)
                    .rev()
                    .map(|n| s.get((n + i) % 40))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for (i, h) in handles.into_iter().enumerate() {
        let got = h.join().unwrap();
        for (j, v) in got.iter().enumerate() {
            let n = (39 - j + i) % 40;
            assert_eq!(v, &expected[n]);
        }
    }
}
