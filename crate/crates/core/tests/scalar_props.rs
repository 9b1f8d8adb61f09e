use brenke_core::error::Error;
use brenke_core::scalar::{Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=25).prop_map(|(n, d)| Rational::new(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(u, v)| Scalar::new(u, v))
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 10_000,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn norm_is_multiplicative(x in scalar(), y in scalar()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        // N(u + v w) = u^2 - u v + v^2
        let (u, v) = (x.u().clone(), x.v().clone());
        prop_assert_eq!(x.norm(), &u * &u - &u * &v + &v * &v);
    }

    #[test]
    fn conj_is_an_automorphism(x in scalar(), y in scalar()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert!((&x * &x.conj()).is_rational());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2_000, ..ProptestConfig::default() })]

    #[test]
    fn text_and_json_round_trip(x in scalar()) {
        let shown: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(&shown, &x);
        let json = serde_json::to_string(&x).unwrap();
        let back: Scalar = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &x);
    }

    #[test]
    fn sqrt_of_square(x in scalar()) {
        let s = (&x * &x).sqrt().unwrap();
        prop_assert!(s == x || s == -&x);
    }

    #[test]
    fn integer_powers(x in scalar(), k in 0i64..6) {
        prop_assume!(!x.is_zero());
        let p = x.pow(k).unwrap();
        let m = x.pow(-k).unwrap();
        prop_assert!((&p * &m).is_one());
    }
}

#[test]
fn omega_identities() {
    let w = Scalar::omega();
    assert_eq!(&w * &w, Scalar::from_int(-1) - w.clone());
    let one_w = Scalar::one() + w.clone();
    assert_eq!(&one_w * &one_w, w);
    assert_eq!(
        Scalar::from_int(2) * Scalar::new(Rational::zero(), Rational::from_integer(3)),
        "(0,6)".parse().unwrap()
    );
    assert_eq!(w.inverse().unwrap(), Scalar::from_int(-1) - Scalar::omega());
    assert_eq!(one_w.inverse().unwrap(), -&Scalar::omega());
    assert_eq!(Scalar::from_int(2).inverse().unwrap(), Scalar::frac(1, 2));
    assert_eq!(w.conj(), Scalar::omega_sq());
    assert_eq!(Scalar::from_int(5).conj(), Scalar::from_int(5));
    let x: Scalar = "1+2w".parse().unwrap();
    assert_eq!(x.conj(), "-1-2w".parse().unwrap());
    assert!(matches!(
        Scalar::zero().inverse(),
        Err(Error::DivisionByZero)
    ));
}

#[test]
fn canonical_serialization() {
    assert_eq!(
        serde_json::to_string(&Scalar::frac(6, -4)).unwrap(),
        r#"{"u":"-3/2","v":"0"}"#
    );
    assert_eq!(
        serde_json::to_string(&Rational::new(4, 2)).unwrap(),
        r#""2""#
    );
    let x: Scalar = serde_json::from_str(r#"{"u":"2/4","v":"-3"}"#).unwrap();
    assert_eq!(x.to_string(), "1/2-3w");
    assert!(serde_json::from_str::<Scalar>(r#"{"u":"1/0","v":"0"}"#).is_err());
}
