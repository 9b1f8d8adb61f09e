#![allow(dead_code)]

use brenke_core::brenke::{build_polynomials, BrenkeSet};
use brenke_core::scalar::Scalar;
use brenke_core::series::PowerSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn fr(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    fr(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = small_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Normalized `(A, B)` with small random rational coefficients; `b_k != 0`.
pub fn random_pair(seed: u64, order: usize) -> BrenkeSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![int(1)];
    let mut b = vec![int(1)];
    for _ in 0..order {
        a.push(small_rational(&mut rng));
        b.push(nonzero_rational(&mut rng));
    }
    build_polynomials(&PowerSeries::new(a), &PowerSeries::new(b), order).expect("normalized pair")
}

/// `exp(p(t))` by summing `p^k / k!` directly.
pub fn exp_by_powers(p: &[Scalar], order: usize) -> Vec<Scalar> {
    let poly = PowerSeries::from_poly(p, order);
    let mut term = PowerSeries::one(order);
    let mut acc = PowerSeries::one(order);
    for k in 1..=order {
        term = term.mul(&poly, order).unwrap().scale(&fr(1, k as i64));
        acc = acc.add(&term);
    }
    acc.into_coeffs()
}
