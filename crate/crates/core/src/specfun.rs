//! Pochhammer symbols, q-shifted factorials and coefficient streams of
//! (basic) hypergeometric series.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::CoeffStream;

/// `(x)_n = x (x+1) ... (x+n-1)`.
pub fn pochhammer(x: &Scalar, n: usize) -> Scalar {
    (0..n).map(|k| x + &Scalar::from_int(k as i64)).product()
}

/// `(x;q)_n = (1-x)(1-xq)...(1-xq^{n-1})`.
pub fn q_shifted(x: &Scalar, q: &Scalar, n: usize) -> Scalar {
    let one = Scalar::one();
    let mut acc = Scalar::one();
    let mut xq = x.clone();
    for _ in 0..n {
        acc *= &(&one - &xq);
        xq *= q;
    }
    acc
}

/// `q^{n(n-1)/2}`, possibly for negative `q`.
pub fn q_binom2(q: &Scalar, n: usize) -> Scalar {
    q.pow_u((n * n.saturating_sub(1) / 2) as u64)
}

/// Is `q` a root of unity? In `Q(w)` those are exactly the sixth roots.
pub fn is_root_of_unity(q: &Scalar) -> bool {
    !q.is_zero() && q.pow_u(6).is_one()
}

/// The `k >= 0` with `b * q^k = 1`, if any; i.e. `b = q^{-k}`.
///
/// When `|q| != 1` the candidate is pinned by the norm, so the answer is
/// exact for every `k`. When `|q| = 1` only `k < 64` is searched.
pub fn inverse_q_power(b: &Scalar, q: &Scalar) -> Option<usize> {
    if b.is_zero() || q.is_zero() {
        return None;
    }
    let check = |k: usize| (b * &q.pow_u(k as u64)).is_one();
    let nq = q.norm();
    if nq.is_one() {
        return (0..64).find(|&k| check(k));
    }
    // N(b) N(q)^k = 1
    let est = -(b.norm().to_f64().ln()) / nq.to_f64().ln();
    if !est.is_finite() {
        return None;
    }
    let k0 = est.round();
    if k0 < -1.0 {
        return None;
    }
    let k0 = k0.max(0.0) as usize;
    (k0.saturating_sub(1)..=k0 + 1).find(|&k| check(k))
}

/// Parameters of `pFq(a_1..a_p; b_1..b_q; .)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperSpec {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
}

impl HyperSpec {
    pub fn new(upper: Vec<Scalar>, lower: Vec<Scalar>) -> Self {
        HyperSpec { upper, lower }
    }

    pub fn validate(&self) -> Result<()> {
        match self.lower.iter().find(|b| b.is_nonpositive_integer()) {
            Some(b) => Err(Error::InvalidLowerParameter(b.to_string())),
            None => Ok(()),
        }
    }
}

/// Parameters of `rphis(a_1..a_r; b_1..b_s; q, .)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QHyperSpec {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub q: Scalar,
}

impl QHyperSpec {
    pub fn new(upper: Vec<Scalar>, lower: Vec<Scalar>, q: Scalar) -> Self {
        QHyperSpec { upper, lower, q }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_zero() || is_root_of_unity(&self.q) {
            return Err(Error::InvalidLowerParameter(format!("base q = {}", self.q)));
        }
        match self
            .lower
            .iter()
            .find(|b| inverse_q_power(b, &self.q).is_some())
        {
            Some(b) => Err(Error::InvalidLowerParameter(b.to_string())),
            None => Ok(()),
        }
    }

    /// Exponent `1 + s - r` of the compensating factor.
    pub fn balance(&self) -> i64 {
        1 + self.lower.len() as i64 - self.upper.len() as i64
    }
}

/// Coefficients `prod (a_i)_n / prod (b_j)_n * z^n / n!`.
pub fn pfq_stream(spec: &HyperSpec, arg_scale: &Scalar) -> Result<CoeffStream> {
    spec.validate()?;
    let spec = spec.clone();
    let z = arg_scale.clone();
    Ok(CoeffStream::from_ratio(move |n| {
        let k = Scalar::from_int(n as i64);
        let num: Scalar = spec.upper.iter().map(|a| a + &k).product();
        let den: Scalar =
            spec.lower.iter().map(|b| b + &k).product::<Scalar>() * Scalar::from_int(n as i64 + 1);
        num * &z / den
    }))
}

/// Coefficients `prod (a_i;q)_n / prod (b_j;q)_n * ((-1)^n q^{C(n,2)})^{1+s-r} z^n / (q;q)_n`.
pub fn rphis_stream(spec: &QHyperSpec, arg_scale: &Scalar) -> Result<CoeffStream> {
    spec.validate()?;
    let spec = spec.clone();
    let z = arg_scale.clone();
    let balance = spec.balance();
    Ok(CoeffStream::from_ratio(move |n| {
        let one = Scalar::one();
        let qn = spec.q.pow_u(n as u64);
        let num: Scalar = spec.upper.iter().map(|a| &one - &(a * &qn)).product();
        let den: Scalar = spec
            .lower
            .iter()
            .map(|b| &one - &(b * &qn))
            .product::<Scalar>()
            * (&one - &(&qn * &spec.q));
        let comp = (-&qn).pow(balance).expect("q is nonzero");
        num * comp * &z / den
    }))
}

/// `exp(c t)`: `c^n / n!`.
pub fn exp_stream(c: &Scalar) -> CoeffStream {
    pfq_stream(&HyperSpec::new(vec![], vec![]), c).expect("0F0 has no lower parameters")
}

/// `e_q(c t) = 1/(c t; q)_inf = 1phi0(0; -; q, c t)`: `c^n / (q;q)_n`.
pub fn e_q_stream(q: &Scalar, c: &Scalar) -> Result<CoeffStream> {
    rphis_stream(&QHyperSpec::new(vec![Scalar::zero()], vec![], q.clone()), c)
}

/// `(c t; q)_inf = 0phi0(-; -; q, c t)`: `(-1)^n q^{C(n,2)} c^n / (q;q)_n`.
pub fn q_product_stream(q: &Scalar, c: &Scalar) -> Result<CoeffStream> {
    rphis_stream(&QHyperSpec::new(vec![], vec![], q.clone()), c)
}

/// `3phi2(0,0,0; lambda q, mu q; q, z)` given only `lambda + mu = sigma` and
/// `lambda mu = pi`: coefficients `z^n / ((q;q)_n prod_{k<n} (1 - sigma q^{k+1} + pi q^{2k+2}))`.
///
/// The pair need not split over `Q(w)`; when it does, this agrees with
/// [`rphis_stream`] on the explicit lower parameters.
pub fn phi32_pair_stream(
    q: &Scalar,
    sigma: &Scalar,
    pi: &Scalar,
    z: &Scalar,
) -> Result<CoeffStream> {
    if q.is_zero() || is_root_of_unity(q) {
        return Err(Error::InvalidLowerParameter(format!("base q = {q}")));
    }
    let (q, sigma, pi, z) = (q.clone(), sigma.clone(), pi.clone(), z.clone());
    Ok(CoeffStream::from_ratio(move |n| {
        let one = Scalar::one();
        let y = q.pow_u(n as u64 + 1);
        let pair = &one - &(&sigma * &y) + &pi * &(&y * &y);
        let den = (&one - &y) * pair;
        z.try_div(&den)
            .unwrap_or_else(|_| panic!("lower parameter pair vanishes at n = {n}"))
    }))
}

/// Roots `(lambda, mu)` of `y^2 - sigma y + pi` when they lie in `Q(w)`.
pub fn split_pair(sigma: &Scalar, pi: &Scalar) -> Option<(Scalar, Scalar)> {
    let disc = sigma * sigma - Scalar::from_int(4) * pi;
    let root = disc.sqrt()?;
    let half = Scalar::frac(1, 2);
    Some(((sigma + &root) * &half, (sigma - &root) * &half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&fr(2, 1), 3), fr(24, 1));
        assert_eq!(pochhammer(&Scalar::omega(), 0), Scalar::one());
        assert_eq!(pochhammer(&fr(-1, 1), 3), Scalar::zero());
    }

    #[test]
    fn q_shifted_values() {
        let q = fr(1, 2);
        assert_eq!(q_shifted(&q, &q, 2), fr(3, 8));
        assert_eq!(q_shifted(&fr(7, 3), &q, 0), Scalar::one());
        for n in 1..5 {
            assert!(q_shifted(&Scalar::one(), &q, n).is_zero());
        }
    }

    #[test]
    fn hypergeometric_streams() {
        let e = exp_stream(&Scalar::one());
        assert_eq!(e.get(5), fr(1, 120));
        let s = pfq_stream(
            &HyperSpec::new(vec![], vec![fr(1, 1), fr(2, 1)]),
            &Scalar::one(),
        )
        .unwrap();
        assert_eq!(s.get(2), fr(1, 24));
        let a = fr(5, 7);
        let s = pfq_stream(&HyperSpec::new(vec![a.clone()], vec![a]), &Scalar::one()).unwrap();
        assert_eq!(s.get(4), fr(1, 24));
        let bad = HyperSpec::new(vec![], vec![fr(-2, 1)]);
        assert!(matches!(
            pfq_stream(&bad, &Scalar::one()),
            Err(Error::InvalidLowerParameter(_))
        ));
    }

    #[test]
    fn basic_hypergeometric_streams() {
        let q = fr(1, 3);
        let eq = e_q_stream(&q, &Scalar::one()).unwrap();
        let prod = q_product_stream(&q, &fr(-1, 1)).unwrap();
        for n in 0..8 {
            let qq = q_shifted(&q, &q, n);
            assert_eq!(eq.get(n), Scalar::one() / &qq);
            assert_eq!(prod.get(n), q_binom2(&q, n) / qq);
        }
        let s = rphis_stream(
            &QHyperSpec::new(vec![fr(2, 1)], vec![fr(5, 1)], q.clone()),
            &fr(5, 1),
        )
        .unwrap();
        assert_eq!(s.get(0), Scalar::one());
    }

    #[test]
    fn pair_stream_matches_split_parameters() {
        let q = fr(1, 2);
        let (lam, mu) = (fr(2, 3), fr(-5, 1));
        let sigma = &lam + &mu;
        let pi = &lam * &mu;
        assert_eq!(
            split_pair(&sigma, &pi).map(|(a, b)| &a * &b),
            Some(pi.clone())
        );
        let z = fr(3, 7);
        let pair = phi32_pair_stream(&q, &sigma, &pi, &z).unwrap();
        let zero = Scalar::zero();
        let spec = QHyperSpec::new(
            vec![zero.clone(), zero.clone(), zero],
            vec![&lam * &q, &mu * &q],
            q.clone(),
        );
        let direct = rphis_stream(&spec, &z).unwrap();
        assert_eq!(pair.prefix(12), direct.prefix(12));
        assert!(split_pair(&fr(0, 1), &fr(-2, 1)).is_none());
    }

    #[test]
    fn forbidden_lower_parameters() {
        let q = fr(1, 2);
        assert_eq!(inverse_q_power(&fr(8, 1), &q), Some(3));
        assert_eq!(inverse_q_power(&fr(1, 1), &q), Some(0));
        assert_eq!(inverse_q_power(&fr(1, 8), &q), None);
        assert_eq!(inverse_q_power(&fr(3, 1), &q), None);
        let spec = QHyperSpec::new(vec![], vec![fr(4, 1)], q);
        assert!(spec.validate().is_err());
        let spec = QHyperSpec::new(vec![], vec![], Scalar::omega());
        assert!(spec.validate().is_err());
    }
}
