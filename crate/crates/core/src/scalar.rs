//! Exact arithmetic in the rationals and in `Q(w)`, `w` a primitive cube
//! root of unity.
//!
//! A [`Scalar`] is stored as a pair `(u, v)` standing for `u + v*w`, reduced
//! with `w^2 = -1 - w`. Both components are canonical rationals, so equality
//! is structural and every `== 0` test downstream is exact.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: i32) -> Result<Rational> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Exact real cube root when `self` is the cube of a rational.
    pub fn cbrt_exact(&self) -> Option<Rational> {
        let n = self.numer().cbrt();
        let d = self.denom().cbrt();
        if &(&n * &n * &n) == self.numer() && &(&d * &d * &d) == self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Best rational approximations of `x` (continued-fraction convergents)
    /// with denominators up to `max_denom`.
    pub fn convergents(x: f64, max_denom: i64) -> Vec<Rational> {
        let mut out = Vec::new();
        if !x.is_finite() {
            return out;
        }
        let (mut h0, mut h1) = (0i128, 1i128);
        let (mut k0, mut k1) = (1i128, 0i128);
        let mut rest = x;
        for _ in 0..40 {
            let a = rest.floor();
            if a.abs() > 1e18 {
                break;
            }
            let ai = a as i128;
            let h2 = ai * h1 + h0;
            let k2 = ai * k1 + k0;
            if k2 > max_denom as i128 || k2 == 0 {
                break;
            }
            if let (Ok(h), Ok(k)) = (i64::try_from(h2), i64::try_from(k2)) {
                out.push(Rational::new(h, k));
            }
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            let frac = rest - a;
            if frac.abs() < 1e-300 {
                break;
            }
            rest = 1.0 / frac;
        }
        out
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::from_big(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
    };
}

rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);
rational_binop!(Div, div, /);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Element `u + v*w` of `Q(w)`, `w = exp(2*pi*i/3)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    u: Rational,
    v: Rational,
}

impl Scalar {
    pub fn new(u: Rational, v: Rational) -> Self {
        Scalar { u, v }
    }

    pub fn from_rational(u: Rational) -> Self {
        Scalar {
            u,
            v: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(n))
    }

    pub fn frac(numer: i64, denom: i64) -> Self {
        Scalar::from_rational(Rational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The primitive cube root of unity `w`.
    pub fn omega() -> Self {
        Scalar {
            u: Rational::zero(),
            v: Rational::one(),
        }
    }

    /// `w^2 = conj(w) = -1 - w`.
    pub fn omega_sq() -> Self {
        Scalar {
            u: Rational::from_integer(-1),
            v: Rational::from_integer(-1),
        }
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.u)
    }

    /// Galois conjugation `w -> w^2`, i.e. `(u, v) -> (u - v, -v)`.
    pub fn conj(&self) -> Scalar {
        Scalar {
            u: &self.u - &self.v,
            v: -&self.v,
        }
    }

    /// Field norm `u^2 - u*v + v^2` (the squared complex modulus).
    pub fn norm(&self) -> Rational {
        &(&self.u * &self.u) - &(&self.u * &self.v) + &self.v * &self.v
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Scalar {
            u: &c.u / &n,
            v: &c.v / &n,
        })
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents fail on zero.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        Ok(base.pow_u(exp.unsigned_abs()))
    }

    pub fn pow_u(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Position in the complex plane, `w = -1/2 + i*sqrt(3)/2`.
    pub fn to_complex(&self) -> (f64, f64) {
        let u = self.u.to_f64();
        let v = self.v.to_f64();
        (u - v / 2.0, v * 3f64.sqrt() / 2.0)
    }

    /// Nonnegative integer value, if this scalar is one.
    pub fn as_nonneg_integer(&self) -> Option<u64> {
        if !self.is_rational() || !self.u.is_integer() || self.u.is_negative() {
            return None;
        }
        self.u.numer().to_u64()
    }

    /// Is this scalar one of `0, -1, -2, ...`?
    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_rational() && self.u.is_integer() && !self.u.numer().is_positive()
    }

    /// Exact square root in `Q(w)`, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        // (s + t w)^2 = (s^2 - t^2) + (2st - t^2) w and the norm is multiplicative,
        // so s^2 - st + t^2 = m with m^2 = N(self); this pins t^2 = (v + 2m - 2u)/3.
        let m = self.norm().sqrt_exact()?;
        let (u, v) = (&self.u, &self.v);
        let t_sq = (v + &(&m + &m) - (u + u)) / Rational::from_integer(3);
        let t = t_sq.sqrt_exact()?;
        let candidates: Vec<Scalar> = if t.is_zero() {
            match u.sqrt_exact() {
                Some(s) => vec![Scalar::from_rational(s)],
                None => vec![],
            }
        } else {
            let s = (&(&t * &t) + &(&t * &t) - m + u.clone()) / t.clone();
            vec![Scalar::new(s, t)]
        };
        candidates.into_iter().find(|c| &(c * c) == self)
    }

    /// All cube roots in `Q(w)` of a rational scalar with a rational cube root.
    pub fn rational_cube_roots(&self) -> Option<[Scalar; 3]> {
        let r = Scalar::from_rational(self.as_rational()?.cbrt_exact()?);
        Some([r.clone(), &r * &Scalar::omega(), &r * &Scalar::omega_sq()])
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p/q`; others as `u+vw` (e.g. `1/2-3w`, `w`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        let v_abs = self.v.abs();
        let v_part = if v_abs.is_one() {
            "w".to_string()
        } else {
            format!("{v_abs}w")
        };
        if self.u.is_zero() {
            if self.v.is_negative() {
                write!(f, "-{v_part}")
            } else {
                write!(f, "{v_part}")
            }
        } else {
            let sign = if self.v.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", self.u, sign, v_part)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, `vw`, `u+vw`, `u-vw` (`w` or `ω` for the cube root of
    /// unity) and the pair form `(u,v)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a scalar: {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (u, v) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(Scalar::new(u.parse()?, v.parse()?));
        }
        let s = s.replace('ω', "w");
        let Some(body) = s.strip_suffix('w') else {
            return Ok(Scalar::from_rational(s.parse()?));
        };
        // Split `body` at the last sign that is not in leading position.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (u_str, v_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let v = match v_str.trim_start_matches('+') {
            "" => Rational::one(),
            "-" => Rational::from_integer(-1),
            other => other.parse().map_err(|_| bad())?,
        };
        Ok(Scalar::new(u_str.parse()?, v))
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    u: Rational,
    v: Rational,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            u: self.u.clone(),
            v: self.v.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(deserializer)?;
        Ok(Scalar::new(r.u, r.v))
    }
}

fn mul_pairs(a: &Scalar, b: &Scalar) -> Scalar {
    // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
    let ac = &a.u * &b.u;
    let bd = &a.v * &b.v;
    let ad_bc = &(&a.u * &b.v) + &(&a.v * &b.u);
    Scalar {
        u: &ac - &bd,
        v: &ad_bc - &bd,
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        mul_pairs(self, rhs)
    }
}

/// Panics on division by zero, like the rational types it wraps; use
/// [`Scalar::try_div`] when the divisor comes from data.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.try_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            u: -self.u,
            v: -self.v,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            u: -&self.u,
            v: -&self.v,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}
