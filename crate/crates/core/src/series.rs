//! Truncated formal power series over [`Scalar`].

use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `f_0 + f_1 t + ... + f_N t^N`, everything past `N` unknown.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<Scalar>,
}

impl PowerSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least a constant term"
        );
        PowerSeries { coeffs }
    }

    /// A polynomial padded with zeros up to `order`.
    pub fn from_poly(poly: &[Scalar], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| poly.get(i).cloned().unwrap_or_default())
            .collect();
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Scalar) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// `t` truncated at `order` (which must be at least 1).
    pub fn t(order: usize) -> Self {
        let mut s = PowerSeries::zero(order.max(1));
        s.coeffs[1] = Scalar::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Result<&Scalar> {
        self.coeffs.get(index).ok_or(Error::OrderExceeded {
            index,
            order: self.order(),
        })
    }

    /// `f_index`, or `None` past the truncation order.
    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.coeffs.get(index)
    }

    pub fn truncate(&self, order: usize) -> Result<PowerSeries> {
        self.check_order(order)?;
        Ok(PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if order > self.order() {
            Err(Error::OrderExceeded {
                index: order,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// Cauchy product truncated at `order`.
    pub fn mul(&self, other: &PowerSeries, order: usize) -> Result<PowerSeries> {
        self.check_order(order)?;
        other.check_order(order)?;
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|k| &self.coeffs[k] * &other.coeffs[n - k])
                    .sum()
            })
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// `1/f` by the triangular recursion `sum_k g_k f_{n-k} = [n = 0]`.
    pub fn reciprocal(&self, order: usize) -> Result<PowerSeries> {
        self.check_order(order)?;
        let inv0 = self.coeffs[0]
            .inverse()
            .map_err(|_| Error::NonUnitConstantTerm)?;
        let mut g: Vec<Scalar> = Vec::with_capacity(order + 1);
        g.push(inv0.clone());
        for n in 1..=order {
            let s: Scalar = (1..=n).map(|k| &self.coeffs[k] * &g[n - k]).sum();
            g.push(-(s * &inv0));
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `exp(f)` for `f(0) = 0`, via `n g_n = sum_{k=1}^n k f_k g_{n-k}`.
    pub fn exp_series(&self, order: usize) -> Result<PowerSeries> {
        self.check_order(order)?;
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut g: Vec<Scalar> = Vec::with_capacity(order + 1);
        g.push(Scalar::one());
        for n in 1..=order {
            let s: Scalar = (1..=n)
                .map(|k| Scalar::from_int(k as i64) * &self.coeffs[k] * &g[n - k])
                .sum();
            g.push(s * Scalar::frac(1, n as i64));
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `f(c t^m)` up to `order`. Beyond `m * (self.order + 1) - 1` the result
    /// would depend on unknown coefficients, so the order is clamped there.
    pub fn transform_arg(&self, c: &Scalar, m: usize, order: usize) -> PowerSeries {
        assert!(m >= 1, "substitution exponent must be positive");
        let order = order.min(m * (self.order() + 1) - 1);
        let mut out = PowerSeries::zero(order);
        let mut ck = Scalar::one();
        for (k, fk) in self.coeffs.iter().enumerate() {
            if k * m > order {
                break;
            }
            out.coeffs[k * m] = &ck * fk;
            ck = &ck * c;
        }
        out
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries::from_fn(order, |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries::from_fn(order, |i| &self.coeffs[i] - &other.coeffs[i])
    }

    pub fn scale(&self, c: &Scalar) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Index of the first coefficient where `self` and `other` differ, up to
    /// the common order.
    pub fn first_mismatch(&self, other: &PowerSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(x, y)| x != y)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Scalar>,
}

impl Serialize for PowerSeries {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(deserializer)?;
        if r.coeffs.len() != r.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            )));
        }
        Ok(PowerSeries { coeffs: r.coeffs })
    }
}

type Rule = dyn Fn(usize, &[Scalar]) -> Scalar + Send + Sync;

/// Lazily evaluated coefficient sequence.
///
/// The rule receives the index and the already computed prefix, so both
/// closed forms and recurrences fit. Computed values are memoized behind a
/// mutex; clones share the memo.
#[derive(Clone)]
pub struct CoeffStream {
    rule: Arc<Rule>,
    memo: Arc<Mutex<Vec<Scalar>>>,
}

impl CoeffStream {
    pub fn new(rule: impl Fn(usize, &[Scalar]) -> Scalar + Send + Sync + 'static) -> Self {
        CoeffStream {
            rule: Arc::new(rule),
            memo: Arc::new(Mutex::new(Vec::new())),
        }
    }

    /// Stream given by a closed form in the index alone.
    pub fn from_index_fn(f: impl Fn(usize) -> Scalar + Send + Sync + 'static) -> Self {
        CoeffStream::new(move |n, _| f(n))
    }

    /// Stream built from a term-ratio: `c_0 = 1`, `c_{n+1} = c_n * ratio(n)`.
    pub fn from_ratio(ratio: impl Fn(usize) -> Scalar + Send + Sync + 'static) -> Self {
        CoeffStream::new(move |n, prev| {
            if n == 0 {
                Scalar::one()
            } else {
                &prev[n - 1] * &ratio(n - 1)
            }
        })
    }

    /// Coefficient `n`.
    pub fn get(&self, n: usize) -> Scalar {
        self.prefix(n + 1)[n].clone()
    }

    /// The first `len` coefficients.
    pub fn prefix(&self, len: usize) -> Vec<Scalar> {
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        while memo.len() < len {
            let n = memo.len();
            let next = (self.rule)(n, &memo);
            memo.push(next);
        }
        memo[..len].to_vec()
    }

    pub fn to_series(&self, order: usize) -> PowerSeries {
        PowerSeries::new(self.prefix(order + 1))
    }

    /// Stream of `c^n * self_n`.
    pub fn scaled(&self, c: Scalar) -> CoeffStream {
        let inner = self.clone();
        CoeffStream::new(move |n, _| c.pow_u(n as u64) * inner.get(n))
    }

    /// Stream of `self(c t^m)`.
    pub fn transformed(&self, c: Scalar, m: usize) -> CoeffStream {
        assert!(m >= 1, "substitution exponent must be positive");
        let inner = self.clone();
        CoeffStream::new(move |n, _| {
            if n % m == 0 {
                c.pow_u((n / m) as u64) * inner.get(n / m)
            } else {
                Scalar::zero()
            }
        })
    }
}

impl fmt::Debug for CoeffStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        f.debug_struct("CoeffStream")
            .field("computed", &memo.len())
            .finish()
    }
}
