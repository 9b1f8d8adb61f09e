//! Brenke polynomial tables `P_n(x) = sum_k a_{n-k} b_k x^k`, generated by
//! `A(t) B(xt)`, and the sequences `r_n = b_n / b_{n+1}`, `Delta_n = r_n - r_{n-1}`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::PowerSeries;

/// `r_n` for `0 <= n < N` (with `r_{-1} = 0` implied) and `Delta_n = r_n - r_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSeq {
    pub r: Vec<Scalar>,
    pub delta: Vec<Scalar>,
}

impl DeltaSeq {
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    /// CSV with columns `n,r_n,delta_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r_n,delta_n\n");
        for (n, (r, d)) in self.r.iter().zip(&self.delta).enumerate() {
            let _ = writeln!(out, "{n},{r},{d}");
        }
        out
    }
}

/// `r_n` and `Delta_n` for `0 <= n < N`.
pub fn delta_sequence(b: &PowerSeries, n: usize) -> Result<DeltaSeq> {
    if b.order() < n {
        return Err(Error::OrderTooSmall {
            needed: n,
            have: b.order(),
        });
    }
    let bs = &b.coeffs()[..=n];
    if let Some(k) = bs.iter().position(Scalar::is_zero) {
        return Err(Error::VanishingB(k));
    }
    let r: Vec<Scalar> = bs.windows(2).map(|w| &w[0] / &w[1]).collect();
    let delta = r
        .iter()
        .enumerate()
        .map(|(i, ri)| if i == 0 { ri.clone() } else { ri - &r[i - 1] })
        .collect();
    Ok(DeltaSeq { r, delta })
}

/// An `(A, B)` pair truncated at `N` with its polynomial table.
#[derive(Clone, Debug)]
pub struct BrenkeSet {
    a: PowerSeries,
    b: PowerSeries,
    n: usize,
    p: Vec<Vec<Scalar>>,
    delta: DeltaSeq,
}

/// Build `P_0..P_N` from normalized `A` and `B` (`a_0 = b_0 = 1`, `b_k != 0`).
pub fn build_polynomials(a: &PowerSeries, b: &PowerSeries, n: usize) -> Result<BrenkeSet> {
    let have = a.order().min(b.order());
    if have < n {
        return Err(Error::OrderTooSmall { needed: n, have });
    }
    if !a.coeffs()[0].is_one() || !b.coeffs()[0].is_one() {
        return Err(Error::NotNormalized);
    }
    let a = a.truncate(n)?;
    let b = b.truncate(n)?;
    let delta = delta_sequence(&b, n)?;
    let (ac, bc) = (a.coeffs(), b.coeffs());
    let p = (0..=n)
        .map(|m| (0..=m).map(|k| &ac[m - k] * &bc[k]).collect())
        .collect();
    Ok(BrenkeSet { a, b, n, p, delta })
}

impl BrenkeSet {
    pub fn new(a: &PowerSeries, b: &PowerSeries, n: usize) -> Result<Self> {
        build_polynomials(a, b, n)
    }

    pub fn a(&self) -> &PowerSeries {
        &self.a
    }

    pub fn b(&self) -> &PowerSeries {
        &self.b
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficients of `P_n` in increasing degree.
    pub fn poly(&self, n: usize) -> &[Scalar] {
        &self.p[n]
    }

    pub fn table(&self) -> &[Vec<Scalar>] {
        &self.p
    }

    pub fn delta(&self) -> &DeltaSeq {
        &self.delta
    }

    pub fn eval(&self, n: usize, x: &Scalar) -> Scalar {
        self.p[n]
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    /// Does every `P_n` only carry powers `x^k` with `k = n (mod s)`?
    pub fn has_symmetry(&self, s: usize) -> bool {
        s >= 1
            && self.p.iter().enumerate().all(|(n, row)| {
                row.iter()
                    .enumerate()
                    .all(|(k, c)| (n - k) % s == 0 || c.is_zero())
            })
    }

    /// Does `a_1 = ... = a_{s-1} = 0` hold?
    pub fn leading_a_vanish(&self, s: usize) -> bool {
        self.a.coeffs().iter().take(s).skip(1).all(Scalar::is_zero)
    }

    /// CSV of the polynomial table: row `n` holds the coefficients of `P_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for k in 0..=self.n {
            let _ = write!(out, ",x^{k}");
        }
        out.push('\n');
        for (n, row) in self.p.iter().enumerate() {
            let _ = write!(out, "{n}");
            for c in row {
                let _ = write!(out, ",{c}");
            }
            for _ in row.len()..=self.n {
                out.push(',');
            }
            out.push('\n');
        }
        out
    }
}

/// Largest `s = m + 1` with `2 <= s <= N` such that the table is `s`-fold
/// symmetric, read off the coefficient pattern.
pub fn symmetry_order(set: &BrenkeSet) -> Option<usize> {
    (2..=set.order()).rev().find(|&s| set.has_symmetry(s))
}

/// The two readings of `(d+1)`-fold symmetry for a `d`-OPS: the coefficient
/// pattern and the vanishing of `a_1..a_d`. They must agree on `d`-OPS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SymmetryCheck {
    pub by_pattern: bool,
    pub by_vanishing: bool,
}

impl SymmetryCheck {
    pub fn agree(&self) -> bool {
        self.by_pattern == self.by_vanishing
    }
}

pub fn symmetry_check(set: &BrenkeSet, d: usize) -> SymmetryCheck {
    SymmetryCheck {
        by_pattern: set.has_symmetry(d + 1),
        by_vanishing: set.leading_a_vanish(d + 1),
    }
}
