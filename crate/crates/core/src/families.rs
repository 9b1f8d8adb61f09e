//! Constructors for the classified 2-orthogonal Brenke families.
//!
//! Every `A` and `B` is produced twice: from its closed form (products and
//! hypergeometric streams) and from a recursion (the q-difference equation
//! `A(t) = Q(t) A(xt)`, the exponential ODE, or `b_{n+1} = b_n / r_n` with
//! `r_n` summed from `Delta`). The two must agree exactly.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::brenke::{build_polynomials, BrenkeSet};
use crate::error::{Error, Result, Violation};
use crate::scalar::Scalar;
use crate::series::{CoeffStream, PowerSeries};
use crate::specfun::{
    e_q_stream, exp_stream, inverse_q_power, is_root_of_unity, pfq_stream, phi32_pair_stream,
    q_product_stream, rphis_stream, split_pair, HyperSpec, QHyperSpec,
};

/// Depth used by [`validate_params`] for the constructive `r_n != 0` check.
pub const DEFAULT_CHECK_ORDER: usize = 40;

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    Sym3Fold_G1,
    Sym3Fold_G2,
    A2_Hermite,
    A3_QAppell,
    B111_Chihara,
    B1311_Chihara,
    B1312_i,
    B1312_ii,
    B1313_LittleQLaguerre,
    B133_AlSalamCarlitz,
    B133_Appell,
    B32_Laguerre,
    Unclassified,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChiharaSub {
    /// `a_2 = 0`
    A2Zero,
    /// `a_2 = a_1^2`
    A2EqA1Sq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum B1312Sub {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `A = exp(c1 t + c2 t^2 + c3 t^3)`, `B = exp(t / alpha)`.
    HermiteType {
        c1: Scalar,
        c2: Scalar,
        c3: Scalar,
        alpha: Scalar,
    },
    /// `A = (rho t;q)_inf (lambda t;q)_inf (mu t;q)_inf`, `B = e_q((1-q) t / beta)`.
    QAppellProduct {
        rho: Scalar,
        lambda: Scalar,
        mu: Scalar,
        beta: Scalar,
        q: Scalar,
    },
    /// `Delta_n = alpha q^n + beta (wq)^n + gamma (w^2 q)^n`.
    ChiharaTypeQ3 {
        a1: Scalar,
        q: Scalar,
        alpha: Scalar,
        beta: Scalar,
        gamma: Scalar,
        sub: ChiharaSub,
    },
    /// `Delta_n = alpha q^{2n} + beta q^{3n}`.
    B1312Family {
        a1: Scalar,
        q: Scalar,
        alpha: Scalar,
        beta: Scalar,
        sub: B1312Sub,
    },
    /// `Delta_n = alpha q^n + beta q^{3n}`, `A = (-eta t;q)_inf`.
    LittleQLaguerreType {
        a1: Scalar,
        q: Scalar,
        alpha: Scalar,
        beta: Scalar,
    },
    /// `A = exp(a1 t)`, `B = 0F2(-; lambda, mu; 3t/gamma)`.
    LaguerreType {
        a1: Scalar,
        lambda: Scalar,
        mu: Scalar,
        gamma: Scalar,
    },
    /// `A = exp(a11 t^3)`, `r_{3n+u} = r_u + n v_u` (`u = 0, 1`), `r_{3n+2} = (n+1) v_2`.
    SymmetricG1 {
        a11: Scalar,
        r0: Scalar,
        r1: Scalar,
        v0: Scalar,
        v1: Scalar,
        v2: Scalar,
    },
    /// `A = e_q(a11 (1-q) t^3)`, `r_{3n+u} = s_u (t_u - q^{-n})` (`u = 0, 1`),
    /// `r_{3n+2} = s_2 (1 - q^{-n-1})`.
    SymmetricG2 {
        a11: Scalar,
        q: Scalar,
        s0: Scalar,
        s1: Scalar,
        s2: Scalar,
        t0: Scalar,
        t1: Scalar,
    },
}

fn fr(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn one() -> Scalar {
    Scalar::one()
}

impl FamilySpec {
    pub fn variant(&self) -> &'static str {
        match self {
            FamilySpec::HermiteType { .. } => "HermiteType",
            FamilySpec::QAppellProduct { .. } => "QAppellProduct",
            FamilySpec::ChiharaTypeQ3 { .. } => "ChiharaTypeQ3",
            FamilySpec::B1312Family { .. } => "B1312Family",
            FamilySpec::LittleQLaguerreType { .. } => "LittleQLaguerreType",
            FamilySpec::LaguerreType { .. } => "LaguerreType",
            FamilySpec::SymmetricG1 { .. } => "SymmetricG1",
            FamilySpec::SymmetricG2 { .. } => "SymmetricG2",
        }
    }

    /// Name used on the command line.
    pub fn cli_name(&self) -> &'static str {
        match self {
            FamilySpec::HermiteType { .. } => "hermite",
            FamilySpec::QAppellProduct { .. } => "q-appell",
            FamilySpec::ChiharaTypeQ3 { .. } => "chihara",
            FamilySpec::B1312Family { .. } => "b1312",
            FamilySpec::LittleQLaguerreType { .. } => "little-q-laguerre",
            FamilySpec::LaguerreType { .. } => "laguerre",
            FamilySpec::SymmetricG1 { .. } => "g1",
            FamilySpec::SymmetricG2 { .. } => "g2",
        }
    }

    pub fn sub(&self) -> Option<&'static str> {
        match self {
            FamilySpec::ChiharaTypeQ3 {
                sub: ChiharaSub::A2Zero,
                ..
            } => Some("a2-zero"),
            FamilySpec::ChiharaTypeQ3 {
                sub: ChiharaSub::A2EqA1Sq,
                ..
            } => Some("a2-eq-a1sq"),
            FamilySpec::B1312Family {
                sub: B1312Sub::I, ..
            } => Some("i"),
            FamilySpec::B1312Family {
                sub: B1312Sub::II, ..
            } => Some("ii"),
            _ => None,
        }
    }

    /// The first catalog sample of the family with this CLI name.
    pub fn default_for(cli_name: &str) -> Option<FamilySpec> {
        catalog()
            .into_iter()
            .find(|e| e.spec.cli_name() == cli_name)
            .map(|e| e.spec)
    }

    /// Mutable access to a named parameter, `None` if the family has no such parameter.
    pub fn param_mut(&mut self, name: &str) -> Option<&mut Scalar> {
        Some(match (self, name) {
            (FamilySpec::HermiteType { c1, .. }, "c1") => c1,
            (FamilySpec::HermiteType { c2, .. }, "c2") => c2,
            (FamilySpec::HermiteType { c3, .. }, "c3") => c3,
            (FamilySpec::HermiteType { alpha, .. }, "alpha") => alpha,
            (FamilySpec::QAppellProduct { rho, .. }, "rho") => rho,
            (FamilySpec::QAppellProduct { lambda, .. }, "lambda") => lambda,
            (FamilySpec::QAppellProduct { mu, .. }, "mu") => mu,
            (FamilySpec::QAppellProduct { beta, .. }, "beta") => beta,
            (FamilySpec::QAppellProduct { q, .. }, "q") => q,
            (FamilySpec::ChiharaTypeQ3 { gamma, .. }, "gamma") => gamma,
            (
                FamilySpec::ChiharaTypeQ3 { a1, .. }
                | FamilySpec::B1312Family { a1, .. }
                | FamilySpec::LittleQLaguerreType { a1, .. }
                | FamilySpec::LaguerreType { a1, .. },
                "a1",
            ) => a1,
            (
                FamilySpec::ChiharaTypeQ3 { q, .. }
                | FamilySpec::B1312Family { q, .. }
                | FamilySpec::LittleQLaguerreType { q, .. }
                | FamilySpec::SymmetricG2 { q, .. },
                "q",
            ) => q,
            (
                FamilySpec::ChiharaTypeQ3 { alpha, .. }
                | FamilySpec::B1312Family { alpha, .. }
                | FamilySpec::LittleQLaguerreType { alpha, .. },
                "alpha",
            ) => alpha,
            (
                FamilySpec::ChiharaTypeQ3 { beta, .. }
                | FamilySpec::B1312Family { beta, .. }
                | FamilySpec::LittleQLaguerreType { beta, .. },
                "beta",
            ) => beta,
            (FamilySpec::LaguerreType { lambda, .. }, "lambda") => lambda,
            (FamilySpec::LaguerreType { mu, .. }, "mu") => mu,
            (FamilySpec::LaguerreType { gamma, .. }, "gamma") => gamma,
            (FamilySpec::SymmetricG1 { a11, .. } | FamilySpec::SymmetricG2 { a11, .. }, "a11") => {
                a11
            }
            (FamilySpec::SymmetricG1 { r0, .. }, "r0") => r0,
            (FamilySpec::SymmetricG1 { r1, .. }, "r1") => r1,
            (FamilySpec::SymmetricG1 { v0, .. }, "v0") => v0,
            (FamilySpec::SymmetricG1 { v1, .. }, "v1") => v1,
            (FamilySpec::SymmetricG1 { v2, .. }, "v2") => v2,
            (FamilySpec::SymmetricG2 { s0, .. }, "s0") => s0,
            (FamilySpec::SymmetricG2 { s1, .. }, "s1") => s1,
            (FamilySpec::SymmetricG2 { s2, .. }, "s2") => s2,
            (FamilySpec::SymmetricG2 { t0, .. }, "t0") => t0,
            (FamilySpec::SymmetricG2 { t1, .. }, "t1") => t1,
            _ => return None,
        })
    }

    /// Select a sub-case by its CLI name (`a2-zero`, `a2-eq-a1sq`, `i`, `ii`).
    pub fn set_sub(&mut self, name: &str) -> Result<()> {
        match (&mut *self, name) {
            (FamilySpec::ChiharaTypeQ3 { sub, .. }, "a2-zero") => *sub = ChiharaSub::A2Zero,
            (FamilySpec::ChiharaTypeQ3 { sub, .. }, "a2-eq-a1sq") => *sub = ChiharaSub::A2EqA1Sq,
            (FamilySpec::B1312Family { sub, .. }, "i") => *sub = B1312Sub::I,
            (FamilySpec::B1312Family { sub, .. }, "ii") => *sub = B1312Sub::II,
            _ => {
                return Err(Error::Usage(format!(
                    "sub-case {name:?} does not apply to {}",
                    self.cli_name()
                )))
            }
        }
        Ok(())
    }

    /// Named parameters in declaration order.
    pub fn params(&self) -> Vec<(&'static str, Scalar)> {
        let p =
            |xs: &[(&'static str, &Scalar)]| xs.iter().map(|(k, v)| (*k, (*v).clone())).collect();
        match self {
            FamilySpec::HermiteType { c1, c2, c3, alpha } => {
                p(&[("c1", c1), ("c2", c2), ("c3", c3), ("alpha", alpha)])
            }
            FamilySpec::QAppellProduct {
                rho,
                lambda,
                mu,
                beta,
                q,
            } => p(&[
                ("rho", rho),
                ("lambda", lambda),
                ("mu", mu),
                ("beta", beta),
                ("q", q),
            ]),
            FamilySpec::ChiharaTypeQ3 {
                a1,
                q,
                alpha,
                beta,
                gamma,
                ..
            } => p(&[
                ("a1", a1),
                ("q", q),
                ("alpha", alpha),
                ("beta", beta),
                ("gamma", gamma),
            ]),
            FamilySpec::B1312Family {
                a1, q, alpha, beta, ..
            }
            | FamilySpec::LittleQLaguerreType { a1, q, alpha, beta } => {
                p(&[("a1", a1), ("q", q), ("alpha", alpha), ("beta", beta)])
            }
            FamilySpec::LaguerreType {
                a1,
                lambda,
                mu,
                gamma,
            } => p(&[("a1", a1), ("lambda", lambda), ("mu", mu), ("gamma", gamma)]),
            FamilySpec::SymmetricG1 {
                a11,
                r0,
                r1,
                v0,
                v1,
                v2,
            } => p(&[
                ("a11", a11),
                ("r0", r0),
                ("r1", r1),
                ("v0", v0),
                ("v1", v1),
                ("v2", v2),
            ]),
            FamilySpec::SymmetricG2 {
                a11,
                q,
                s0,
                s1,
                s2,
                t0,
                t1,
            } => p(&[
                ("a11", a11),
                ("q", q),
                ("s0", s0),
                ("s1", s1),
                ("s2", s2),
                ("t0", t0),
                ("t1", t1),
            ]),
        }
    }

    /// The case this parameter choice falls into.
    pub fn case_label(&self) -> CaseLabel {
        match self {
            FamilySpec::HermiteType { c1, c2, .. } => {
                if c1.is_zero() && c2.is_zero() {
                    CaseLabel::Sym3Fold_G1
                } else if c1.is_zero() {
                    CaseLabel::A2_Hermite
                } else {
                    CaseLabel::B133_Appell
                }
            }
            FamilySpec::QAppellProduct {
                rho, lambda, mu, ..
            } => {
                if (rho + lambda + mu.clone()).is_zero() {
                    CaseLabel::A3_QAppell
                } else {
                    CaseLabel::B133_AlSalamCarlitz
                }
            }
            FamilySpec::ChiharaTypeQ3 { gamma, .. } => {
                if gamma.is_zero() {
                    CaseLabel::B1311_Chihara
                } else {
                    CaseLabel::B111_Chihara
                }
            }
            FamilySpec::B1312Family {
                sub: B1312Sub::I, ..
            } => CaseLabel::B1312_i,
            FamilySpec::B1312Family {
                sub: B1312Sub::II, ..
            } => CaseLabel::B1312_ii,
            FamilySpec::LittleQLaguerreType { .. } => CaseLabel::B1313_LittleQLaguerre,
            FamilySpec::LaguerreType { .. } => CaseLabel::B32_Laguerre,
            FamilySpec::SymmetricG1 { .. } => CaseLabel::Sym3Fold_G1,
            FamilySpec::SymmetricG2 { .. } => CaseLabel::Sym3Fold_G2,
        }
    }

    /// Parameters a classifier should read back from `(A, B)` data.
    pub fn recoverable_params(&self) -> Vec<(&'static str, Scalar)> {
        let mut out = match self {
            FamilySpec::HermiteType { c1, c2, alpha, .. } => {
                if c1.is_zero() && c2.is_zero() {
                    let three = int(3) * alpha;
                    return vec![
                        ("a11", self.a_coeff(3)),
                        ("r0", alpha.clone()),
                        ("r1", int(2) * alpha),
                        ("v0", three.clone()),
                        ("v1", three.clone()),
                        ("v2", three),
                    ];
                }
                vec![("alpha", alpha.clone())]
            }
            FamilySpec::QAppellProduct { beta, q, .. } => {
                vec![("q", q.clone()), ("beta", beta.clone())]
            }
            FamilySpec::ChiharaTypeQ3 {
                q,
                alpha,
                beta,
                gamma,
                ..
            } => {
                let mut v = vec![
                    ("q", q.clone()),
                    ("alpha", alpha.clone()),
                    ("beta", beta.clone()),
                ];
                if !gamma.is_zero() {
                    v.push(("gamma", gamma.clone()));
                }
                v
            }
            FamilySpec::B1312Family { q, alpha, beta, .. }
            | FamilySpec::LittleQLaguerreType { q, alpha, beta, .. } => {
                vec![
                    ("q", q.clone()),
                    ("alpha", alpha.clone()),
                    ("beta", beta.clone()),
                ]
            }
            FamilySpec::LaguerreType {
                lambda, mu, gamma, ..
            } => {
                let (alpha, beta) = laguerre_alpha_beta(lambda, mu, gamma);
                vec![("alpha", alpha), ("beta", beta), ("gamma", gamma.clone())]
            }
            FamilySpec::SymmetricG1 {
                a11,
                r0,
                r1,
                v0,
                v1,
                v2,
            } => {
                return vec![
                    ("a11", a11.clone()),
                    ("r0", r0.clone()),
                    ("r1", r1.clone()),
                    ("v0", v0.clone()),
                    ("v1", v1.clone()),
                    ("v2", v2.clone()),
                ];
            }
            FamilySpec::SymmetricG2 {
                a11,
                q,
                s0,
                s1,
                s2,
                t0,
                t1,
            } => {
                return vec![
                    ("q", q.clone()),
                    ("a11", a11.clone()),
                    ("s0", s0.clone()),
                    ("s1", s1.clone()),
                    ("s2", s2.clone()),
                    ("t0", t0.clone()),
                    ("t1", t1.clone()),
                ];
            }
        };
        out.push(("a1", self.a_coeff(1)));
        out
    }

    fn a_coeff(&self, k: usize) -> Scalar {
        self.a_closed(k.max(3))
            .map(|a| a.coeffs()[k].clone())
            .unwrap_or_default()
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor {
            variant: self.variant(),
            sub: self.sub(),
            params: self.params(),
            case_label: self.case_label(),
        }
    }
}

/// JSON family descriptor `{variant, params, case_label}`.
#[derive(Clone, Debug)]
pub struct FamilyDescriptor {
    pub variant: &'static str,
    pub sub: Option<&'static str>,
    pub params: Vec<(&'static str, Scalar)>,
    pub case_label: CaseLabel,
}

struct ParamMap<'a>(&'a [(&'static str, Scalar)]);

impl Serialize for ParamMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// Serializes `(name, value)` pairs as a JSON object in their given order.
pub fn serialize_params<S: Serializer>(
    params: &[(&'static str, Scalar)],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    ParamMap(params).serialize(serializer)
}

impl Serialize for FamilyDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(None)?;
        m.serialize_entry("variant", self.variant)?;
        if let Some(sub) = self.sub {
            m.serialize_entry("sub", sub)?;
        }
        m.serialize_entry("params", &ParamMap(&self.params))?;
        m.serialize_entry("case_label", &self.case_label)?;
        m.end()
    }
}

fn laguerre_alpha_beta(lambda: &Scalar, mu: &Scalar, gamma: &Scalar) -> (Scalar, Scalar) {
    let alpha = gamma * lambda * mu.clone() * fr(1, 3);
    let beta = (int(2) * gamma * (lambda + mu) - gamma.clone()) * fr(1, 3);
    (alpha, beta)
}

/// Solve `A(t) R(t) = Q(t) A(x t)`, `A(0) = 1`, for `Q(0) = R(0) = 1`:
/// `a_n (1 - x^n) = sum_{k>=1} (Q_k x^{n-k} - R_k) a_{n-k}`.
pub fn solve_q_difference(
    qpoly: &[Scalar],
    rpoly: &[Scalar],
    x: &Scalar,
    order: usize,
) -> Result<PowerSeries> {
    let get = |p: &[Scalar], k: usize| p.get(k).cloned().unwrap_or_default();
    let mut a = vec![Scalar::one()];
    for n in 1..=order {
        let mut s = Scalar::zero();
        for k in 1..=n {
            let w = get(qpoly, k) * x.pow_u((n - k) as u64) - get(rpoly, k);
            if !w.is_zero() {
                s += &(w * &a[n - k]);
            }
        }
        let lead = Scalar::one() - x.pow_u(n as u64);
        a.push(s.try_div(&lead)?);
    }
    Ok(PowerSeries::new(a))
}

/// `A(t)/A(xt) = 1 + d1 t + d2 t^2 + d3 t^3` expressed through `a1, a2, a3`.
pub fn delta_q_poly(a1: &Scalar, a2: &Scalar, a3: &Scalar, x: &Scalar) -> [Scalar; 4] {
    let x2 = x * x;
    let x3 = &x2 * x;
    let a1_2 = a1 * a1;
    let d1 = a1 * &(one() - x);
    let d2 = &a1_2 * &(&x2 - x) + a2 * &(one() - &x2);
    let d3 = &a1_2 * a1 * (&x2 - &x3) - a1 * a2 * (&x2 + x - int(2) * &x3) + a3 * &(one() - &x3);
    [one(), d1, d2, d3]
}

/// `b_0 = 1`, `b_{n+1} = b_n / r_n`.
fn b_from_r(r: &[Scalar]) -> Result<PowerSeries> {
    let mut b = vec![Scalar::one()];
    for (n, rn) in r.iter().enumerate() {
        let next = b[n].try_div(rn).map_err(|_| {
            Error::InvalidParams(vec![Violation {
                param: format!("r_{n}"),
                rule: "must be nonzero".into(),
            }])
        })?;
        b.push(next);
    }
    Ok(PowerSeries::new(b))
}

fn partial_sums(delta: impl Fn(usize) -> Scalar, len: usize) -> Vec<Scalar> {
    let mut acc = Scalar::zero();
    (0..len)
        .map(|n| {
            acc += &delta(n);
            acc.clone()
        })
        .collect()
}

/// Interleave three streams: coefficient `3m + u` is `pre[u] * streams[u](m)`.
fn interleave3(streams: &[CoeffStream; 3], pre: &[Scalar; 3], order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| &pre[n % 3] * &streams[n % 3].get(n / 3))
}

fn product(series: &[PowerSeries], order: usize) -> Result<PowerSeries> {
    let mut acc = PowerSeries::one(order);
    for s in series {
        acc = acc.mul(s, order)?;
    }
    Ok(acc)
}

fn poly_mul(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn check_routes(series: char, x: &PowerSeries, y: &PowerSeries) -> Result<()> {
    match x.first_mismatch(y) {
        Some(index) => Err(Error::ConstructionMismatch { series, index }),
        None => Ok(()),
    }
}

struct Chihara {
    c0: Scalar,
    c2: Scalar,
    k1: Scalar,
    k2: Scalar,
    k3: Scalar,
}

fn chihara_constants(q: &Scalar, alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Option<Chihara> {
    let w = Scalar::omega();
    let w2 = Scalar::omega_sq();
    let c0 = alpha + beta + gamma.clone();
    let c1 = alpha + &(beta * &w) + gamma * &w2;
    let c2 = alpha + &(beta * &w2) + gamma * &w;
    let q2 = q * q;
    let k3 = &c0 + &(&c1 * q) + &c2 * &q2;
    if k3.is_zero() {
        return None;
    }
    let k1 = (&c1 + &(&c2 * q) + &c0 * &q2) / &k3;
    let k2 = (&c2 + &(&c0 * q) + &c1 * &q2) / &k3;
    Some(Chihara { c0, c2, k1, k2, k3 })
}

impl FamilySpec {
    /// `r_0 .. r_{len-1}` from the family's `Delta` or `r` formula.
    pub fn r_route(&self, len: usize) -> Result<Vec<Scalar>> {
        Ok(match self {
            FamilySpec::HermiteType { alpha, .. } => {
                (0..len).map(|n| int(n as i64 + 1) * alpha).collect()
            }
            FamilySpec::QAppellProduct { beta, q, .. } => {
                let den = one() - q.clone();
                (0..len)
                    .map(|n| beta * &(one() - q.pow_u(n as u64 + 1)) / &den)
                    .collect()
            }
            FamilySpec::ChiharaTypeQ3 {
                q,
                alpha,
                beta,
                gamma,
                ..
            } => {
                let wq = q * &Scalar::omega();
                let w2q = q * &Scalar::omega_sq();
                partial_sums(
                    |n| {
                        let n = n as u64;
                        alpha * &q.pow_u(n) + beta * &wq.pow_u(n) + gamma * &w2q.pow_u(n)
                    },
                    len,
                )
            }
            FamilySpec::B1312Family { q, alpha, beta, .. } => {
                let (q2, q3) = (q.pow_u(2), q.pow_u(3));
                partial_sums(
                    |n| alpha * &q2.pow_u(n as u64) + beta * &q3.pow_u(n as u64),
                    len,
                )
            }
            FamilySpec::LittleQLaguerreType { q, alpha, beta, .. } => {
                let q3 = q.pow_u(3);
                partial_sums(
                    |n| alpha * &q.pow_u(n as u64) + beta * &q3.pow_u(n as u64),
                    len,
                )
            }
            FamilySpec::LaguerreType {
                lambda, mu, gamma, ..
            } => {
                let (alpha, beta) = laguerre_alpha_beta(lambda, mu, gamma);
                partial_sums(
                    |n| {
                        let n = int(n as i64);
                        &alpha + &(&beta * &n) + gamma * &(&n * &n)
                    },
                    len,
                )
            }
            FamilySpec::SymmetricG1 {
                r0, r1, v0, v1, v2, ..
            } => (0..len)
                .map(|n| {
                    let k = int((n / 3) as i64);
                    match n % 3 {
                        0 => r0 + &(&k * v0),
                        1 => r1 + &(&k * v1),
                        _ => (k + one()) * v2,
                    }
                })
                .collect(),
            FamilySpec::SymmetricG2 {
                q,
                s0,
                s1,
                s2,
                t0,
                t1,
                ..
            } => {
                let qinv = q.inverse()?;
                (0..len)
                    .map(|n| {
                        let k = (n / 3) as u64;
                        let qk = qinv.pow_u(k);
                        match n % 3 {
                            0 => s0 * &(t0 - &qk),
                            1 => s1 * &(t1 - &qk),
                            _ => s2 * &(one() - &(&qk * &qinv)),
                        }
                    })
                    .collect()
            }
        })
    }

    /// `A` from its closed form.
    pub fn a_closed(&self, order: usize) -> Result<PowerSeries> {
        match self {
            FamilySpec::HermiteType { c1, c2, c3, .. } => product(
                &[
                    exp_stream(c1).to_series(order),
                    exp_stream(c2).transformed(one(), 2).to_series(order),
                    exp_stream(c3).transformed(one(), 3).to_series(order),
                ],
                order,
            ),
            FamilySpec::QAppellProduct {
                rho, lambda, mu, q, ..
            } => product(
                &[
                    q_product_stream(q, rho)?.to_series(order),
                    q_product_stream(q, lambda)?.to_series(order),
                    q_product_stream(q, mu)?.to_series(order),
                ],
                order,
            ),
            FamilySpec::ChiharaTypeQ3 { a1, q, sub, .. } => {
                let q3 = q.pow_u(3);
                let c = &q3 * &a1.pow_u(3);
                let (lead, c) = match sub {
                    ChiharaSub::A2Zero => (vec![one(), a1.clone()], -c),
                    ChiharaSub::A2EqA1Sq => (vec![one(), a1.clone(), a1 * a1], c),
                };
                let cubic = q_product_stream(&q3, &c)?
                    .transformed(one(), 3)
                    .to_series(order);
                PowerSeries::from_poly(&lead, order).mul(&cubic, order)
            }
            FamilySpec::B1312Family {
                a1,
                q,
                sub: B1312Sub::I,
                ..
            }
            | FamilySpec::LittleQLaguerreType { a1, q, .. } => {
                let eta = (one() - q.clone()) * a1;
                Ok(q_product_stream(q, &-eta)?.to_series(order))
            }
            FamilySpec::B1312Family {
                a1,
                q,
                sub: B1312Sub::II,
                ..
            } => {
                let nu = b1312_nu(a1, q);
                let num = q_product_stream(q, &-&nu)?.to_series(order);
                let den = PowerSeries::from_poly(&[one(), &nu * q], order).reciprocal(order)?;
                num.mul(&den, order)
            }
            FamilySpec::LaguerreType { a1, .. } => Ok(exp_stream(a1).to_series(order)),
            FamilySpec::SymmetricG1 { a11, .. } => {
                Ok(exp_stream(a11).transformed(one(), 3).to_series(order))
            }
            FamilySpec::SymmetricG2 { a11, q, .. } => {
                let c = a11 * &(one() - q.clone());
                Ok(e_q_stream(q, &c)?.transformed(one(), 3).to_series(order))
            }
        }
    }

    /// `A` from a recursion: the exponential ODE or a q-difference equation.
    pub fn a_recursive(&self, order: usize) -> Result<PowerSeries> {
        let z = Scalar::zero();
        match self {
            FamilySpec::HermiteType { c1, c2, c3, .. } => {
                PowerSeries::from_poly(&[z, c1.clone(), c2.clone(), c3.clone()], order)
                    .exp_series(order)
            }
            FamilySpec::LaguerreType { a1, .. } => {
                PowerSeries::from_poly(&[z, a1.clone()], order).exp_series(order)
            }
            FamilySpec::SymmetricG1 { a11, .. } => {
                PowerSeries::from_poly(&[z.clone(), z.clone(), z, a11.clone()], order)
                    .exp_series(order)
            }
            FamilySpec::QAppellProduct {
                rho, lambda, mu, q, ..
            } => {
                let qpoly = [rho, lambda, mu]
                    .iter()
                    .fold(vec![one()], |acc, r| poly_mul(&acc, &[one(), -(*r)]));
                solve_q_difference(&qpoly, &[one()], q, order)
            }
            FamilySpec::ChiharaTypeQ3 { a1, q, sub, .. } => {
                let q3 = q.pow_u(3);
                let k = &q3 / &(one() - q3.clone()) * a1.pow_u(3);
                let (a2, a3) = match sub {
                    ChiharaSub::A2Zero => (Scalar::zero(), k),
                    ChiharaSub::A2EqA1Sq => (a1 * a1, -k),
                };
                solve_q_difference(&delta_q_poly(a1, &a2, &a3, q), &[one()], q, order)
            }
            FamilySpec::B1312Family { a1, q, sub, .. } => {
                let (a2, a3) = b1312_a2_a3(a1, q, *sub);
                solve_q_difference(
                    &delta_q_poly(a1, &a2, &a3, &(q * q)),
                    &[one()],
                    &(q * q),
                    order,
                )
            }
            FamilySpec::LittleQLaguerreType { a1, q, .. } => {
                let (a2, a3) = b1312_a2_a3(a1, q, B1312Sub::I);
                let q3 = q.pow_u(3);
                solve_q_difference(&delta_q_poly(a1, &a2, &a3, &q3), &[one()], &q3, order)
            }
            FamilySpec::SymmetricG2 { a11, q, .. } => {
                // f(y) (1 - c y) = f(q y) with A(t) = f(t^3)
                let c = a11 * &(one() - q.clone());
                let f = solve_q_difference(&[one()], &[one(), -c], q, order / 3)?;
                Ok(f.transform_arg(&one(), 3, order))
            }
        }
    }

    /// `B` from its closed form.
    pub fn b_closed(&self, order: usize) -> Result<PowerSeries> {
        let zeros = || vec![Scalar::zero(); 3];
        match self {
            FamilySpec::HermiteType { alpha, .. } => {
                Ok(exp_stream(&alpha.inverse()?).to_series(order))
            }
            FamilySpec::QAppellProduct { beta, q, .. } => {
                Ok(e_q_stream(q, &((one() - q.clone()) / beta))?.to_series(order))
            }
            FamilySpec::ChiharaTypeQ3 {
                q,
                alpha,
                beta,
                gamma,
                ..
            } => {
                let ch = chihara_constants(q, alpha, beta, gamma).ok_or(Error::DivisionByZero)?;
                let q3 = q.pow_u(3);
                let z = (one() - &ch.k1 * q) * (&ch.k2 - q) * (one() - q3.clone())
                    / (&ch.k3 * &ch.c0 * ch.c2.clone());
                let lower = |e1: u32, e2: u32| {
                    vec![
                        &ch.k1 * &q.pow_u(1 + 3 * e2 as u64),
                        &ch.k2 * &q.pow_u(2 + 3 * e1 as u64),
                    ]
                };
                let mut streams = Vec::new();
                let mut pre = Vec::new();
                for u in 0..3u32 {
                    let e1 = u * (u.max(1) - 1) / 2;
                    let e2 = u * (3 - u) / 2;
                    let spec = QHyperSpec::new(zeros(), lower(e1, e2), q3.clone());
                    streams.push(rphis_stream(&spec, &z)?);
                    let num = (&ch.k2 - q).pow_u(e1 as u64);
                    let den = ((one() - &ch.k2 * &(q * q)) * &ch.c2).pow_u(e1 as u64)
                        * ch.c0.pow_u(e2 as u64);
                    pre.push(num.try_div(&den)?);
                }
                let streams: [CoeffStream; 3] = streams.try_into().expect("three streams");
                let pre: [Scalar; 3] = pre.try_into().expect("three prefactors");
                Ok(interleave3(&streams, &pre, order))
            }
            FamilySpec::B1312Family { q, alpha, beta, .. } => {
                let k0 = alpha / &(one() + q.clone()) + beta / &(one() + q.clone() + q * q);
                if k0.is_zero() {
                    let z = (q * q - one()) / (alpha * &(q * q));
                    Ok(
                        rphis_stream(&QHyperSpec::new(zeros(), vec![], q.clone()), &z)?
                            .to_series(order),
                    )
                } else {
                    let sigma = int(-1);
                    let pi = one() - alpha / &(&k0 * &(one() + q.clone()));
                    b_pair_closed(q, &sigma, &pi, &((one() - q.clone()) / &k0), order)
                }
            }
            FamilySpec::LittleQLaguerreType { q, alpha, beta, .. } => {
                let k0 = alpha + &(beta / &(one() + q.clone() + q * q));
                if k0.is_zero() {
                    let z = (one() - q.clone()) / (alpha * q);
                    Ok(
                        rphis_stream(&QHyperSpec::new(zeros(), vec![-q.clone()], q.clone()), &z)?
                            .to_series(order),
                    )
                } else {
                    let ratio = alpha / &k0;
                    let sigma = &ratio - &one();
                    let pi = one() - ratio;
                    b_pair_closed(q, &sigma, &pi, &((one() - q.clone()) / &k0), order)
                }
            }
            FamilySpec::LaguerreType {
                lambda, mu, gamma, ..
            } => {
                let spec = HyperSpec::new(vec![], vec![lambda.clone(), mu.clone()]);
                Ok(pfq_stream(&spec, &(int(3) / gamma))?.to_series(order))
            }
            FamilySpec::SymmetricG1 { .. } => self.g1_reading(G1Reading::General, order),
            FamilySpec::SymmetricG2 { .. } => self.g2_reading(G2Reading::General, order),
        }
    }

    /// `B` from `b_{n+1} = b_n / r_n`.
    pub fn b_recursive(&self, order: usize) -> Result<PowerSeries> {
        b_from_r(&self.r_route(order)?)
    }
}

fn b1312_nu(a1: &Scalar, q: &Scalar) -> Scalar {
    (one() - q * q) * a1 / (one() + q.pow_u(3))
}

/// `(a_2, a_3)` of the `(q^2, q^3)` family, sub-case `i` or `ii`.
fn b1312_a2_a3(a1: &Scalar, q: &Scalar, sub: B1312Sub) -> (Scalar, Scalar) {
    let q2 = q * q;
    let a1_2 = a1 * a1;
    let a1_3 = &a1_2 * a1;
    match sub {
        B1312Sub::I => {
            let a2 = q / &(one() + q.clone()) * &a1_2;
            let a3 = q.pow_u(3) / ((one() + q.clone()) * (one() + q.clone() + q2.clone())) * a1_3;
            (a2, a3)
        }
        B1312Sub::II => {
            let t = one() - q.clone() + q2.clone();
            let q3 = q.pow_u(3);
            let a2 = (one() - q2.clone() + q3.clone()) * &q2 / (&t * &(one() + q3.clone())) * a1_2;
            let a3 = q.pow_u(5) * (one() - q3.clone() + q.pow_u(4))
                / (t * (one() + q2.clone() + q.pow_u(4)) * (one() + q3))
                * a1_3;
            (a2, a3)
        }
    }
}

fn b_pair_closed(
    q: &Scalar,
    sigma: &Scalar,
    pi: &Scalar,
    z: &Scalar,
    order: usize,
) -> Result<PowerSeries> {
    let stream = match split_pair(sigma, pi) {
        Some((lam, mu)) => {
            let zeros = vec![Scalar::zero(); 3];
            rphis_stream(&QHyperSpec::new(zeros, vec![lam * q, mu * q], q.clone()), z)?
        }
        None => phi32_pair_stream(q, sigma, pi, z)?,
    };
    Ok(stream.to_series(order))
}

/// Readings of the interleaved `0F2` display for G1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum G1Reading {
    /// Shifts `+1` accumulate with `u`: `(r0/v0, r1/v1)`, `(r0/v0+1, r1/v1)`, `(r0/v0+1, r1/v1+1)`.
    General,
    /// The `d = 2` display taken literally: the same shifts in reverse order.
    Display,
}

/// Readings of the interleaved `0phi2` display for G2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum G2Reading {
    /// `(t0, t1)`, `(q t0, t1)`, `(q t0, q t1)`.
    General,
    /// The `d = 2` display literally: `(q t0, q t1)`, `(q t0, t1)`, `(t2, t1)`;
    /// `t2` is not a family parameter and is read as `q`.
    DisplayLiteral,
    /// The display with its third bracket following the pattern: `(t0, t1)`.
    DisplayPattern,
}

impl FamilySpec {
    pub fn g1_reading(&self, reading: G1Reading, order: usize) -> Result<PowerSeries> {
        let FamilySpec::SymmetricG1 {
            r0, r1, v0, v1, v2, ..
        } = self
        else {
            return Err(Error::Usage("not a G1 family".into()));
        };
        let p0 = r0.try_div(v0)?;
        let p1 = r1.try_div(v1)?;
        let z = (v0 * v1 * v2.clone()).inverse()?;
        let shifted = |s0: bool, s1: bool| {
            vec![
                if s0 { &p0 + &one() } else { p0.clone() },
                if s1 { &p1 + &one() } else { p1.clone() },
            ]
        };
        let lowers = match reading {
            G1Reading::General => [
                shifted(false, false),
                shifted(true, false),
                shifted(true, true),
            ],
            G1Reading::Display => [
                shifted(true, true),
                shifted(true, false),
                shifted(false, false),
            ],
        };
        let mut streams = Vec::new();
        for lower in lowers {
            streams.push(pfq_stream(&HyperSpec::new(vec![], lower), &z)?);
        }
        let pre = [one(), r0.inverse()?, (r0 * r1).inverse()?];
        let streams: [CoeffStream; 3] = streams.try_into().expect("three streams");
        Ok(interleave3(&streams, &pre, order))
    }

    pub fn g2_reading(&self, reading: G2Reading, order: usize) -> Result<PowerSeries> {
        let FamilySpec::SymmetricG2 {
            q,
            s0,
            s1,
            s2,
            t0,
            t1,
            ..
        } = self
        else {
            return Err(Error::Usage("not a G2 family".into()));
        };
        let z = (s0 * s1 * s2.clone()).inverse()?;
        let (qt0, qt1) = (q * t0, q * t1);
        let lowers = match reading {
            G2Reading::General => [[t0, t1], [&qt0, t1], [&qt0, &qt1]],
            G2Reading::DisplayLiteral => [[&qt0, &qt1], [&qt0, t1], [q, t1]],
            G2Reading::DisplayPattern => [[&qt0, &qt1], [&qt0, t1], [t0, t1]],
        };
        let mut streams = Vec::new();
        for (u, lower) in lowers.iter().enumerate() {
            let spec = QHyperSpec::new(
                vec![],
                lower.iter().map(|x| (*x).clone()).collect(),
                q.clone(),
            );
            streams.push(rphis_stream(&spec, &(&z * &q.pow_u(u as u64 + 1)))?);
        }
        let f0 = s0 * &(t0 - &one());
        let f1 = s1 * &(t1 - &one());
        let pre = [one(), f0.inverse()?, (f0 * f1).inverse()?];
        let streams: [CoeffStream; 3] = streams.try_into().expect("three streams");
        Ok(interleave3(&streams, &pre, order))
    }
}

/// Agreement of one display reading with the recursion route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingCheck {
    pub reading: String,
    pub matches: bool,
    /// First index where the reading departs from the recursion route, or
    /// `None` when it agrees (or could not be evaluated, see `error`).
    pub first_mismatch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Build result with the agreement checks that went into it.
#[derive(Clone, Debug)]
pub struct FamilyBuild {
    pub set: BrenkeSet,
    /// Alternative display readings (G1, G2), each compared to the recursion route.
    pub readings: Vec<ReadingCheck>,
}

fn violation(param: &str, rule: &str) -> Violation {
    Violation {
        param: param.into(),
        rule: rule.into(),
    }
}

fn check_q(q: &Scalar, out: &mut Vec<Violation>) {
    if q.is_zero() || is_root_of_unity(q) {
        out.push(violation("q", "must be nonzero and not a root of unity"));
    }
}

fn nonzero(name: &str, x: &Scalar, out: &mut Vec<Violation>) {
    if x.is_zero() {
        out.push(violation(name, "must be nonzero"));
    }
}

/// Constraint violations of `spec`, with `r_n != 0` checked for `n < DEFAULT_CHECK_ORDER`.
pub fn validate_params(spec: &FamilySpec) -> Vec<Violation> {
    validate_params_to(spec, DEFAULT_CHECK_ORDER)
}

/// Constraint violations of `spec`, with `r_n != 0` checked for `n < order`.
pub fn validate_params_to(spec: &FamilySpec, order: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    match spec {
        FamilySpec::HermiteType { c3, alpha, .. } => {
            nonzero("c3", c3, &mut out);
            nonzero("alpha", alpha, &mut out);
        }
        FamilySpec::QAppellProduct {
            rho,
            lambda,
            mu,
            beta,
            q,
        } => {
            if (rho * lambda * mu.clone()).is_zero() {
                out.push(violation("rho*lambda*mu", "must be nonzero"));
            }
            nonzero("beta", beta, &mut out);
            check_q(q, &mut out);
        }
        FamilySpec::ChiharaTypeQ3 {
            a1,
            q,
            alpha,
            beta,
            gamma,
            ..
        } => {
            nonzero("a1", a1, &mut out);
            check_q(q, &mut out);
            nonzero("alpha", alpha, &mut out);
            nonzero("beta", beta, &mut out);
            if out.is_empty() {
                match chihara_constants(q, alpha, beta, gamma) {
                    None => out.push(violation("k3", "must be nonzero")),
                    Some(ch) => {
                        nonzero("alpha+beta+gamma", &ch.c0, &mut out);
                        nonzero("alpha+beta*w^2+gamma*w", &ch.c2, &mut out);
                        let q2 = q * q;
                        if (one() - &ch.k2 * &q2).is_zero() {
                            out.push(violation("k2", "k2*q^2 must differ from 1"));
                        }
                        if (one() - &ch.k1 * q).is_zero() {
                            out.push(violation("k1", "k1*q must differ from 1"));
                        }
                        if (&ch.k2 - q).is_zero() {
                            out.push(violation("k2", "must differ from q"));
                        }
                        let q3 = q.pow_u(3);
                        for (name, x) in [
                            ("k1", &ch.k1 * q),
                            ("k1", &ch.k1 * &q.pow_u(4)),
                            ("k2", &ch.k2 * &q2),
                            ("k2", &ch.k2 * &q.pow_u(5)),
                        ] {
                            if inverse_q_power(&x, &q3).is_some() {
                                out.push(violation(
                                    name,
                                    "gives a lower parameter of the form q^(-3k)",
                                ));
                            }
                        }
                    }
                }
            }
        }
        FamilySpec::B1312Family {
            a1, q, alpha, beta, ..
        }
        | FamilySpec::LittleQLaguerreType { a1, q, alpha, beta } => {
            nonzero("a1", a1, &mut out);
            check_q(q, &mut out);
            nonzero("alpha", alpha, &mut out);
            nonzero("beta", beta, &mut out);
        }
        FamilySpec::LaguerreType {
            a1,
            lambda,
            mu,
            gamma,
        } => {
            nonzero("a1", a1, &mut out);
            nonzero("gamma", gamma, &mut out);
            for (name, x) in [("lambda", lambda), ("mu", mu)] {
                if x.is_nonpositive_integer() {
                    out.push(violation(name, "must not be 0, -1, -2, ..."));
                }
            }
        }
        FamilySpec::SymmetricG1 {
            a11,
            r0,
            r1,
            v0,
            v1,
            v2,
        } => {
            nonzero("a11", a11, &mut out);
            for (name, v) in [("v0", v0), ("v1", v1), ("v2", v2)] {
                nonzero(name, v, &mut out);
            }
            for (name, r, v) in [("r0/v0", r0, v0), ("r1/v1", r1, v1)] {
                if let Ok(x) = r.try_div(v) {
                    if x.is_nonpositive_integer() {
                        out.push(violation(name, "must not be 0, -1, -2, ..."));
                    }
                }
            }
        }
        FamilySpec::SymmetricG2 {
            a11,
            q,
            s0,
            s1,
            s2,
            t0,
            t1,
        } => {
            nonzero("a11", a11, &mut out);
            check_q(q, &mut out);
            for (name, s) in [("s0", s0), ("s1", s1), ("s2", s2)] {
                nonzero(name, s, &mut out);
            }
            if out.is_empty() {
                for (name, t) in [("t0", t0), ("t1", t1)] {
                    if inverse_q_power(t, q).is_some() {
                        out.push(violation(name, "must not be of the form q^(-k), k >= 0"));
                    }
                }
            }
        }
    }
    if out.is_empty() {
        if let Ok(r) = spec.r_route(order) {
            if let Some(n) = r.iter().position(Scalar::is_zero) {
                out.push(violation(&format!("r_{n}"), "must be nonzero"));
            }
        }
    }
    out
}

/// Build `(A, B)` at order `N`, each by both routes, and the polynomial table.
pub fn build_family(spec: &FamilySpec, order: usize) -> Result<BrenkeSet> {
    Ok(build_family_detailed(spec, order)?.set)
}

pub fn build_family_detailed(spec: &FamilySpec, order: usize) -> Result<FamilyBuild> {
    let violations = validate_params_to(spec, order);
    if !violations.is_empty() {
        return Err(Error::InvalidParams(violations));
    }
    build_family_unvalidated(spec, order)
}

/// Like [`build_family_detailed`] without the parameter constraints, for
/// probing boundary cases (e.g. `c3 = 0`). Both routes are still compared.
pub fn build_family_unvalidated(spec: &FamilySpec, order: usize) -> Result<FamilyBuild> {
    let a = spec.a_closed(order)?;
    check_routes('A', &a, &spec.a_recursive(order)?)?;
    let b_rec = spec.b_recursive(order)?;
    check_routes('B', &spec.b_closed(order)?, &b_rec)?;
    let reading = |name: &str, r: Result<PowerSeries>| match r {
        Ok(s) => {
            let first = s.first_mismatch(&b_rec);
            ReadingCheck {
                reading: name.into(),
                matches: first.is_none(),
                first_mismatch: first,
                error: None,
            }
        }
        Err(e) => ReadingCheck {
            reading: name.into(),
            matches: false,
            first_mismatch: None,
            error: Some(e.to_string()),
        },
    };
    let readings = match spec {
        FamilySpec::SymmetricG1 { .. } => vec![
            reading("general", spec.g1_reading(G1Reading::General, order)),
            reading("display", spec.g1_reading(G1Reading::Display, order)),
        ],
        FamilySpec::SymmetricG2 { .. } => vec![
            reading("general", spec.g2_reading(G2Reading::General, order)),
            reading(
                "display-literal",
                spec.g2_reading(G2Reading::DisplayLiteral, order),
            ),
            reading(
                "display-pattern",
                spec.g2_reading(G2Reading::DisplayPattern, order),
            ),
        ],
        _ => vec![],
    };
    let set = build_polynomials(&a, &b_rec, order)?;
    Ok(FamilyBuild { set, readings })
}

/// Build a q-Appell pair `A = prod_i (rho_i t; q)_inf`, `B = e_q((1-q) t / beta)`
/// with any number of factors, bypassing family validation.
pub fn q_appell_pair(
    factors: &[Scalar],
    beta: &Scalar,
    q: &Scalar,
    order: usize,
) -> Result<BrenkeSet> {
    let mut a = PowerSeries::one(order);
    for rho in factors {
        a = a.mul(&q_product_stream(q, rho)?.to_series(order), order)?;
    }
    let b = e_q_stream(q, &((one() - q.clone()) / beta))?.to_series(order);
    build_polynomials(&a, &b, order)
}

/// One fixed, constraint-satisfying sample.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: FamilySpec,
    pub label: CaseLabel,
}

/// Fixed samples covering every family variant and sub-case.
pub fn catalog() -> Vec<CatalogEntry> {
    let half = fr(1, 2);
    let entry = |name, spec: FamilySpec| {
        let label = spec.case_label();
        CatalogEntry { name, spec, label }
    };
    vec![
        entry(
            "hermite-a2",
            FamilySpec::HermiteType {
                c1: int(0),
                c2: int(1),
                c3: int(1),
                alpha: int(1),
            },
        ),
        entry(
            "hermite-b133",
            FamilySpec::HermiteType {
                c1: int(1),
                c2: int(1),
                c3: int(1),
                alpha: int(1),
            },
        ),
        entry(
            "q-appell-a3",
            FamilySpec::QAppellProduct {
                rho: int(1),
                lambda: int(1),
                mu: int(-2),
                beta: int(1),
                q: half.clone(),
            },
        ),
        entry(
            "q-appell-b133",
            FamilySpec::QAppellProduct {
                rho: int(1),
                lambda: int(-1),
                mu: half.clone(),
                beta: int(1),
                q: half.clone(),
            },
        ),
        entry(
            "chihara-b111",
            FamilySpec::ChiharaTypeQ3 {
                a1: int(1),
                q: half.clone(),
                alpha: int(1),
                beta: int(2),
                gamma: int(3),
                sub: ChiharaSub::A2Zero,
            },
        ),
        entry(
            "chihara-b1311",
            FamilySpec::ChiharaTypeQ3 {
                a1: int(1),
                q: half.clone(),
                alpha: int(1),
                beta: int(2),
                gamma: int(0),
                sub: ChiharaSub::A2EqA1Sq,
            },
        ),
        entry(
            "b1312-i",
            FamilySpec::B1312Family {
                a1: int(1),
                q: half.clone(),
                alpha: int(1),
                beta: int(1),
                sub: B1312Sub::I,
            },
        ),
        entry(
            "b1312-i-k0-zero",
            FamilySpec::B1312Family {
                a1: int(1),
                q: half.clone(),
                alpha: int(1),
                beta: fr(-7, 6),
                sub: B1312Sub::I,
            },
        ),
        entry(
            "b1312-ii",
            FamilySpec::B1312Family {
                a1: int(1),
                q: half.clone(),
                alpha: int(1),
                beta: int(1),
                sub: B1312Sub::II,
            },
        ),
        entry(
            "little-q-laguerre",
            FamilySpec::LittleQLaguerreType {
                a1: int(1),
                q: half.clone(),
                alpha: int(1),
                beta: int(1),
            },
        ),
        entry(
            "little-q-laguerre-k0-zero",
            FamilySpec::LittleQLaguerreType {
                a1: int(1),
                q: half.clone(),
                alpha: int(1),
                beta: fr(-7, 4),
            },
        ),
        entry(
            "laguerre",
            FamilySpec::LaguerreType {
                a1: int(1),
                lambda: int(1),
                mu: int(2),
                gamma: int(3),
            },
        ),
        entry(
            "g1",
            FamilySpec::SymmetricG1 {
                a11: int(1),
                r0: int(1),
                r1: int(2),
                v0: int(1),
                v1: int(1),
                v2: int(1),
            },
        ),
        entry(
            "g2",
            FamilySpec::SymmetricG2 {
                a11: int(1),
                q: half,
                s0: int(1),
                s1: int(2),
                s2: int(3),
                t0: int(3),
                t1: int(5),
            },
        ),
    ]
}
