//! Case recovery from data: the minimal constant-coefficient annihilator of
//! `Delta_n`, its roots over `Q(w)`, and the decision tree over the root
//! pattern and the leading `a_k`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::brenke::{BrenkeSet, DeltaSeq};
use crate::dorth::{expanded_relation_d2, extract_recurrence};
use crate::error::{Error, Result};
use crate::families::{serialize_params, CaseLabel};
use crate::scalar::{Rational, Scalar};
use crate::specfun::is_root_of_unity;

/// `sum_{i=0}^k c_i Delta_{n-i} = 0` with `c_0 = 1`, on the tested window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annihilator {
    pub coeffs: Vec<Scalar>,
    /// Roots of `x^k + c_1 x^{k-1} + ... + c_k` with multiplicities; `None`
    /// when the polynomial does not split over `Q(w)`.
    pub roots: Option<Vec<(Scalar, usize)>>,
}

impl Annihilator {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Characteristic polynomial, ascending coefficients.
    pub fn char_poly(&self) -> Vec<Scalar> {
        self.coeffs.iter().rev().cloned().collect()
    }

    fn root_multiset(&self) -> Option<Vec<Scalar>> {
        self.roots.as_ref().map(|rs| {
            rs.iter()
                .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
                .collect()
        })
    }
}

/// Solve `rows * x = rhs` exactly, returning some solution if consistent.
fn solve_linear(mut rows: Vec<Vec<Scalar>>, unknowns: usize) -> Option<Vec<Scalar>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().ok()?;
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][unknowns].clone();
    }
    Some(x)
}

fn annihilates(coeffs: &[Scalar], delta: &[Scalar]) -> bool {
    let k = coeffs.len() - 1;
    (k..delta.len()).all(|n| {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &delta[n - i])
            .sum::<Scalar>()
            .is_zero()
    })
}

/// Shortest relation `Delta_n + c_1 Delta_{n-1} + ... + c_k Delta_{n-k} = 0`,
/// `k <= max_order`, holding for every `n` in the window.
pub fn minimal_annihilator(delta: &DeltaSeq, max_order: usize) -> Result<Annihilator> {
    let d = &delta.delta;
    let needed = 2 * max_order + 2;
    if d.len() < needed {
        return Err(Error::OrderTooSmall {
            needed,
            have: d.len(),
        });
    }
    for k in 0..=max_order {
        // rows: sum_{i=1}^k c_i Delta_{n-i} = -Delta_n
        let rows = (k..d.len())
            .map(|n| {
                let mut row: Vec<Scalar> = (1..=k).map(|i| d[n - i].clone()).collect();
                row.push(-&d[n]);
                row
            })
            .collect();
        let Some(sol) = solve_linear(rows, k) else {
            continue;
        };
        let mut coeffs = vec![Scalar::one()];
        coeffs.extend(sol);
        if annihilates(&coeffs, d) {
            let mut ann = Annihilator {
                coeffs,
                roots: None,
            };
            ann.roots = factor(&ann.char_poly(), &ratio_candidates(d));
            return Ok(ann);
        }
    }
    Err(Error::NoAnnihilator(max_order))
}

/// `[c3, c2, c1, c0]`: the relation `c3 Delta_n + ... + c0 Delta_{n-3} = 0`
/// forced on a 2-OPS, read as the cubic `c3 x^3 + c2 x^2 + c1 x + c0`.
pub fn characteristic_cubic(a1: &Scalar, a2: &Scalar, a3: &Scalar, a4: &Scalar) -> [Scalar; 4] {
    expanded_relation_d2(a1, a2, a3, a4)
}

/// Ascending-coefficient polynomial at `x`.
pub fn eval_poly(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

fn ratio_candidates(d: &[Scalar]) -> Vec<Scalar> {
    d.windows(2)
        .take(6)
        .filter_map(|w| w[1].try_div(&w[0]).ok())
        .collect()
}

/// Divide by `(x - r)`; `p` ascending.
fn deflate(p: &[Scalar], r: &Scalar) -> Vec<Scalar> {
    let n = p.len() - 1;
    let mut q = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &(&carry * r);
        q[i] = carry.clone();
    }
    q
}

fn small_divisors(n: &num_bigint::BigInt) -> Option<Vec<i64>> {
    use num_traits::{Signed, ToPrimitive};
    let n = n.abs().to_i64().filter(|&n| n <= 1_000_000_000_000)?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            out.push(n / i);
        }
        i += 1;
    }
    Some(out)
}

/// Candidates `+-p/q` with `p | c_0` and `q | c_n` after clearing denominators.
fn rational_root_candidates(p: &[Scalar]) -> Vec<Scalar> {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let Some(rats) = p
        .iter()
        .map(Scalar::as_rational)
        .collect::<Option<Vec<&Rational>>>()
    else {
        return vec![];
    };
    let mut lcm = BigInt::one();
    for r in &rats {
        let d = r.denom();
        lcm = &lcm * d / num_integer_gcd(&lcm, d);
    }
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let Some(lo) = ints.iter().position(|c| !c.is_zero()) else {
        return vec![];
    };
    let (Some(ps), Some(qs)) = (
        small_divisors(&ints[lo]),
        small_divisors(ints.last().expect("nonempty")),
    ) else {
        return vec![];
    };
    let mut out = Vec::new();
    for &a in &ps {
        for &b in &qs {
            out.push(Scalar::frac(a, b));
            out.push(Scalar::frac(-a, b));
        }
    }
    out
}

fn num_integer_gcd(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::{Signed, Zero};
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// Complex roots by Durand-Kerner, `p` ascending and of degree >= 1.
fn approx_roots(p: &[Scalar]) -> Vec<(f64, f64)> {
    type C = (f64, f64);
    let mul = |a: C, b: C| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: C, b: C| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    let cs: Vec<C> = p.iter().map(Scalar::to_complex).collect();
    let lead = *cs.last().expect("nonempty");
    let cs: Vec<C> = cs.iter().map(|&c| div(c, lead)).collect();
    let deg = cs.len() - 1;
    let eval = |x: C| {
        cs.iter().rev().fold((0.0, 0.0), |acc, &c| {
            let m = mul(acc, x);
            (m.0 + c.0, m.1 + c.1)
        })
    };
    let mut z: Vec<C> = (0..deg)
        .map(|k| mul((0.4, 0.9), (0.4f64.powi(k as i32), 0.9f64.powi(k as i32))))
        .collect();
    for _ in 0..2000 {
        for i in 0..deg {
            let mut den = (1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = div(eval(z[i]), den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
        }
    }
    z
}

fn recognize(x: (f64, f64)) -> Vec<Scalar> {
    let v = 2.0 * x.1 / 3f64.sqrt();
    let u = x.0 + v / 2.0;
    let tail = |y: f64| {
        let mut cs = Rational::convergents(y, 1_000_000_000);
        if y.abs() < 1e-9 {
            cs.push(Rational::zero());
        }
        let skip = cs.len().saturating_sub(6);
        cs.split_off(skip)
    };
    let vs = tail(v);
    tail(u)
        .into_iter()
        .flat_map(|u| vs.iter().map(move |v| Scalar::new(u.clone(), v.clone())))
        .collect()
}

fn find_root(p: &[Scalar], hints: &[Scalar]) -> Option<Scalar> {
    let is_root = |x: &Scalar| eval_poly(p, x).is_zero();
    let deg = p.len() - 1;
    if deg == 1 {
        return Some(-&p[0] / &p[1]);
    }
    if p[0].is_zero() {
        return Some(Scalar::zero());
    }
    if deg == 2 {
        let disc = &p[1] * &p[1] - Scalar::from_int(4) * &p[0] * p[2].clone();
        let s = disc.sqrt()?;
        return Some((-&p[1] + s) / (Scalar::from_int(2) * &p[2]));
    }
    if let Some(r) = hints.iter().find(|h| is_root(h)) {
        return Some(r.clone());
    }
    if deg == 3 && p[1].is_zero() && p[2].is_zero() {
        if let Some(rs) = (-&p[0] / &p[3]).rational_cube_roots() {
            return Some(rs[0].clone());
        }
    }
    if let Some(r) = rational_root_candidates(p).into_iter().find(|x| is_root(x)) {
        return Some(r);
    }
    approx_roots(p)
        .into_iter()
        .flat_map(recognize)
        .find(|x| is_root(x))
}

/// Roots of `p` (ascending coefficients) over `Q(w)` with multiplicities.
pub fn factor(p: &[Scalar], hints: &[Scalar]) -> Option<Vec<(Scalar, usize)>> {
    let mut p = p.to_vec();
    while p.len() > 1 && p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    while p.len() > 1 {
        let r = find_root(&p, hints)?;
        if !eval_poly(&p, &r).is_zero() {
            return None;
        }
        p = deflate(&p, &r);
        match roots.iter_mut().find(|(x, _)| x == &r) {
            Some((_, m)) => *m += 1,
            None => roots.push((r, 1)),
        }
    }
    Some(roots)
}

/// `{label, roots, multiplicities, recovered_params}`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub label: CaseLabel,
    pub roots: Vec<Scalar>,
    pub multiplicities: Vec<usize>,
    /// `1` when the roots belong to a relation in `E`, `3` when in `E^3`
    /// (the 3-fold symmetric cases).
    pub step: usize,
    pub recovered_params: Vec<(&'static str, Scalar)>,
}

impl Classification {
    pub fn param(&self, name: &str) -> Option<&Scalar> {
        self.recovered_params
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| v)
    }

    fn unclassified(roots: Option<Vec<(Scalar, usize)>>) -> Self {
        let (roots, multiplicities) = roots.unwrap_or_default().into_iter().unzip();
        Classification {
            label: CaseLabel::Unclassified,
            roots,
            multiplicities,
            step: 1,
            recovered_params: vec![],
        }
    }
}

struct Params<'a>(&'a [(&'static str, Scalar)]);

impl Serialize for Params<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_params(self.0, s)
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("label", &self.label)?;
        m.serialize_entry("roots", &self.roots)?;
        m.serialize_entry("multiplicities", &self.multiplicities)?;
        m.serialize_entry("step", &self.step)?;
        m.serialize_entry("recovered_params", &Params(&self.recovered_params))?;
        m.end()
    }
}

/// Solve `Delta_n = sum_j w_j x_j^n` from `Delta_0..Delta_{k-1}` for distinct `x_j`.
fn vandermonde(xs: &[Scalar], delta: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = xs.len();
    let rows = (0..k)
        .map(|n| {
            let mut row: Vec<Scalar> = xs.iter().map(|x| x.pow_u(n as u64)).collect();
            row.push(delta[n].clone());
            row
        })
        .collect();
    solve_linear(rows, k)
}

fn relation_holds(delta: &[Scalar], step: usize, c: &[Scalar]) -> bool {
    let span = step * (c.len() - 1);
    (span..delta.len()).all(|n| {
        c.iter()
            .enumerate()
            .map(|(i, ci)| ci * &delta[n - step * i])
            .sum::<Scalar>()
            .is_zero()
    })
}

/// Case label and parameters of a 2-OPS, read from the window `0..=n_max`.
pub fn classify_case(set: &BrenkeSet, n_max: usize) -> Result<Classification> {
    let (_, verdict) = extract_recurrence(set, 2, n_max)?;
    if !verdict.is_d_orthogonal {
        return Err(Error::NotTwoOrthogonal);
    }
    let a = set.a().coeffs();
    let r = &set.delta().r;
    let window = (n_max + 1).min(set.delta().len());
    let delta = &set.delta().delta[..window];
    let coeff = |k: usize| a.get(k).cloned().unwrap_or_default();
    let (a1, a2) = (coeff(1), coeff(2));
    let one = Scalar::one();

    if a1.is_zero() && a2.is_zero() {
        let (a3, a6) = (coeff(3), coeff(6));
        if a3.is_zero() || a6.is_zero() || window < 8 {
            return Ok(Classification::unclassified(None));
        }
        let rho = &a6 / &(&a3 * &a3);
        if rho == Scalar::frac(1, 2) {
            let c = [one.clone(), Scalar::from_int(-2), one.clone()];
            if !relation_holds(delta, 3, &c) {
                return Ok(Classification::unclassified(None));
            }
            return Ok(Classification {
                label: CaseLabel::Sym3Fold_G1,
                roots: vec![one],
                multiplicities: vec![2],
                step: 3,
                recovered_params: vec![
                    ("a11", a3),
                    ("r0", r[0].clone()),
                    ("r1", r[1].clone()),
                    ("v0", &r[3] - &r[0]),
                    ("v1", &r[4] - &r[1]),
                    ("v2", r[2].clone()),
                ],
            });
        }
        let q = rho.inverse()? - one.clone();
        if q.is_zero() || is_root_of_unity(&q) {
            return Ok(Classification::unclassified(None));
        }
        let qi = q.inverse()?;
        let c = [one.clone(), -(&one + &qi), qi.clone()];
        if !relation_holds(delta, 3, &c) {
            return Ok(Classification::unclassified(None));
        }
        let f = &one - &qi;
        let s0 = (&r[3] - &r[0]) / &f;
        let s1 = (&r[4] - &r[1]) / &f;
        let s2 = &r[2] / &f;
        let t0 = &r[0] / &s0 + one.clone();
        let t1 = &r[1] / &s1 + one.clone();
        return Ok(Classification {
            label: CaseLabel::Sym3Fold_G2,
            roots: vec![one, qi],
            multiplicities: vec![1, 1],
            step: 3,
            recovered_params: vec![
                ("q", q),
                ("a11", a3),
                ("s0", s0),
                ("s1", s1),
                ("s2", s2),
                ("t0", t0),
                ("t1", t1),
            ],
        });
    }

    let window_seq = DeltaSeq {
        r: r[..window].to_vec(),
        delta: delta.to_vec(),
    };
    let ann = minimal_annihilator(&window_seq, 3)?;
    let Some(roots) = ann.root_multiset() else {
        return Ok(Classification::unclassified(None));
    };
    let grouped = ann.roots.clone().expect("split");
    let report = |label, params: Vec<(&'static str, Scalar)>| {
        let (roots, multiplicities) = grouped.iter().cloned().unzip();
        Ok(Classification {
            label,
            roots,
            multiplicities,
            step: 1,
            recovered_params: params,
        })
    };
    let with_a1 = |mut p: Vec<(&'static str, Scalar)>| {
        p.push(("a1", a1.clone()));
        p
    };
    let unclassified = || Ok(Classification::unclassified(ann.roots.clone()));
    let weights = |xs: &[Scalar]| vandermonde(xs, delta);

    match roots.as_slice() {
        [x] if x.is_one() => {
            let label = if a1.is_zero() {
                CaseLabel::A2_Hermite
            } else {
                CaseLabel::B133_Appell
            };
            report(label, with_a1(vec![("alpha", delta[0].clone())]))
        }
        [q] => {
            let label = if a1.is_zero() {
                CaseLabel::A3_QAppell
            } else {
                CaseLabel::B133_AlSalamCarlitz
            };
            report(
                label,
                with_a1(vec![("q", q.clone()), ("beta", delta[0].clone())]),
            )
        }
        _ if a1.is_zero() => unclassified(),
        [x, y, z] if x.is_one() && y.is_one() && z.is_one() => {
            let gamma = (&delta[2] - &(Scalar::from_int(2) * &delta[1]) + delta[0].clone())
                * Scalar::frac(1, 2);
            let beta = &delta[1] - &delta[0] - gamma.clone();
            report(
                CaseLabel::B32_Laguerre,
                with_a1(vec![
                    ("alpha", delta[0].clone()),
                    ("beta", beta),
                    ("gamma", gamma),
                ]),
            )
        }
        [_, _, _] if grouped.len() == 3 => {
            // (q, wq, w^2 q): the roots are the cube roots of q^3
            let cube = roots[0].pow_u(3);
            if !roots.iter().all(|x| x.pow_u(3) == cube) || !(a2.is_zero() || a2 == &a1 * &a1) {
                return unclassified();
            }
            let q = roots
                .iter()
                .find(|x| x.is_rational())
                .unwrap_or(&roots[0])
                .clone();
            let xs = [q.clone(), &q * &Scalar::omega(), &q * &Scalar::omega_sq()];
            let Some(w) = weights(&xs) else {
                return unclassified();
            };
            let [alpha, beta, gamma] = <[Scalar; 3]>::try_from(w).expect("three weights");
            report(
                CaseLabel::B111_Chihara,
                with_a1(vec![
                    ("q", q),
                    ("alpha", alpha),
                    ("beta", beta),
                    ("gamma", gamma),
                ]),
            )
        }
        [x, y] if x != y => {
            let w = Scalar::omega();
            let q11 = if y == &(x * &w) {
                Some(x.clone())
            } else if x == &(y * &w) {
                Some(y.clone())
            } else {
                None
            };
            if let Some(q) = q11 {
                if !(a2.is_zero() || a2 == &a1 * &a1) {
                    return unclassified();
                }
                let Some(wts) = weights(&[q.clone(), &q * &w]) else {
                    return unclassified();
                };
                return report(
                    CaseLabel::B1311_Chihara,
                    with_a1(vec![
                        ("q", q),
                        ("alpha", wts[0].clone()),
                        ("beta", wts[1].clone()),
                    ]),
                );
            }
            let q23 = [(x, y), (y, x)].into_iter().find_map(|(s, c)| {
                let q = c.try_div(s).ok()?;
                (&q * &q == *s).then_some(q)
            });
            if let Some(q) = q23 {
                let sub_i = &q / &(&one + &q) * (&a1 * &a1);
                let sub_ii = {
                    let (q2, q3) = (&q * &q, q.pow_u(3));
                    let t = &one - &q + q2.clone();
                    (&one - &q2 + q3.clone()) * &q2 / (&t * &(&one + &q3)) * (&a1 * &a1)
                };
                let label = if a2 == sub_i {
                    CaseLabel::B1312_i
                } else if a2 == sub_ii {
                    CaseLabel::B1312_ii
                } else {
                    return unclassified();
                };
                let Some(wts) = weights(&[&q * &q, q.pow_u(3)]) else {
                    return unclassified();
                };
                return report(
                    label,
                    with_a1(vec![
                        ("q", q),
                        ("alpha", wts[0].clone()),
                        ("beta", wts[1].clone()),
                    ]),
                );
            }
            let q13 = [(x, y), (y, x)]
                .into_iter()
                .find_map(|(s, c)| (s.pow_u(3) == *c).then(|| s.clone()));
            if let Some(q) = q13 {
                if a2 != &q / &(&one + &q) * (&a1 * &a1) {
                    return unclassified();
                }
                let Some(wts) = weights(&[q.clone(), q.pow_u(3)]) else {
                    return unclassified();
                };
                return report(
                    CaseLabel::B1313_LittleQLaguerre,
                    with_a1(vec![
                        ("q", q),
                        ("alpha", wts[0].clone()),
                        ("beta", wts[1].clone()),
                    ]),
                );
            }
            unclassified()
        }
        _ => unclassified(),
    }
}
