//! d-orthogonality tests for Brenke sets.
//!
//! Three independent deciders: the `(d+1)`-order recurrence read off exact
//! basis expansions, the dual-functional definition, and the `Delta`-relation
//! criterion in terms of `A`, `1/A` and `Delta_n`. All verdicts speak about the
//! tested window `0..=n_max` only.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::brenke::BrenkeSet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::PowerSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FailureReason {
    SupportTooWide,
    RegularityZero,
    DeltaRelationViolated,
    ConsecutiveZeros,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub is_d_orthogonal: bool,
    pub witness: Option<Witness>,
    pub d: usize,
    pub n_max: usize,
}

impl Verdict {
    fn from_witness(witness: Option<Witness>, d: usize, n_max: usize) -> Self {
        Verdict {
            is_d_orthogonal: witness.is_none(),
            witness,
            d,
            n_max,
        }
    }
}

/// Coefficients of `x P_n` in the basis `P_j`.
#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceData {
    pub d: usize,
    /// `gamma[n][k + 1] = gamma_k(n)` for `k = -1..=d`; zero when `n - k < 0`.
    pub gamma: Vec<Vec<Scalar>>,
    /// Indices `j` with a nonzero coefficient of `P_j` in `x P_n`.
    pub residual_support: Vec<BTreeSet<usize>>,
}

impl RecurrenceData {
    /// `gamma_k(n)` for `-1 <= k <= d`.
    pub fn gamma(&self, k: i64, n: usize) -> &Scalar {
        &self.gamma[n][(k + 1) as usize]
    }
}

/// Which instances of the `Delta`-relation the theorem test checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeltaRange {
    /// Only `m = d + 1`.
    NecessaryOnly,
    /// Every `m` with `d + 1 <= m <= n`.
    Full,
}

/// Coordinates of `poly` (coefficients in increasing degree) in the basis
/// `P_0, P_1, ...` of `set`. Triangular since `P_j` has leading coefficient `b_j`.
pub fn expand_in_basis(set: &BrenkeSet, poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let deg = poly.len().saturating_sub(1);
    if deg > set.order() {
        return Err(Error::OrderTooSmall {
            needed: deg,
            have: set.order(),
        });
    }
    let mut rest = poly.to_vec();
    let mut coords = vec![Scalar::zero(); poly.len()];
    for j in (0..poly.len()).rev() {
        if rest[j].is_zero() {
            continue;
        }
        let pj = set.poly(j);
        let c = &rest[j] / &pj[j];
        for (k, pk) in pj.iter().enumerate() {
            rest[k] -= &(&c * pk);
        }
        coords[j] = c;
    }
    Ok(coords)
}

fn shift_up(poly: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    out.push(Scalar::zero());
    out.extend_from_slice(poly);
    out
}

/// Expand `x P_n` for every `n <= n_max` and test the band `n-d..=n+1` and
/// the regularity `gamma_d(n) gamma_{-1}(n) != 0` for `n >= d`.
pub fn extract_recurrence(
    set: &BrenkeSet,
    d: usize,
    n_max: usize,
) -> Result<(RecurrenceData, Verdict)> {
    if n_max + 1 > set.order() {
        return Err(Error::OrderTooSmall {
            needed: n_max + 1,
            have: set.order(),
        });
    }
    let mut gamma = Vec::with_capacity(n_max + 1);
    let mut support = Vec::with_capacity(n_max + 1);
    let mut witness = None;
    for n in 0..=n_max {
        let coords = expand_in_basis(set, &shift_up(set.poly(n)))?;
        let row: Vec<Scalar> = (-1..=d as i64)
            .map(|k| {
                let j = n as i64 - k;
                if j < 0 {
                    Scalar::zero()
                } else {
                    coords[j as usize].clone()
                }
            })
            .collect();
        let supp: BTreeSet<usize> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| j)
            .collect();
        if witness.is_none() {
            if supp.iter().any(|&j| j + d < n) {
                witness = Some(Witness {
                    n,
                    reason: FailureReason::SupportTooWide,
                });
            } else if n >= d && (row[d + 1].is_zero() || row[0].is_zero()) {
                witness = Some(Witness {
                    n,
                    reason: FailureReason::RegularityZero,
                });
            }
        }
        gamma.push(row);
        support.push(supp);
    }
    let data = RecurrenceData {
        d,
        gamma,
        residual_support: support,
    };
    Ok((data, Verdict::from_witness(witness, d, n_max)))
}

/// Default `m_max` (at most 4) and the largest `n_max` the dual test can
/// handle on a set of order `order`.
pub fn dual_window(order: usize, d: usize, n_max: usize, m_max: Option<usize>) -> (usize, usize) {
    let m = m_max.unwrap_or_else(|| {
        (0..=4)
            .rev()
            .find(|&m| (m + 1) * d + m <= order)
            .unwrap_or(0)
    });
    (m, n_max.min(order.saturating_sub(m)))
}

/// Definitional test: with `u_k` dual to `P_j`, require `<u_k, x^m P_n> = 0`
/// for `n > m d + k` and `!= 0` for `n = m d + k`, all `m <= m_max`, `k < d`,
/// `n <= n_max`.
pub fn dual_functional_check(
    set: &BrenkeSet,
    d: usize,
    m_max: usize,
    n_max: usize,
) -> Result<Verdict> {
    let lower = m_max * d + d;
    if n_max < lower || n_max + m_max > set.order() {
        return Err(Error::OrderTooSmall {
            needed: lower.max(n_max) + m_max,
            have: set.order(),
        });
    }
    // first failure in (n, m, k) order
    let mut witness: Option<Witness> = None;
    for n in 0..=n_max {
        let mut poly = set.poly(n).to_vec();
        for m in 0..=m_max {
            if m > 0 {
                poly = shift_up(&poly);
            }
            let coords = expand_in_basis(set, &poly)?;
            for k in 0..d {
                let c = coords.get(k).cloned().unwrap_or_default();
                let bound = m * d + k;
                let reason = if n > bound && !c.is_zero() {
                    Some(FailureReason::SupportTooWide)
                } else if n == bound && c.is_zero() {
                    Some(FailureReason::RegularityZero)
                } else {
                    None
                };
                if let Some(reason) = reason {
                    witness.get_or_insert(Witness { n, reason });
                }
            }
        }
        if witness.is_some() {
            break;
        }
    }
    Ok(Verdict::from_witness(witness, d, n_max))
}

/// `E(m, n) = sum_{i=0}^m (sum_{j=i}^m a_{j+1} ahat_{m-j}) Delta_{n-i}` for
/// `m <= n`; the `Delta`-relation asks `E(m, n) = 0` for `m > d`, regularity
/// asks `E(d, n) != 0`.
pub struct DeltaForm<'a> {
    a: &'a [Scalar],
    a_hat: PowerSeries,
    delta: &'a [Scalar],
}

impl<'a> DeltaForm<'a> {
    pub fn new(set: &'a BrenkeSet) -> Result<Self> {
        let a_hat = set.a().reciprocal(set.order())?;
        Ok(DeltaForm {
            a: set.a().coeffs(),
            a_hat,
            delta: &set.delta().delta,
        })
    }

    /// Inner sum `sum_{j=i}^m a_{j+1} ahat_{m-j}`.
    pub fn weight(&self, m: usize, i: usize) -> Scalar {
        let ah = self.a_hat.coeffs();
        (i..=m).map(|j| &self.a[j + 1] * &ah[m - j]).sum()
    }

    pub fn value(&self, m: usize, n: usize) -> Scalar {
        debug_assert!(m <= n);
        (0..=m)
            .map(|i| self.weight(m, i) * &self.delta[n - i])
            .sum()
    }
}

/// The `Delta`-relation criterion with regularity, plus the rule that no
/// `d + 1` consecutive `Delta_n` or `a_n` vanish.
pub fn theorem_delta_test(
    set: &BrenkeSet,
    d: usize,
    n_max: usize,
    range: DeltaRange,
) -> Result<Verdict> {
    if n_max + 1 > set.order() {
        return Err(Error::OrderTooSmall {
            needed: n_max + 1,
            have: set.order(),
        });
    }
    let form = DeltaForm::new(set)?;
    let delta = &set.delta().delta;
    let a = set.a().coeffs();
    let zero_run = |xs: &[Scalar], n: usize| n >= d && xs[n - d..=n].iter().all(Scalar::is_zero);
    let mut witness = None;
    for n in 0..=n_max {
        let ms = match range {
            DeltaRange::NecessaryOnly => d + 1..=(d + 1).min(n),
            DeltaRange::Full => d + 1..=n,
        };
        let reason = if ms.clone().any(|m| !form.value(m, n).is_zero()) {
            Some(FailureReason::DeltaRelationViolated)
        } else if n >= d && form.value(d, n).is_zero() {
            Some(FailureReason::RegularityZero)
        } else if zero_run(delta, n) || zero_run(a, n) {
            Some(FailureReason::ConsecutiveZeros)
        } else {
            None
        };
        if let Some(reason) = reason {
            witness = Some(Witness { n, reason });
            break;
        }
    }
    Ok(Verdict::from_witness(witness, d, n_max))
}

/// Outcome of the `m = d + 1` necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    pub verdict: Verdict,
    pub relation_holds: bool,
    pub regularity_holds: bool,
    /// For `d = 2`: whether the expanded cubic and regularity forms agree
    /// with the generic sums at every tested `n`.
    pub expanded_forms_agree: Option<bool>,
}

/// Coefficients `[c3, c2, c1, c0]` of the `m = 3` relation at `d = 2`:
/// `c3 Delta_n + c2 Delta_{n-1} + c1 Delta_{n-2} + c0 Delta_{n-3}`.
pub fn expanded_relation_d2(a1: &Scalar, a2: &Scalar, a3: &Scalar, a4: &Scalar) -> [Scalar; 4] {
    let a1_2 = a1 * a1;
    let a2_2 = a2 * a2;
    let a1a3 = a1 * a3;
    [
        -(&a1_2 * &a1_2) - Scalar::from_int(2) * &a1a3 + Scalar::from_int(3) * &a1_2 * a2 - &a2_2
            + a4,
        &a1_2 * a2 - &a2_2 - &a1a3 + a4,
        a4 - &a1a3,
        a4.clone(),
    ]
}

/// Coefficients `[e2, e1, e0]` of the `d = 2` regularity form
/// `e2 Delta_n + e1 Delta_{n-1} + e0 Delta_{n-2}`.
pub fn expanded_regularity_d2(a1: &Scalar, a2: &Scalar, a3: &Scalar) -> [Scalar; 3] {
    let a1a2 = a1 * a2;
    [
        a1 * a1 * a1 - Scalar::from_int(2) * &a1a2 + a3,
        a3 - &a1a2,
        a3.clone(),
    ]
}

pub fn necessary_condition(set: &BrenkeSet, d: usize, n_max: usize) -> Result<NecessaryReport> {
    if n_max + 1 > set.order() {
        return Err(Error::OrderTooSmall {
            needed: n_max + 1,
            have: set.order(),
        });
    }
    let form = DeltaForm::new(set)?;
    let mut relation_witness = None;
    let mut regularity_witness = None;
    for n in 0..=n_max {
        if relation_witness.is_none() && n > d && !form.value(d + 1, n).is_zero() {
            relation_witness = Some(Witness {
                n,
                reason: FailureReason::DeltaRelationViolated,
            });
        }
        if regularity_witness.is_none() && n >= d && form.value(d, n).is_zero() {
            regularity_witness = Some(Witness {
                n,
                reason: FailureReason::RegularityZero,
            });
        }
    }
    let expanded_forms_agree = (d == 2).then(|| {
        let a = set.a().coeffs();
        let delta = &set.delta().delta;
        let rel = expanded_relation_d2(&a[1], &a[2], &a[3], &a[4]);
        let reg = expanded_regularity_d2(&a[1], &a[2], &a[3]);
        let lin = |cs: &[Scalar], n: usize| -> Scalar {
            cs.iter().enumerate().map(|(i, c)| c * &delta[n - i]).sum()
        };
        (3..=n_max).all(|n| lin(&rel, n) == form.value(3, n))
            && (2..=n_max).all(|n| lin(&reg, n) == form.value(2, n))
    });
    let witness = match (relation_witness, regularity_witness) {
        (Some(x), Some(y)) => Some(if y.n < x.n { y } else { x }),
        (x, y) => x.or(y),
    };
    Ok(NecessaryReport {
        verdict: Verdict::from_witness(witness, d, n_max),
        relation_holds: relation_witness.is_none(),
        regularity_holds: regularity_witness.is_none(),
        expanded_forms_agree,
    })
}

/// JSON verdict report `{verdict, d, n_max, witness?, gamma_table?}`.
#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub oracle: String,
    pub verdict: &'static str,
    pub d: usize,
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_table: Option<Vec<Vec<Scalar>>>,
}

impl VerdictReport {
    pub fn new(oracle: &str, verdict: &Verdict, gamma: Option<&RecurrenceData>) -> Self {
        VerdictReport {
            oracle: oracle.to_string(),
            verdict: if verdict.is_d_orthogonal {
                "positive"
            } else {
                "negative"
            },
            d: verdict.d,
            n_max: verdict.n_max,
            witness: verdict.witness,
            gamma_table: gamma.map(|g| g.gamma.clone()),
        }
    }
}
