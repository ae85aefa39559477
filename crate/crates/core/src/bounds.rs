//! Error-term bounds around the equidistributed main terms, and the
//! positivity criterion that follows from them.
//!
//! With t = sqrt(q) + k + q/(mp), the subset-sum count satisfies
//! |M_H(k, b) - C((q-1)/m, k)/q| <= C(t, k), with an extra factor 2/sqrt(q)
//! when b != 0. The distinct-coordinate diagonal count has the same shape
//! with the falling factorial (m sqrt(q) + k + q/p)_k. Bounds are evaluated
//! in double precision; exact counts and main terms stay rational until the
//! final comparison.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::combinat::{binomial, falling_factorial, real_binomial};
use crate::counting::{SubsetCounter, Target};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Relative slack applied to every real-valued right-hand side.
pub const RELATIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// M_H(k, b) against C(sqrt(q) + k + q/(mp), k), times 2/sqrt(q) for b != 0.
    SubsetSum,
    /// M_H(k, 0) against C(sqrt(q) + k - 1 + q/(mp), k).
    SubsetSumShifted,
    /// N_H(k, b) against (sqrt(q) + k + q/(mp))_k, times 2/sqrt(q) for b != 0.
    OrderedSubset,
    /// N_m^*(k, b) against (m sqrt(q) + k + q/p)_k, times 2/sqrt(q) for b != 0.
    Diagonal,
}

impl BoundKind {
    pub fn target(self) -> Target {
        match self {
            BoundKind::SubsetSum | BoundKind::SubsetSumShifted => Target::SubsetSum,
            BoundKind::OrderedSubset => Target::OrderedSubset,
            BoundKind::Diagonal => Target::DiagonalDistinct,
        }
    }
}

fn check_index(q: u64, m: u64) -> Result<u64> {
    if m == 0 || q < 2 || (q - 1) % m != 0 {
        return Err(Error::IndexDoesNotDivide {
            m: m as u32,
            order: q.saturating_sub(1) as u32,
        });
    }
    Ok((q - 1) / m)
}

fn scale(q: u64, b_is_zero: bool) -> f64 {
    if b_is_zero {
        1.0
    } else {
        2.0 / (q as f64).sqrt()
    }
}

// Every factor t - i of the falling factorial must be positive.
fn positive_factors(t: f64, k: u64) -> Result<()> {
    if k > 0 && !(t > (k - 1) as f64) {
        return Err(Error::Internal(format!(
            "bound argument {t} does not exceed k - 1 = {}",
            k - 1
        )));
    }
    Ok(())
}

fn subset_argument(q: u64, p: u64, m: u64, k: u64) -> f64 {
    (q as f64).sqrt() + k as f64 + q as f64 / (m * p) as f64
}

/// Right-hand side of the subset-sum bound, for 1 <= k <= (q-1)/m.
pub fn bound_subset_sum(q: u64, p: u64, m: u64, k: u64, b_is_zero: bool) -> Result<f64> {
    let h = check_index(q, m)?;
    if k < 1 || k > h {
        return Err(Error::KOutOfRange { k: k as usize, max: h as usize });
    }
    let t = subset_argument(q, p, m, k);
    positive_factors(t, k)?;
    Ok(scale(q, b_is_zero) * real_binomial(t, k))
}

/// The b = 0 variant with k - 1 in place of k inside the binomial.
pub fn bound_subset_sum_shifted(q: u64, p: u64, m: u64, k: u64) -> Result<f64> {
    let h = check_index(q, m)?;
    if k < 1 || k > h {
        return Err(Error::KOutOfRange { k: k as usize, max: h as usize });
    }
    let t = subset_argument(q, p, m, k) - 1.0;
    positive_factors(t, k)?;
    Ok(real_binomial(t, k))
}

/// Right-hand side for ordered distinct tuples from H, 0 <= k <= (q-1)/m.
pub fn bound_ordered_subset(q: u64, p: u64, m: u64, k: u64, b_is_zero: bool) -> Result<f64> {
    let h = check_index(q, m)?;
    if k > h {
        return Err(Error::KOutOfRange { k: k as usize, max: h as usize });
    }
    let t = subset_argument(q, p, m, k);
    positive_factors(t, k)?;
    Ok(scale(q, b_is_zero) * falling_factorial(t, k))
}

/// Right-hand side of the diagonal bound, 0 <= k <= q - 1.
pub fn bound_diagonal(q: u64, p: u64, m: u64, k: u64, b_is_zero: bool) -> Result<f64> {
    check_index(q, m)?;
    if k > q - 1 {
        return Err(Error::KOutOfRange { k: k as usize, max: (q - 1) as usize });
    }
    let t = m as f64 * (q as f64).sqrt() + k as f64 + q as f64 / p as f64;
    positive_factors(t, k)?;
    Ok(scale(q, b_is_zero) * falling_factorial(t, k))
}

/// The equidistributed main term: (number of subsets or tuples) / q.
pub fn main_term(q: u64, m: u64, k: u64, target: Target) -> Result<BigRational> {
    let h = check_index(q, m)?;
    let total: BigUint = match target {
        Target::SubsetSum => binomial(h, k),
        Target::OrderedSubset => binomial(h, k) * crate::combinat::factorial(k),
        Target::DiagonalDistinct => binomial(q - 1, k) * crate::combinat::factorial(k),
    };
    Ok(BigRational::new(total.into(), BigInt::from(q)))
}

/// |exact - main| against the bound for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub q: u32,
    pub p: u32,
    pub m: u32,
    pub k: usize,
    pub b: u32,
    #[serde(serialize_with = "crate::decimal::as_string")]
    pub exact: BigUint,
    #[serde(serialize_with = "crate::decimal::as_string")]
    pub main_term: BigRational,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub bound: BoundKind,
}

/// lhs <= rhs up to the relative slack.
pub fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + RELATIVE_SLACK * rhs.max(1.0)
}

/// |exact - main| as a float, computed exactly before the final rounding.
pub fn deviation(exact: &BigUint, main: &BigRational) -> f64 {
    let diff = (BigRational::from_integer(BigInt::from(exact.clone())) - main).abs();
    diff.to_f64().unwrap_or(f64::INFINITY)
}

pub fn bound_value(q: u64, p: u64, m: u64, k: u64, b_is_zero: bool, kind: BoundKind) -> Result<f64> {
    match kind {
        BoundKind::SubsetSum => bound_subset_sum(q, p, m, k, b_is_zero),
        BoundKind::SubsetSumShifted => {
            if !b_is_zero {
                return Err(Error::Precondition("the shifted bound applies to b = 0 only".into()));
            }
            bound_subset_sum_shifted(q, p, m, k)
        }
        BoundKind::OrderedSubset => bound_ordered_subset(q, p, m, k, b_is_zero),
        BoundKind::Diagonal => bound_diagonal(q, p, m, k, b_is_zero),
    }
}

/// Evaluates one bound against the exact sieve count.
pub fn check_bounds(counter: &SubsetCounter<'_>, k: usize, b: FieldElement, kind: BoundKind) -> Result<BoundReport> {
    let field = counter.field();
    let (q, p, m) = (field.q() as u64, field.p() as u64, counter.subgroup().m() as u64);
    let rhs = bound_value(q, p, m, k as u64, b.is_zero(), kind)?;
    let exact = counter.sieve_count(k, b, kind.target())?.value;
    let main = main_term(q, m, k as u64, kind.target())?;
    let lhs = deviation(&exact, &main);
    Ok(BoundReport {
        q: q as u32,
        p: p as u32,
        m: m as u32,
        k,
        b: b.encoding(),
        exact,
        main_term: main,
        lhs,
        rhs,
        holds: within(lhs, rhs),
        bound: kind,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityTarget {
    Subset,
    Diagonal,
}

/// Whether the main term beats the error bound for every b.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityReport {
    pub guaranteed: bool,
    pub main_term: f64,
    pub bound_nonzero_b: f64,
    pub bound_zero_b: f64,
    /// 6 ln q, the k threshold quoted for the headline positivity statements.
    pub threshold_6_ln_q: f64,
    /// 3 ln 4q, the k threshold used for nonzero targets.
    pub threshold_3_ln_4q: f64,
    pub k_exceeds_6_ln_q: bool,
    pub k_exceeds_3_ln_4q: bool,
}

/// Positivity from the main term strictly exceeding both error bounds.
/// When it holds, every b in F_q has a positive count.
pub fn positivity_sufficient(q: u64, p: u64, m: u64, k: u64, target: PositivityTarget) -> Result<PositivityReport> {
    if p == 2 {
        return Err(Error::Unsupported("positivity needs odd characteristic".into()));
    }
    let (main, nonzero, zero) = match target {
        PositivityTarget::Subset => (
            main_term(q, m, k, Target::SubsetSum)?,
            bound_subset_sum(q, p, m, k, false)?,
            bound_subset_sum(q, p, m, k, true)?,
        ),
        PositivityTarget::Diagonal => {
            if k == 0 {
                return Err(Error::KOutOfRange { k: 0, max: (q - 1) as usize });
            }
            (
                main_term(q, m, k, Target::DiagonalDistinct)?,
                bound_diagonal(q, p, m, k, false)?,
                bound_diagonal(q, p, m, k, true)?,
            )
        }
    };
    let main = main.to_f64().unwrap_or(f64::INFINITY);
    let ln_q = (q as f64).ln();
    let ln_4q = (4.0 * q as f64).ln();
    Ok(PositivityReport {
        guaranteed: main > nonzero.max(zero),
        main_term: main,
        bound_nonzero_b: nonzero,
        bound_zero_b: zero,
        threshold_6_ln_q: 6.0 * ln_q,
        threshold_3_ln_4q: 3.0 * ln_4q,
        k_exceeds_6_ln_q: k as f64 > 6.0 * ln_q,
        k_exceeds_3_ln_4q: k as f64 > 3.0 * ln_4q,
    })
}
