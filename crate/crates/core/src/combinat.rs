//! Cycle types of permutations and the generating function built from them.
//!
//! A cycle type of S_k is a vector `(c_1, ..., c_k)` with `sum i * c_i = k`.
//! Everything here is exact except the real-argument falling factorial and
//! binomial, which feed bound evaluation only.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A cycle type `(c_1, ..., c_k)`; `c[i - 1]` is the number of i-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionType {
    c: Vec<u32>,
}

impl PartitionType {
    /// `counts[i - 1]` is the number of cycles of length i; k is `counts.len()`.
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        let k = counts.len();
        let weight: u64 = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum();
        if weight != k as u64 {
            return Err(Error::Precondition(format!(
                "cycle type {counts:?} has weight {weight}, expected {k}"
            )));
        }
        Ok(PartitionType { c: counts })
    }

    pub fn k(&self) -> usize {
        self.c.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.c
    }

    /// c_i for 1 <= i <= k.
    pub fn count(&self, i: usize) -> u32 {
        self.c[i - 1]
    }

    /// Cycles with their lengths: `(i, c_i)` for every nonzero c_i.
    pub fn cycles(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
    }

    /// Total number of cycles, l = sum c_i.
    pub fn total_cycles(&self) -> u32 {
        self.c.iter().sum()
    }

    /// (-1)^(k - l).
    pub fn sign(&self) -> i32 {
        if (self.k() as u32 - self.total_cycles()) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of permutations in S_k with the given cycle type,
/// k! / prod(i^{c_i} c_i!).
pub fn cycle_type_count(t: &PartitionType) -> BigUint {
    let mut denom = BigUint::one();
    for (i, c) in t.cycles() {
        denom *= BigUint::from(i).pow(c) * factorial(c as u64);
    }
    factorial(t.k() as u64) / denom
}

/// Iterator over every cycle type of S_k, in increasing lexicographic order
/// of `(c_1, ..., c_k)`. Starts at the single k-cycle and ends at the identity.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

pub fn partitions(k: usize) -> Partitions {
    let mut first = vec![0; k];
    if k > 0 {
        first[k - 1] = 1;
    }
    Partitions {
        current: Some(first),
    }
}

impl Iterator for Partitions {
    type Item = PartitionType;

    fn next(&mut self) -> Option<PartitionType> {
        let cur = self.current.take()?;
        self.current = successor(&cur);
        Some(PartitionType { c: cur })
    }
}

// Raise the rightmost position that still admits a completion by the least
// amount that does, then fill the tail with its lexicographically smallest
// completion: a single part of the remaining size.
fn successor(c: &[u32]) -> Option<Vec<u32>> {
    let k = c.len();
    let mut prefix = vec![0usize; k + 1];
    for i in 0..k {
        prefix[i + 1] = prefix[i] + (i + 1) * c[i] as usize;
    }
    for j in (1..=k).rev() {
        let mut raised = c[j - 1] as usize + 1;
        while prefix[j - 1] + j * raised <= k {
            let rest = k - prefix[j - 1] - j * raised;
            if rest == 0 || rest > j {
                let mut next = c[..j].to_vec();
                next[j - 1] = raised as u32;
                next.resize(k, 0);
                if rest > 0 {
                    next[rest - 1] = 1;
                }
                return Some(next);
            }
            raised += 1;
        }
    }
    None
}

/// Partition numbers p(0..=n) by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * &p[m - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= m {
                acc += sign * &p[m - g2];
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| v.to_biguint().expect("partition numbers are positive"))
        .collect()
}

/// C_k(t_1, ..., t_k) = sum over cycle types of N(c) * prod t_i^{c_i}.
pub fn cycle_gen_func(k: usize, t: &[BigInt]) -> Result<BigInt> {
    if t.len() != k {
        return Err(Error::Precondition(format!(
            "expected {k} arguments, got {}",
            t.len()
        )));
    }
    let mut total = BigInt::zero();
    for ty in partitions(k) {
        let mut term = BigInt::from(cycle_type_count(&ty));
        for (i, c) in ty.cycles() {
            term *= t[i - 1].pow(c);
        }
        total += term;
    }
    Ok(total)
}

/// The d-periodic argument vector: t_i = q when d | i, otherwise s.
pub fn periodic_arguments(k: usize, d: u64, s: i64, q: i64) -> Vec<BigInt> {
    (1..=k as u64)
        .map(|i| BigInt::from(if i % d == 0 { q } else { s }))
        .collect()
}

// Multisets of size `size` drawn from `kinds` kinds, C(kinds + size - 1, size).
fn multisets(kinds: u64, size: u64) -> BigUint {
    if kinds == 0 {
        return if size == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(kinds + size - 1, size)
}

/// Closed form of C_k at the d-periodic arguments (s, ..., s, q, s, ..., q, ...):
/// k! * sum_{i <= k/d} C((q-s)/d + i - 1, (q-s)/d - 1) * C(s + k - d i - 1, s - 1).
pub fn periodic_closed_form(k: usize, d: u64, s: u64, q: u64) -> Result<BigUint> {
    if d == 0 || s == 0 || q < s || (q - s) % d != 0 {
        return Err(Error::Precondition(format!(
            "need d >= 1, s >= 1, q >= s and d | (q - s); got s={s} d={d} q={q}"
        )));
    }
    let a = (q - s) / d;
    let k = k as u64;
    let sum: BigUint = (0..=k / d)
        .map(|i| multisets(a, i) * multisets(s, k - d * i))
        .sum();
    Ok(factorial(k) * sum)
}

/// (t)_k = t (t - 1) ... (t - k + 1) for real t; (t)_0 = 1.
pub fn falling_factorial(t: f64, k: u64) -> f64 {
    (0..k).map(|i| t - i as f64).product()
}

/// Exact falling factorial for integer t.
pub fn falling_factorial_int(t: &BigInt, k: u64) -> BigInt {
    (0..k).map(|i| t - BigInt::from(i)).product()
}

/// C(t, k) = (t)_k / k! for real t.
pub fn real_binomial(t: f64, k: u64) -> f64 {
    (0..k).map(|i| (t - i as f64) / (i + 1) as f64).product()
}

/// Outcome of an exact inequality check `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(lhs: BigInt, rhs: BigInt) -> Self {
        let holds = lhs <= rhs;
        InequalityCheck { lhs, rhs, holds }
    }
}

/// sum_{i >= 0} C(l + i, n) C(q - i, m) <= C(l + q + 1, m + n + 1)
/// for positive integers l, n, q, m.
pub fn check_binomial_convolution_bound(l: u64, n: u64, q: u64, m: u64) -> Result<InequalityCheck> {
    if l == 0 || n == 0 || q == 0 || m == 0 {
        return Err(Error::Precondition(format!(
            "l, n, q, m must be positive; got ({l}, {n}, {q}, {m})"
        )));
    }
    let lhs: BigUint = (0..=q).map(|i| binomial(l + i, n) * binomial(q - i, m)).sum();
    let rhs = binomial(l + q + 1, m + n + 1);
    Ok(InequalityCheck::new(lhs.into(), rhs.into()))
}

/// C_k at the d-periodic arguments is at most (s + k + (q - s)/d - 1)_k.
pub fn check_periodic_cycle_bound(s: u64, d: u64, k: u64, q: u64) -> Result<InequalityCheck> {
    if s == 0 || d == 0 || k == 0 || q == 0 || q < s || (q - s) % d != 0 {
        return Err(Error::Precondition(format!(
            "need positive s, d, k, q with q >= s and d | (q - s); got s={s} d={d} k={k} q={q}"
        )));
    }
    let args = periodic_arguments(k as usize, d, s as i64, q as i64);
    let lhs = cycle_gen_func(k as usize, &args)?;
    let top = BigInt::from(s + k + (q - s) / d - 1);
    let rhs = falling_factorial_int(&top, k);
    Ok(InequalityCheck::new(lhs, rhs))
}
