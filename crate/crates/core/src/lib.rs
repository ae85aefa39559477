//! Exact counting of subset sums over multiplicative subgroups of finite fields.
//!
//! For a subgroup H of index m in F_q^*, the crate computes the number
//! M_H(k, b) of k-element subsets of H summing to b, the ordered variant
//! N_H(k, b) = k! M_H(k, b), and the number N_m^*(k, b) of distinct-coordinate
//! solutions of x_1^m + ... + x_k^m = b over F_q^*. Counts come from a sieve
//! over cycle types of S_k and are cross-checked against exhaustive
//! enumeration. Alongside sit Gauss and Jacobi sums, cycle-type
//! combinatorics, and evaluation of the error bounds for these counts.
//!
//! - [`field`]: tabulated F_{p^r}, discrete logs, trace, subgroup cosets
//! - [`charsums`]: characters, Gauss sums, Jacobi-type sums, identity checks
//! - [`combinat`]: cycle types, the cycle-index generating function, falling factorials
//! - [`counting`]: value distributions, the sieve, brute-force oracles
//! - [`bounds`]: main terms, error bounds, positivity
//! - [`sweep`]: parameter sweeps and the verification suites behind the CLI

pub mod bounds;
pub mod budget;
pub mod charsums;
pub mod combinat;
pub mod counting;
mod decimal;
pub mod error;
pub mod field;
pub mod sweep;

pub use budget::Budget;
pub use counting::{CountResult, Method, SubsetCounter, Target};
pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FiniteField, SubgroupSpec};
