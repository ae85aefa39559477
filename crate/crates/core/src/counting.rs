//! Exact counts of k-subsets of a multiplicative subgroup H with a given sum,
//! and of distinct-coordinate solutions of x_1^m + ... + x_k^m = b.
//!
//! The sieve expresses the distinct-coordinate count as a signed sum over
//! cycle types of S_k. A cycle type collapses each cycle to one variable
//! weighted by the cycle length, so every term is the number of solutions
//! of a weighted diagonal equation. A weight divisible by p kills its
//! variable; any other weight i sends a variable from H onto the coset iH.
//! Each term therefore depends only on how many free variables there are
//! and how many variables land in each coset (a [`WeightProfile`]), and the
//! per-coset counts are obtained by exact convolution of value
//! distributions. Signed multiplicities are aggregated per profile before
//! any convolution happens.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::combinat::{binomial, cycle_type_count, factorial, partition_numbers, partitions, PartitionType};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, SubgroupSpec};

/// Which count to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Target {
    /// M_H(k, b): k-element subsets of H summing to b.
    #[serde(rename = "M")]
    SubsetSum,
    /// N_H(k, b) = k! M_H(k, b): ordered distinct k-tuples from H.
    #[serde(rename = "NH")]
    OrderedSubset,
    /// N_m^*(k, b): ordered distinct k-tuples from F_q^* with x_1^m + ... + x_k^m = b.
    #[serde(rename = "Nmstar")]
    DiagonalDistinct,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::SubsetSum, Target::OrderedSubset, Target::DiagonalDistinct];

    pub fn name(self) -> &'static str {
        match self {
            Target::SubsetSum => "M",
            Target::OrderedSubset => "NH",
            Target::DiagonalDistinct => "Nmstar",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(Target::SubsetSum),
            "NH" => Ok(Target::OrderedSubset),
            "Nmstar" => Ok(Target::DiagonalDistinct),
            other => Err(Error::Precondition(format!("unknown target {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sieve,
    Brute,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Sieve => "sieve",
            Method::Brute => "brute",
        })
    }
}

/// Where the variables of a weighted equation range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Variables drawn from H.
    Subgroup,
    /// Variables drawn from F_q^*, each entering through its m-th power.
    FullStar,
}

/// counts[v] = number of input tuples whose (weighted) sum is the element
/// with encoding v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueDistribution {
    counts: Vec<BigUint>,
}

impl ValueDistribution {
    /// The distribution of the empty sum: one tuple, summing to 0.
    pub fn empty_sum(q: u32) -> Self {
        let mut counts = vec![BigUint::zero(); q as usize];
        counts[0] = BigUint::one();
        ValueDistribution { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, v: FieldElement) -> &BigUint {
        &self.counts[v.index()]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Adds one variable taking each value in `values` exactly once.
    pub fn add_uniform(&self, field: &FiniteField, values: &[FieldElement]) -> Self {
        let mut out = vec![BigUint::zero(); self.counts.len()];
        for (v, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for x in values {
                out[field.add_enc(v as u32, x.encoding()) as usize] += c;
            }
        }
        ValueDistribution { counts: out }
    }

    /// Adds one variable taking value w with multiplicity `weights[w]`.
    pub fn add_weighted(&self, field: &FiniteField, weights: &[u64]) -> Self {
        let support: Vec<(u32, u64)> = weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(x, &w)| (x as u32, w))
            .collect();
        let mut out = vec![BigUint::zero(); self.counts.len()];
        for (v, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(x, w) in &support {
                out[field.add_enc(v as u32, x) as usize] += c * w;
            }
        }
        ValueDistribution { counts: out }
    }
}

/// a_1 x_1^{d_1} + ... + a_n x_n^{d_n} = b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSpec {
    pub coefficients: Vec<FieldElement>,
    pub exponents: Vec<u32>,
    pub target: FieldElement,
    /// Variables range over F_q^* when set, over F_q otherwise.
    pub zero_excluded: bool,
}

/// Number of solutions of a diagonal equation, by left-fold convolution of
/// the per-variable value distributions.
pub fn diagonal_count(field: &FiniteField, spec: &DiagonalSpec, budget: &Budget) -> Result<BigUint> {
    if spec.coefficients.len() != spec.exponents.len() {
        return Err(Error::Precondition(
            "coefficient and exponent lists differ in length".into(),
        ));
    }
    if spec.coefficients.iter().any(|a| a.is_zero()) {
        return Err(Error::Precondition("diagonal coefficients must be nonzero".into()));
    }
    if spec.exponents.contains(&0) {
        return Err(Error::Precondition("exponents must be at least 1".into()));
    }
    let q = field.q() as f64;
    Budget::check("diagonal convolution", spec.coefficients.len() as f64 * q * q, budget.convolution)?;

    let mut dist = ValueDistribution::empty_sum(field.q());
    for (&a, &d) in spec.coefficients.iter().zip(&spec.exponents) {
        let mut weights = vec![0u64; field.q() as usize];
        let domain: Box<dyn Iterator<Item = FieldElement>> = if spec.zero_excluded {
            Box::new(field.nonzero_elements())
        } else {
            Box::new(field.elements())
        };
        for x in domain {
            weights[field.mul(a, field.pow(x, d as u64)).index()] += 1;
        }
        dist = dist.add_weighted(field, &weights);
    }
    Ok(dist.get(spec.target).clone())
}

/// A cycle type reduced to what its sieve term depends on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightProfile {
    /// Variables whose weight is divisible by p.
    pub free: u32,
    /// `per_coset[j]`: variables whose weight lies in the j-th coset of H.
    pub per_coset: Vec<u32>,
}

impl WeightProfile {
    pub fn variables(&self) -> u32 {
        self.free + self.per_coset.iter().sum::<u32>()
    }
}

pub fn profile_of(t: &PartitionType, field: &FiniteField, sub: &SubgroupSpec) -> WeightProfile {
    let p = field.p() as usize;
    let mut profile = WeightProfile {
        free: 0,
        per_coset: vec![0; sub.m() as usize],
    };
    for (i, c) in t.cycles() {
        if i % p == 0 {
            profile.free += c;
        } else {
            let w = field.from_int(i as i64);
            let j = sub.coset_index(field, w).expect("weight not divisible by p is nonzero");
            profile.per_coset[j as usize] += c;
        }
    }
    profile
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(serialize_with = "crate::decimal::as_string")]
    pub value: BigUint,
    pub method: Method,
    pub target: Target,
    pub q: u32,
    pub m: u32,
    pub k: usize,
    pub b: u32,
}

type Distribution = Arc<Vec<BigUint>>;

/// Counting context for one field and subgroup.
///
/// Caches are insert-once: concurrent callers may compute the same entry,
/// the results are identical and whichever lands first is kept.
pub struct SubsetCounter<'f> {
    field: &'f FiniteField,
    sub: SubgroupSpec,
    budget: Budget,
    profiles: RwLock<HashMap<Vec<u32>, Arc<ValueDistribution>>>,
    sieved: RwLock<HashMap<(usize, Target), Distribution>>,
    brute: RwLock<HashMap<(usize, Target), Distribution>>,
}

fn cached<K: std::hash::Hash + Eq + Clone, V: Clone>(
    map: &RwLock<HashMap<K, V>>,
    key: &K,
) -> Option<V> {
    map.read().expect("cache lock poisoned").get(key).cloned()
}

fn insert_once<K: std::hash::Hash + Eq, V: Clone>(map: &RwLock<HashMap<K, V>>, key: K, value: V) -> V {
    map.write()
        .expect("cache lock poisoned")
        .entry(key)
        .or_insert(value)
        .clone()
}

// The chain predecessor: one fewer variable in the last nonempty coset.
fn predecessor(n: &[u32]) -> Option<(Vec<u32>, usize)> {
    let j = n.iter().rposition(|&c| c > 0)?;
    let mut prev = n.to_vec();
    prev[j] -= 1;
    Some((prev, j))
}

impl<'f> SubsetCounter<'f> {
    pub fn new(field: &'f FiniteField, m: u32, budget: Budget) -> Result<Self> {
        let sub = SubgroupSpec::new(field, m)?;
        Ok(Self::with_subgroup(field, sub, budget))
    }

    pub fn with_subgroup(field: &'f FiniteField, sub: SubgroupSpec, budget: Budget) -> Self {
        SubsetCounter {
            field,
            sub,
            budget,
            profiles: RwLock::default(),
            sieved: RwLock::default(),
            brute: RwLock::default(),
        }
    }

    pub fn field(&self) -> &'f FiniteField {
        self.field
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        &self.sub
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn max_k(&self, target: Target) -> usize {
        match target {
            Target::SubsetSum | Target::OrderedSubset => self.sub.subgroup_size() as usize,
            Target::DiagonalDistinct => self.field.order() as usize,
        }
    }

    fn check_k(&self, k: usize, target: Target) -> Result<()> {
        let max = self.max_k(target);
        if k > max {
            Err(Error::KOutOfRange { k, max })
        } else {
            Ok(())
        }
    }

    fn check_element(&self, b: FieldElement) -> Result<()> {
        self.field.element(b.encoding() as u64).map(|_| ())
    }

    /// Distribution of the sum of `n[j]` independent variables drawn from
    /// coset j, for every j.
    pub fn profile_distribution(&self, n: &[u32]) -> Result<Arc<ValueDistribution>> {
        if n.len() != self.sub.m() as usize {
            return Err(Error::Precondition(format!(
                "profile has {} cosets, subgroup has {}",
                n.len(),
                self.sub.m()
            )));
        }
        Ok(self.profile_distribution_unchecked(n))
    }

    fn profile_distribution_unchecked(&self, n: &[u32]) -> Arc<ValueDistribution> {
        let key = n.to_vec();
        if let Some(d) = cached(&self.profiles, &key) {
            return d;
        }
        let dist = match predecessor(n) {
            None => ValueDistribution::empty_sum(self.field.q()),
            Some((prev, j)) => self
                .profile_distribution_unchecked(&prev)
                .add_uniform(self.field, self.sub.coset(j as u32)),
        };
        insert_once(&self.profiles, key, Arc::new(dist))
    }

    /// Number of solutions of the weighted equation described by `profile`
    /// with sum `b`, with variables in H or in F_q^*.
    pub fn profile_count(&self, profile: &WeightProfile, b: FieldElement, domain: Domain) -> Result<BigUint> {
        self.check_element(b)?;
        let dist = self.profile_distribution(&profile.per_coset)?;
        let h = BigUint::from(self.sub.subgroup_size());
        let base = h.pow(profile.free) * dist.get(b);
        Ok(match domain {
            Domain::Subgroup => base,
            Domain::FullStar => base * BigUint::from(self.sub.m()).pow(profile.variables()),
        })
    }

    /// Counts for every b at once, indexed by the encoding of b.
    pub fn sieve_distribution(&self, k: usize, target: Target) -> Result<Distribution> {
        self.check_k(k, target)?;
        if let Some(d) = cached(&self.sieved, &(k, target)) {
            return Ok(d);
        }
        let mut targets = vec![Target::DiagonalDistinct];
        if k <= self.sub.subgroup_size() as usize {
            targets.push(Target::OrderedSubset);
        }
        let computed = self.run_sieve(k, &targets)?;
        for (t, dist) in targets.iter().zip(computed) {
            insert_once(&self.sieved, (k, *t), Arc::new(dist));
        }
        if k <= self.sub.subgroup_size() as usize {
            let ordered = cached(&self.sieved, &(k, Target::OrderedSubset)).expect("just inserted");
            let fact = factorial(k as u64);
            let subsets = ordered
                .iter()
                .map(|v| {
                    let (quot, rem) = v.div_rem(&fact);
                    if rem.is_zero() {
                        Ok(quot)
                    } else {
                        Err(Error::NotDivisible {
                            k,
                            value: v.to_string(),
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            insert_once(&self.sieved, (k, Target::SubsetSum), Arc::new(subsets));
        }
        Ok(cached(&self.sieved, &(k, target)).expect("just inserted"))
    }

    // Returns one distribution per requested target; SubsetSum is derived
    // by the caller and must not be requested here.
    fn run_sieve(&self, k: usize, targets: &[Target]) -> Result<Vec<Vec<BigUint>>> {
        let q = self.field.q() as usize;
        let m = self.sub.m() as usize;
        let parts = partition_numbers(k).pop().expect("p(k)");
        Budget::check(
            "cycle type enumeration",
            parts.to_f64().unwrap_or(f64::INFINITY),
            self.budget.partitions,
        )?;

        // Signed multiplicity of every coset profile, per target.
        let h = BigUint::from(self.sub.subgroup_size());
        let star = BigUint::from(self.field.order());
        let mut coefs: HashMap<Vec<u32>, Vec<BigInt>> = HashMap::new();
        for t in partitions(k) {
            let prof = profile_of(&t, self.field, &self.sub);
            let signed = BigInt::from_biguint(
                if t.sign() > 0 { Sign::Plus } else { Sign::Minus },
                cycle_type_count(&t),
            );
            let entry = coefs
                .entry(prof.per_coset.clone())
                .or_insert_with(|| vec![BigInt::zero(); targets.len()]);
            for (slot, target) in entry.iter_mut().zip(targets) {
                let mult = match target {
                    Target::OrderedSubset => h.pow(prof.free),
                    Target::DiagonalDistinct => {
                        star.pow(prof.free) * BigUint::from(self.sub.m()).pow(prof.variables() - prof.free)
                    }
                    Target::SubsetSum => unreachable!("derived from OrderedSubset"),
                };
                *slot += &signed * BigInt::from(mult);
            }
        }
        coefs.retain(|_, c| c.iter().any(|x| !x.is_zero()));

        // Every chain prefix of a needed profile is a node of the search tree.
        let mut nodes: HashSet<Vec<u32>> = HashSet::new();
        for key in coefs.keys() {
            let mut cur = key.clone();
            while nodes.insert(cur.clone()) {
                match predecessor(&cur) {
                    Some((prev, _)) => cur = prev,
                    None => break,
                }
            }
        }
        let steps = nodes.len().saturating_sub(1) as f64;
        Budget::check(
            "sieve convolution",
            steps * q as f64 * self.sub.subgroup_size() as f64,
            self.budget.convolution,
        )?;

        let mut totals = vec![vec![BigInt::zero(); q]; targets.len()];
        let root = vec![0u32; m];
        let mut stack = vec![(root, ValueDistribution::empty_sum(q as u32))];
        while let Some((n, dist)) = stack.pop() {
            if let Some(c) = coefs.get(&n) {
                for (total, coef) in totals.iter_mut().zip(c) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (acc, v) in total.iter_mut().zip(dist.counts()) {
                        if !v.is_zero() {
                            *acc += coef * BigInt::from(v.clone());
                        }
                    }
                }
            }
            let first = n.iter().rposition(|&c| c > 0).unwrap_or(0);
            for j in first..m {
                let mut child = n.clone();
                child[j] += 1;
                if nodes.contains(&child) {
                    let next = dist.add_uniform(self.field, self.sub.coset(j as u32));
                    stack.push((child, next));
                }
            }
        }

        totals
            .into_iter()
            .map(|total| {
                total
                    .into_iter()
                    .map(|v| {
                        v.to_biguint()
                            .ok_or_else(|| Error::Internal(format!("sieve produced negative count {v}")))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn sieve_count(&self, k: usize, b: FieldElement, target: Target) -> Result<CountResult> {
        self.check_element(b)?;
        let dist = self.sieve_distribution(k, target)?;
        Ok(self.result(dist[b.index()].clone(), Method::Sieve, target, k, b))
    }

    /// Exhaustive enumeration, independent of the sieve. Ordered counts are
    /// k! times the number of qualifying k-subsets.
    pub fn brute_distribution(&self, k: usize, target: Target) -> Result<Distribution> {
        self.check_k(k, target)?;
        if let Some(d) = cached(&self.brute, &(k, target)) {
            return Ok(d);
        }
        let field = self.field;
        let values: Vec<u32> = match target {
            Target::SubsetSum | Target::OrderedSubset => {
                self.sub.elements().iter().map(|x| x.encoding()).collect()
            }
            Target::DiagonalDistinct => field
                .nonzero_elements()
                .map(|x| field.pow(x, self.sub.m() as u64).encoding())
                .collect(),
        };
        let subsets = binomial(values.len() as u64, k as u64);
        Budget::check(
            "brute-force enumeration",
            subsets.to_f64().unwrap_or(f64::INFINITY),
            self.budget.brute_force,
        )?;
        let mut counts = vec![0u64; field.q() as usize];
        enumerate_subsets(field, &values, k, 0, 0, &mut counts);
        let scale = match target {
            Target::SubsetSum => BigUint::one(),
            _ => factorial(k as u64),
        };
        let dist: Vec<BigUint> = counts.into_iter().map(|c| &scale * c).collect();
        Ok(insert_once(&self.brute, (k, target), Arc::new(dist)))
    }

    pub fn brute_force_count(&self, k: usize, b: FieldElement, target: Target) -> Result<CountResult> {
        self.check_element(b)?;
        let dist = self.brute_distribution(k, target)?;
        Ok(self.result(dist[b.index()].clone(), Method::Brute, target, k, b))
    }

    fn result(&self, value: BigUint, method: Method, target: Target, k: usize, b: FieldElement) -> CountResult {
        CountResult {
            value,
            method,
            target,
            q: self.field.q(),
            m: self.sub.m(),
            k,
            b: b.encoding(),
        }
    }

    /// Number of k-subsets (or ordered k-tuples) the target ranges over, so
    /// that the counts over all b sum to it.
    pub fn total_count(&self, k: usize, target: Target) -> BigUint {
        let h = self.sub.subgroup_size() as u64;
        match target {
            Target::SubsetSum => binomial(h, k as u64),
            Target::OrderedSubset => binomial(h, k as u64) * factorial(k as u64),
            Target::DiagonalDistinct => binomial(self.field.order() as u64, k as u64) * factorial(k as u64),
        }
    }

    /// sum_{a in F_q^*} a^m.
    pub fn power_sum(&self) -> FieldElement {
        self.field
            .nonzero_elements()
            .fold(FieldElement::ZERO, |acc, x| self.field.add(acc, self.field.pow(x, self.sub.m() as u64)))
    }
}

fn enumerate_subsets(field: &FiniteField, values: &[u32], k: usize, start: usize, sum: u32, counts: &mut [u64]) {
    if k == 0 {
        counts[sum as usize] += 1;
        return;
    }
    for i in start..=values.len() - k {
        enumerate_subsets(field, values, k - 1, i + 1, field.add_enc(sum, values[i]), counts);
    }
}

pub fn profile_count(
    field: &FiniteField,
    sub: &SubgroupSpec,
    profile: &WeightProfile,
    b: FieldElement,
    domain: Domain,
) -> Result<BigUint> {
    SubsetCounter::with_subgroup(field, sub.clone(), Budget::default()).profile_count(profile, b, domain)
}

pub fn sieve_count(
    field: &FiniteField,
    sub: &SubgroupSpec,
    k: usize,
    b: FieldElement,
    target: Target,
) -> Result<CountResult> {
    SubsetCounter::with_subgroup(field, sub.clone(), Budget::default()).sieve_count(k, b, target)
}

pub fn brute_force_count(
    field: &FiniteField,
    sub: &SubgroupSpec,
    k: usize,
    b: FieldElement,
    target: Target,
) -> Result<CountResult> {
    SubsetCounter::with_subgroup(field, sub.clone(), Budget::default()).brute_force_count(k, b, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, subgroup};

    fn el(f: &FiniteField, x: u64) -> FieldElement {
        f.element(x).unwrap()
    }

    fn diag(f: &FiniteField, a: &[u64], d: &[u32], b: u64) -> DiagonalSpec {
        DiagonalSpec {
            coefficients: a.iter().map(|&x| el(f, x)).collect(),
            exponents: d.to_vec(),
            target: el(f, b),
            zero_excluded: true,
        }
    }

    #[test]
    fn diagonal_examples() {
        let f = make_field(7, 1).unwrap();
        let b = Budget::default();
        assert_eq!(diagonal_count(&f, &diag(&f, &[1], &[2], 2), &b).unwrap(), 2u32.into());
        assert_eq!(diagonal_count(&f, &diag(&f, &[1, 1], &[2, 2], 3), &b).unwrap(), 8u32.into());
        assert_eq!(diagonal_count(&f, &diag(&f, &[1, 1], &[2, 2], 0), &b).unwrap(), 0u32.into());
        assert!(diagonal_count(&f, &diag(&f, &[0], &[2], 0), &b).is_err());
    }

    #[test]
    fn diagonal_with_zero_allowed() {
        let f = make_field(7, 1).unwrap();
        let mut spec = diag(&f, &[1], &[2], 0);
        spec.zero_excluded = false;
        assert_eq!(diagonal_count(&f, &spec, &Budget::default()).unwrap(), 1u32.into());
    }

    #[test]
    fn profile_examples() {
        let f7 = make_field(7, 1).unwrap();
        let s2 = subgroup(&f7, 2).unwrap();
        let t = PartitionType::new(vec![1, 1, 0]).unwrap();
        assert_eq!(profile_of(&t, &f7, &s2), WeightProfile { free: 0, per_coset: vec![2, 0] });
        let t = PartitionType::new(vec![0, 0, 1]).unwrap();
        assert_eq!(profile_of(&t, &f7, &s2), WeightProfile { free: 0, per_coset: vec![0, 1] });

        let f9 = make_field(3, 2).unwrap();
        let s = subgroup(&f9, 2).unwrap();
        assert_eq!(profile_of(&t, &f9, &s), WeightProfile { free: 1, per_coset: vec![0, 0] });
    }

    #[test]
    fn profile_count_examples() {
        let f = make_field(7, 1).unwrap();
        let s = subgroup(&f, 2).unwrap();
        let one = WeightProfile { free: 0, per_coset: vec![1, 0] };
        assert_eq!(profile_count(&f, &s, &one, el(&f, 2), Domain::Subgroup).unwrap(), 1u32.into());
        let free = WeightProfile { free: 1, per_coset: vec![0, 0] };
        assert_eq!(profile_count(&f, &s, &free, el(&f, 0), Domain::Subgroup).unwrap(), 3u32.into());
        assert_eq!(profile_count(&f, &s, &free, el(&f, 5), Domain::Subgroup).unwrap(), 0u32.into());
        // Ordered pairs from H = {1, 2, 4} summing to 3: (1, 2) and (2, 1).
        let pair = WeightProfile { free: 0, per_coset: vec![2, 0] };
        assert_eq!(profile_count(&f, &s, &pair, el(&f, 3), Domain::Subgroup).unwrap(), 2u32.into());
        assert_eq!(profile_count(&f, &s, &pair, el(&f, 3), Domain::FullStar).unwrap(), 8u32.into());
        let bad = WeightProfile { free: 0, per_coset: vec![1] };
        assert!(profile_count(&f, &s, &bad, el(&f, 3), Domain::Subgroup).is_err());
    }

    #[test]
    fn sieve_examples() {
        let f = make_field(7, 1).unwrap();
        let s = subgroup(&f, 2).unwrap();
        let m = |k, b| sieve_count(&f, &s, k, el(&f, b), Target::SubsetSum).unwrap().value;
        assert_eq!(m(2, 3), 1u32.into());
        assert_eq!(m(3, 0), 1u32.into());
        for b in 1..7 {
            assert_eq!(m(3, b), 0u32.into());
        }
        let n = sieve_count(&f, &s, 2, el(&f, 3), Target::DiagonalDistinct).unwrap();
        assert_eq!(n.value, 8u32.into());
        assert_eq!(n.method, Method::Sieve);
        assert!(matches!(
            sieve_count(&f, &s, 4, el(&f, 3), Target::SubsetSum),
            Err(Error::KOutOfRange { k: 4, max: 3 })
        ));
    }

    #[test]
    fn brute_examples() {
        let f = make_field(7, 1).unwrap();
        let s = subgroup(&f, 2).unwrap();
        let m = |k, b| brute_force_count(&f, &s, k, el(&f, b), Target::SubsetSum).unwrap().value;
        assert_eq!(m(2, 5), 1u32.into());
        assert_eq!(m(2, 1), 0u32.into());
        let all = subgroup(&f, 1).unwrap();
        let r = brute_force_count(&f, &all, 0, el(&f, 0), Target::SubsetSum).unwrap();
        assert_eq!(r.value, 1u32.into());
    }

    #[test]
    fn brute_budget() {
        let f = make_field(31, 1).unwrap();
        let tiny = Budget { brute_force: 100, ..Budget::default() };
        let c = SubsetCounter::new(&f, 1, tiny).unwrap();
        assert!(matches!(
            c.brute_force_count(5, FieldElement::ZERO, Target::SubsetSum),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sieve_budget() {
        let f = make_field(31, 1).unwrap();
        let tiny = Budget { convolution: 10, ..Budget::default() };
        let c = SubsetCounter::new(&f, 1, tiny).unwrap();
        assert!(matches!(
            c.sieve_count(5, FieldElement::ZERO, Target::SubsetSum),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("X".parse::<Target>().is_err());
    }
}
