//! Parameter sweeps behind the verification suites.
//!
//! A sweep expands a [`SweepConfig`] into independent work items, one per
//! field (identities) or per (q, m) pair (counting suites), runs them on a
//! bounded rayon pool and merges the partial results in item order, so the
//! output does not depend on the number of workers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, BoundKind, PositivityTarget};
use crate::budget::Budget;
use crate::charsums::{self, SumCache};
use crate::combinat::{
    check_binomial_convolution_bound, check_periodic_cycle_bound, cycle_gen_func, cycle_type_count, factorial,
    falling_factorial_int, partition_numbers, partitions, periodic_arguments, periodic_closed_form,
};
use crate::counting::{SubsetCounter, Target};
use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};

/// Default q range of the counting suites.
pub const COUNTING_Q: (u64, u64) = (5, 27);
/// Default q range of the Jacobi-sum identities, and of the character
/// multiplicativity and orthogonality checks.
pub const IDENTITY_Q: (u64, u64) = (2, 49);
/// Default q range of the Gauss-sum magnitude check.
pub const GAUSS_Q: (u64, u64) = (2, 343);
/// Default q range of the power-count relation.
pub const POWER_COUNT_Q: (u64, u64) = (2, 121);
/// Extra structural instances run when q is left at its default: (q, indices, k_max).
pub const STRUCTURE_EXTRA: (u64, [u32; 3], usize) = (121, [2, 3, 5], 10);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Bounds,
    Oracle,
    Combinat,
    Structure,
}

impl Suite {
    /// Every suite, in the order `all` runs them.
    pub const ALL: [Suite; 5] = [
        Suite::Identities,
        Suite::Bounds,
        Suite::Oracle,
        Suite::Combinat,
        Suite::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Bounds => "bounds",
            Suite::Oracle => "oracle",
            Suite::Combinat => "combinat",
            Suite::Structure => "structure",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSelect {
    List(Vec<u64>),
    /// Every prime power in the inclusive range; a missing end takes the
    /// suite's default.
    Range { min: Option<u64>, max: Option<u64> },
}

impl QSelect {
    fn is_default(&self) -> bool {
        *self == QSelect::Range { min: None, max: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MSelect {
    /// Every divisor of q - 1.
    All,
    List(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KSelect {
    /// 0 <= k <= min(k_max, largest admissible k).
    UpTo(usize),
    /// Explicit values; those out of range for a given subgroup are dropped.
    List(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BSelect {
    All,
    List(Vec<u32>),
    /// b = 0 and n - 1 distinct nonzero encodings drawn with a seeded RNG.
    Sample { n: usize, seed: u64 },
}

impl FromStr for BSelect {
    type Err = Error;

    /// `all`, `sample:n:seed=s`, or a comma separated list of encodings.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("bad b selector {s:?}"));
        if s == "all" {
            return Ok(BSelect::All);
        }
        if let Some(rest) = s.strip_prefix("sample:") {
            let (n, seed) = rest.split_once(':').ok_or_else(bad)?;
            let seed = seed.strip_prefix("seed=").ok_or_else(bad)?;
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(BSelect::Sample {
                n,
                seed: seed.parse().map_err(|_| bad())?,
            });
        }
        s.split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()
            .map(BSelect::List)
    }
}

impl BSelect {
    /// Selected encodings in ascending order.
    pub fn values(&self, q: u32) -> Result<Vec<u32>> {
        match self {
            BSelect::All => Ok((0..q).collect()),
            BSelect::List(v) => {
                if let Some(&b) = v.iter().find(|&&b| b >= q) {
                    return Err(Error::InvalidElement { value: b as u64, q });
                }
                let mut v = v.clone();
                v.sort_unstable();
                v.dedup();
                Ok(v)
            }
            BSelect::Sample { n, seed } => {
                if *n >= q as usize {
                    return Ok((0..q).collect());
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut v: Vec<u32> = rand::seq::index::sample(&mut rng, q as usize - 1, n - 1)
                    .into_iter()
                    .map(|i| i as u32 + 1)
                    .collect();
                v.push(0);
                v.sort_unstable();
                Ok(v)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Sieve,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub q: QSelect,
    pub m: MSelect,
    pub k: KSelect,
    pub b: BSelect,
    /// Cross-checks the bounds suite against brute force unless `Sieve`.
    pub method: MethodChoice,
    pub format: OutputFormat,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub budget: Budget,
    /// Largest character-tuple arity in the identity suite.
    pub n_max: usize,
    /// Largest order bound d in the identity suite.
    pub d_max: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q: QSelect::Range { min: None, max: None },
            m: MSelect::All,
            k: KSelect::UpTo(6),
            b: BSelect::All,
            method: MethodChoice::Sieve,
            format: OutputFormat::Json,
            jobs: 0,
            budget: Budget::default(),
            n_max: 3,
            d_max: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub instances: u64,
    pub failures: u64,
    /// Instances left out because they exceed the budget.
    pub skipped: u64,
    pub max_deviation: f64,
}

/// One failing instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub suite: Suite,
    pub check: &'static str,
    pub q: Option<u64>,
    pub m: Option<u32>,
    pub k: Option<usize>,
    pub b: Option<u32>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub summary: SuiteSummary,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.summary.failures == 0
    }
}

#[derive(Debug, Default)]
struct Partial {
    instances: u64,
    skipped: u64,
    max_deviation: f64,
    failures: Vec<Failure>,
}

impl Partial {
    fn absorb(&mut self, other: Partial) {
        self.instances += other.instances;
        self.skipped += other.skipped;
        self.max_deviation = self.max_deviation.max(other.max_deviation);
        self.failures.extend(other.failures);
    }

    fn deviation(&mut self, d: f64) {
        if d > self.max_deviation || d.is_nan() {
            self.max_deviation = d;
        }
    }
}

// Identifies the instance a failure belongs to.
#[derive(Clone, Copy)]
struct At {
    suite: Suite,
    q: Option<u64>,
    m: Option<u32>,
    k: Option<usize>,
    b: Option<u32>,
}

impl At {
    fn new(suite: Suite) -> Self {
        At { suite, q: None, m: None, k: None, b: None }
    }

    fn q(self, q: u64) -> Self {
        At { q: Some(q), ..self }
    }

    fn m(self, m: u32) -> Self {
        At { m: Some(m), ..self }
    }

    fn k(self, k: usize) -> Self {
        At { k: Some(k), ..self }
    }

    fn b(self, b: u32) -> Self {
        At { b: Some(b), ..self }
    }

    fn fail(self, check: &'static str, detail: String) -> Failure {
        Failure {
            suite: self.suite,
            check,
            q: self.q,
            m: self.m,
            k: self.k,
            b: self.b,
            detail,
        }
    }
}

impl Partial {
    /// Records one instance with the given deviation and pass flag.
    fn check(&mut self, at: At, name: &'static str, ok: bool, dev: f64, detail: impl FnOnce() -> String) {
        self.instances += 1;
        self.deviation(dev);
        if !ok {
            self.failures.push(at.fail(name, detail()));
        }
    }
}

fn q_values(sel: &QSelect, default: (u64, u64)) -> Result<Vec<u64>> {
    match sel {
        QSelect::List(v) => {
            for &q in v {
                if prime_power(q).is_none() {
                    return Err(Error::NotPrimePower(q));
                }
            }
            Ok(v.clone())
        }
        QSelect::Range { min, max } => {
            let (min, max) = (min.unwrap_or(default.0).max(2), max.unwrap_or(default.1));
            Ok((min..=max).filter(|&q| prime_power(q).is_some()).collect())
        }
    }
}

fn divisors(n: u64) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).map(|d| d as u32).collect()
}

fn m_values(sel: &MSelect, q: u64, strict: bool) -> Result<Vec<u32>> {
    match sel {
        MSelect::All => Ok(divisors(q - 1)),
        MSelect::List(v) => {
            let mut out = Vec::new();
            for &m in v {
                if m != 0 && (q - 1) % m as u64 == 0 {
                    out.push(m);
                } else if strict {
                    return Err(Error::IndexDoesNotDivide { m, order: (q - 1) as u32 });
                }
            }
            Ok(out)
        }
    }
}

fn k_values(sel: &KSelect, cap: usize) -> Vec<usize> {
    match sel {
        KSelect::UpTo(k_max) => (0..=cap.min(*k_max)).collect(),
        KSelect::List(v) => {
            let mut v: Vec<usize> = v.iter().copied().filter(|&k| k <= cap).collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    }
}

fn field_of(q: u64, budget: &Budget) -> Result<FiniteField> {
    FiniteField::of_order(q, budget.field_size)
}

fn run_items<T: Sync>(cfg: &SweepConfig, items: &[T], f: impl Fn(&T) -> Result<Partial> + Sync) -> Result<Partial> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let parts: Vec<Result<Partial>> = pool.install(|| items.par_iter().map(&f).collect());
    let mut total = Partial::default();
    for p in parts {
        total.absorb(p?);
    }
    Ok(total)
}

/// Runs one suite over the configured sweep.
pub fn run_suite(suite: Suite, cfg: &SweepConfig) -> Result<SuiteOutcome> {
    let partial = match suite {
        Suite::Identities => identities(cfg)?,
        Suite::Bounds => counting_suite(cfg, Suite::Bounds, bounds_item)?,
        Suite::Oracle => counting_suite(cfg, Suite::Oracle, oracle_item)?,
        Suite::Combinat => combinat(cfg)?,
        Suite::Structure => counting_suite(cfg, Suite::Structure, structure_item)?,
    };
    Ok(SuiteOutcome {
        summary: SuiteSummary {
            suite,
            instances: partial.instances,
            failures: partial.failures.len() as u64,
            skipped: partial.skipped,
            max_deviation: partial.max_deviation,
        },
        failures: partial.failures,
    })
}

/// (q, m, k selector) work items of the counting suites.
fn counting_items(cfg: &SweepConfig, suite: Suite) -> Result<Vec<(u64, u32, KSelect)>> {
    let qs = q_values(&cfg.q, COUNTING_Q)?;
    let strict = matches!(cfg.q, QSelect::List(_));
    let mut items = Vec::new();
    for q in qs {
        for m in m_values(&cfg.m, q, strict)? {
            items.push((q, m, cfg.k.clone()));
        }
    }
    if suite == Suite::Structure && cfg.q.is_default() {
        let (q, ms, k_max) = STRUCTURE_EXTRA;
        for m in ms {
            items.push((q, m, KSelect::UpTo(k_max)));
        }
    }
    Ok(items)
}

type ItemFn = fn(&SweepConfig, &SubsetCounter<'_>, &[usize]) -> Result<Partial>;

fn counting_suite(cfg: &SweepConfig, suite: Suite, item: ItemFn) -> Result<Partial> {
    let items = counting_items(cfg, suite)?;
    run_items(cfg, &items, |(q, m, ks)| {
        let field = field_of(*q, &cfg.budget)?;
        let counter = SubsetCounter::new(&field, *m, cfg.budget)?;
        let ks = k_values(ks, counter.subgroup().subgroup_size() as usize);
        item(cfg, &counter, &ks)
    })
}

fn abs_diff(a: &BigUint, b: &BigUint) -> f64 {
    let d = if a > b { a - b } else { b - a };
    d.to_f64().unwrap_or(f64::INFINITY)
}

fn oracle_item(cfg: &SweepConfig, counter: &SubsetCounter<'_>, ks: &[usize]) -> Result<Partial> {
    let field = counter.field();
    let at = At::new(Suite::Oracle).q(field.q() as u64).m(counter.subgroup().m());
    let bs = cfg.b.values(field.q())?;
    let mut out = Partial::default();
    for &k in ks {
        for target in Target::ALL {
            let sieve = counter.sieve_distribution(k, target)?;
            let brute = counter.brute_distribution(k, target)?;
            for &b in &bs {
                let (s, t) = (&sieve[b as usize], &brute[b as usize]);
                out.check(at.k(k).b(b), target.name(), s == t, abs_diff(s, t), || {
                    format!("sieve {s} != brute {t}")
                });
            }
        }
    }
    Ok(out)
}

fn bounds_item(cfg: &SweepConfig, counter: &SubsetCounter<'_>, ks: &[usize]) -> Result<Partial> {
    let field = counter.field();
    let (q, p, m) = (field.q() as u64, field.p() as u64, counter.subgroup().m());
    let at = At::new(Suite::Bounds).q(q).m(m);
    let bs = cfg.b.values(field.q())?;
    let mut out = Partial::default();
    for &k in ks {
        let mut kinds = vec![BoundKind::OrderedSubset, BoundKind::Diagonal];
        if k >= 1 {
            kinds.insert(0, BoundKind::SubsetSum);
        }
        for &b in &bs {
            let e = field.element(b as u64)?;
            let mut kinds_here = kinds.clone();
            if k >= 1 && b == 0 {
                kinds_here.push(BoundKind::SubsetSumShifted);
            }
            for kind in kinds_here {
                let r = bounds::check_bounds(counter, k, e, kind)?;
                let name = match kind {
                    BoundKind::SubsetSum => "bound_subset_sum",
                    BoundKind::SubsetSumShifted => "bound_subset_sum_shifted",
                    BoundKind::OrderedSubset => "bound_ordered_subset",
                    BoundKind::Diagonal => "bound_diagonal",
                };
                out.check(at.k(k).b(b), name, r.holds, (r.lhs - r.rhs).max(0.0), || {
                    format!("|{} - {}| = {} > {}", r.exact, r.main_term, r.lhs, r.rhs)
                });
            }
            if cfg.method != MethodChoice::Sieve {
                for target in [Target::SubsetSum, Target::DiagonalDistinct] {
                    let s = counter.sieve_count(k, e, target)?.value;
                    let t = counter.brute_force_count(k, e, target)?.value;
                    out.check(at.k(k).b(b), "method_agreement", s == t, abs_diff(&s, &t), || {
                        format!("{target}: sieve {s} != brute {t}")
                    });
                }
            }
        }
        if p == 2 || k == 0 {
            continue;
        }
        for (pt, target) in [
            (PositivityTarget::Subset, Target::SubsetSum),
            (PositivityTarget::Diagonal, Target::DiagonalDistinct),
        ] {
            let report = bounds::positivity_sufficient(q, p, m as u64, k as u64, pt)?;
            if !report.guaranteed {
                continue;
            }
            let dist = counter.sieve_distribution(k, target)?;
            for &b in &bs {
                let v = &dist[b as usize];
                out.check(at.k(k).b(b), "positivity", !v.is_zero(), 0.0, || {
                    format!("{target} count is zero although positivity is guaranteed")
                });
            }
        }
    }
    Ok(out)
}

fn skip_on_budget<T>(r: Result<T>, out: &mut Partial) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => {
            out.skipped += 1;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn structure_item(cfg: &SweepConfig, counter: &SubsetCounter<'_>, ks: &[usize]) -> Result<Partial> {
    let field = counter.field();
    let sub = counter.subgroup();
    let (q, m, h) = (field.q(), sub.m(), sub.subgroup_size() as usize);
    let at = At::new(Suite::Structure).q(q as u64).m(m);
    let bs = cfg.b.values(q)?;
    let sigma_h = sub.element_sum(field);
    let sigma_star = counter.power_sum();
    let star = field.order() as usize;
    let mut out = Partial::default();
    for &k in ks {
        let at = at.k(k);
        let subsets = match counter.sieve_distribution(k, Target::SubsetSum) {
            Err(e @ Error::NotDivisible { .. }) => {
                out.check(at, "factorial_divisibility", false, 0.0, || e.to_string());
                continue;
            }
            r => r?,
        };
        let ordered = counter.sieve_distribution(k, Target::OrderedSubset)?;
        let fact = factorial(k as u64);
        let ok = subsets.iter().zip(ordered.iter()).all(|(s, o)| &(s * &fact) == o);
        out.check(at, "factorial_divisibility", ok, 0.0, || "N_H != k! M_H".into());

        let sum: BigUint = subsets.iter().sum();
        let expect = crate::combinat::binomial(h as u64, k as u64);
        out.check(at, "row_sum", sum == expect, abs_diff(&sum, &expect), || {
            format!("sum over b is {sum}, expected {expect}")
        });

        let diag = counter.sieve_distribution(k, Target::DiagonalDistinct)?;
        let sum: BigUint = diag.iter().sum();
        let expect = crate::combinat::binomial(star as u64, k as u64) * &fact;
        out.check(at, "row_sum_diagonal", sum == expect, abs_diff(&sum, &expect), || {
            format!("sum over b is {sum}, expected {expect}")
        });

        if let Some(mirror) = skip_on_budget(counter.sieve_distribution(h - k, Target::SubsetSum), &mut out)? {
            for &b in &bs {
                let e = field.element(b as u64)?;
                let other = field.sub(sigma_h, e);
                let (l, r) = (&subsets[b as usize], &mirror[other.index()]);
                out.check(at.b(b), "subset_symmetry", l == r, abs_diff(l, r), || {
                    format!("M(k, b) = {l}, M(|H| - k, sigma - b) = {r}")
                });
            }
        }

        let mirror = skip_on_budget(counter.sieve_distribution(star - k, Target::DiagonalDistinct), &mut out)?;
        if let Some(mirror) = mirror {
            let fact_mirror = factorial((star - k) as u64);
            for &b in &bs {
                let e = field.element(b as u64)?;
                let other = field.sub(sigma_star, e);
                let l = &diag[b as usize] * &fact_mirror;
                let r = &mirror[other.index()] * &fact;
                out.check(at.b(b), "diagonal_symmetry", l == r, abs_diff(&l, &r), || {
                    format!("N*(k, b) (q-1-k)! = {l}, N*(q-1-k, S - b) k! = {r}")
                });
            }
        }
    }
    Ok(out)
}

fn identities(cfg: &SweepConfig) -> Result<Partial> {
    let identity_qs = q_values(&cfg.q, IDENTITY_Q)?;
    let gauss_qs = q_values(&cfg.q, GAUSS_Q)?;
    let power_qs = q_values(&cfg.q, POWER_COUNT_Q)?;
    let mut qs: Vec<u64> = identity_qs.iter().chain(&gauss_qs).chain(&power_qs).copied().collect();
    qs.sort_unstable();
    qs.dedup();

    run_items(cfg, &qs, |&q| {
        let field = field_of(q, &cfg.budget)?;
        let at = At::new(Suite::Identities).q(q);
        let qf = q as f64;
        let mut out = Partial::default();
        let mut orders: Vec<u32> = (1..=cfg.d_max).map(|d| d.gcd(&field.order())).collect();
        orders.sort_unstable();
        orders.dedup();

        if identity_qs.contains(&q) {
            let mut cache = SumCache::new(&field, cfg.budget);
            for &d in &orders {
                for n in 1..=cfg.n_max {
                    let report = charsums::verify_with_cache(&mut cache, d, n)?;
                    for fam in &report.families {
                        out.instances += fam.checked;
                        out.deviation(fam.max_deviation);
                        if fam.failures > 0 {
                            out.failures.push(at.fail(
                                fam.family,
                                format!(
                                    "d={d} n={n}: {} of {} failed, max deviation {} (tolerance {})",
                                    fam.failures, fam.checked, fam.max_deviation, fam.tolerance
                                ),
                            ));
                        }
                    }
                }
            }
            let tol = 1e-9 * qf;
            let dev = charsums::multiplicativity_deviation(&field);
            out.check(at, "character_multiplicativity", dev < tol, dev, || format!("deviation {dev}"));
            let dev = charsums::orthogonality_deviation(&field);
            out.check(at, "character_orthogonality", dev < tol, dev, || format!("deviation {dev}"));
        }
        if power_qs.contains(&q) {
            for &d in &orders {
                let dev = charsums::power_count_deviation(&field, d);
                out.check(at, "power_count", dev < 1e-9 * qf, dev, || format!("d={d}: deviation {dev}"));
            }
        }
        if gauss_qs.contains(&q) {
            if let Some(dev) = charsums::gauss_magnitude_deviation(&field) {
                let tol = 1e-9 * qf.sqrt();
                out.check(at, "gauss_magnitude", dev < tol, dev, || format!("deviation {dev}"));
            }
        }
        Ok(out)
    })
}

/// Grid limits of the combinatorial checks.
const CYCLE_SUM_K: usize = 12;
const CONSTANT_ARGS: (usize, i64) = (12, 50);
const PERIODIC: (usize, u64, u64) = (10, 5, 30);
const CONVOLUTION_MAX: u64 = 12;
const PARTITION_COUNT_K: usize = 40;

fn exact(lhs: &BigInt, rhs: &BigInt) -> f64 {
    (lhs - rhs).abs().to_f64().unwrap_or(f64::INFINITY)
}

fn excess(lhs: &BigInt, rhs: &BigInt) -> f64 {
    if lhs > rhs {
        exact(lhs, rhs)
    } else {
        0.0
    }
}

fn combinat(cfg: &SweepConfig) -> Result<Partial> {
    #[derive(Clone, Copy)]
    enum Part {
        CycleSums,
        ConstantArgs,
        Periodic(usize),
        Convolution(u64),
        PartitionCounts,
    }
    let mut items = vec![Part::CycleSums, Part::ConstantArgs, Part::PartitionCounts];
    items.extend((1..=PERIODIC.0).map(Part::Periodic));
    items.extend((1..=CONVOLUTION_MAX).map(Part::Convolution));

    let at = At::new(Suite::Combinat);
    run_items(cfg, &items, |part| {
        let mut out = Partial::default();
        match *part {
            Part::CycleSums => {
                for k in 0..=CYCLE_SUM_K {
                    let total: BigUint = partitions(k).map(|t| cycle_type_count(&t)).sum();
                    let f = factorial(k as u64);
                    out.check(at.k(k), "cycle_type_total", total == f, abs_diff(&total, &f), || {
                        format!("sum of N(c) is {total}, expected {f}")
                    });
                }
            }
            Part::ConstantArgs => {
                let (k_max, q_max) = CONSTANT_ARGS;
                for k in 1..=k_max {
                    for q in 1..=q_max {
                        let lhs = cycle_gen_func(k, &vec![BigInt::from(q); k])?;
                        let rhs = falling_factorial_int(&BigInt::from(q + k as i64 - 1), k as u64);
                        out.check(at.q(q as u64).k(k), "constant_arguments", lhs == rhs, exact(&lhs, &rhs), || {
                            format!("C_k = {lhs}, (q+k-1)_k = {rhs}")
                        });
                    }
                }
            }
            Part::Periodic(k) => {
                let (_, d_max, q_max) = PERIODIC;
                for d in 1..=d_max {
                    for s in 1..=q_max {
                        for q in (s..=q_max).filter(|q| (q - s) % d == 0) {
                            let at = at.q(q).k(k);
                            let args = periodic_arguments(k, d, s as i64, q as i64);
                            let lhs = cycle_gen_func(k, &args)?;
                            let rhs = BigInt::from(periodic_closed_form(k, d, s, q)?);
                            out.check(at, "periodic_closed_form", lhs == rhs, exact(&lhs, &rhs), || {
                                format!("s={s} d={d}: C_k = {lhs}, closed form {rhs}")
                            });
                            let c = check_periodic_cycle_bound(s, d, k as u64, q)?;
                            out.check(at, "periodic_bound", c.holds, excess(&c.lhs, &c.rhs), || {
                                format!("s={s} d={d}: {} > {}", c.lhs, c.rhs)
                            });
                        }
                    }
                }
            }
            Part::Convolution(l) => {
                for n in 1..=CONVOLUTION_MAX {
                    for q in 1..=CONVOLUTION_MAX {
                        for m in 1..=CONVOLUTION_MAX {
                            let c = check_binomial_convolution_bound(l, n, q, m)?;
                            out.check(at.q(q), "binomial_convolution", c.holds, excess(&c.lhs, &c.rhs), || {
                                format!("(l, n, q, m) = ({l}, {n}, {q}, {m}): {} > {}", c.lhs, c.rhs)
                            });
                        }
                    }
                }
            }
            Part::PartitionCounts => {
                let expect = partition_numbers(PARTITION_COUNT_K);
                for (k, e) in expect.iter().enumerate() {
                    let n = BigUint::from(partitions(k).count());
                    out.check(at.k(k), "partition_count", &n == e, abs_diff(&n, e), || {
                        format!("enumerated {n}, expected {e}")
                    });
                }
            }
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_selectors_parse() {
        assert_eq!("all".parse::<BSelect>().unwrap(), BSelect::All);
        assert_eq!("0,3".parse::<BSelect>().unwrap(), BSelect::List(vec![0, 3]));
        assert_eq!(
            "sample:16:seed=1".parse::<BSelect>().unwrap(),
            BSelect::Sample { n: 16, seed: 1 }
        );
        assert!("sample:0:seed=1".parse::<BSelect>().is_err());
        assert!("sample:4".parse::<BSelect>().is_err());
        assert!("x".parse::<BSelect>().is_err());
    }

    #[test]
    fn samples_include_zero_and_are_reproducible() {
        let s = BSelect::Sample { n: 16, seed: 1 };
        let a = s.values(1009).unwrap();
        assert_eq!(a, s.values(1009).unwrap());
        assert_eq!(a.len(), 16);
        assert_eq!(a[0], 0);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(BSelect::Sample { n: 9, seed: 3 }.values(7).unwrap(), (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn q_ranges_keep_prime_powers() {
        let all = QSelect::Range { min: None, max: None };
        let qs = q_values(&all, COUNTING_Q).unwrap();
        assert_eq!(qs, vec![5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27]);
        let capped = QSelect::Range { min: None, max: Some(9) };
        assert_eq!(q_values(&capped, COUNTING_Q).unwrap(), vec![5, 7, 8, 9]);
        assert!(q_values(&QSelect::List(vec![12]), COUNTING_Q).is_err());
    }

    #[test]
    fn explicit_m_must_divide() {
        assert!(m_values(&MSelect::List(vec![4]), 7, true).is_err());
        assert_eq!(m_values(&MSelect::List(vec![4, 2]), 7, false).unwrap(), vec![2]);
        assert_eq!(m_values(&MSelect::All, 13, false).unwrap(), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn small_oracle_sweep_passes() {
        let cfg = SweepConfig {
            q: QSelect::List(vec![7, 9]),
            k: KSelect::UpTo(3),
            ..SweepConfig::default()
        };
        let out = run_suite(Suite::Oracle, &cfg).unwrap();
        assert!(out.passed(), "{:?}", out.failures);
        assert!(out.summary.instances > 0);
        assert_eq!(out.summary.max_deviation, 0.0);
    }
}
