//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde_json::Value;

use subgroupsums::bounds::{self, BoundKind, PositivityTarget};
use subgroupsums::charsums::{gauss_magnitude_deviation, verify_charsum_identities};
use subgroupsums::field::{prime_power, FiniteField};
use subgroupsums::sweep::{run_suite, BSelect, Suite, SweepConfig};
use subgroupsums::{Budget, SubsetCounter, Target};

/// Field sizes of the exhaustive grid.
const GRID_Q: [u64; 12] = [5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27];
const GRID_K_MAX: usize = 6;
/// Character-sum identities: tolerance factor on q^{n-1}.
const IDENTITY_TOL: f64 = 1e-9;
const IDENTITY_Q_MAX: u64 = 49;
const IDENTITY_D_MAX: u32 = 6;
const IDENTITY_N_MAX: usize = 3;
/// Gauss-sum magnitude: tolerance factor on sqrt(q).
const GAUSS_TOL: f64 = 1e-9;
const GAUSS_Q_MAX: u64 = 343;
const COMBINAT_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_LIMIT: Duration = Duration::from_secs(120);
const POSITIVITY: (u64, u32, usize) = (1009, 2, 43);
const POSITIVITY_SAMPLE: BSelect = BSelect::Sample { n: 16, seed: 1 };
const POSITIVITY_LIMIT: Duration = Duration::from_secs(300);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn field(q: u64) -> FiniteField {
    FiniteField::of_order(q, Budget::default().field_size).unwrap()
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Every (field, index) pair of the grid.
fn grid() -> Vec<(FiniteField, u32)> {
    GRID_Q
        .iter()
        .flat_map(|&q| {
            let f = field(q);
            divisors(f.order()).into_iter().map(move |m| (field(q), m))
        })
        .collect()
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let (mut checked, mut bad) = (0u64, Vec::new());
    for (f, m) in grid() {
        let c = SubsetCounter::new(&f, m, Budget::default()).unwrap();
        let h = c.subgroup().subgroup_size() as usize;
        for k in 0..=h.min(GRID_K_MAX) {
            for target in [Target::SubsetSum, Target::DiagonalDistinct] {
                let s = c.sieve_distribution(k, target).unwrap();
                let b = c.brute_distribution(k, target).unwrap();
                checked += s.len() as u64;
                if s != b {
                    bad.push(format!("q={} m={m} k={k} {target}", f.q()));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        bad.is_empty() && elapsed < ORACLE_LIMIT,
        format!("{checked} values, {} mismatches {:?}, {:.1}s", bad.len(), bad, elapsed.as_secs_f64()),
    )
}

fn bound_sweep(kinds: &[BoundKind], k_min: usize) -> (u64, u64, f64) {
    let (mut checked, mut violations, mut worst) = (0u64, 0u64, 0f64);
    for (f, m) in grid() {
        let c = SubsetCounter::new(&f, m, Budget::default()).unwrap();
        let h = c.subgroup().subgroup_size() as usize;
        for k in k_min..=h.min(GRID_K_MAX) {
            for b in f.elements() {
                for &kind in kinds {
                    if kind == BoundKind::SubsetSumShifted && !b.is_zero() {
                        continue;
                    }
                    let r = bounds::check_bounds(&c, k, b, kind).unwrap();
                    checked += 1;
                    violations += u64::from(!r.holds);
                    worst = worst.max(r.lhs / r.rhs);
                }
            }
        }
    }
    (checked, violations, worst)
}

fn subset_bound() -> Verdict {
    let (checked, violations, worst) = bound_sweep(&[BoundKind::SubsetSum], 1);
    let (s_checked, s_violations, _) = bound_sweep(&[BoundKind::SubsetSumShifted], 1);
    verdict(
        violations == 0,
        format!(
            "{checked} instances, {violations} violations, max lhs/rhs {worst:.4}; \
             shifted b=0 variant (reported only): {s_checked} instances, {s_violations} violations"
        ),
    )
}

fn diagonal_bound() -> Verdict {
    let (checked, violations, worst) = bound_sweep(&[BoundKind::Diagonal], 0);
    verdict(
        violations == 0,
        format!("{checked} instances, {violations} violations, max lhs/rhs {worst:.4}"),
    )
}

fn character_sums() -> Verdict {
    let budget = Budget::default();
    let (mut checked, mut failures, mut worst_scaled) = (0u64, 0u64, 0f64);
    for q in (2..=IDENTITY_Q_MAX).filter(|&q| prime_power(q).is_some()) {
        let f = field(q);
        for d in 1..=IDENTITY_D_MAX {
            for n in 1..=IDENTITY_N_MAX {
                let r = verify_charsum_identities(&f, d, n, &budget).unwrap();
                let scale = (q as f64).powi(n as i32 - 1);
                for fam in &r.families {
                    checked += fam.checked;
                    failures += fam.failures;
                    worst_scaled = worst_scaled.max(fam.max_deviation / scale);
                }
            }
        }
    }
    let mut gauss_worst = 0f64;
    let mut gauss_fail = 0;
    for q in (3..=GAUSS_Q_MAX).filter(|&q| prime_power(q).is_some()) {
        let dev = gauss_magnitude_deviation(&field(q)).unwrap();
        let scaled = dev / (q as f64).sqrt();
        gauss_worst = gauss_worst.max(scaled);
        gauss_fail += usize::from(!(scaled < GAUSS_TOL));
    }
    verdict(
        failures == 0 && worst_scaled < IDENTITY_TOL && gauss_fail == 0,
        format!(
            "{checked} identity checks, {failures} failures, max deviation / q^(n-1) = {worst_scaled:.2e}; \
             Gauss magnitude max deviation / sqrt(q) = {gauss_worst:.2e}"
        ),
    )
}

fn suite(s: Suite) -> (subgroupsums::sweep::SuiteOutcome, Duration) {
    let start = Instant::now();
    let out = run_suite(s, &SweepConfig::default()).unwrap();
    (out, start.elapsed())
}

fn combinatorics() -> Verdict {
    let (out, elapsed) = suite(Suite::Combinat);
    verdict(
        out.passed() && elapsed < COMBINAT_LIMIT,
        format!(
            "{} instances, {} failures, {:.1}s",
            out.summary.instances,
            out.summary.failures,
            elapsed.as_secs_f64()
        ),
    )
}

fn structure() -> Verdict {
    let (out, elapsed) = suite(Suite::Structure);
    // The literal ordered form N*(k, b) = N*(q-1-k, S - b) fails already for
    // q = 5, m = 1, k = 1, b = 1; the suite checks the form normalized by
    // the factorials. Confirm the literal form is indeed false there.
    let f = field(5);
    let c = SubsetCounter::new(&f, 1, Budget::default()).unwrap();
    let s = c.power_sum();
    let b = f.element(1).unwrap();
    let lhs = c.sieve_count(1, b, Target::DiagonalDistinct).unwrap().value;
    let rhs = c.sieve_count(3, f.sub(s, b), Target::DiagonalDistinct).unwrap().value;
    verdict(
        out.passed(),
        format!(
            "{} instances, {} failures, {} over budget (diagonal symmetry at q=121), {:.1}s; \
             literal diagonal symmetry at q=5,m=1,k=1,b=1: {lhs} vs {rhs}",
            out.summary.instances,
            out.summary.failures,
            out.summary.skipped,
            elapsed.as_secs_f64()
        ),
    )
}

fn positivity_at_scale() -> Verdict {
    let (q, m, k) = POSITIVITY;
    let start = Instant::now();
    let f = field(q);
    let c = SubsetCounter::new(&f, m, Budget::default()).unwrap();
    let bs = POSITIVITY_SAMPLE.values(f.q()).unwrap();
    let mut zero = Vec::new();
    for &b in &bs {
        let v = c.sieve_count(k, f.element(b as u64).unwrap(), Target::SubsetSum).unwrap().value;
        if v.is_zero() {
            zero.push(b);
        }
    }
    let elapsed = start.elapsed();
    let report = bounds::positivity_sufficient(q, f.p() as u64, m as u64, k as u64, PositivityTarget::Subset).unwrap();
    verdict(
        bs.len() == 16 && bs.contains(&0) && zero.is_empty() && report.guaranteed && elapsed < POSITIVITY_LIMIT,
        format!(
            "{} sampled b (b=0 included: {}), zero counts at {:?}, guaranteed {}, k > 6 ln q = {:.2}: {}, {:.1}s",
            bs.len(),
            bs.contains(&0),
            zero,
            report.guaranteed,
            report.threshold_6_ln_q,
            report.k_exceeds_6_ln_q,
            elapsed.as_secs_f64()
        ),
    )
}

fn verify_all_output() -> (Option<i32>, Vec<Value>) {
    let out = Command::new(env!("CARGO_BIN_EXE_subgroupsums"))
        .args(["verify", "--suite", "all"])
        .env_remove("SUBGROUPSUMS_BUDGET")
        .output()
        .expect("binary runs");
    let lines = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            if let Some(o) = v.as_object_mut() {
                o.remove("elapsed_ms");
            }
            v
        })
        .collect();
    (out.status.code(), lines)
}

fn determinism() -> Verdict {
    let (code_a, a) = verify_all_output();
    let (code_b, b) = verify_all_output();
    verdict(
        code_a == Some(0) && code_b == Some(0) && a == b && !a.is_empty(),
        format!("exit codes {code_a:?}/{code_b:?}, {} lines each, identical: {}", a.len(), a == b),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 subset-sum bound", subset_bound),
        ("3 diagonal bound", diagonal_bound),
        ("4 character-sum identities", character_sums),
        ("5 combinatorial closed forms", combinatorics),
        ("6 structural identities", structure),
        ("7 positivity at q=1009", positivity_at_scale),
        ("8 determinism of verify --suite all", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check();
        println!("[{}] criterion {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
