use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use subgroupsums::combinat::*;

// p(n) by the textbook recurrence on the largest part, independent of the
// pentagonal formula used by the library.
fn partitions_by_largest_part(n: usize) -> Vec<BigUint> {
    let mut table = vec![vec![BigUint::zero(); n + 1]; n + 1];
    for row in table.iter_mut() {
        row[0] = BigUint::one();
    }
    for largest in 1..=n {
        for total in 1..=n {
            let mut v = table[largest - 1][total].clone();
            if total >= largest {
                v += &table[largest][total - largest];
            }
            table[largest][total] = v;
        }
    }
    (0..=n).map(|t| table[n][t].clone()).collect()
}

#[test]
fn enumeration_matches_partition_numbers_to_40() {
    let independent = partitions_by_largest_part(40);
    let pentagonal = partition_numbers(40);
    assert_eq!(independent, pentagonal);
    for k in 0..=40 {
        assert_eq!(BigUint::from(partitions(k).count()), pentagonal[k], "k={k}");
    }
}

#[test]
fn cycle_type_counts_sum_to_factorial() {
    for k in 0..=12 {
        let total: BigUint = partitions(k).map(|t| cycle_type_count(&t)).sum();
        assert_eq!(total, factorial(k as u64));
    }
}

#[test]
fn signed_counts_cancel_beyond_one() {
    // sum over S_k of sign is 0 for k >= 2.
    for k in 2..=12 {
        let total: BigInt = partitions(k)
            .map(|t| BigInt::from(t.sign()) * BigInt::from(cycle_type_count(&t)))
            .sum();
        assert!(total.is_zero(), "k={k}");
    }
}

// Counts permutations of {0..k} by cycle type directly, for k <= 7.
fn permutation_type_counts(k: usize) -> std::collections::HashMap<Vec<u32>, u64> {
    fn heap(a: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..n - 1 {
            heap(a, n - 1, out);
            if n % 2 == 0 { a.swap(i, n - 1) } else { a.swap(0, n - 1) }
        }
        heap(a, n - 1, out);
    }
    let mut perms = Vec::new();
    heap(&mut (0..k).collect(), k, &mut perms);
    let mut counts = std::collections::HashMap::new();
    for p in perms {
        let mut c = vec![0u32; k];
        let mut seen = vec![false; k];
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            c[len - 1] += 1;
        }
        *counts.entry(c).or_insert(0) += 1;
    }
    counts
}

#[test]
fn cycle_type_count_matches_enumerated_permutations() {
    for k in 1..=7 {
        let direct = permutation_type_counts(k);
        for t in partitions(k) {
            assert_eq!(cycle_type_count(&t), BigUint::from(direct[t.counts()]), "{:?}", t.counts());
        }
    }
}

#[test]
fn constant_arguments_give_rising_factorial() {
    for k in 1..=12usize {
        for q in 1..=50i64 {
            let lhs = cycle_gen_func(k, &vec![BigInt::from(q); k]).unwrap();
            assert_eq!(lhs, falling_factorial_int(&BigInt::from(q + k as i64 - 1), k as u64));
        }
    }
}

#[test]
fn periodic_arguments_match_closed_form() {
    for k in 1..=10usize {
        for d in 1..=5u64 {
            for s in 1..=30u64 {
                for q in (s..=30).filter(|q| (q - s) % d == 0) {
                    let args = periodic_arguments(k, d, s as i64, q as i64);
                    let lhs = cycle_gen_func(k, &args).unwrap();
                    let rhs = periodic_closed_form(k, d, s, q).unwrap();
                    assert_eq!(lhs, BigInt::from(rhs), "k={k} d={d} s={s} q={q}");
                }
            }
        }
    }
}

#[test]
fn convolution_bound_on_grid() {
    for l in 1..=12 {
        for n in 1..=12 {
            for q in 1..=12 {
                for m in 1..=12 {
                    assert!(check_binomial_convolution_bound(l, n, q, m).unwrap().holds);
                }
            }
        }
    }
}

#[test]
fn periodic_bound_on_grid() {
    for k in 1..=10 {
        for d in 1..=5 {
            for s in 1..=30 {
                for q in (s..=30).filter(|q| (q - s) % d == 0) {
                    let c = check_periodic_cycle_bound(s, d, k, q).unwrap();
                    assert!(c.holds, "s={s} d={d} k={k} q={q}: {} > {}", c.lhs, c.rhs);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn binomial_satisfies_pascal(n in 1u64..200, k in 1u64..200) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn real_binomial_agrees_with_exact(n in 0u64..60, k in 0u64..20) {
        let exact = binomial(n, k).to_string().parse::<f64>().unwrap();
        let real = real_binomial(n as f64, k);
        prop_assert!((exact - real).abs() <= 1e-9 * exact.max(1.0));
    }

    #[test]
    fn falling_factorial_recurrence(t in -50.0f64..50.0, k in 1u64..12) {
        let lhs = falling_factorial(t, k);
        let rhs = falling_factorial(t, k - 1) * (t - (k - 1) as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
    }
}
