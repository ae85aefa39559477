use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use subgroupsums::bounds::*;
use subgroupsums::field::{is_prime, FiniteField};
use subgroupsums::{Budget, SubsetCounter, Target};

fn field(q: u64) -> FiniteField {
    FiniteField::of_order(q, 1 << 20).unwrap()
}

#[test]
fn bounds_hold_on_small_grid() {
    for q in [5u64, 7, 9, 11, 13, 16, 25, 27] {
        let f = field(q);
        let order = f.order();
        for m in (1..=order).filter(|m| order % m == 0) {
            let c = SubsetCounter::new(&f, m, Budget::default()).unwrap();
            for k in 1..=c.subgroup().subgroup_size().min(6) as usize {
                for b in f.elements() {
                    for kind in [BoundKind::SubsetSum, BoundKind::OrderedSubset, BoundKind::Diagonal] {
                        let r = check_bounds(&c, k, b, kind).unwrap();
                        assert!(r.holds, "{r:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn positivity_guarantee_is_sound_on_primes() {
    let mut guaranteed = 0;
    for q in (3u64..=211).filter(|&q| is_prime(q)) {
        let f = field(q);
        let order = f.order() as u64;
        for m in (1..=order).filter(|m| order % m == 0) {
            let h = order / m;
            for k in 1..=h.min(12) {
                let r = positivity_sufficient(q, q, m, k, PositivityTarget::Subset).unwrap();
                if !r.guaranteed {
                    continue;
                }
                guaranteed += 1;
                let c = SubsetCounter::new(&f, m as u32, Budget::default()).unwrap();
                let d = c.sieve_distribution(k as usize, Target::SubsetSum).unwrap();
                assert!(d.iter().all(|v| !v.is_zero()), "q={q} m={m} k={k}");
            }
        }
    }
    assert!(guaranteed > 0);
}

#[test]
fn deviation_is_exact_before_rounding() {
    let main = main_term(7, 2, 2, Target::SubsetSum).unwrap();
    assert_eq!(main.to_string(), "3/7");
    assert!((deviation(&BigUint::from(1u32), &main) - 4.0 / 7.0).abs() < 1e-15);
    assert!(within(1.0, 1.0 + 1e-10));
    assert!(!within(1.0 + 1e-6, 1.0));
}

proptest! {
    #[test]
    fn shifted_bound_is_smaller(idx in 0usize..8, m_pick in 0usize..4, k in 1u64..20) {
        let q = [7u64, 11, 13, 31, 61, 101, 241, 1009][idx];
        let divisors: Vec<u64> = (1..q).filter(|d| (q - 1) % d == 0).collect();
        let m = divisors[m_pick % divisors.len()];
        prop_assume!(k <= (q - 1) / m);
        let head = bound_subset_sum(q, q, m, k, true).unwrap();
        let shifted = bound_subset_sum_shifted(q, q, m, k).unwrap();
        prop_assert!(shifted <= head);
        let nonzero = bound_subset_sum(q, q, m, k, false).unwrap();
        prop_assert!((nonzero - head * 2.0 / (q as f64).sqrt()).abs() <= 1e-12 * head);
    }
}
