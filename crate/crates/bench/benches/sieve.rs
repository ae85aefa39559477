use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subgroupsums::charsums::verify_charsum_identities;
use subgroupsums::{make_field, Budget, SubsetCounter, Target};

// A fresh counter per iteration, so the sieve cache never short-circuits.
fn sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    group.sample_size(10);
    for &(p, m, k) in &[(101u64, 2u32, 20usize), (1009, 2, 43), (1009, 8, 20)] {
        let field = make_field(p, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{p}_m{m}_k{k}")), &k, |b, &k| {
            b.iter(|| {
                let counter = SubsetCounter::new(&field, m, Budget::default()).unwrap();
                black_box(counter.sieve_distribution(k, Target::SubsetSum).unwrap())
            })
        });
    }
    group.finish();
}

fn brute(c: &mut Criterion) {
    let field = make_field(3, 3).unwrap();
    c.bench_function("brute_q27_m1_k6", |b| {
        b.iter(|| {
            let counter = SubsetCounter::new(&field, 1, Budget::default()).unwrap();
            black_box(counter.brute_distribution(6, Target::DiagonalDistinct).unwrap())
        })
    });
}

fn identities(c: &mut Criterion) {
    let field = make_field(7, 2).unwrap();
    c.bench_function("identities_q49_d6_n3", |b| {
        b.iter(|| black_box(verify_charsum_identities(&field, 6, 3, &Budget::default()).unwrap()))
    });
}

criterion_group!(benches, sieve, brute, identities);
criterion_main!(benches);
