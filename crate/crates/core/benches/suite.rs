use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use leonard_core::algebra::Field;
use leonard_core::suite::fuzz::{fuzz_arrays, FuzzConfig};
use leonard_core::suite::{run_suite, Execution, SuiteOptions};

fn suite(c: &mut Criterion) {
    let fields = vec![Field::Rational, Field::prime(10007).unwrap()];
    let mut group = c.benchmark_group("run_suite");
    group.sample_size(10);
    for d in [3, 5, 7] {
        let cases = fuzz_arrays(&FuzzConfig::new(11, fields.clone(), d, d), 4);
        for execution in [Execution::Sequential, Execution::Parallel] {
            let options = SuiteOptions { execution, ..SuiteOptions::default() };
            group.bench_with_input(BenchmarkId::new(format!("{execution:?}"), d), &cases, |b, cases| {
                b.iter(|| {
                    for case in cases {
                        black_box(run_suite(&case.array, &options).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
