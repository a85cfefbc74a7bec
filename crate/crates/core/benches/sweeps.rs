use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use genbinom_core::verify::{Suite, Verifier};
use genbinom_core::Exec;

fn strategies() -> [(&'static str, Exec); 2] {
    [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel),
    ]
}

fn bench_suites(c: &mut Criterion) {
    let cases = [
        (Suite::Core, 14),
        (Suite::Gf, 10),
        (Suite::Partition, 8),
        (Suite::Conjecture, 8),
    ];
    for (suite, max_n) in cases {
        let mut group = c.benchmark_group(format!("verify/{suite}"));
        group.sample_size(10);
        for (name, exec) in strategies() {
            let verifier = Verifier::new(max_n).with_exec(exec);
            group.bench_with_input(BenchmarkId::new(name, max_n), &verifier, |b, v| {
                b.iter(|| {
                    let report = v.run(suite);
                    assert!(report.passed());
                    report.cases
                })
            });
        }
        group.finish();
    }
}

fn bench_tables(c: &mut Criterion) {
    let ns: Vec<u32> = (1..=30).collect();
    let mut group = c.benchmark_group("gb_table/1..=30");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(name, |b| {
            b.iter(|| exec.map(&ns, |&n| genbinom_core::gb_table(n)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_suites, bench_tables);
criterion_main!(benches);
