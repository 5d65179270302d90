use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rsir_bench::case;
use rsir_core::cases::run_case;

fn euler_runs(c: &mut Criterion) {
    let mut g = c.benchmark_group("euler-shock-tube");
    g.sample_size(20);
    for solver in ["hll", "hllc", "rsir"] {
        for cells in [100, 400] {
            let case = case("euler-shock-tube", solver, cells);
            g.bench_with_input(BenchmarkId::new(solver, cells), &case, |b, case| {
                b.iter(|| run_case(case).unwrap())
            });
        }
    }
    g.finish();
}

fn two_phase_runs(c: &mut Criterion) {
    let mut g = c.benchmark_group("tp-shock-tube");
    g.sample_size(10);
    for solver in ["rusanov-basic", "rusanov-local", "rsir"] {
        let case = case("tp-shock-tube", solver, 100);
        g.bench_with_input(BenchmarkId::new(solver, 100), &case, |b, case| {
            b.iter(|| run_case(case).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, euler_runs, two_phase_runs);
criterion_main!(benches);
