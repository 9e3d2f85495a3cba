use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rtspace::constructions::{builtin, npath_policy, pad_string, SweepParams};
use rtspace::metering::measure_weak_space;
use rtspace::oracles::{erb_member, lj_member};
use rtspace::{Budget, Executor};

fn deterministic_runs(c: &mut Criterion) {
    let ld = builtin("ld").unwrap();
    let ex = Executor::new(&ld).unwrap();
    let mut g = c.benchmark_group("run");
    for n in [1 << 10, 1 << 14] {
        let w = vec!["a"; n];
        g.bench_with_input(BenchmarkId::new("ld", n), &w, |b, w| b.iter(|| ex.run(w, false).unwrap()));
    }
    let erb = builtin("erb").unwrap();
    let ex = Executor::new(&erb).unwrap();
    let w = erb_member(256);
    g.bench_function("erb/k=256", |b| b.iter(|| ex.run(&w, false).unwrap()));
    let lj = builtin("lj3").unwrap();
    let ex = Executor::new(&lj).unwrap();
    let w = lj_member(3, 40);
    g.bench_function("lj3/k=40", |b| b.iter(|| ex.run(&w, false).unwrap()));
    g.finish();
}

fn searches(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    let prob = builtin("prob-erb").unwrap();
    let ex = Executor::new(&prob).unwrap();
    let w = erb_member(32);
    g.bench_function("prob-erb/probability/k=32", |b| b.iter(|| ex.acceptance_probability(&w).unwrap()));
    g.bench_function("prob-erb/decide/k=32", |b| b.iter(|| ex.decide(&w, Budget::Unbounded).unwrap()));

    let nk = builtin("njk-kappa").unwrap();
    let ex = Executor::new(&nk).unwrap();
    let p = SweepParams::default();
    let core: Vec<&str> = std::iter::repeat_n("a", 12).chain(std::iter::repeat_n("b", 18)).collect();
    let w = pad_string(&core, p.pad_for(5));
    g.bench_function("njk-kappa/weak/a12b18", |b| b.iter(|| measure_weak_space(&ex, &w, 24).unwrap()));
    g.bench_function("njk-kappa/npath/a12b18", |b| b.iter(|| ex.run_guided(&w, false, npath_policy(5)).unwrap()));
    g.finish();
}

criterion_group!(benches, deterministic_runs, searches);
criterion_main!(benches);
