use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};

use gw_bench::{gaussian_at_5, sqrt2_at_3, zeta5_at_2};
use gw_core::solver::solve;
use gw_core::SolveOptions;

fn solvers(c: &mut Criterion) {
    let opts = SolveOptions::default();
    let mut g = c.benchmark_group("solve");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    let (cyc, ab, gen) = (sqrt2_at_3(), gaussian_at_5(), zeta5_at_2());
    g.bench_function("cyclic Q(sqrt 2), m = 2, S = {3}", |b| b.iter(|| solve(&cyc, &opts)));
    g.bench_function("abelian Q(i), m = 2, S = {5}", |b| b.iter(|| solve(&ab, &opts)));
    g.bench_function("general Q(zeta_5), m = 5, S = {2}", |b| b.iter(|| solve(&gen, &opts)));
    g.finish();
}

criterion_group!(benches, solvers);
criterion_main!(benches);
