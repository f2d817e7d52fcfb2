use criterion::{black_box, criterion_group, criterion_main, Criterion};

use gw_core::cyclic::examples;
use gw_core::factor::factor_integer_poly;
use gw_core::kummer::binomial_irreducible;
use gw_core::local::{local_binomial_irreducible, power_class_group};
use gw_core::places::{first_place_over, split_prime};
use gw_core::{NFElement, Polynomial};

fn factoring(c: &mut Criterion) {
    let swinnerton_dyer = Polynomial::from_ints(&[1, 0, -10, 0, 1]);
    c.bench_function("factor x^4 - 10x^2 + 1", |b| b.iter(|| factor_integer_poly(black_box(&swinnerton_dyer))));
    let cyclo = Polynomial::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    c.bench_function("factor x^12 - 1", |b| b.iter(|| factor_integer_poly(black_box(&cyclo))));
}

fn places(c: &mut Criterion) {
    let k = examples::zeta7().field().clone();
    c.bench_function("split 29 in Q(zeta_7)", |b| b.iter(|| split_prime(black_box(&k), 29)));
}

fn local(c: &mut Criterion) {
    c.bench_function("power classes of Q_3 mod 9th powers", |b| b.iter(|| power_class_group(black_box(3), 9)));
    let k = examples::zeta5().field().clone();
    let w = first_place_over(&k, 2).unwrap();
    let x = NFElement::from_int(&k, 2);
    c.bench_function("local x^5 - 2 at 2 over Q(zeta_5)", |b| {
        b.iter(|| local_binomial_irreducible(&k, &w, black_box(&x), 5))
    });
    c.bench_function("global x^5 - 2 over Q(zeta_5)", |b| b.iter(|| binomial_irreducible(black_box(&x), 5)));
}

criterion_group!(benches, factoring, places, local);
criterion_main!(benches);
