use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pseudorbit::{
    classify_phases, exact_orbit, fixed_points, iterate, lower_bound_error, ExtensionForm,
    LaminarityRule,
};
use pseudorbit_bench::{scenario, INITIAL_CONDITIONS};
use std::hint::black_box;

fn pseudo_orbits(c: &mut Criterion) {
    let (params, x0) = scenario("0.3");
    let mut group = c.benchmark_group("iterate_5000");
    for form in ExtensionForm::ALL {
        group.bench_function(form.tag(), |b| {
            b.iter(|| iterate(form, black_box(&params), black_box(&x0), 5000).unwrap())
        });
    }
    group.finish();
}

fn divergence_and_phases(c: &mut Criterion) {
    let (params, x0) = scenario("300/341");
    let a = iterate(ExtensionForm::FormA, &params, &x0, 5000).unwrap();
    let b = iterate(ExtensionForm::FormB, &params, &x0, 5000).unwrap();
    let (_, x_star) = fixed_points(&params);

    c.bench_function("lower_bound_error_5000", |bench| {
        bench.iter(|| lower_bound_error(black_box(&a), black_box(&b)).unwrap())
    });
    c.bench_function("classify_phases_5000", |bench| {
        bench.iter(|| classify_phases(black_box(&a), x_star, LaminarityRule::default()))
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_orbit_14");
    group.sample_size(10);
    for label in INITIAL_CONDITIONS {
        let (params, x0) = scenario(label);
        group.bench_with_input(BenchmarkId::from_parameter(label), &x0, |b, x0| {
            b.iter(|| exact_orbit(&params, x0, 14).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pseudo_orbits, divergence_and_phases, oracle);
criterion_main!(benches);
