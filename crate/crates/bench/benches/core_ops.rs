//! Benchmarks for the hot paths: word reduction, oracle enumeration, ball
//! realization, thick-building sphere counting, and twin-model intersection
//! enumeration. Sizes are chosen so a full run stays in the seconds range.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use twinlab_core::{
    build_flag_building, intersection_subgroup, panel_complex_a, realize, verify_sphere_product,
    Caps, CoxeterSystem, Gen, GenSet, TwinContext, Word,
};

fn one_infinity() -> CoxeterSystem {
    CoxeterSystem::from_raw(&[vec![1, 0, 3], vec![0, 1, 3], vec![3, 3, 1]]).unwrap()
}

fn genset(gens: &[Gen]) -> GenSet {
    gens.iter().copied().collect()
}

fn bench_word_reduce(c: &mut Criterion) {
    let system = one_infinity();
    let caps = Caps::default();
    // a deliberately non-reduced zig-zag of length 24
    let letters: Vec<Gen> = (0..24).map(|i| [0, 1, 2, 1][i % 4] as Gen).collect();
    let word = Word::new(letters);
    c.bench_function("reduce_len24_rank3", |b| {
        b.iter(|| system.reduce_capped(black_box(&word), &caps).unwrap())
    });
}

fn bench_cayley_oracle(c: &mut Criterion) {
    let system = one_infinity();
    let caps = Caps::default();
    c.bench_function("cayley_oracle_radius6", |b| {
        b.iter(|| system.cayley_oracle(black_box(6), &caps).unwrap())
    });
}

fn bench_realize_ball(c: &mut Criterion) {
    let system = one_infinity();
    let caps = Caps::default();
    let z = panel_complex_a(&system, &genset(&[2]), &genset(&[0, 1])).unwrap();
    let ball = system.enumerate_ball(4, &caps).unwrap();
    c.bench_function("realize_star_radius4", |b| {
        b.iter(|| realize(black_box(&ball), &z).unwrap())
    });
}

fn bench_flag_spheres(c: &mut Criterion) {
    let caps = Caps::default();
    let flag = build_flag_building(3, 2).unwrap();
    c.bench_function("sphere_product_flag_q2", |b| {
        b.iter(|| verify_sphere_product(black_box(&flag), 0, 3, &caps).unwrap())
    });
}

fn bench_twin_intersection(c: &mut Criterion) {
    let caps = Caps::default();
    let ctx = TwinContext::new(2, caps).unwrap();
    let w = ctx.weyl_element(&[0, 1]).unwrap();
    c.bench_function("twin_intersection_q2_len2", |b| {
        b.iter(|| intersection_subgroup(&ctx, black_box(&w), 3).unwrap())
    });
}

criterion_group!(
    benches,
    bench_word_reduce,
    bench_cayley_oracle,
    bench_realize_ball,
    bench_flag_spheres,
    bench_twin_intersection
);
criterion_main!(benches);
