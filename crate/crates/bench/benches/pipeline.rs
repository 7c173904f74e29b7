// SPDX-License-Identifier: Apache-2.0

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use genus2::db::{build_l1, build_l2};
use genus2::{classify, igusa, moduli_key, reconstruct, reduce_at_prime, BinarySextic, ModuliKey};

fn invariants(c: &mut Criterion) {
    let f = BinarySextic::from_ints(&[3, -1, 4, 1, -5, 9, 2]).unwrap();
    c.bench_function("igusa", |b| b.iter(|| igusa(black_box(&f))));
    c.bench_function("moduli_key", |b| b.iter(|| moduli_key(black_box(&f)).unwrap()));
    let k = moduli_key(&f).unwrap();
    c.bench_function("classify", |b| b.iter(|| classify(black_box(&k))));
}

fn heights(c: &mut Criterion) {
    let f = BinarySextic::from_ints(&[1, 0, 0, 1, 0, 0, 1 << 33]).unwrap();
    let two = BigInt::from(2);
    c.bench_function("reduce_at_prime", |b| b.iter(|| reduce_at_prime(black_box(&f), &two).unwrap()));
}

fn reconstruction(c: &mut Criterion) {
    let generic = moduli_key(&BinarySextic::from_ints(&[1, -2, 0, 1, 2, -1, 1]).unwrap()).unwrap();
    let golden =
        ModuliKey::parse("-1,-49281147/5410276,706232480445/12584301976,3071021069999403/17429644021121376256")
            .unwrap();
    c.bench_function("reconstruct generic", |b| b.iter(|| reconstruct(black_box(&generic), 1 << 18).unwrap()));
    c.bench_function("reconstruct V4", |b| b.iter(|| reconstruct(black_box(&golden), 1 << 18).unwrap()));
}

fn builders(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    g.bench_function("L1 h<=1", |b| b.iter(|| build_l1(1)));
    g.bench_function("L2 h<=10", |b| b.iter(|| build_l2(10)));
    g.finish();
}

criterion_group!(benches, invariants, heights, reconstruction, builders);
criterion_main!(benches);
