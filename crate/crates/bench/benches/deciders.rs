use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use utlab::num_theory::{agl_criterion, sieve_problem1};
use utlab::semigroup::{closure_with_group, is_regular_in, is_regular_semigroup_with_units};
use utlab::set_orbits::{is_ij_homogeneous, SetOrbitIndex};
use utlab::ut::{bad_partition_sweep, has_kut, has_kut_with, DeciderChoice, UtOptions};
use utlab_bench::{fixture, quasi_permutation};

fn set_orbits(c: &mut Criterion) {
    let m12 = fixture("M12");
    c.bench_function("orbit index M12 k=5", |b| {
        b.iter(|| SetOrbitIndex::build(black_box(&m12), 5).unwrap())
    });
    let asl = fixture("ASL(2,3)");
    c.bench_function("(3,4)-homogeneity ASL(2,3)", |b| {
        b.iter(|| is_ij_homogeneous(black_box(&asl), 3, 4).unwrap())
    });
}

fn ut_deciders(c: &mut Criterion) {
    let m11 = fixture("M11@12");
    for (label, decider) in [("naive", DeciderChoice::Naive), ("extension", DeciderChoice::Extension)] {
        let opts = UtOptions {
            decider,
            prunes: false,
            ..UtOptions::default()
        };
        c.bench_function(&format!("4-ut M11@12 {label}"), |b| {
            b.iter(|| has_kut_with(black_box(&m11), 4, &opts).unwrap())
        });
    }
    let agl17 = fixture("AGL(1,17)");
    c.bench_function("3-ut AGL(1,17) pipeline", |b| {
        b.iter(|| has_kut(black_box(&agl17), 3).unwrap())
    });
    let pgl11 = fixture("PGL(2,11)");
    c.bench_function("bad-partition sweep PGL(2,11)", |b| {
        b.iter(|| bad_partition_sweep(black_box(&pgl11)).unwrap())
    });
}

fn semigroups(c: &mut Criterion) {
    let pgl7 = fixture("PGL(2,7)");
    let a = quasi_permutation(8, 4);
    c.bench_function("section search PGL(2,7) rank 4", |b| {
        b.iter(|| is_regular_in(black_box(&a), &pgl7).unwrap())
    });
    let s6 = fixture("S6");
    let q = quasi_permutation(6, 3);
    c.bench_function("closure <a,S6> and regularity", |b| {
        b.iter(|| {
            let elements = closure_with_group(black_box(&q), &s6, 1_000_000).unwrap();
            is_regular_semigroup_with_units(&elements, &s6).unwrap()
        })
    });
}

fn number_theory(c: &mut Criterion) {
    c.bench_function("AGL criterion p=1009", |b| b.iter(|| agl_criterion(black_box(1009)).unwrap()));
    c.bench_function("sieve to 500", |b| b.iter(|| sieve_problem1(black_box(500))));
}

criterion_group!(benches, set_orbits, ut_deciders, semigroups, number_theory);
criterion_main!(benches);
