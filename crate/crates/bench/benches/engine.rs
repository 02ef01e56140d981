use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rclkit_core::quotient::ideal_subspace;
use rclkit_core::recollement::{check_recollement, quotient_recollement, R3Semantics, Recollement};
use rclkit_core::samples::{a2_recollement, stab3_mutation};
use rclkit_core::triangulated::{check_mutation_pair, verify_quotient_triangulation};
use rclkit_core::{FieldSpec, ObjectExpr, Subcategory};

fn a2() -> Recollement {
    Recollement::from_data("A2", &a2_recollement(FieldSpec::Rationals).unwrap()).unwrap()
}

fn recollements(c: &mut Criterion) {
    let r = a2();
    c.bench_function("check_recollement/a2", |b| b.iter(|| check_recollement(black_box(&r), R3Semantics::Strict)));
    let x = Subcategory::from_names(r.middle.clone(), &["S2"]).unwrap();
    c.bench_function("quotient_recollement/a2/S2", |b| {
        b.iter(|| quotient_recollement(black_box(&r), &x, R3Semantics::Strict).unwrap())
    });
}

fn ideals(c: &mut Criterion) {
    let r = a2();
    let m = &r.middle;
    let x = Subcategory::from_names(m.clone(), &["S2", "P1"]).unwrap();
    let a = ObjectExpr::new(vec![0, 1, 2, 2]);
    let b = ObjectExpr::new(vec![0, 0, 1, 2]);
    c.bench_function("ideal_subspace/a2/4x4", |bn| bn.iter(|| ideal_subspace(m, black_box(&a), black_box(&b), &x)));
}

fn triangulated(c: &mut Criterion) {
    let m = stab3_mutation(FieldSpec::Rationals).unwrap();
    c.bench_function("check_mutation_pair/stab3", |b| b.iter(|| check_mutation_pair(black_box(&m))));
    c.bench_function("verify_quotient_triangulation/stab3", |b| b.iter(|| verify_quotient_triangulation(black_box(&m))));
}

criterion_group!(benches, recollements, ideals, triangulated);
criterion_main!(benches);
