use std::sync::Arc;

use proptest::prelude::*;
use rclkit_core::adjunction::validate_adjunction;
use rclkit_core::quotient::{
    build_quotient, check_ideal_property, factor_through_quotient, ideal_subspace, induce_adjunction, induce_functor,
    validate_quotient,
};
use rclkit_core::samples::a2_recollement;
use rclkit_core::{validate_functor, Error, FieldSpec, FinLinCategory, LinearFunctor, ObjectExpr, Subcategory, SubspaceBasis};

fn sub(c: &Arc<FinLinCategory>, names: &[&str]) -> Subcategory {
    Subcategory::from_names(c.clone(), names).unwrap()
}

/// Every formal sum of members with each multiplicity at most 2.
fn member_sums(x: &Subcategory) -> Vec<ObjectExpr> {
    let members: Vec<usize> = x.members.iter().copied().collect();
    let mut out = vec![ObjectExpr::zero()];
    for &g in &members {
        let mut next = Vec::new();
        for o in &out {
            for mult in 0..=2 {
                let mut s = o.summands().to_vec();
                s.extend(std::iter::repeat(g).take(mult));
                next.push(ObjectExpr::new(s));
            }
        }
        out = next;
    }
    out
}

/// Span of all composites `a → X → b` of basis morphisms, over every sum `X`.
fn brute_force_ideal(c: &FinLinCategory, a: &ObjectExpr, b: &ObjectExpr, x: &Subcategory) -> SubspaceBasis {
    let dim = c.hom_space(a, b).dim;
    let mut vectors = Vec::new();
    for mid in member_sums(x) {
        let d1 = c.hom_space(a, &mid).dim;
        let d2 = c.hom_space(&mid, b).dim;
        for i in 0..d1 {
            for j in 0..d2 {
                let g = c.basis_morphism(a, &mid, i);
                let h = c.basis_morphism(&mid, b, j);
                vectors.push(c.compose(&h, &g).unwrap().coords);
            }
        }
    }
    SubspaceBasis::span(c.field(), dim, vectors)
}

fn small_objects(n: usize) -> Vec<ObjectExpr> {
    let mut out = vec![ObjectExpr::zero()];
    for a in 0..n {
        out.push(ObjectExpr::single(a));
        for b in a..n {
            out.push(ObjectExpr::new(vec![a, b]));
        }
    }
    out
}

#[test]
fn ideal_matches_brute_force_on_a2() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    for x in Subcategory::enumerate_all(c) {
        for a in small_objects(3) {
            for b in small_objects(3) {
                assert_eq!(ideal_subspace(c, &a, &b, &x), brute_force_ideal(c, &a, &b, &x), "{a:?} {b:?} {}", x.display());
            }
        }
    }
}

#[test]
fn ideal_examples() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    let p1 = ObjectExpr::single(c.generator_index("P1").unwrap());
    assert_eq!(ideal_subspace(c, &p1, &p1, &sub(c, &["P1"])).dim(), 1);
    assert_eq!(ideal_subspace(c, &p1, &p1, &sub(c, &["S2"])).dim(), 0);
    for a in small_objects(3) {
        for b in small_objects(3) {
            assert_eq!(ideal_subspace(c, &a, &b, &Subcategory::empty(c.clone())).dim(), 0);
        }
    }
}

#[test]
fn quotient_by_s2() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    let q = build_quotient(&sub(c, &["S2"])).unwrap();
    assert!(validate_quotient(&q).passed());
    let names: Vec<_> = q.surviving_generators().iter().map(|&g| c.generator_name(g).to_string()).collect();
    assert_eq!(names, ["S1", "P1"]);
    let (s1, p1) = (c.generator_index("S1").unwrap(), c.generator_index("P1").unwrap());
    assert_eq!(q.presentation.hom_dim(p1, s1), 1);
    assert_eq!(q.presentation.hom_dim(s1, p1), 0);
}

#[test]
fn trivial_quotients() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    let q = build_quotient(&Subcategory::empty(c.clone())).unwrap();
    assert_eq!(q.projection.hom_maps, LinearFunctor::identity(c.clone()).hom_maps);
    let q = build_quotient(&Subcategory::all(c.clone())).unwrap();
    assert!(q.surviving_generators().is_empty());
    assert!(validate_quotient(&q).passed());
}

#[test]
fn every_a2_quotient_is_valid() {
    for field in [FieldSpec::Rationals, FieldSpec::PrimeField(101)] {
        let r = a2_recollement(field).unwrap();
        for x in Subcategory::enumerate_all(&r.middle) {
            let q = build_quotient(&x).unwrap();
            let report = validate_quotient(&q);
            assert!(report.passed(), "{report}");
            assert!(check_ideal_property(&q.ideal).passed());
        }
    }
}

#[test]
fn factoring_through_projection() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    let q = build_quotient(&sub(c, &["S2"])).unwrap();
    let id = factor_through_quotient(&q.projection, &q).unwrap();
    assert_eq!(id.hom_maps, LinearFunctor::identity(q.presentation.clone()).hom_maps);

    let j = factor_through_quotient(&r.j_upper, &q).unwrap();
    assert!(validate_functor(&j).passed());
    let k = r.right.generator_index("k").unwrap();
    for g in ["S1", "P1"] {
        assert_eq!(j.object_map[c.generator_index(g).unwrap()], ObjectExpr::single(k));
    }

    let err = factor_through_quotient(&r.i_shriek, &q).unwrap_err();
    assert!(matches!(&err, Error::Hypothesis { witness, .. } if witness.contains("S2")), "{err}");
}

#[test]
fn induced_functor_examples() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    let none = Subcategory::empty(r.right.clone());
    let f = induce_functor(&r.j_upper, &sub(c, &["S2"]), &none).unwrap();
    assert!(validate_functor(&f).passed());
    let err = induce_functor(&r.j_upper, &sub(c, &["P1"]), &none).unwrap_err();
    assert!(matches!(&err, Error::Hypothesis { witness, .. } if witness.contains("P1")), "{err}");
}

#[test]
fn induced_adjunction_examples() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    let adj = induce_adjunction(&r.adjunctions[0], &sub(c, &["S2"]), &Subcategory::all(r.left.clone())).unwrap();
    assert!(validate_adjunction(&adj).passed());
    assert!(adj.unit.components.iter().chain(&adj.counit.components).all(|m| m.is_zero()));
    let adj = induce_adjunction(&r.adjunctions[2], &Subcategory::empty(r.right.clone()), &sub(c, &["S2"])).unwrap();
    assert!(validate_adjunction(&adj).passed());
}

#[test]
fn universal_property_is_unique() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let c = &r.middle;
    let q = build_quotient(&sub(c, &["S2"])).unwrap();
    let a = factor_through_quotient(&r.j_upper, &q).unwrap();
    let b = factor_through_quotient(&a.after(&q.projection).unwrap(), &q).unwrap();
    assert_eq!(a.object_map, b.object_map);
    assert_eq!(a.hom_maps, b.hom_maps);
}

proptest! {
    #[test]
    fn induced_transpose_ignores_ideal_part(seed in 0u64..1000, prime in prop::bool::ANY) {
        let field = if prime { FieldSpec::PrimeField(101) } else { FieldSpec::Rationals };
        let r = a2_recollement(field).unwrap();
        // (j_!, j*) across the admissible pairs (∅, add S2) and (all, add(S2 ⊕ P1))
        let adj = &r.adjunctions[2];
        let (x, x2) = if seed % 2 == 0 {
            (Subcategory::empty(r.right.clone()), sub(&r.middle, &["S2"]))
        } else {
            (Subcategory::all(r.right.clone()), sub(&r.middle, &["S2", "P1"]))
        };
        prop_assert!(induce_adjunction(adj, &x, &x2).is_ok());
        let q = build_quotient(&x).unwrap();
        let k = ObjectExpr::single(0);
        let fa = adj.left.apply_object(&k);
        let m = &r.middle;
        for b in 0..m.num_generators() {
            let bo = ObjectExpr::single(b);
            let dim = m.hom_space(&fa, &bo).dim;
            let coeff = |i: u64| field.from_int(((seed.wrapping_mul(31).wrapping_add(i * 17)) % 13) as i64 - 6);
            let f = m.morphism(&fa, &bo, (0..dim as u64).map(coeff).collect()).unwrap();
            let ideal = ideal_subspace(m, &fa, &bo, &x2);
            let mut rr = m.zero_morphism(&fa, &bo);
            for (i, v) in ideal.basis().iter().enumerate() {
                let v = m.morphism(&fa, &bo, v.clone()).unwrap();
                rr = m.add(&rr, &m.scale(&v, &coeff(i as u64 + 5))).unwrap();
            }
            let lhs = q.project(&adj.eta(&k, &f).unwrap());
            let rhs = q.project(&adj.eta(&k, &m.add(&f, &rr).unwrap()).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
