//! The shipped fixtures agree with the hand-built samples of the core crate.

use rclkit_cli::{parse, resolve, Resolved};
use rclkit_core::samples::{a2_recollement, prod_mutation, prod_triangulated_recollement, stab3_mutation, stab3_triangulated};
use rclkit_core::triangulated::check_mutation_pair;
use rclkit_core::{FieldSpec, LinearFunctor};

fn load(src: &str) -> Resolved {
    resolve(&parse(src).unwrap()).unwrap()
}

fn same_functor(a: &LinearFunctor, b: &LinearFunctor) {
    assert_eq!(a.source.generators(), b.source.generators(), "{}", a.name);
    assert_eq!(a.target.generators(), b.target.generators(), "{}", a.name);
    assert_eq!(a.object_map, b.object_map, "{}", a.name);
    assert_eq!(a.hom_maps, b.hom_maps, "{}", a.name);
}

#[test]
fn a2_fixture_matches_sample() {
    let r = &load(include_str!("../fixtures/fix_a2.rcl")).recollements["A2"];
    let s = a2_recollement(FieldSpec::Rationals).unwrap();
    assert_eq!(*r.middle, *s.middle);
    assert_eq!(*r.left, *s.left);
    assert_eq!(*r.right, *s.right);
    let sample = [&s.i_upper, &s.i_lower, &s.i_shriek, &s.j_shriek, &s.j_upper, &s.j_lower];
    for (a, b) in r.functors().into_iter().zip(sample) {
        assert_eq!(a.name, b.name);
        same_functor(a, b);
    }
    for (a, b) in r.adjunctions.iter().zip(&s.adjunctions) {
        assert_eq!(a.unit.components, b.unit.components, "{}", a.name);
        assert_eq!(a.counit.components, b.counit.components, "{}", a.name);
    }
}

#[test]
fn stab3_fixture_matches_sample() {
    let res = load(include_str!("../fixtures/fix_stab3.rcl"));
    let fx = &res.triangulated["STAB3"];
    let s = stab3_triangulated(FieldSpec::Rationals).unwrap();
    assert_eq!(*fx.base, *s.base);
    same_functor(&fx.shift, &s.shift);
    // every basic triangle of one presentation is distinguished in the other
    for (name, t) in &fx.basic {
        assert!(s.is_distinguished(t).unwrap(), "fixture triangle {name}");
    }
    for (name, t) in &s.basic {
        assert!(fx.is_distinguished(t).unwrap(), "sample triangle {name}");
    }
    let m = &res.mutations["STAB3/add(M2)"];
    let sm = stab3_mutation(FieldSpec::Rationals).unwrap();
    assert_eq!(m.d, sm.d);
    assert_eq!(m.z, sm.z);
    assert!(check_mutation_pair(m).passed());
}

#[test]
fn prod_fixture_matches_sample() {
    let res = load(include_str!("../fixtures/fix_prod.rcl"));
    let tr = &res.trirecollements["PROD"];
    let s = prod_triangulated_recollement(FieldSpec::Rationals).unwrap();
    assert_eq!(*tr.recollement.middle, *s.recollement.middle);
    for (a, b) in tr.recollement.functors().into_iter().zip(s.recollement.functors()) {
        same_functor(a, b);
    }
    let m = &res.mutations["C/add(C1.M2)"];
    let sm = prod_mutation(&s).unwrap();
    assert_eq!(m.d.names(), sm.d.names());
    assert!(check_mutation_pair(m).passed());
}
