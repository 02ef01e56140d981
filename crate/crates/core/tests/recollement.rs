use std::sync::Arc;

use rclkit_core::adjunction::{solve_unit_counit, Adjunction};
use rclkit_core::recollement::{
    check_recollement, closure_hypotheses, lift_subcategory_pair, normalize_recollement, quotient_by_left_subcategory,
    quotient_recollement, restrict_to_subcategory, R3Semantics, Recollement,
};
use rclkit_core::samples::a2_recollement;
use rclkit_core::{Error, FieldSpec, FinLinCategory, FunctorBuilder, LinearFunctor, Subcategory};

fn a2() -> Recollement {
    Recollement::from_data("A2", &a2_recollement(FieldSpec::Rationals).unwrap()).unwrap()
}

fn sub(c: &Arc<FinLinCategory>, names: &[&str]) -> Subcategory {
    Subcategory::from_names(c.clone(), names).unwrap()
}

#[test]
fn a2_is_a_recollement() {
    for sem in [R3Semantics::Strict, R3Semantics::IsoClosed] {
        let cert = check_recollement(&a2(), sem);
        assert!(cert.passed(), "{:?}", cert.first_failure());
        assert_eq!(cert.image_i_lower, ["S2"]);
    }
}

#[test]
fn wrong_i_lower_breaks_r3() {
    let data = a2_recollement(FieldSpec::Rationals).unwrap();
    let bad = FunctorBuilder::new("i_*", data.left.clone(), data.middle.clone()).object("k", &["S1"]).unwrap().build().unwrap();
    let mut adjs = data.adjunctions.clone();
    adjs[0].right = bad.clone();
    adjs[1].left = bad;
    let r = Recollement { name: "bad".into(), adjunctions: adjs, ..a2() };
    let cert = check_recollement(&r, R3Semantics::Strict);
    assert!(!cert.r3.passed());
    assert_eq!(cert.image_i_lower, ["S1"]);
    assert_eq!(cert.kernel_j_upper, ["S2"]);
}

#[test]
fn degenerate_recollement() {
    let data = a2_recollement(FieldSpec::Rationals).unwrap();
    let a = data.middle.clone();
    let zero = Arc::new(FinLinCategory::zero_category("0", FieldSpec::Rationals));
    let to_zero = LinearFunctor::zero(a.clone(), zero.clone());
    let from_zero = LinearFunctor::zero(zero.clone(), a.clone());
    let idadj = Adjunction::identity(a.clone());
    let z1 = solve_unit_counit(&from_zero, &to_zero).unwrap().unwrap();
    let z2 = solve_unit_counit(&to_zero, &from_zero).unwrap().unwrap();
    let r = Recollement::new("degenerate", [idadj.clone(), idadj, z1, z2]).unwrap();
    assert!(check_recollement(&r, R3Semantics::Strict).passed());
}

#[test]
fn normalization_is_strict_on_a2() {
    let n = normalize_recollement(&a2()).unwrap();
    assert!(n.normalized);
    assert!(n.notes.is_empty(), "{:?}", n.notes);
    assert!(check_recollement(&n, R3Semantics::Strict).passed());
}

#[test]
fn closure_hypotheses_hold_exactly_for_three_subsets() {
    let r = a2();
    let ok: Vec<String> = Subcategory::enumerate_all(&r.middle)
        .into_iter()
        .filter(|x| closure_hypotheses(&r, x).passed())
        .map(|x| x.display())
        .collect();
    assert_eq!(ok, ["{}", "{S2}", "{S1, S2, P1}"]);
}

#[test]
fn restriction_examples() {
    let r = a2();
    let all = restrict_to_subcategory(&r, &Subcategory::all(r.middle.clone())).unwrap();
    assert!(check_recollement(&all, R3Semantics::Strict).passed());
    assert_eq!(all.middle.generators(), r.middle.generators());

    let s2 = restrict_to_subcategory(&r, &sub(&r.middle, &["S2"])).unwrap();
    assert_eq!(s2.left.generators(), ["k"]);
    assert_eq!(s2.middle.generators(), ["S2"]);
    assert_eq!(s2.right.num_generators(), 0);
    assert!(check_recollement(&s2, R3Semantics::Strict).passed());

    let err = restrict_to_subcategory(&r, &sub(&r.middle, &["P1"])).unwrap_err();
    assert!(matches!(&err, Error::Hypothesis { witness, .. } if witness.contains("S1")), "{err}");
}

#[test]
fn quotient_by_s2() {
    let r = a2();
    for sem in [R3Semantics::Strict, R3Semantics::IsoClosed] {
        let q = quotient_recollement(&r, &sub(&r.middle, &["S2"]), sem).unwrap();
        assert!(q.predicate);
        assert!(q.certificate.passed(), "{:?}", q.certificate.first_failure());
        assert!(q.quotients[0].surviving_generators().is_empty());
        assert_eq!(q.quotients[1].surviving_generators().len(), 2);
        assert_eq!(q.quotients[2].surviving_generators().len(), 1);
    }
}

#[test]
fn quotient_by_everything_fails_strictly() {
    let r = a2();
    let q = quotient_recollement(&r, &Subcategory::all(r.middle.clone()), R3Semantics::Strict).unwrap();
    assert!(!q.predicate);
    assert!(!q.certificate.passed());
    let w = q.certificate.r3.first_witness().unwrap();
    assert!(w.witness.starts_with("S1 ∈ Ker"), "{w}");
    // the iso-closed reading accepts the degenerate diagram and records the divergence
    let q = quotient_recollement(&r, &Subcategory::all(r.middle.clone()), R3Semantics::IsoClosed).unwrap();
    assert!(q.certificate.passed());
    assert!(q.certificate.notes.iter().any(|n| n.contains("differs")));
}

#[test]
fn quotient_by_nothing_is_the_original() {
    let r = a2();
    let q = quotient_recollement(&r, &Subcategory::empty(r.middle.clone()), R3Semantics::Strict).unwrap();
    assert!(q.predicate && q.certificate.passed());
    assert_eq!(q.recollement.middle.generators(), r.middle.generators());
}

#[test]
fn strict_verdict_matches_kernel_predicate() {
    let r = a2();
    for x in Subcategory::enumerate_all(&r.middle) {
        if !closure_hypotheses(&r, &x).passed() {
            continue;
        }
        let q = quotient_recollement(&r, &x, R3Semantics::Strict).unwrap();
        let fine = q.certificate.r1.passed() && q.certificate.r2.passed();
        assert!(fine);
        let r3_core = q.certificate.r3.failures.iter().all(|f| f.check.starts_with("verdict"));
        assert_eq!(r3_core && q.certificate.passed(), q.predicate, "{}", x.display());
    }
}

#[test]
fn lifting_examples() {
    let r = a2();
    let (x, rr) = lift_subcategory_pair(&r, &Subcategory::all(r.left.clone()), &Subcategory::all(r.right.clone())).unwrap();
    assert_eq!(x.display(), "{S1, S2, P1}");
    assert!(check_recollement(&rr, R3Semantics::Strict).passed());

    let (x, rr) = lift_subcategory_pair(&r, &Subcategory::all(r.left.clone()), &Subcategory::empty(r.right.clone())).unwrap();
    assert_eq!(x.display(), "{S2}");
    assert!(check_recollement(&rr, R3Semantics::Strict).passed());
    assert_eq!(rr.right.num_generators(), 0);

    let (x, rr) = lift_subcategory_pair(&r, &Subcategory::empty(r.left.clone()), &Subcategory::empty(r.right.clone())).unwrap();
    assert!(x.members.is_empty());
    assert_eq!(rr.middle.num_generators(), 0);
}

#[test]
fn left_quotients_always_pass() {
    let r = a2();
    for xl in Subcategory::enumerate_all(&r.left) {
        let q = quotient_by_left_subcategory(&r, &xl, R3Semantics::Strict).unwrap();
        assert!(q.certificate.passed(), "{}: {:?}", xl.display(), q.certificate.first_failure());
    }
    let q = quotient_by_left_subcategory(&r, &Subcategory::all(r.left.clone()), R3Semantics::Strict).unwrap();
    assert_eq!(q.quotients[1].surviving_generators().len(), 2);
}

/// Every single-site change to a unit or counit entry or to a Hom map entry
/// of the A2 recollement is caught by the checker or rejected on construction.
#[test]
fn single_site_corruptions_are_detected() {
    let base = a2();
    let fld = base.middle.field();
    let mut sites = 0;
    for k in 0..4 {
        for which in 0..2 {
            let comps = if which == 0 { &base.adjunctions[k].unit.components } else { &base.adjunctions[k].counit.components };
            for (g, m) in comps.iter().enumerate() {
                for i in 0..m.coords.len() {
                    let mut adjs = base.adjunctions.clone();
                    let t = if which == 0 { &mut adjs[k].unit } else { &mut adjs[k].counit };
                    let x = &mut t.components[g].coords[i];
                    *x = fld.add(x, &fld.one());
                    let r = Recollement { adjunctions: adjs, ..base.clone() };
                    assert!(!check_recollement(&r, R3Semantics::Strict).passed());
                    sites += 1;
                }
            }
        }
    }
    for f in 0..6 {
        let functor = base.functors()[f].clone();
        for (h, mat) in functor.hom_maps.iter().enumerate() {
            for i in 0..mat.rows() {
                for j in 0..mat.cols() {
                    let mut bad = functor.clone();
                    let v = fld.add(bad.hom_maps[h].get(i, j), &fld.one());
                    bad.hom_maps[h].set(i, j, v);
                    let mut adjs = base.adjunctions.clone();
                    for a in adjs.iter_mut() {
                        if a.left == functor {
                            a.left = bad.clone();
                        }
                        if a.right == functor {
                            a.right = bad.clone();
                        }
                    }
                    let r = Recollement { adjunctions: adjs, ..base.clone() };
                    assert!(!check_recollement(&r, R3Semantics::Strict).passed(), "{} entry {h}", functor.name);
                    sites += 1;
                }
            }
        }
    }
    assert!(sites > 20);
}
