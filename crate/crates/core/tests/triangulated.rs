use proptest::prelude::*;
use rclkit_core::recollement::{quotient_recollement, R3Semantics};
use rclkit_core::samples::{a2_category, prod_mutation, prod_triangulated_recollement, stab3_mutation, stab3_triangulated};
use rclkit_core::triangulated::*;
use rclkit_core::{Error, FieldSpec, FinLinCategory, FunctorBuilder, Morphism, ObjectExpr, Subcategory};

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn o(c: &FinLinCategory, names: &[&str]) -> ObjectExpr {
    names.iter().map(|n| c.generator_index(n).unwrap()).collect()
}

fn m(c: &FinLinCategory, src: &[&str], tgt: &[&str], coords: &[i64]) -> Morphism {
    let f = c.field();
    c.morphism(&o(c, src), &o(c, tgt), coords.iter().map(|&x| f.from_int(x)).collect()).unwrap()
}

#[test]
fn stab3_presentation_is_valid() {
    for field in [q(), FieldSpec::PrimeField(101)] {
        let tp = stab3_triangulated(field).unwrap();
        let report = validate_triangulated(&tp);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn rotation_relates_the_two_basic_triangles() {
    let tp = stab3_triangulated(q()).unwrap();
    let a = tp.basic_triangle("A").unwrap();
    let b = tp.basic_triangle("B").unwrap();
    assert_eq!(&rotate(&tp.base, &tp.shift, a), b);
    assert_eq!(&rotate_back(&tp.base, &tp.shift_inv, b), a);
}

#[test]
fn split_sextuple_is_not_distinguished() {
    let tp = stab3_triangulated(q()).unwrap();
    let c = &tp.base;
    let split = Triangle::new(m(c, &["M1"], &["M2"], &[1]), m(c, &["M2"], &["M1"], &[1]), m(c, &["M1"], &["M2"], &[0])).unwrap();
    assert!(!tp.is_distinguished(&split).unwrap());
    let tri = |a: i64, b: i64, h: i64| {
        Triangle::new(m(c, &["M1"], &["M2"], &[a]), m(c, &["M2"], &["M1"], &[b]), m(c, &["M1"], &["M2"], &[h])).unwrap()
    };
    assert!(tp.is_distinguished(&tri(-1, -1, 1)).unwrap());
    assert!(!tp.is_distinguished(&tri(2, 3, 1)).unwrap());
    assert!(!tp.is_distinguished(&tri(1, 1, -1)).unwrap());
}

#[test]
fn sums_of_triangles_are_distinguished() {
    let tp = stab3_triangulated(q()).unwrap();
    let c = &tp.base;
    let a = tp.basic_triangle("A").unwrap().clone();
    let id = Triangle::identity(c, &tp.shift, &o(c, &["M2"]));
    let sum = Triangle::direct_sum(c, &[a, id]);
    assert!(tp.is_distinguished(&sum).unwrap());
}

#[test]
fn completion_finds_the_cone() {
    let tp = stab3_triangulated(q()).unwrap();
    let c = &tp.base;
    let t = tp.complete(&m(c, &["M1"], &["M2"], &[1])).unwrap().unwrap();
    assert_eq!(t.z, o(c, &["M1"]));
    assert!(tp.is_distinguished(&t).unwrap());
    let zero = c.zero_morphism(&o(c, &["M1"]), &ObjectExpr::zero());
    let t0 = tp.complete(&zero).unwrap().unwrap();
    assert_eq!(t0.z, o(c, &["M2"]));
}

#[test]
fn strict_inverse_rejects_non_permutations() {
    let tp = stab3_triangulated(q()).unwrap();
    let c = tp.base.clone();
    let collapse = FunctorBuilder::new("T", c.clone(), c.clone())
        .object("M1", &["M1"])
        .unwrap()
        .object("M2", &["M1"])
        .unwrap()
        .build()
        .unwrap();
    assert!(matches!(strict_inverse(&collapse), Err(Error::Inconsistent(_))));
}

#[test]
fn epic_and_monic_examples() {
    let tp = stab3_triangulated(q()).unwrap();
    let c = &tp.base;
    let d = Subcategory::from_names(tp.base.clone(), &["M2"]).unwrap();
    assert!(is_d_epic(c, &m(c, &["M2"], &["M1"], &[1]), &d).unwrap());
    assert!(!is_d_epic(c, &m(c, &["M2"], &["M1"], &[0]), &d).unwrap());
    for sub in Subcategory::enumerate_all(&tp.base) {
        for g in ["M1", "M2"] {
            let id = c.identity(&o(c, &[g]));
            assert!(is_d_epic(c, &id, &sub).unwrap());
            assert!(is_d_monic(c, &id, &sub).unwrap());
        }
    }
    assert!(is_d_monic(c, &m(c, &["M1"], &["M2"], &[1]), &d).unwrap());
    assert!(!is_d_monic(c, &c.zero_morphism(&o(c, &["M1"]), &ObjectExpr::zero()), &d).unwrap());
}

#[test]
fn canonical_approximation_examples() {
    let tp = stab3_triangulated(q()).unwrap();
    let c = &tp.base;
    let d = Subcategory::from_names(tp.base.clone(), &["M2"]).unwrap();
    assert_eq!(canonical_right_approximation(c, &o(c, &["M1"]), &d), m(c, &["M2"], &["M1"], &[1]));
    let empty = Subcategory::empty(tp.base.clone());
    let r = canonical_right_approximation(c, &o(c, &["M1"]), &empty);
    assert!(r.source.is_empty());
    assert!(is_d_epic(c, &r, &empty).unwrap());
    let own = canonical_right_approximation(c, &o(c, &["M2"]), &d);
    assert_eq!(own, c.identity(&o(c, &["M2"])));
}

#[test]
fn stab3_mutation_pair_passes() {
    let md = stab3_mutation(q()).unwrap();
    let report = check_mutation_pair(&md);
    assert!(report.passed(), "{report}");
}

#[test]
fn empty_d_with_small_z_fails_at_m1() {
    let md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let x = o(&c, &["M1"]);
    let tx = md.ambient.shift.apply_object(&x);
    let zero = ObjectExpr::zero();
    let t = Triangle::new(c.zero_morphism(&x, &zero), c.zero_morphism(&zero, &tx), c.neg(&c.identity(&tx))).unwrap();
    let bad = MutationData::new(
        "bad",
        md.ambient.clone(),
        Subcategory::from_names(c.clone(), &["M1"]).unwrap(),
        Subcategory::empty(c.clone()),
        vec![Some(t), None],
        vec![None, None],
    )
    .unwrap();
    let report = check_mutation_pair(&bad);
    assert!(!report.passed());
    assert!(report.first_witness().unwrap().witness.contains("M1"), "{report}");
}

#[test]
fn empty_pair_passes_vacuously() {
    let md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let empty = MutationData::new(
        "empty",
        md.ambient.clone(),
        Subcategory::empty(c.clone()),
        Subcategory::empty(c.clone()),
        vec![None, None],
        vec![None, None],
    )
    .unwrap();
    assert!(check_mutation_pair(&empty).passed());
}

#[test]
fn sigma_on_stab3_quotient() {
    let md = stab3_mutation(q()).unwrap();
    let qt = QuotientTriangulation::new(&md).unwrap();
    let qc = qt.presentation();
    let m1 = o(qc, &["M1"]);
    assert_eq!(qt.sigma.apply_object(&m1), m1);
    let g = qc.generator_index("M1").unwrap();
    assert_eq!(qt.sigma.hom_map(g, g), &rclkit_core::Mat::identity(q(), 1));
    let zero = qc.zero_morphism(&m1, &m1);
    assert!(qt.shift_morphism(&zero).unwrap().is_zero());
    let id = qc.identity(&m1);
    assert_eq!(qt.shift_morphism(&id).unwrap(), id);
}

#[test]
fn standard_triangle_on_socle_inclusion() {
    let md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let iota = m(&c, &["M1"], &["M2"], &[1]);
    let witness = md.ambient.basic_triangle("A").cloned();
    let s = standard_triangle(&md, &iota, witness).unwrap();
    assert_eq!(s.z, c.identity(&o(&c, &["M1"])));
    let qt = QuotientTriangulation::new(&md).unwrap();
    let qc = qt.presentation();
    let f = qt.to_quotient(&s.ambient.f).unwrap();
    let g = qt.to_quotient(&s.ambient.g).unwrap();
    let z = qt.to_quotient(&s.z).unwrap();
    assert!(f.is_zero() && g.is_zero());
    assert!(qc.inverse(&z).unwrap().is_some());
}

#[test]
fn standard_triangle_on_identity() {
    let md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let x = o(&c, &["M1"]);
    let t = Triangle::identity(&c, &md.ambient.shift, &x);
    let s = standard_triangle(&md, &c.identity(&x), Some(t.clone())).unwrap();
    assert_eq!(s.ambient, t);
    assert!(s.z.coords.is_empty());
}

#[test]
fn zero_map_to_zero_object_is_not_d_monic() {
    let md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let f = c.zero_morphism(&o(&c, &["M1"]), &ObjectExpr::zero());
    let err = standard_triangle(&md, &f, None).unwrap_err();
    assert!(matches!(&err, Error::NotDMonic(w) if w.contains("M2")), "{err}");
}

#[test]
fn stab3_quotient_triangulation_passes() {
    for field in [q(), FieldSpec::PrimeField(101)] {
        let md = stab3_mutation(field).unwrap();
        let (qt, report) = verify_quotient_triangulation(&md);
        assert!(report.passed(), "{report}");
        assert!(report.notes.iter().any(|n| n.contains("TR2 not checked")));
        assert!(report.notes.iter().any(|n| n.contains("TR4 not checked")));
        let qt = qt.unwrap();
        assert!(!qt.registered.is_empty());
        let qc = qt.presentation();
        for t in &qt.registered {
            assert!(qc.compose(&t.g, &t.f).unwrap().is_zero());
            assert!(qc.compose(&t.h, &t.g).unwrap().is_zero());
        }
    }
}

#[test]
fn z_equal_to_d_gives_zero_quotient() {
    let md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let fixed = ["M1", "M2"].iter().map(|g| Some(Triangle::identity(&c, &md.ambient.shift, &o(&c, &[g])))).collect();
    let all = MutationData::new("all", md.ambient.clone(), Subcategory::all(c.clone()), Subcategory::all(c.clone()), fixed, vec![None, None]).unwrap();
    let (qt, report) = verify_quotient_triangulation(&all);
    assert!(report.passed(), "{report}");
    assert!(qt.unwrap().q.surviving_generators().is_empty());
}

#[test]
fn corrupted_beta_is_detected() {
    let mut md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let t = md.fixed[0].as_mut().unwrap();
    t.g = c.zero_morphism(&t.g.source, &t.g.target);
    let (_, report) = verify_quotient_triangulation(&md);
    assert!(!report.passed());
}

#[test]
fn identity_functor_pushes_a_pair_to_itself() {
    let md = stab3_mutation(q()).unwrap();
    let id = ExactFunctorData::strict(md.ambient.clone(), md.ambient.clone(), rclkit_core::LinearFunctor::identity(md.ambient.base.clone())).unwrap();
    assert!(validate_exact(&id).passed());
    let image = image_mutation_pair(&id, &md).unwrap();
    assert_eq!(image.z.members, md.z.members);
    assert_eq!(image.d.members, md.d.members);
    assert_eq!(image.fixed, md.fixed);
    let qt = QuotientTriangulation::new(&md).unwrap();
    let mut qt = qt;
    qt.register_generators();
    let (ft, report) = induced_exact_functor(&id, &qt, &qt).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(ft.hom_maps, rclkit_core::LinearFunctor::identity(qt.presentation().clone()).hom_maps);
}

#[test]
fn non_full_functor_is_rejected() {
    let md = stab3_mutation(q()).unwrap();
    let c = md.ambient.base.clone();
    let f = FunctorBuilder::new("F", c.clone(), c.clone())
        .object("M1", &["M1"])
        .unwrap()
        .object("M2", &["M2"])
        .unwrap()
        .map("pi", &[(q().one(), "pi")])
        .unwrap()
        .build()
        .unwrap();
    let e = ExactFunctorData::new(md.ambient.clone(), md.ambient.clone(), f, vec![c.identity(&o(&c, &["M2"])), c.identity(&o(&c, &["M1"]))])
        .unwrap();
    assert!(matches!(image_mutation_pair(&e, &md), Err(Error::NotFull(_))));
}

#[test]
fn prod_projection_gives_the_component_pair() {
    let tr = prod_triangulated_recollement(q()).unwrap();
    let md = prod_mutation(&tr).unwrap();
    let image = image_mutation_pair(&tr.exact[4], &md).unwrap();
    assert!(image.d.members.is_empty());
    assert_eq!(image.z.members.len(), 2);
    for t in image.fixed.iter().flatten() {
        assert!(t.y.is_empty());
    }
    let left = image_mutation_pair(&tr.exact[0], &md).unwrap();
    assert_eq!(left.d.names(), vec!["M2".to_string()]);
}

#[test]
fn images_under_every_full_exact_prod_functor_are_mutation_pairs() {
    let tr = prod_triangulated_recollement(q()).unwrap();
    let md = prod_mutation(&tr).unwrap();
    let ml = image_mutation_pair(&tr.exact[0], &md).unwrap();
    let mr = image_mutation_pair(&tr.exact[4], &md).unwrap();
    let sources = [&md, &ml, &md, &mr, &md, &mr];
    for (e, src) in tr.exact.iter().zip(sources) {
        assert!(validate_exact(e).passed(), "{}", validate_exact(e));
        assert!(e.fullness_witness().is_none());
        let image = image_mutation_pair(e, src).unwrap();
        assert!(check_mutation_pair(&image).passed(), "{}", e.name());
    }
}

#[test]
fn corrupted_shift_iso_is_detected() {
    let tr = prod_triangulated_recollement(q()).unwrap();
    let mut e = tr.exact[0].clone();
    let c = e.target.base.clone();
    let comp = &mut e.shift_iso.components[0];
    *comp = c.zero_morphism(&comp.source, &comp.target);
    assert!(!validate_exact(&e).passed());
}

#[test]
fn prod_recollement_of_quotients_passes() {
    let tr = prod_triangulated_recollement(q()).unwrap();
    let md = prod_mutation(&tr).unwrap();
    let out = triangulated_quotient_recollement(&tr, &md.d, &md, R3Semantics::Strict).unwrap();
    assert!(out.passed(), "{:?}", out.first_failure());
    assert_eq!(out.d_left.names(), vec!["M2".to_string()]);
    assert_eq!(out.exactness.len(), 6);
    let [ql, qm, qr] = &out.triangulations;
    assert_eq!(ql.q.surviving_generators().len(), 1);
    assert_eq!(qm.q.surviving_generators().len(), 3);
    assert_eq!(qr.q.surviving_generators().len(), 2);
    let c2m1 = qm.presentation().generator_index("C2.M1").unwrap();
    let c2m2 = qm.presentation().generator_index("C2.M2").unwrap();
    assert_eq!(qm.sigma.object_map[c2m1], ObjectExpr::single(c2m2));
}

#[test]
fn pipeline_additive_layer_matches_direct_quotient() {
    let tr = prod_triangulated_recollement(q()).unwrap();
    let md = prod_mutation(&tr).unwrap();
    let out = triangulated_quotient_recollement(&tr, &md.d, &md, R3Semantics::Strict).unwrap();
    let direct = quotient_recollement(&tr.recollement, &md.d, R3Semantics::Strict).unwrap();
    assert_eq!(out.additive.certificate, direct.certificate);
}

#[test]
fn d_outside_kernel_is_rejected() {
    let tr = prod_triangulated_recollement(q()).unwrap();
    let mut md = prod_mutation(&tr).unwrap();
    md.d = Subcategory::from_names(tr.middle.base.clone(), &["C2.M2"]).unwrap();
    let err = triangulated_quotient_recollement(&tr, &md.d, &md, R3Semantics::Strict).unwrap_err();
    match err {
        Error::Hypothesis { hypothesis, witness } => {
            assert!(hypothesis.contains("D ⊆ Ker j*"));
            assert!(witness.contains("C2.M2"));
        }
        other => panic!("{other}"),
    }
}

fn stab3_objects() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..2, 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sigma_is_independent_of_the_ladder(x in stab3_objects(), y in stab3_objects(), seed in prop::collection::vec(-3i64..=3, 0..8), extra in prop::collection::vec(-3i64..=3, 0..8)) {
        let md = stab3_mutation(q()).unwrap();
        let c = md.ambient.base.clone();
        let (x, y) = (ObjectExpr::new(x), ObjectExpr::new(y));
        let hs = c.hom_space(&x, &y);
        let coords = (0..hs.dim).map(|i| q().from_int(*seed.get(i).unwrap_or(&1))).collect();
        let f = c.morphism(&x, &y, coords).unwrap();
        let qt = QuotientTriangulation::new(&md).unwrap();
        let (particular, homogeneous) = ladder_solutions(&md, &f).unwrap();
        let mut z = particular[1].clone();
        for (k, sol) in homogeneous.iter().enumerate() {
            let s = q().from_int(*extra.get(k).unwrap_or(&2));
            z = c.add(&z, &c.scale(&sol[1], &s)).unwrap();
        }
        prop_assert_eq!(qt.to_quotient(&z).unwrap(), qt.to_quotient(&particular[1]).unwrap());
    }

    #[test]
    fn canonical_approximations_are_approximations(x in prop::collection::vec(0usize..3, 0..4), mask in 0u8..8) {
        let c = std::sync::Arc::new(a2_category(q()).unwrap());
        let d = Subcategory::new(c.clone(), (0..3).filter(|i| mask & (1 << i) != 0));
        let x = ObjectExpr::new(x);
        prop_assert!(is_d_epic(&c, &canonical_right_approximation(&c, &x, &d), &d).unwrap());
        prop_assert!(is_d_monic(&c, &canonical_left_approximation(&c, &x, &d), &d).unwrap());
    }
}
