use rclkit_core::adjunction::{
    hom_bijection, normalize_embedding, normalize_with, solve_unit_counit, validate_adjunction, EmbeddedSide,
};
use rclkit_core::samples::a2_recollement;
use rclkit_core::{Error, FieldSpec, LinearFunctor, ObjectExpr};

fn objects(n: usize) -> Vec<ObjectExpr> {
    let mut out = vec![ObjectExpr::zero()];
    for a in 0..n {
        out.push(ObjectExpr::single(a));
        for b in 0..n {
            out.push(ObjectExpr::new(vec![a, b]));
        }
    }
    out
}

#[test]
fn a2_adjunctions_validate() {
    for field in [FieldSpec::Rationals, FieldSpec::PrimeField(101)] {
        let r = a2_recollement(field).unwrap();
        for adj in &r.adjunctions {
            let report = validate_adjunction(adj);
            assert!(report.passed(), "{}: {:?}", adj.name, report.failures);
        }
    }
}

#[test]
fn hom_bijections_are_inverse() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    for adj in &r.adjunctions {
        for a in objects(adj.lower().num_generators()) {
            for b in objects(adj.upper().num_generators()) {
                let h = hom_bijection(adj, &a, &b).unwrap();
                assert!(h.is_mutually_inverse(), "{} at {:?}, {:?}", adj.name, a, b);
            }
        }
    }
}

fn is_identity_functor(f: &LinearFunctor) -> bool {
    let id = LinearFunctor::identity(f.source.clone());
    f.object_map == id.object_map && f.hom_maps == id.hom_maps
}

#[test]
fn normalization_makes_composite_literal_identity() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let [a1, a2, a3, a4] = &r.adjunctions;
    // i_* and j_* are right adjoint embeddings
    for adj in [a1, a4] {
        let n = normalize_with(adj, EmbeddedSide::Right).unwrap();
        assert!(is_identity_functor(&n.left.after(&n.right).unwrap()));
        assert!(n.counit.components.iter().all(|c| *c == n.upper().identity(&c.target)));
    }
    // i_* and j_! are left adjoint embeddings
    for adj in [a2, a3] {
        let n = normalize_embedding(adj).unwrap();
        assert!(is_identity_functor(&n.right.after(&n.left).unwrap()));
        assert!(n.unit.components.iter().all(|c| *c == n.lower().identity(&c.source)));
    }
}

#[test]
fn non_embedding_side_is_rejected() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    let err = normalize_with(&r.adjunctions[3], EmbeddedSide::Left).unwrap_err();
    assert!(matches!(err, Error::NotFullEmbedding(_)), "{err}");
}

#[test]
fn solver_recovers_known_adjunctions() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    for adj in &r.adjunctions {
        let found = solve_unit_counit(&adj.left, &adj.right).unwrap().expect("adjunction exists");
        assert!(validate_adjunction(&found).passed());
    }
}

#[test]
fn solver_rejects_non_adjoint_pair() {
    let r = a2_recollement(FieldSpec::Rationals).unwrap();
    assert!(solve_unit_counit(&r.j_lower, &r.j_upper).unwrap().is_none());
}
