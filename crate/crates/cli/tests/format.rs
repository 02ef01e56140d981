use std::collections::BTreeMap;

use proptest::collection::{btree_map, btree_set, vec};
use proptest::prelude::*;
use rclkit_cli::ast::*;
use rclkit_cli::canon::{canonical_text, digest};
use rclkit_cli::{parse, resolve, CliError};
use rclkit_core::{FieldSpec, Scalar};

const A2: &str = include_str!("../fixtures/fix_a2.rcl");
const STAB3: &str = include_str!("../fixtures/fix_stab3.rcl");
const PROD: &str = include_str!("../fixtures/fix_prod.rcl");

#[test]
fn fixture_counts() {
    let d = parse(A2).unwrap().decls;
    assert_eq!((d.categories.len(), d.functors.len(), d.adjunctions.len()), (3, 6, 4));
    assert_eq!(d.recollements["A2"].adjunctions.len(), 4);
    let r = resolve(&parse(PROD).unwrap()).unwrap();
    assert_eq!(r.trirecollements.len(), 1);
    assert_eq!(r.exact.len(), 6);
}

#[test]
fn empty_file_is_a_workspace() {
    let ws = parse("").unwrap();
    assert_eq!(ws.decls, Declarations::default());
    assert!(resolve(&ws).unwrap().categories.is_empty());
    let ws = parse("# nothing here\nformat 1;\nfield F_7;\n").unwrap();
    assert_eq!(ws.decls.field, FieldSpec::PrimeField(7));
}

#[test]
fn syntax_errors_carry_positions() {
    let e = parse("format 1;\ncategory C {\n  generators a;\n  hom a a = [e]\n}\n").unwrap_err();
    assert_eq!((e.pos.line, e.pos.col), (5, 1), "{e}");
    let e = parse("field Q;\nfield Q;\n").unwrap_err();
    assert_eq!(e.pos.line, 2);
    assert!(e.message.contains("duplicate"), "{e}");
    let e = parse("format 2;").unwrap_err();
    assert!(e.to_string().starts_with("1:8:"), "{e}");
    assert!(parse("field F_6;").is_err());
    assert!(parse("wibble X;").unwrap_err().message.contains("wibble"));
    assert!(parse("subcategory X : \"open").is_err());
}

#[test]
fn duplicates_are_rejected() {
    let e = parse("category C { generators a; }\ncategory C { generators b; }").unwrap_err();
    assert!(e.message.contains("duplicate category `C`"), "{e}");
    assert_eq!(e.pos.line, 2);
    let e = parse("category C { generators a; hom a a = [e]; hom a a = [f]; }").unwrap_err();
    assert!(e.message.contains("duplicate"), "{e}");
}

#[test]
fn unknown_references_are_located() {
    let src = "format 1;\n\nsubcategory X : Nowhere = [a];\n";
    let err = resolve(&parse(src).unwrap()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let text = err.to_string();
    assert!(text.starts_with("3:"), "{text}");
    assert!(text.contains("unknown category `Nowhere`"), "{text}");

    let src = "category C { generators a; hom a a = [e]; identity a = e; product e e = [1]; }\n\
               functor F : C -> C { object a = b; }";
    let err = resolve(&parse(src).unwrap()).unwrap_err();
    assert!(matches!(err, CliError::Declaration { kind: "functor", .. }), "{err}");
    assert!(err.to_string().starts_with("2:"), "{err}");
}

#[test]
fn fixtures_round_trip_through_canonical_text() {
    for src in [A2, STAB3, PROD] {
        let d = parse(src).unwrap().decls;
        let canon = canonical_text(&d);
        assert_eq!(parse(&canon).unwrap().decls, d);
        assert_eq!(canonical_text(&parse(&canon).unwrap().decls), canon);
    }
}

#[test]
fn digest_ignores_layout() {
    let a = parse("category C{generators a;hom a a=[e];identity a=e;product e e=[1];}").unwrap();
    let b = parse("# same\ncategory C {\n  generators a;\n  product e e = [ 1 ];\n  identity a = e;\n  hom a a = [e];\n}\n").unwrap();
    assert_eq!(digest(&a.decls), digest(&b.decls));
    let c = parse("category C{generators a;hom a a=[e];identity a=e;product e e=[2];}").unwrap();
    assert_ne!(digest(&a.decls), digest(&c.decls));
    assert_eq!(digest(&a.decls).len(), 64);
}

fn name() -> impl Strategy<Value = String> {
    prop_oneof![
        8 => "[A-Za-z][A-Za-z0-9_.*!^'-]{0,5}",
        1 => Just("0".to_string()),
        1 => Just("all".to_string()),
        1 => "[a-z]{1,3} [a-z]{1,3}",
        1 => "[a-z]{1,2}[{}()\\[\\]:;=#][a-z]{0,2}",
    ]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-40i64..40, 1i64..9).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn coords() -> impl Strategy<Value = Coords> {
    vec(scalar(), 0..4)
}

fn object() -> impl Strategy<Value = ObjectSpec> {
    vec(name(), 0..3)
}

fn triangle() -> impl Strategy<Value = TriangleDecl> {
    (object(), object(), object(), coords(), coords(), coords())
        .prop_map(|(x, y, z, f, g, h)| TriangleDecl { x, y, z, f, g, h })
}

fn members() -> impl Strategy<Value = Members> {
    prop_oneof![Just(Members::All), vec(name(), 0..3).prop_map(Members::List)]
}

fn category() -> impl Strategy<Value = CategoryDecl> {
    (
        btree_set(name(), 0..4),
        btree_map((name(), name()), vec(name(), 0..3), 0..4),
        btree_map(name(), prop_oneof![name().prop_map(Element::Named), coords().prop_map(Element::Coords)], 0..3),
        btree_map((name(), name()), coords(), 0..4),
    )
        .prop_map(|(g, homs, identities, products)| CategoryDecl {
            generators: g.into_iter().collect(),
            homs,
            identities,
            products,
        })
}

fn declarations() -> impl Strategy<Value = Declarations> {
    let field = prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::PrimeField(101))];
    let functor = (name(), name(), btree_map(name(), object(), 0..3), btree_map(name(), coords(), 0..3))
        .prop_map(|(source, target, objects, maps)| FunctorDecl { source, target, objects, maps });
    let adjunction = (name(), name(), btree_map(name(), coords(), 0..3), btree_map(name(), coords(), 0..3))
        .prop_map(|(left, right, unit, counit)| AdjunctionDecl { left, right, unit, counit });
    let triangulated = (name(), name(), btree_map(name(), triangle(), 0..3))
        .prop_map(|(category, shift, triangles)| TriangulatedDecl { category, shift, triangles });
    let mutation = (name(), members(), members(), btree_map(name(), triangle(), 0..2), btree_map(name(), triangle(), 0..2))
        .prop_map(|(triangulated, z, d, fixed, cofixed)| MutationDecl { triangulated, z, d, fixed, cofixed });
    let tri = (name(), name(), name(), name(), vec(name(), 6), name()).prop_map(
        |(recollement, left, middle, right, exact, mutation)| TriRecollementDecl {
            recollement,
            left,
            middle,
            right,
            exact,
            mutation,
        },
    );
    (
        field,
        btree_map(name(), category(), 0..3),
        btree_map(name(), (name(), vec(name(), 0..3)), 0..2),
        btree_map(name(), functor, 0..3),
        btree_map(name(), adjunction, 0..2),
        btree_map(name(), vec(name(), 4), 0..2),
        btree_map(name(), triangulated, 0..2),
        btree_map(name(), (name(), name(), name(), btree_map(name(), coords(), 0..2)), 0..2),
        btree_map(name(), mutation, 0..2),
        btree_map(name(), tri, 0..2),
        btree_map(name(), (name(), name(), btree_map(name(), coords(), 0..2)), 0..2),
    )
        .prop_map(|(field, categories, subs, functors, adjunctions, recs, triangulated, exact, mutations, tris, nts)| {
            Declarations {
                format_version: 1,
                field,
                categories,
                subcategories: subs
                    .into_iter()
                    .map(|(n, (category, members))| (n, SubcategoryDecl { category, members }))
                    .collect(),
                functors,
                transformations: nts
                    .into_iter()
                    .map(|(n, (from, to, components))| (n, TransformationDecl { from, to, components }))
                    .collect(),
                adjunctions,
                recollements: recs.into_iter().map(|(n, adjunctions)| (n, RecollementDecl { adjunctions })).collect(),
                triangulated,
                exact: exact
                    .into_iter()
                    .map(|(n, (functor, source, target, phi))| (n, ExactDecl { functor, source, target, phi }))
                    .collect::<BTreeMap<_, _>>(),
                mutations,
                trirecollements: tris,
            }
        })
}

proptest! {
    #[test]
    fn canonical_text_round_trips(d in declarations()) {
        let text = canonical_text(&d);
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?.decls;
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(canonical_text(&back), text);
        prop_assert_eq!(digest(&back), digest(&d));
    }
}
