//! Canonical text of a workspace and its digest.

use std::fmt::Write;

use rclkit_core::{FieldSpec, Scalar};
use sha2::{Digest, Sha256};

use crate::ast::*;
use crate::lexer::SPECIAL;

fn name(n: &str) -> String {
    let plain = !n.is_empty()
        && n != "0"
        && n != "all"
        && !n.chars().any(|c| c.is_whitespace() || SPECIAL.contains(&c));
    if plain {
        n.to_string()
    } else {
        format!("\"{n}\"")
    }
}

fn names(ns: &[String]) -> String {
    ns.iter().map(|n| name(n)).collect::<Vec<_>>().join(" ")
}

fn coords(c: &[Scalar]) -> String {
    let parts: Vec<String> = c.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn object(o: &ObjectSpec) -> String {
    match o.as_slice() {
        [] => "0".into(),
        [g] => name(g),
        _ => format!("({})", names(o)),
    }
}

fn triangle(t: &TriangleDecl) -> String {
    format!(
        "{} {} {} : {} {} {}",
        object(&t.x),
        object(&t.y),
        object(&t.z),
        coords(&t.f),
        coords(&t.g),
        coords(&t.h)
    )
}

fn members(m: &Members) -> String {
    match m {
        Members::All => "all".into(),
        Members::List(l) => format!("[{}]", names(l)),
    }
}

/// Renders declarations in a fixed order with sorted names. Parsing the result
/// gives back equal declarations.
pub fn canonical_text(d: &Declarations) -> String {
    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "format {};", d.format_version);
    let field = match d.field {
        FieldSpec::Rationals => "Q".to_string(),
        FieldSpec::PrimeField(p) => format!("F_{p}"),
    };
    let _ = writeln!(w, "field {field};");
    for (n, c) in &d.categories {
        let _ = writeln!(w, "category {} {{", name(n));
        let _ = writeln!(w, "  generators {};", names(&c.generators));
        for ((a, b), basis) in &c.homs {
            let _ = writeln!(w, "  hom {} {} = [{}];", name(a), name(b), names(basis));
        }
        for (g, e) in &c.identities {
            let e = match e {
                Element::Named(e) => name(e),
                Element::Coords(c) => coords(c),
            };
            let _ = writeln!(w, "  identity {} = {e};", name(g));
        }
        for ((g, f), v) in &c.products {
            let _ = writeln!(w, "  product {} {} = {};", name(g), name(f), coords(v));
        }
        let _ = writeln!(w, "}}");
    }
    for (n, sc) in &d.subcategories {
        let _ = writeln!(w, "subcategory {} : {} = [{}];", name(n), name(&sc.category), names(&sc.members));
    }
    for (n, f) in &d.functors {
        let _ = writeln!(w, "functor {} : {} -> {} {{", name(n), name(&f.source), name(&f.target));
        for (g, o) in &f.objects {
            let _ = writeln!(w, "  object {} = {};", name(g), object(o));
        }
        for (e, c) in &f.maps {
            let _ = writeln!(w, "  map {} = {};", name(e), coords(c));
        }
        let _ = writeln!(w, "}}");
    }
    for (n, t) in &d.transformations {
        let _ = writeln!(w, "transformation {} : {} -> {} {{", name(n), name(&t.from), name(&t.to));
        for (g, c) in &t.components {
            let _ = writeln!(w, "  component {} = {};", name(g), coords(c));
        }
        let _ = writeln!(w, "}}");
    }
    for (n, a) in &d.adjunctions {
        let _ = writeln!(w, "adjunction {} : {} -| {} {{", name(n), name(&a.left), name(&a.right));
        for (g, c) in &a.unit {
            let _ = writeln!(w, "  unit {} = {};", name(g), coords(c));
        }
        for (g, c) in &a.counit {
            let _ = writeln!(w, "  counit {} = {};", name(g), coords(c));
        }
        let _ = writeln!(w, "}}");
    }
    for (n, r) in &d.recollements {
        let _ = writeln!(w, "recollement {} = [{}];", name(n), names(&r.adjunctions));
    }
    for (n, t) in &d.triangulated {
        let _ = writeln!(w, "triangulated {} : {} {{", name(n), name(&t.category));
        let _ = writeln!(w, "  shift {};", name(&t.shift));
        for (tn, td) in &t.triangles {
            let _ = writeln!(w, "  triangle {} = {};", name(tn), triangle(td));
        }
        let _ = writeln!(w, "}}");
    }
    for (n, e) in &d.exact {
        let _ = writeln!(w, "exact {} : {} : {} -> {} {{", name(n), name(&e.functor), name(&e.source), name(&e.target));
        for (g, c) in &e.phi {
            let _ = writeln!(w, "  phi {} = {};", name(g), coords(c));
        }
        let _ = writeln!(w, "}}");
    }
    for (n, m) in &d.mutations {
        let _ = writeln!(w, "mutation {} : {} {{", name(n), name(&m.triangulated));
        let _ = writeln!(w, "  z = {};", members(&m.z));
        let _ = writeln!(w, "  d = {};", members(&m.d));
        for (g, t) in &m.fixed {
            let _ = writeln!(w, "  fixed {} = {};", name(g), triangle(t));
        }
        for (g, t) in &m.cofixed {
            let _ = writeln!(w, "  cofixed {} = {};", name(g), triangle(t));
        }
        let _ = writeln!(w, "}}");
    }
    for (n, t) in &d.trirecollements {
        let _ = writeln!(w, "trirecollement {} : {} {{", name(n), name(&t.recollement));
        let _ = writeln!(w, "  left {};", name(&t.left));
        let _ = writeln!(w, "  middle {};", name(&t.middle));
        let _ = writeln!(w, "  right {};", name(&t.right));
        let _ = writeln!(w, "  exact [{}];", names(&t.exact));
        let _ = writeln!(w, "  mutation {};", name(&t.mutation));
        let _ = writeln!(w, "}}");
    }
    s
}

/// Hex SHA-256 of the canonical text.
pub fn digest(d: &Declarations) -> String {
    hex::encode(Sha256::digest(canonical_text(d).as_bytes()))
}
