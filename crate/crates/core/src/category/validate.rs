//! Axiom validation, Jacobson radicals of endomorphism rings, and isomorphism tests.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::object::ObjectExpr;
use super::presentation::FinLinCategory;
use crate::linalg::{Mat, Scalar, SubspaceBasis};
use crate::report::ValidationReport;

/// Associativity and unit laws on every basis triple, and locality of every
/// non-null generator's endomorphism ring in characteristic zero.
pub fn validate_category(c: &FinLinCategory) -> ValidationReport {
    let n = c.num_generators();
    let fld = c.field();
    let mut report = ValidationReport::new(format!("category {}", c.name()));
    for a in 0..n {
        for b in 0..n {
            for f in 0..c.hom_dim(a, b) {
                let fv = unit(c.hom_dim(a, b), f, fld);
                let left = c.compose_gen(a, b, b, c.identity_coords(b), &fv);
                let right = c.compose_gen(a, a, b, &fv, c.identity_coords(a));
                report.check(left == fv && right == fv, "identity law", || c.hom_basis(a, b)[f].clone());
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    if c.hom_dim(a, b) == 0 || c.hom_dim(b, cc) == 0 || c.hom_dim(cc, d) == 0 {
                        continue;
                    }
                    for h in 0..c.hom_dim(cc, d) {
                        for g in 0..c.hom_dim(b, cc) {
                            for f in 0..c.hom_dim(a, b) {
                                let hv = unit(c.hom_dim(cc, d), h, fld);
                                let gv = unit(c.hom_dim(b, cc), g, fld);
                                let fv = unit(c.hom_dim(a, b), f, fld);
                                let hg = c.compose_gen(b, cc, d, &hv, &gv);
                                let gf = c.compose_gen(a, b, cc, &gv, &fv);
                                let lhs = c.compose_gen(a, b, d, &hg, &fv);
                                let rhs = c.compose_gen(a, cc, d, &hv, &gf);
                                report.check(lhs == rhs, "associativity", || {
                                    format!(
                                        "({}, {}, {})",
                                        c.hom_basis(cc, d)[h],
                                        c.hom_basis(b, cc)[g],
                                        c.hom_basis(a, b)[f]
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for g in 0..n {
        if c.is_null(g) {
            report.note(format!("{} is a zero object", c.generator_name(g)));
            continue;
        }
        match radical(c, g) {
            Some(rad) => {
                let ok = rad.quotient_dim() == 1;
                report.check(ok, "local endomorphism ring", || {
                    format!("End({})/rad has dimension {}", c.generator_name(g), rad.quotient_dim())
                });
            }
            None => {}
        }
    }
    if fld.characteristic() != 0 && (0..n).any(|g| !c.is_null(g)) {
        report.note(format!("locality trusted without verification in characteristic {}", fld.characteristic()));
    }
    report
}

fn unit(dim: usize, k: usize, fld: crate::linalg::FieldSpec) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[k] = fld.one();
    v
}

/// Jacobson radical of `End(g)` as the kernel of the trace form of the left
/// regular representation. Only valid in characteristic zero; `None` otherwise.
pub fn radical(c: &FinLinCategory, g: usize) -> Option<SubspaceBasis> {
    let fld = c.field();
    if fld.characteristic() != 0 {
        return None;
    }
    let d = c.hom_dim(g, g);
    let trace_of_left_mult = |z: &[Scalar]| -> Scalar {
        (0..d).fold(Scalar::zero(), |acc, k| {
            let prod = c.compose_gen(g, g, g, z, &unit(d, k, fld));
            fld.add(&acc, &prod[k])
        })
    };
    let mut gram = Mat::zeros(fld, d, d);
    for i in 0..d {
        for j in 0..d {
            let z = c.compose_gen(g, g, g, &unit(d, i, fld), &unit(d, j, fld));
            gram.set(i, j, trace_of_left_mult(&z));
        }
    }
    Some(SubspaceBasis::span(fld, d, gram.nullspace()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Locality is unavailable (characteristic p) and the summand multisets differ.
    Unknown,
}

/// Decides `g ≅ h` for two non-null generators in characteristic zero: some
/// composite `G → H → G` of basis morphisms leaves the radical of `End(G)`.
pub fn generators_isomorphic(c: &FinLinCategory, g: usize, h: usize) -> Option<bool> {
    if g == h {
        return Some(true);
    }
    match (c.is_null(g), c.is_null(h)) {
        (true, true) => return Some(true),
        (true, false) | (false, true) => return Some(false),
        _ => {}
    }
    let rad = radical(c, g)?;
    for i in 0..c.hom_dim(g, h) {
        for j in 0..c.hom_dim(h, g) {
            let f = unit(c.hom_dim(g, h), i, c.field());
            let back = unit(c.hom_dim(h, g), j, c.field());
            let prod = c.compose_gen(g, h, g, &back, &f);
            if !rad.contains_vector(&prod) {
                return Some(true);
            }
        }
    }
    Some(false)
}

/// Isomorphism classes of non-null generators, as the smallest index in each class.
pub fn iso_class_representatives(c: &FinLinCategory) -> Option<Vec<Option<usize>>> {
    let n = c.num_generators();
    let mut rep: Vec<Option<usize>> = vec![None; n];
    for g in 0..n {
        if c.is_null(g) {
            continue;
        }
        let mut found = None;
        for h in 0..g {
            if let Some(r) = rep[h] {
                if r == h && generators_isomorphic(c, g, h)? {
                    found = Some(h);
                    break;
                }
            }
        }
        rep[g] = Some(found.unwrap_or(g));
    }
    Some(rep)
}

pub fn is_isomorphic(c: &FinLinCategory, a: &ObjectExpr, b: &ObjectExpr) -> IsoVerdict {
    let strip = |o: &ObjectExpr| -> ObjectExpr { o.summands().iter().copied().filter(|&g| !c.is_null(g)).collect() };
    let (a, b) = (strip(a), strip(b));
    if a.same_multiset(&b) {
        return IsoVerdict::Isomorphic;
    }
    let Some(rep) = iso_class_representatives(c) else {
        return IsoVerdict::Unknown;
    };
    let count = |o: &ObjectExpr| -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &g in o.summands() {
            *m.entry(rep[g].expect("non-null")).or_insert(0) += 1;
        }
        m
    };
    if count(&a) == count(&b) {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::NotIsomorphic
    }
}
