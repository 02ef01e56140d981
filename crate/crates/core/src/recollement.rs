//! Recollements of additive categories: the (R1)–(R3) checker, restriction
//! to subcategories, and induced recollements on quotients.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::adjunction::{normalize_with, normalize_with_iso, transport_right, validate_adjunction, Adjunction, EmbeddedSide};
use crate::category::{
    generators_isomorphic, image_subcategory, kernel_subcategory, restrict_functor, FinLinCategory, FullSubcategory,
    LinearFunctor, ObjectExpr, Subcategory,
};
use crate::error::{Error, Result};
use crate::quotient::{build_quotient_named, induce_adjunction_between, QuotientCategory};
use crate::report::ValidationReport;
use crate::samples::RecollementData;

/// How membership in `Im i_*` and `Ker j*` is compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum R3Semantics {
    /// Literal generator supports.
    Strict,
    /// Both sides closed under isomorphism (null generators are zero objects).
    IsoClosed,
}

impl std::str::FromStr for R3Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(R3Semantics::Strict),
            "iso" | "iso-closed" => Ok(R3Semantics::IsoClosed),
            other => Err(Error::Inconsistent(format!("unknown semantics `{other}`"))),
        }
    }
}

/// A diagram `A' ⇄ A ⇄ A''` given by four adjunctions
/// `(i*, i_*)`, `(i_*, i^!)`, `(j_!, j*)`, `(j*, j_*)`.
#[derive(Clone, Debug)]
pub struct Recollement {
    pub name: String,
    pub left: Arc<FinLinCategory>,
    pub middle: Arc<FinLinCategory>,
    pub right: Arc<FinLinCategory>,
    pub adjunctions: [Adjunction; 4],
    pub normalized: bool,
    pub notes: Vec<String>,
}

fn same_functor(f: &LinearFunctor, g: &LinearFunctor) -> bool {
    f.source == g.source && f.target == g.target && f.object_map == g.object_map && f.hom_maps == g.hom_maps
}

impl Recollement {
    pub fn new(name: impl Into<String>, adjunctions: [Adjunction; 4]) -> Result<Self> {
        let name = name.into();
        let [a0, a1, a2, a3] = &adjunctions;
        if !same_functor(&a0.right, &a1.left) {
            return Err(Error::Inconsistent(format!(
                "`{name}`: right adjoint of {} differs from left adjoint of {}",
                a0.name, a1.name
            )));
        }
        if !same_functor(&a2.right, &a3.left) {
            return Err(Error::Inconsistent(format!(
                "`{name}`: right adjoint of {} differs from left adjoint of {}",
                a2.name, a3.name
            )));
        }
        let left = a0.upper().clone();
        let middle = a0.lower().clone();
        let right = a3.upper().clone();
        let shapes = [
            (a1.lower(), &left),
            (a1.upper(), &middle),
            (a2.lower(), &right),
            (a2.upper(), &middle),
            (a3.lower(), &middle),
        ];
        if shapes.iter().any(|(x, y)| x != y) {
            return Err(Error::BoundaryMismatch(format!("`{name}`: adjunctions do not fit one diagram")));
        }
        Ok(Recollement { name, left, middle, right, adjunctions, normalized: false, notes: Vec::new() })
    }

    pub fn from_data(name: impl Into<String>, data: &RecollementData) -> Result<Self> {
        Recollement::new(name, data.adjunctions.clone())
    }

    pub fn i_upper(&self) -> &LinearFunctor {
        &self.adjunctions[0].left
    }

    pub fn i_lower(&self) -> &LinearFunctor {
        &self.adjunctions[0].right
    }

    pub fn i_shriek(&self) -> &LinearFunctor {
        &self.adjunctions[1].right
    }

    pub fn j_shriek(&self) -> &LinearFunctor {
        &self.adjunctions[2].left
    }

    pub fn j_upper(&self) -> &LinearFunctor {
        &self.adjunctions[3].left
    }

    pub fn j_lower(&self) -> &LinearFunctor {
        &self.adjunctions[3].right
    }

    pub fn functors(&self) -> [&LinearFunctor; 6] {
        [self.i_upper(), self.i_lower(), self.i_shriek(), self.j_shriek(), self.j_upper(), self.j_lower()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecollementCertificate {
    pub subject: String,
    pub r1: ValidationReport,
    pub r2: ValidationReport,
    pub r3: ValidationReport,
    pub r3_semantics: R3Semantics,
    pub image_i_lower: Vec<String>,
    pub kernel_j_upper: Vec<String>,
    pub normalized: bool,
    pub notes: Vec<String>,
}

impl RecollementCertificate {
    pub fn passed(&self) -> bool {
        self.r1.passed() && self.r2.passed() && self.r3.passed()
    }

    pub fn first_failure(&self) -> Option<String> {
        [&self.r1, &self.r2, &self.r3]
            .iter()
            .find_map(|r| r.first_witness().map(|f| format!("{}: {f}", r.subject)))
    }
}

fn iso_closure(c: &FinLinCategory, set: &BTreeSet<usize>, notes: &mut Vec<String>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut unknown = false;
    for g in 0..c.num_generators() {
        if c.is_null(g) || set.contains(&g) {
            out.insert(g);
            continue;
        }
        for &s in set {
            match generators_isomorphic(c, g, s) {
                Some(true) => {
                    out.insert(g);
                    break;
                }
                Some(false) => {}
                None => unknown = true,
            }
        }
    }
    if unknown {
        notes.push(format!(
            "iso-closure in {} compares non-null generators literally (no radical in positive characteristic)",
            c.name()
        ));
    }
    out
}

pub fn check_recollement(r: &Recollement, semantics: R3Semantics) -> RecollementCertificate {
    let mut notes = r.notes.clone();
    let mut r1 = ValidationReport::new("R1 adjoint pairs");
    for adj in &r.adjunctions {
        r1.merge(&adj.name, validate_adjunction(adj));
    }
    let mut r2 = ValidationReport::new("R2 full embeddings");
    for f in [r.i_lower(), r.j_shriek(), r.j_lower()] {
        let w = f.full_embedding_witness();
        r2.check(w.is_none(), format!("{} is a full embedding", f.name), || w.unwrap_or_default());
    }
    let mut r3 = ValidationReport::new("R3 Im i_* = Ker j*");
    let m = &r.middle;
    let mut image = image_subcategory(r.i_lower()).members;
    let mut kernel = kernel_subcategory(r.j_upper()).members;
    if semantics == R3Semantics::IsoClosed {
        image = iso_closure(m, &image, &mut notes);
        kernel = iso_closure(m, &kernel, &mut notes);
    }
    let (il, ju) = (&r.i_lower().name, &r.j_upper().name);
    for g in 0..m.num_generators() {
        let (a, b) = (image.contains(&g), kernel.contains(&g));
        r3.check(a == b, "same generators", || {
            if b {
                format!("{} ∈ Ker {ju} \\ Im {il}", m.generator_name(g))
            } else {
                format!("{} ∈ Im {il} \\ Ker {ju}", m.generator_name(g))
            }
        });
    }
    let names = |s: &BTreeSet<usize>| s.iter().map(|&g| m.generator_name(g).to_string()).collect();
    RecollementCertificate {
        subject: r.name.clone(),
        r1,
        r2,
        r3,
        r3_semantics: semantics,
        image_i_lower: names(&image),
        kernel_j_upper: names(&kernel),
        normalized: r.normalized,
        notes,
    }
}

/// Replaces `i*`, `i^!` and `j*` by isomorphic functors so that
/// `i* i_* = i^! i_* = j* j_* = Id` on the nose; `(j_!, j*)` is transported
/// along the isomorphism used for `j*`.
pub fn normalize_recollement(r: &Recollement) -> Result<Recollement> {
    if r.normalized {
        return Ok(r.clone());
    }
    let [a0, a1, a2, a3] = &r.adjunctions;
    let n0 = normalize_with(a0, EmbeddedSide::Right)?;
    let n1 = normalize_with(a1, EmbeddedSide::Left)?;
    let (n3, theta) = normalize_with_iso(a3, EmbeddedSide::Right)?;
    let n2 = transport_right(a2, n3.left.clone(), &theta)?;
    let mut out = Recollement::new(r.name.clone(), [n0, n1, n2, n3])?;
    out.normalized = true;
    out.notes = r.notes.clone();
    let checks = [
        ("i* i_*", out.i_upper().after(out.i_lower())?),
        ("i^! i_*", out.i_shriek().after(out.i_lower())?),
        ("j* j_*", out.j_upper().after(out.j_lower())?),
        ("j* j_!", out.j_upper().after(out.j_shriek())?),
    ];
    for (label, f) in checks {
        let id = LinearFunctor::identity(f.source.clone());
        if f.object_map != id.object_map || f.hom_maps != id.hom_maps {
            out.notes.push(format!("normalization: {label} is isomorphic but not equal to the identity"));
        }
    }
    Ok(out)
}

fn composite_support_ok(
    m: &FinLinCategory,
    x: &Subcategory,
    first: &LinearFunctor,
    second: &LinearFunctor,
    report: &mut ValidationReport,
) {
    for &g in &x.members {
        let image = second.apply_object(&first.apply_object(&ObjectExpr::single(g)));
        let bad = image.summands().iter().find(|&&h| !x.contains_generator(h) && !m.is_null(h)).copied();
        report.check(
            bad.is_none(),
            format!("{} {} (X) ⊆ X", second.name, first.name),
            || {
                format!(
                    "{} {}({}) = {} ∉ {}",
                    second.name,
                    first.name,
                    m.generator_name(g),
                    m.display_object(&image),
                    x.display()
                )
            },
        );
    }
}

/// The four closure conditions `i_* i*(X)`, `j_* j*(X)`, `i_* i^!(X)`, `j_! j*(X) ⊆ X`.
pub fn closure_hypotheses(r: &Recollement, x: &Subcategory) -> ValidationReport {
    let mut report = ValidationReport::new(format!("closure hypotheses for {}", x.display()));
    let m = &r.middle;
    composite_support_ok(m, x, r.i_upper(), r.i_lower(), &mut report);
    composite_support_ok(m, x, r.j_upper(), r.j_lower(), &mut report);
    composite_support_ok(m, x, r.i_shriek(), r.i_lower(), &mut report);
    composite_support_ok(m, x, r.j_upper(), r.j_shriek(), &mut report);
    report
}

fn require(report: &ValidationReport) -> Result<()> {
    match report.first_witness() {
        None => Ok(()),
        Some(f) => Err(Error::hypothesis(f.check.clone(), f.witness.clone())),
    }
}

fn image_support(f: &LinearFunctor, x: &Subcategory) -> Subcategory {
    let members = x.members.iter().flat_map(|&g| f.object_map[g].summands().to_vec());
    Subcategory::new(f.target.clone(), members)
}

fn restrict_adjunction(adj: &Adjunction, left: LinearFunctor, right: LinearFunctor, lo: &FullSubcategory, up: &FullSubcategory) -> Result<Adjunction> {
    let relabel = |sub: &FullSubcategory, m: &crate::category::Morphism| {
        sub.relabel_morphism(m)
            .ok_or_else(|| Error::Inconsistent(format!("component of {} leaves the subcategory", adj.name)))
    };
    let unit = lo.embedding.iter().map(|&g| relabel(lo, &adj.unit.components[g])).collect::<Result<Vec<_>>>()?;
    let counit = up.embedding.iter().map(|&g| relabel(up, &adj.counit.components[g])).collect::<Result<Vec<_>>>()?;
    Adjunction::new(adj.name.clone(), left, right, unit, counit)
}

fn sub_name(c: &FinLinCategory, x: &Subcategory) -> String {
    format!("{}|{}", c.name(), x.display())
}

/// The recollement `(i*(X), X, j*(X))` of restriction functors.
pub fn restrict_to_subcategory(r: &Recollement, x: &Subcategory) -> Result<Recollement> {
    let r = normalize_recollement(r)?;
    require(&closure_hypotheses(&r, x))?;
    let xl = image_support(r.i_upper(), x);
    let xr = image_support(r.j_upper(), x);
    let sl = FullSubcategory::new(&xl, sub_name(&r.left, &xl))?;
    let sm = FullSubcategory::new(x, sub_name(&r.middle, x))?;
    let sr = FullSubcategory::new(&xr, sub_name(&r.right, &xr))?;
    let i_upper = restrict_functor(r.i_upper(), &sm, &sl)?;
    let i_lower = restrict_functor(r.i_lower(), &sl, &sm)?;
    let i_shriek = restrict_functor(r.i_shriek(), &sm, &sl)?;
    let j_shriek = restrict_functor(r.j_shriek(), &sr, &sm)?;
    let j_upper = restrict_functor(r.j_upper(), &sm, &sr)?;
    let j_lower = restrict_functor(r.j_lower(), &sr, &sm)?;
    let [a0, a1, a2, a3] = &r.adjunctions;
    let adjs = [
        restrict_adjunction(a0, i_upper, i_lower.clone(), &sm, &sl)?,
        restrict_adjunction(a1, i_lower, i_shriek, &sl, &sm)?,
        restrict_adjunction(a2, j_shriek, j_upper.clone(), &sr, &sm)?,
        restrict_adjunction(a3, j_upper, j_lower, &sm, &sr)?,
    ];
    let mut out = Recollement::new(format!("{}|{}", r.name, x.display()), adjs)?;
    out.normalized = true;
    out.notes = r.notes.clone();
    Ok(out)
}

/// The induced diagram on `A'/i*(X)`, `A/X`, `A''/j*(X)` and its certificate.
#[derive(Clone, Debug)]
pub struct QuotientRecollement {
    pub recollement: Recollement,
    pub quotients: [QuotientCategory; 3],
    pub certificate: RecollementCertificate,
    /// `X ⊆ Ker j*`.
    pub predicate: bool,
}

pub fn quotient_recollement(r: &Recollement, x: &Subcategory, semantics: R3Semantics) -> Result<QuotientRecollement> {
    let r = normalize_recollement(r)?;
    require(&closure_hypotheses(&r, x))?;
    let xl = image_support(r.i_upper(), x);
    let xr = image_support(r.j_upper(), x);
    let ql = build_quotient_named(&xl, format!("{}/{}", r.left.name(), xl.display()))?;
    let qm = build_quotient_named(x, format!("{}/{}", r.middle.name(), x.display()))?;
    let qr = build_quotient_named(&xr, format!("{}/{}", r.right.name(), xr.display()))?;
    let [a0, a1, a2, a3] = &r.adjunctions;
    let adjs = [
        induce_adjunction_between(a0, &qm, &ql)?,
        induce_adjunction_between(a1, &ql, &qm)?,
        induce_adjunction_between(a2, &qr, &qm)?,
        induce_adjunction_between(a3, &qm, &qr)?,
    ];
    let mut induced = Recollement::new(format!("{}/{}", r.name, x.display()), adjs)?;
    induced.normalized = true;
    induced.notes = r.notes.clone();
    let kernel = kernel_subcategory(r.j_upper());
    let predicate = x.is_subset(&kernel);
    let mut certificate = check_recollement(&induced, semantics);
    let verdict = certificate.passed();
    match semantics {
        R3Semantics::Strict => {
            let j = r.j_upper().name.clone();
            certificate.r3.check(verdict == predicate, format!("verdict agrees with X ⊆ Ker {j}"), || {
                format!("verdict {verdict}, predicate {predicate}")
            })
        }
        R3Semantics::IsoClosed if verdict != predicate => certificate.notes.push(format!(
            "iso-closed verdict {verdict} differs from the predicate X ⊆ Ker {} = {predicate}",
            r.j_upper().name
        )),
        R3Semantics::IsoClosed => {}
    }
    Ok(QuotientRecollement { recollement: induced, quotients: [ql, qm, qr], certificate, predicate })
}

/// `X = {G : j*G ∈ X'', i*G ∈ X', i^!G ∈ X'}` and the recollement restricted to it.
pub fn lift_subcategory_pair(r: &Recollement, xl: &Subcategory, xr: &Subcategory) -> Result<(Subcategory, Recollement)> {
    let r = normalize_recollement(r)?;
    let mut hyp = ValidationReport::new("lifting hypotheses");
    let within = |f: &LinearFunctor, g: usize, target: &Subcategory| {
        f.object_map[g].summands().iter().all(|&h| target.contains_generator(h) || f.target.is_null(h))
    };
    for &g in &xr.members {
        for (first, second) in [(r.j_lower(), r.i_upper()), (r.j_shriek(), r.i_shriek())] {
            let image = second.apply_object(&first.object_map[g]);
            let ok = image.summands().iter().all(|&h| xl.contains_generator(h) || r.left.is_null(h));
            hyp.check(ok, format!("{} {}(X'') ⊆ X'", second.name, first.name), || {
                format!(
                    "{} {}({}) = {} ∉ {}",
                    second.name,
                    first.name,
                    r.right.generator_name(g),
                    r.left.display_object(&image),
                    xl.display()
                )
            });
        }
    }
    require(&hyp)?;
    let members = (0..r.middle.num_generators()).filter(|&g| {
        within(r.j_upper(), g, xr) && within(r.i_upper(), g, xl) && within(r.i_shriek(), g, xl)
    });
    let x = Subcategory::new(r.middle.clone(), members);
    let il = image_support(r.i_upper(), &x);
    let jl = image_support(r.j_upper(), &x);
    let nonnull = |s: &Subcategory| -> BTreeSet<usize> {
        s.members.iter().copied().filter(|&g| !s.parent.is_null(g)).collect()
    };
    if nonnull(&il) != nonnull(xl) || nonnull(&jl) != nonnull(xr) {
        return Err(Error::hypothesis(
            "i*(X) = X' and j*(X) = X''",
            format!("i*(X) = {}, j*(X) = {}", il.display(), jl.display()),
        ));
    }
    let restricted = restrict_to_subcategory(&r, &x)?;
    Ok((x, restricted))
}

/// Quotient by `X = i_*(X')`.
pub fn quotient_by_left_subcategory(r: &Recollement, xl: &Subcategory, semantics: R3Semantics) -> Result<QuotientRecollement> {
    let r = normalize_recollement(r)?;
    let x = image_support(r.i_lower(), xl);
    quotient_recollement(&r, &x, semantics)
}
