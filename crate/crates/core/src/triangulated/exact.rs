//! Exact functors, images of mutation pairs, and recollements of triangulated
//! quotients.

use super::mutation::{check_mutation_pair, verify_quotient_triangulation, MutationData, QuotientTriangulation};
use super::presentation::{Triangle, TriangulatedPresentation};
use crate::category::{
    kernel_subcategory, restrict_functor, validate_functor, FinLinCategory, LinearFunctor, Morphism, NatTransform,
    ObjectExpr, Subcategory,
};
use crate::error::{Error, Result};
use crate::quotient::induce_functor_between;
use crate::recollement::{quotient_recollement, QuotientRecollement, R3Semantics, Recollement};
use crate::report::ValidationReport;

/// A functor between triangulated presentations with `φ: F∘T ⇒ T'∘F`.
#[derive(Clone, Debug)]
pub struct ExactFunctorData {
    pub source: TriangulatedPresentation,
    pub target: TriangulatedPresentation,
    pub functor: LinearFunctor,
    pub shift_iso: NatTransform,
}

impl ExactFunctorData {
    pub fn new(
        source: TriangulatedPresentation,
        target: TriangulatedPresentation,
        functor: LinearFunctor,
        shift_iso: Vec<Morphism>,
    ) -> Result<Self> {
        if functor.source != source.base || functor.target != target.base {
            return Err(Error::BoundaryMismatch(format!(
                "`{}` does not run from {} to {}",
                functor.name, source.name, target.name
            )));
        }
        let from = functor.after(&source.shift)?;
        let to = target.shift.after(&functor)?;
        let shift_iso = NatTransform::new(from, to, shift_iso)?;
        Ok(ExactFunctorData { source, target, functor, shift_iso })
    }

    /// Exactness data whose shift isomorphism is the identity, for `F∘T = T'∘F`.
    pub fn strict(source: TriangulatedPresentation, target: TriangulatedPresentation, functor: LinearFunctor) -> Result<Self> {
        let from = functor.after(&source.shift)?;
        let components = from.object_map.iter().map(|o| target.base.identity(o)).collect();
        Self::new(source, target, functor, components)
    }

    pub fn name(&self) -> &str {
        &self.functor.name
    }

    /// `(FX, FY, FZ; Ff, Fg, φ_X ∘ Fh)`.
    pub fn map_triangle(&self, t: &Triangle) -> Result<Triangle> {
        let c = &self.target.base;
        let h = c.compose(&self.shift_iso.component_at(&t.x), &self.functor.apply_morphism(&t.h))?;
        Triangle::new(self.functor.apply_morphism(&t.f), self.functor.apply_morphism(&t.g), h)
    }

    pub fn fullness_witness(&self) -> Option<String> {
        self.functor.fullness_witness()
    }
}

/// Functor axioms, `φ` natural and invertible, and every basic triangle
/// mapped into the distinguished class.
pub fn validate_exact(e: &ExactFunctorData) -> ValidationReport {
    let mut report = ValidationReport::new(format!("exact functor {}", e.name()));
    report.merge("functor", validate_functor(&e.functor));
    report.merge("φ", e.shift_iso.validate());
    let c = &e.target.base;
    for (g, comp) in e.shift_iso.components.iter().enumerate() {
        let ok = matches!(c.inverse(comp), Ok(Some(_)));
        report.check(ok, "φ is invertible", || e.source.base.generator_name(g).to_string());
    }
    for (name, t) in &e.source.basic {
        let ok = match e.map_triangle(t) {
            Ok(img) => matches!(e.target.is_distinguished(&img), Ok(true)),
            Err(_) => false,
        };
        report.check(ok, "basic triangle maps to a distinguished triangle", || name.clone());
    }
    report
}

fn support(c: &FinLinCategory, f: &LinearFunctor, s: &Subcategory) -> Subcategory {
    let gens = s.members.iter().flat_map(|&g| f.object_map[g].summands().to_vec()).filter(|&h| !c.is_null(h));
    Subcategory::new(f.target.clone(), gens)
}

/// Pushes `Z`, `D` and the fixed and cofixed triangles along a full exact functor.
pub fn image_mutation_pair(e: &ExactFunctorData, m: &MutationData) -> Result<MutationData> {
    if let Some(w) = e.fullness_witness() {
        return Err(Error::NotFull(format!("{}: {w}", e.name())));
    }
    if m.ambient.base != e.source.base {
        return Err(Error::BoundaryMismatch(format!("`{}` is not defined on {}", e.name(), m.ambient.name)));
    }
    let pre = check_mutation_pair(m);
    if !pre.passed() {
        return Err(Error::hypothesis(format!("{} is a mutation pair", m.name), pre.to_string()));
    }
    let c2 = &e.target.base;
    let z2 = support(c2, &e.functor, &m.z);
    let d2 = support(c2, &e.functor, &m.d);
    let n2 = c2.num_generators();
    let mut fixed = vec![None; n2];
    let mut cofixed = vec![None; n2];
    for &g2 in &z2.members {
        let target = ObjectExpr::single(g2);
        let Some(&x) = m.z.members.iter().find(|&&x| e.functor.object_map[x] == target) else {
            return Err(Error::Inconsistent(format!(
                "{} has no preimage generator under {}",
                c2.generator_name(g2),
                e.name()
            )));
        };
        if let Some(t) = &m.fixed[x] {
            fixed[g2] = Some(e.map_triangle(t)?);
        }
        if let Some(t) = &m.cofixed[x] {
            cofixed[g2] = Some(e.map_triangle(t)?);
        }
    }
    let image = MutationData::new(format!("{}({})", e.name(), m.name), e.target.clone(), z2, d2, fixed, cofixed)?;
    let report = check_mutation_pair(&image);
    if !report.passed() {
        return Err(Error::Inconsistent(format!("image of a mutation pair fails: {report}")));
    }
    Ok(image)
}

fn alive(c: &FinLinCategory, o: &ObjectExpr) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..o.len()).filter(|&i| !c.is_null(o.summands()[i])).collect();
    idx.sort_by_key(|&i| (o.summands()[i], i));
    idx
}

/// The identity between two objects that agree after dropping zero summands
/// and sorting.
fn reindex(c: &FinLinCategory, from: &ObjectExpr, to: &ObjectExpr) -> Option<Morphism> {
    let (a, b) = (alive(c, from), alive(c, to));
    let gens = |o: &ObjectExpr, idx: &[usize]| idx.iter().map(|&i| o.summands()[i]).collect::<Vec<_>>();
    if gens(from, &a) != gens(to, &b) {
        return None;
    }
    let mut m = c.zero_morphism(from, to);
    for (&i, &j) in a.iter().zip(&b) {
        let g = from.summands()[i];
        c.place(&mut m, &c.identity(&ObjectExpr::single(g)), &[i], &[j]);
    }
    Some(m)
}

/// `F̃: Z/D → Z'/D'`, checking `σ'F̃ = F̃σ` and that standard triangles map
/// to standard triangles.
pub fn induced_exact_functor(
    e: &ExactFunctorData,
    qt: &QuotientTriangulation,
    qt2: &QuotientTriangulation,
) -> Result<(LinearFunctor, ValidationReport)> {
    let restricted = restrict_functor(&e.functor, &qt.zsub, &qt2.zsub)?;
    let ft = induce_functor_between(&restricted, &qt.q, &qt2.q)?;
    let (qc, qc2) = (qt.presentation(), qt2.presentation());
    let mut report = ValidationReport::new(format!("induced exact functor {}", e.name()));
    let alive_gens = qt.q.surviving_generators();
    for &g in &alive_gens {
        let x = ObjectExpr::single(g);
        let lhs = qt2.sigma.apply_object(&ft.apply_object(&x));
        let rhs = ft.apply_object(&qt.sigma.apply_object(&x));
        report.check(reindex(qc2, &lhs, &rhs).is_some(), "σ'F̃ = F̃σ on objects", || qc.generator_name(g).to_string());
    }
    for &a in &alive_gens {
        for &b in &alive_gens {
            for k in 0..qc.hom_dim(a, b) {
                let f = qc.basis_morphism(&ObjectExpr::single(a), &ObjectExpr::single(b), k);
                let lhs = qt2.sigma.apply_morphism(&ft.apply_morphism(&f));
                let rhs = ft.apply_morphism(&qt.shift_morphism(&f)?);
                report.check(qc2.canonicalize(&lhs) == qc2.canonicalize(&rhs), "σ'F̃ = F̃σ on morphisms", || {
                    qc.hom_basis(a, b)[k].clone()
                });
            }
        }
    }
    for t in &qt.registered {
        let image = (|| -> Result<Option<Triangle>> {
            let h = ft.apply_morphism(&t.h);
            let Some(r) = reindex(qc2, &h.target, &qt2.sigma.apply_object(&ft.apply_object(&t.x))) else {
                return Ok(None);
            };
            Ok(Some(Triangle::new(ft.apply_morphism(&t.f), ft.apply_morphism(&t.g), qc2.compose(&r, &h)?)?))
        })();
        let ok = match image {
            Ok(Some(img)) => matches!(qt2.is_standard(&img), Ok(true)),
            _ => false,
        };
        report.check(ok, "standard triangle maps to a standard triangle", || t.display(qc));
    }
    Ok((ft, report))
}

/// A recollement whose three categories carry triangulated presentations and
/// whose six functors carry exactness data, in the order
/// `i*, i_*, i^!, j_!, j*, j_*`.
#[derive(Clone, Debug)]
pub struct TriangulatedRecollement {
    pub recollement: Recollement,
    pub left: TriangulatedPresentation,
    pub middle: TriangulatedPresentation,
    pub right: TriangulatedPresentation,
    pub exact: [ExactFunctorData; 6],
}

impl TriangulatedRecollement {
    pub fn new(
        recollement: Recollement,
        left: TriangulatedPresentation,
        middle: TriangulatedPresentation,
        right: TriangulatedPresentation,
        exact: [ExactFunctorData; 6],
    ) -> Result<Self> {
        if left.base != recollement.left || middle.base != recollement.middle || right.base != recollement.right {
            return Err(Error::BoundaryMismatch("triangulated presentations do not match the recollement".into()));
        }
        for (f, e) in recollement.functors().iter().zip(&exact) {
            if f.object_map != e.functor.object_map || f.hom_maps != e.functor.hom_maps || f.source != e.functor.source {
                return Err(Error::BoundaryMismatch(format!("exactness data for `{}` carries another functor", f.name)));
            }
        }
        Ok(TriangulatedRecollement { recollement, left, middle, right, exact })
    }
}

#[derive(Clone, Debug)]
pub struct TriQuotientRecollement {
    pub additive: QuotientRecollement,
    /// `D'` with `i_*(D') = D`.
    pub d_left: Subcategory,
    /// Quotient triangulations of `C'/i*(D)`, `C/D`, `C''/j*(D)`.
    pub triangulations: [QuotientTriangulation; 3],
    pub triangulation_reports: [ValidationReport; 3],
    /// Induced functors in the order `i*, i_*, i^!, j_!, j*, j_*`.
    pub induced: Vec<LinearFunctor>,
    pub exactness: Vec<ValidationReport>,
    pub notes: Vec<String>,
}

impl TriQuotientRecollement {
    pub fn passed(&self) -> bool {
        self.additive.certificate.passed()
            && self.triangulation_reports.iter().all(ValidationReport::passed)
            && self.exactness.iter().all(ValidationReport::passed)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.additive
            .certificate
            .first_failure()
            .or_else(|| self.triangulation_reports.iter().chain(&self.exactness).find(|r| !r.passed()).map(ToString::to_string))
    }
}

/// `C'/i*(D) → C/D → C''` as a recollement of triangulated quotients.
pub fn triangulated_quotient_recollement(
    tr: &TriangulatedRecollement,
    d: &Subcategory,
    m: &MutationData,
    semantics: R3Semantics,
) -> Result<TriQuotientRecollement> {
    let r = &tr.recollement;
    let c = &r.middle;
    let j = r.j_upper();
    let ker = kernel_subcategory(j);
    if let Some(&g) = d.members.iter().find(|g| !ker.contains_generator(**g)) {
        return Err(Error::hypothesis(
            format!("D ⊆ Ker {}", j.name),
            format!("{}({}) = {} ≠ 0", j.name, c.generator_name(g), r.right.display_object(&j.object_map[g])),
        ));
    }
    if m.ambient.base != *c || m.d.members != d.members {
        return Err(Error::hypothesis("mutation data is relative to D", m.name.clone()));
    }
    if m.z.members.len() != c.num_generators() {
        return Err(Error::hypothesis("Z is the whole category", m.z.display()));
    }
    let i_lower = r.i_lower();
    let preimage: Vec<usize> = (0..r.left.num_generators())
        .filter(|&g| {
            let img = &i_lower.object_map[g];
            !c.is_zero_object(img) && img.summands().iter().all(|h| d.contains_generator(*h) || c.is_null(*h))
        })
        .collect();
    let d_left = Subcategory::new(r.left.clone(), preimage);
    let covered: std::collections::BTreeSet<usize> =
        d_left.members.iter().flat_map(|&g| i_lower.object_map[g].summands().to_vec()).collect();
    if let Some(&g) = d.members.iter().find(|g| !covered.contains(g) && !c.is_null(**g)) {
        return Err(Error::hypothesis(format!("D = {}(D')", i_lower.name), c.generator_name(g).to_string()));
    }
    let additive = quotient_recollement(r, d, semantics)?;
    let mut notes = vec![format!("density of {} and {} taken from normalization", r.i_upper().name, j.name)];
    let m_left = image_mutation_pair(&tr.exact[0], m)?;
    let m_right = image_mutation_pair(&tr.exact[4], m)?;
    if m_left.d.members != d_left.members {
        notes.push(format!("{}(D) = {} differs from D' = {}", r.i_upper().name, m_left.d.display(), d_left.display()));
    }
    let mut built = Vec::with_capacity(3);
    let mut reports = Vec::with_capacity(3);
    for data in [&m_left, m, &m_right] {
        let (qt, report) = verify_quotient_triangulation(data);
        let qt = qt.ok_or_else(|| Error::Inconsistent(report.to_string()))?;
        built.push(qt);
        reports.push(report);
    }
    let [ql, qm, qr]: [QuotientTriangulation; 3] = built.try_into().expect("three triangulations");
    let ends: [(&QuotientTriangulation, &QuotientTriangulation); 6] =
        [(&qm, &ql), (&ql, &qm), (&qm, &ql), (&qr, &qm), (&qm, &qr), (&qr, &qm)];
    let additive_functors = additive.recollement.functors();
    let mut induced = Vec::with_capacity(6);
    let mut exactness = Vec::with_capacity(6);
    for (k, (src, tgt)) in ends.iter().enumerate() {
        let e = &tr.exact[k];
        let mut report = validate_exact(e);
        let (ft, ex) = induced_exact_functor(e, src, tgt)?;
        report.merge("quotient", ex);
        let a = additive_functors[k];
        report.check(a.object_map == ft.object_map && a.hom_maps == ft.hom_maps, "agrees with the additive layer", || {
            ft.name.clone()
        });
        induced.push(ft);
        exactness.push(report);
    }
    let reports: [ValidationReport; 3] = reports.try_into().expect("three reports");
    Ok(TriQuotientRecollement {
        additive,
        d_left,
        triangulations: [ql, qm, qr],
        triangulation_reports: reports,
        induced,
        exactness,
        notes,
    })
}
