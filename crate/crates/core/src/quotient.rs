//! Ideals of morphisms factoring through a subcategory, additive quotients,
//! and the functors and adjunctions they induce.

use std::sync::Arc;

use crate::adjunction::{validate_adjunction, Adjunction};
use crate::category::{FinLinCategory, LinearFunctor, Morphism, ObjectExpr, Subcategory};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar, SubspaceBasis};
use crate::report::ValidationReport;

/// The ideal `[X]` as one subspace of `Hom(a, b)` per generator pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismIdeal {
    pub parent: Arc<FinLinCategory>,
    pub through: Subcategory,
    /// Indexed by `a * n + b`.
    pub table: Vec<SubspaceBasis>,
}

impl MorphismIdeal {
    pub fn new(through: &Subcategory) -> Self {
        let c = through.parent.clone();
        let n = c.num_generators();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(generator_ideal(&c, a, b, through));
            }
        }
        MorphismIdeal { parent: c, through: through.clone(), table }
    }

    pub fn at(&self, a: usize, b: usize) -> &SubspaceBasis {
        &self.table[a * self.parent.num_generators() + b]
    }

    /// `[X](A, B)` for formal sums, in the block layout of `Hom(A, B)`.
    pub fn subspace(&self, a: &ObjectExpr, b: &ObjectExpr) -> SubspaceBasis {
        let c = &self.parent;
        let space = c.hom_space(a, b);
        let mut vectors = Vec::new();
        for (ti, &t) in b.summands().iter().enumerate() {
            for (si, &s) in a.summands().iter().enumerate() {
                let range = space.block_range(ti, si);
                for v in self.at(s, t).basis() {
                    let mut w = vec![c.field().zero(); space.dim];
                    w[range.clone()].clone_from_slice(v);
                    vectors.push(w);
                }
            }
        }
        SubspaceBasis::span(c.field(), space.dim, vectors)
    }

    pub fn contains(&self, m: &Morphism) -> bool {
        self.subspace(&m.source, &m.target).contains_vector(&m.coords)
    }
}

fn generator_ideal(c: &FinLinCategory, a: usize, b: usize, x: &Subcategory) -> SubspaceBasis {
    let fld = c.field();
    let mut vectors = Vec::new();
    for &g in &x.members {
        let dag = c.hom_dim(a, g);
        let dgb = c.hom_dim(g, b);
        for i in 0..dgb {
            for j in 0..dag {
                let mut h = vec![fld.zero(); dgb];
                h[i] = fld.one();
                let mut f = vec![fld.zero(); dag];
                f[j] = fld.one();
                vectors.push(c.compose_gen(a, g, b, &h, &f));
            }
        }
    }
    SubspaceBasis::span(fld, c.hom_dim(a, b), vectors)
}

/// Span of all `h ∘ g` with `g: a → X`, `h: X → b` and `X` a member of `x`.
pub fn ideal_subspace(c: &FinLinCategory, a: &ObjectExpr, b: &ObjectExpr, x: &Subcategory) -> SubspaceBasis {
    let space = c.hom_space(a, b);
    let mut vectors = Vec::new();
    for (ti, &t) in b.summands().iter().enumerate() {
        for (si, &s) in a.summands().iter().enumerate() {
            let range = space.block_range(ti, si);
            for v in generator_ideal(c, s, t, x).basis() {
                let mut w = vec![c.field().zero(); space.dim];
                w[range.clone()].clone_from_slice(v);
                vectors.push(w);
            }
        }
    }
    SubspaceBasis::span(c.field(), space.dim, vectors)
}

/// `A / [X]`. The presentation keeps every parent generator (with the same
/// index); generators of `X` become null.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCategory {
    pub presentation: Arc<FinLinCategory>,
    pub from: Arc<FinLinCategory>,
    pub ideal: MorphismIdeal,
    /// `Q: A → A/X`.
    pub projection: LinearFunctor,
    /// Per generator pair, the lift `Hom_{A/X}(a, b) → Hom_A(a, b)` onto the
    /// echelon complement of the ideal.
    pub section: Vec<Mat>,
}

impl QuotientCategory {
    pub fn surviving_generators(&self) -> Vec<usize> {
        (0..self.presentation.num_generators()).filter(|&g| !self.presentation.is_null(g)).collect()
    }

    fn n(&self) -> usize {
        self.from.num_generators()
    }

    /// Residue class of a parent morphism between formal sums.
    pub fn project(&self, m: &Morphism) -> Morphism {
        self.projection.apply_morphism(m)
    }

    /// The canonical coset representative of a quotient morphism.
    pub fn lift(&self, m: &Morphism) -> Morphism {
        let q = &self.presentation;
        let mut out = self.from.zero_morphism(&m.source, &m.target);
        let big = self.from.hom_space(&m.source, &m.target);
        let small = q.hom_space(&m.source, &m.target);
        for (ti, &t) in m.target.summands().iter().enumerate() {
            for (si, &s) in m.source.summands().iter().enumerate() {
                let v = self.section[s * self.n() + t].apply(&m.coords[small.block_range(ti, si)]);
                out.coords[big.block_range(ti, si)].clone_from_slice(&v);
            }
        }
        out
    }

    pub fn subcategory(&self, x: &Subcategory) -> Subcategory {
        x.on(self.presentation.clone())
    }
}

pub fn build_quotient(x: &Subcategory) -> Result<QuotientCategory> {
    build_quotient_named(x, format!("{}/add{}", x.parent.name(), x.display()))
}

pub fn build_quotient_named(x: &Subcategory, name: impl Into<String>) -> Result<QuotientCategory> {
    let c = x.parent.clone();
    let fld = c.field();
    let n = c.num_generators();
    let ideal = MorphismIdeal::new(x);
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(n * n);
    let mut hom_bases = Vec::with_capacity(n * n);
    let mut section = Vec::with_capacity(n * n);
    let mut proj = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let sub = ideal.at(a, b);
            let cols = sub.complement_columns();
            let dim = c.hom_dim(a, b);
            hom_bases.push(cols.iter().map(|&k| c.hom_basis(a, b)[k].clone()).collect::<Vec<_>>());
            let mut s = Mat::zeros(fld, dim, cols.len());
            for (j, &k) in cols.iter().enumerate() {
                s.set(k, j, fld.one());
            }
            section.push(s);
            let mut p = Mat::zeros(fld, cols.len(), dim);
            for k in 0..dim {
                let mut e = vec![fld.zero(); dim];
                e[k] = fld.one();
                let r = sub.reduce(&e);
                for (j, &kk) in cols.iter().enumerate() {
                    p.set(j, k, r[kk].clone());
                }
            }
            proj.push(p);
            keep.push(cols);
        }
    }
    let reduce_to = |a: usize, b: usize, v: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.at(a, b).reduce(v);
        keep[a * n + b].iter().map(|&k| r[k].clone()).collect()
    };
    let identities: Vec<Vec<Scalar>> = (0..n).map(|g| reduce_to(g, g, c.identity_coords(g))).collect();
    let mut comp = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (fab, fbc) = (&keep[a * n + b], &keep[b * n + cc]);
                let dac = keep[a * n + cc].len();
                let mut table = vec![fld.zero(); fbc.len() * fab.len() * dac];
                for (i, &gi) in fbc.iter().enumerate() {
                    for (j, &fj) in fab.iter().enumerate() {
                        let mut g = vec![fld.zero(); c.hom_dim(b, cc)];
                        g[gi] = fld.one();
                        let mut f = vec![fld.zero(); c.hom_dim(a, b)];
                        f[fj] = fld.one();
                        let v = reduce_to(a, cc, &c.compose_gen(a, b, cc, &g, &f));
                        for (k, x) in v.into_iter().enumerate() {
                            table[(i * fab.len() + j) * dac + k] = x;
                        }
                    }
                }
                comp.push(table);
            }
        }
    }
    let presentation = Arc::new(FinLinCategory::new(
        name,
        fld,
        c.generators().to_vec(),
        hom_bases,
        identities,
        comp,
    )?);
    let projection = LinearFunctor::new(
        format!("Q_{}", c.name()),
        c.clone(),
        presentation.clone(),
        (0..n).map(ObjectExpr::single).collect(),
        proj,
    )?;
    Ok(QuotientCategory { presentation, from: c, ideal, projection, section })
}

/// Checks the defining properties of a quotient: dimensions, null members,
/// functoriality of the projection, and the ideal property.
pub fn validate_quotient(q: &QuotientCategory) -> ValidationReport {
    let c = &q.from;
    let n = c.num_generators();
    let mut report = ValidationReport::new(format!("quotient {}", q.presentation.name()));
    report.merge("presentation", crate::category::validate_category(&q.presentation));
    report.merge("projection", crate::category::validate_functor(&q.projection));
    for a in 0..n {
        for b in 0..n {
            let ok = q.presentation.hom_dim(a, b) + q.ideal.at(a, b).dim() == c.hom_dim(a, b);
            report.check(ok, "dim Hom_quot + dim ideal = dim Hom", || {
                format!("({}, {})", c.generator_name(a), c.generator_name(b))
            });
        }
    }
    for &g in &q.ideal.through.members {
        report.check(q.presentation.is_null(g), "members become zero", || c.generator_name(g).to_string());
    }
    report.merge("ideal", check_ideal_property(&q.ideal));
    report
}

/// Pre- and post-composition with basis morphisms preserves the ideal, and
/// members' identities lie in it.
pub fn check_ideal_property(ideal: &MorphismIdeal) -> ValidationReport {
    let c = &ideal.parent;
    let fld = c.field();
    let n = c.num_generators();
    let mut report = ValidationReport::new("two-sided ideal");
    for a in 0..n {
        for b in 0..n {
            for v in ideal.at(a, b).basis() {
                for d in 0..n {
                    for k in 0..c.hom_dim(b, d) {
                        let mut e = vec![fld.zero(); c.hom_dim(b, d)];
                        e[k] = fld.one();
                        let w = c.compose_gen(a, b, d, &e, v);
                        report.check(ideal.at(a, d).contains_vector(&w), "closed under post-composition", || {
                            format!("{} after an ideal element of Hom({}, {})", c.hom_basis(b, d)[k], c.generator_name(a), c.generator_name(b))
                        });
                    }
                    for k in 0..c.hom_dim(d, a) {
                        let mut e = vec![fld.zero(); c.hom_dim(d, a)];
                        e[k] = fld.one();
                        let w = c.compose_gen(d, a, b, v, &e);
                        report.check(ideal.at(d, b).contains_vector(&w), "closed under pre-composition", || {
                            format!("an ideal element of Hom({}, {}) after {}", c.generator_name(a), c.generator_name(b), c.hom_basis(d, a)[k])
                        });
                    }
                }
            }
        }
    }
    for &g in &ideal.through.members {
        report.check(ideal.at(g, g).contains_vector(c.identity_coords(g)), "member identity in ideal", || {
            c.generator_name(g).to_string()
        });
    }
    report
}

/// The unique `F̃` with `F = F̃ ∘ Q`.
pub fn factor_through_quotient(f: &LinearFunctor, q: &QuotientCategory) -> Result<LinearFunctor> {
    if f.source != q.from {
        return Err(Error::BoundaryMismatch(format!("`{}` is not defined on {}", f.name, q.from.name())));
    }
    for &g in &q.ideal.through.members {
        let image = &f.object_map[g];
        if !f.target.is_zero_object(image) {
            return Err(Error::hypothesis(
                format!("{} kills every member of the ideal", f.name),
                format!("{}({}) = {} ≠ 0", f.name, q.from.generator_name(g), f.target.display_object(image)),
            ));
        }
    }
    let n = q.n();
    let mut hom_maps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let m = f.hom_map(a, b);
            for v in q.ideal.at(a, b).basis() {
                if m.apply(v).iter().any(|x| *x != f.target.field().zero()) {
                    return Err(Error::Inconsistent(format!(
                        "{} does not vanish on the ideal in Hom({}, {})",
                        f.name,
                        q.from.generator_name(a),
                        q.from.generator_name(b)
                    )));
                }
            }
            hom_maps.push(m.mul(&q.section[a * n + b])?);
        }
    }
    let tilde = LinearFunctor::new(
        f.name.clone(),
        q.presentation.clone(),
        f.target.clone(),
        f.object_map.clone(),
        hom_maps,
    )?;
    let back = tilde.after(&q.projection)?;
    if back.hom_maps != f.hom_maps {
        return Err(Error::Inconsistent(format!("factorization of {} through the quotient is not unique", f.name)));
    }
    Ok(tilde)
}

fn check_containment(f: &LinearFunctor, x: &Subcategory, x2: &Subcategory) -> Result<()> {
    for &g in &x.members {
        for &h in f.object_map[g].summands() {
            if !x2.contains_generator(h) && !f.target.is_null(h) {
                return Err(Error::hypothesis(
                    format!("{} maps {} into {}", f.name, x.display(), x2.display()),
                    format!("{}({}) contains {}", f.name, f.source.generator_name(g), f.target.generator_name(h)),
                ));
            }
        }
    }
    Ok(())
}

/// `F̃: A/X → B/X'` with `Q' ∘ F = F̃ ∘ Q`.
pub fn induce_functor_between(f: &LinearFunctor, q: &QuotientCategory, q2: &QuotientCategory) -> Result<LinearFunctor> {
    if f.target != q2.from {
        return Err(Error::BoundaryMismatch(format!("`{}` does not land in {}", f.name, q2.from.name())));
    }
    check_containment(f, &q.ideal.through, &q2.ideal.through)?;
    let composite = q2.projection.after(f)?.with_name(f.name.clone());
    factor_through_quotient(&composite, q)
}

pub fn induce_functor(f: &LinearFunctor, x: &Subcategory, x2: &Subcategory) -> Result<LinearFunctor> {
    induce_functor_between(f, &build_quotient(x)?, &build_quotient(x2)?)
}

/// For every ideal element `r ∈ [X'](F a, b)` the transpose `G(r) ∘ η_a`
/// lies in `[X](a, G b)`, so the induced bijection is well defined.
pub fn well_definedness_audit(adj: &Adjunction, x: &Subcategory, x2: &Subcategory) -> Result<ValidationReport> {
    let c = adj.lower();
    let d = adj.upper();
    let mut report = ValidationReport::new(format!("well-definedness of {}", adj.name));
    for a in 0..c.num_generators() {
        let ao = ObjectExpr::single(a);
        let fa = adj.left.apply_object(&ao);
        for b in 0..d.num_generators() {
            let bo = ObjectExpr::single(b);
            let gb = adj.right.apply_object(&bo);
            let target_ideal = ideal_subspace(c, &ao, &gb, x);
            for v in ideal_subspace(d, &fa, &bo, x2).basis() {
                let r = d.morphism(&fa, &bo, v.clone())?;
                let t = adj.eta(&ao, &r)?;
                report.check(target_ideal.contains_vector(&t.coords), "transpose of ideal element lies in ideal", || {
                    format!("{} at ({}, {})", d.display_morphism(&r), c.generator_name(a), d.generator_name(b))
                });
            }
            let source_ideal = ideal_subspace(d, &fa, &bo, x2);
            for v in ideal_subspace(c, &ao, &gb, x).basis() {
                let s = c.morphism(&ao, &gb, v.clone())?;
                let t = adj.tau(&bo, &s)?;
                report.check(source_ideal.contains_vector(&t.coords), "inverse transpose of ideal element lies in ideal", || {
                    format!("{} at ({}, {})", c.display_morphism(&s), c.generator_name(a), d.generator_name(b))
                });
            }
        }
    }
    Ok(report)
}

/// The adjunction between induced functors on `C/X` and `D/X'`, with unit and
/// counit the residue classes of the originals.
pub fn induce_adjunction_between(adj: &Adjunction, q: &QuotientCategory, q2: &QuotientCategory) -> Result<Adjunction> {
    let (x, x2) = (&q.ideal.through, &q2.ideal.through);
    check_containment(&adj.left, x, x2)?;
    check_containment(&adj.right, x2, x)?;
    let left = induce_functor_between(&adj.left, q, q2)?;
    let right = induce_functor_between(&adj.right, q2, q)?;
    let unit = adj.unit.components.iter().map(|m| q.project(m)).collect();
    let counit = adj.counit.components.iter().map(|m| q2.project(m)).collect();
    let induced = Adjunction::new(adj.name.clone(), left, right, unit, counit)?;
    let report = validate_adjunction(&induced);
    if !report.passed() {
        return Err(Error::Inconsistent(format!(
            "induced adjunction {} fails: {}",
            adj.name,
            report.first_witness().map(ToString::to_string).unwrap_or_default()
        )));
    }
    let audit = well_definedness_audit(adj, x, x2)?;
    if !audit.passed() {
        return Err(Error::Inconsistent(format!(
            "well-definedness audit for {} fails: {}",
            adj.name,
            audit.first_witness().map(ToString::to_string).unwrap_or_default()
        )));
    }
    Ok(induced)
}

pub fn induce_adjunction(adj: &Adjunction, x: &Subcategory, x2: &Subcategory) -> Result<Adjunction> {
    induce_adjunction_between(adj, &build_quotient(x)?, &build_quotient(x2)?)
}
