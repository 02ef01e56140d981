use super::functor::LinearFunctor;
use super::object::ObjectExpr;
use super::presentation::Morphism;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A natural transformation `from ⇒ to`, one component `from(G) → to(G)` per
/// source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    pub from: LinearFunctor,
    pub to: LinearFunctor,
    pub components: Vec<Morphism>,
}

impl NatTransform {
    pub fn new(from: LinearFunctor, to: LinearFunctor, components: Vec<Morphism>) -> Result<Self> {
        if from.source != to.source || from.target != to.target {
            return Err(Error::BoundaryMismatch(format!(
                "`{}` and `{}` have different boundaries",
                from.name, to.name
            )));
        }
        if components.len() != from.source.num_generators() {
            return Err(Error::DimensionMismatch("one component per generator required".into()));
        }
        for (g, c) in components.iter().enumerate() {
            if c.source != from.object_map[g] || c.target != to.object_map[g] {
                return Err(Error::BoundaryMismatch(format!(
                    "component at {} has the wrong boundary",
                    from.source.generator_name(g)
                )));
            }
        }
        Ok(NatTransform { from, to, components })
    }

    pub fn identity(f: &LinearFunctor) -> Self {
        let components = f.object_map.iter().map(|o| f.target.identity(o)).collect();
        NatTransform { from: f.clone(), to: f.clone(), components }
    }

    /// Component at a formal sum: the block diagonal of generator components.
    pub fn component_at(&self, a: &ObjectExpr) -> Morphism {
        let parts: Vec<Morphism> = a.summands().iter().map(|&g| self.components[g].clone()).collect();
        self.from.target.direct_sum_all(&parts)
    }

    /// Naturality squares on every basis morphism, plus boundary checks.
    pub fn validate(&self) -> ValidationReport {
        let src = &self.from.source;
        let tgt = &self.from.target;
        let n = src.num_generators();
        let mut report = ValidationReport::new(format!("natural transformation {} ⇒ {}", self.from.name, self.to.name));
        for a in 0..n {
            for b in 0..n {
                for k in 0..src.hom_dim(a, b) {
                    let e = src.basis_morphism(&ObjectExpr::single(a), &ObjectExpr::single(b), k);
                    let lhs = tgt.compose(&self.components[b], &self.from.apply_morphism(&e));
                    let rhs = tgt.compose(&self.to.apply_morphism(&e), &self.components[a]);
                    let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
                    report.check(ok, "naturality", || src.hom_basis(a, b)[k].clone());
                }
            }
        }
        report
    }
}
