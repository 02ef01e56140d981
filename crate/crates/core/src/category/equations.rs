//! Linear equations whose unknowns are morphisms.

use super::presentation::{FinLinCategory, HomSpace, Morphism};
use crate::error::Result;
use crate::linalg::{generic_combinations, LinearSystem};

pub type Term<'a> = (usize, &'a dyn Fn(&Morphism) -> Result<Morphism>);

/// Unknown morphisms `u_0, …, u_k` in fixed Hom spaces, constrained by
/// equations `Σ L_i(u_{j_i}) = rhs` with each `L_i` linear.
pub struct MorphismSystem<'c> {
    cat: &'c FinLinCategory,
    unknowns: Vec<HomSpace>,
    sys: LinearSystem,
}

impl<'c> MorphismSystem<'c> {
    pub fn new(cat: &'c FinLinCategory, unknowns: Vec<HomSpace>) -> Self {
        let dims: Vec<usize> = unknowns.iter().map(|h| h.dim).collect();
        MorphismSystem { cat, sys: LinearSystem::new(cat.field(), &dims), unknowns }
    }

    pub fn equation(&mut self, terms: &[Term<'_>], rhs: &Morphism) -> Result<()> {
        let mats = terms
            .iter()
            .map(|(j, f)| self.cat.linear_map(&self.unknowns[*j], rhs, f).map(|m| (*j, m)))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<(usize, &crate::linalg::Mat)> = mats.iter().map(|(j, m)| (*j, m)).collect();
        self.sys.add_equation(&refs, &rhs.coords)
    }

    /// Homogeneous form: `Σ L_i(u_{j_i}) = 0` in `Hom(source, target)`.
    pub fn homogeneous(&mut self, terms: &[Term<'_>], source: &super::ObjectExpr, target: &super::ObjectExpr) -> Result<()> {
        let zero = self.cat.zero_morphism(source, target);
        self.equation(terms, &zero)
    }

    fn wrap(&self, blocks: Vec<Vec<crate::linalg::Scalar>>) -> Vec<Morphism> {
        blocks
            .into_iter()
            .zip(&self.unknowns)
            .map(|(coords, h)| Morphism { source: h.source.clone(), target: h.target.clone(), coords })
            .collect()
    }

    pub fn solve(&self) -> Result<Option<Vec<Morphism>>> {
        Ok(self.sys.solve()?.map(|b| self.wrap(b)))
    }

    pub fn homogeneous_basis(&self) -> Vec<Vec<Morphism>> {
        self.sys.homogeneous_basis().into_iter().map(|b| self.wrap(b)).collect()
    }

    /// Points of the homogeneous solution space: the sum of the basis, each
    /// basis element, then `tries` seeded combinations. Just zero when the
    /// space is trivial.
    pub fn generic_solutions(&self, tries: usize) -> Vec<Vec<Morphism>> {
        let basis: Vec<Vec<_>> = self.sys.homogeneous_basis().into_iter().map(|b| b.concat()).collect();
        let dims: Vec<usize> = self.unknowns.iter().map(|h| h.dim).collect();
        if basis.is_empty() {
            return vec![self.wrap(dims.iter().map(|&d| vec![self.cat.field().zero(); d]).collect())];
        }
        generic_combinations(self.cat.field(), &basis, tries)
            .into_iter()
            .map(|v| {
                let mut blocks = Vec::with_capacity(dims.len());
                let mut pos = 0;
                for d in &dims {
                    blocks.push(v[pos..pos + d].to_vec());
                    pos += d;
                }
                self.wrap(blocks)
            })
            .collect()
    }
}
