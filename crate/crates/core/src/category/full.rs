//! Full subcategories presented on their own, with relabelled generators.

use std::sync::Arc;

use super::functor::LinearFunctor;
use super::object::ObjectExpr;
use super::presentation::{FinLinCategory, Morphism};
use super::subcategory::Subcategory;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSubcategory {
    pub presentation: Arc<FinLinCategory>,
    pub parent: Arc<FinLinCategory>,
    /// New generator index to parent generator index.
    pub embedding: Vec<usize>,
    /// Parent generator index to new generator index.
    pub index: Vec<Option<usize>>,
}

impl FullSubcategory {
    pub fn new(x: &Subcategory, name: impl Into<String>) -> Result<Self> {
        let c = &x.parent;
        let n = c.num_generators();
        let embedding: Vec<usize> = x.members.iter().copied().collect();
        let mut index = vec![None; n];
        for (i, &g) in embedding.iter().enumerate() {
            index[g] = Some(i);
        }
        let m = embedding.len();
        let mut hom_bases = Vec::with_capacity(m * m);
        let mut comp = Vec::with_capacity(m * m * m);
        for &a in &embedding {
            for &b in &embedding {
                hom_bases.push(c.hom_basis(a, b).to_vec());
                for &d in &embedding {
                    comp.push(c.comp_table(a, b, d).to_vec());
                }
            }
        }
        let identities = embedding.iter().map(|&g| c.identity_coords(g).to_vec()).collect();
        let generators = embedding.iter().map(|&g| c.generator_name(g).to_string()).collect();
        let presentation = Arc::new(FinLinCategory::new(name, c.field(), generators, hom_bases, identities, comp)?);
        Ok(FullSubcategory { presentation, parent: c.clone(), embedding, index })
    }

    pub fn relabel_object(&self, o: &ObjectExpr) -> Option<ObjectExpr> {
        o.summands().iter().map(|&g| self.index[g]).collect::<Option<Vec<_>>>().map(ObjectExpr::new)
    }

    pub fn relabel_morphism(&self, m: &Morphism) -> Option<Morphism> {
        Some(Morphism {
            source: self.relabel_object(&m.source)?,
            target: self.relabel_object(&m.target)?,
            coords: m.coords.clone(),
        })
    }

    /// Object of the parent corresponding to a new object.
    pub fn embed_object(&self, o: &ObjectExpr) -> ObjectExpr {
        o.map_generators(|g| self.embedding[g])
    }

    /// The inclusion functor into the parent.
    pub fn inclusion(&self) -> Result<LinearFunctor> {
        let m = self.embedding.len();
        let fld = self.parent.field();
        let mut hom_maps = Vec::with_capacity(m * m);
        for &a in &self.embedding {
            for &b in &self.embedding {
                hom_maps.push(crate::linalg::Mat::identity(fld, self.parent.hom_dim(a, b)));
            }
        }
        LinearFunctor::new(
            format!("incl_{}", self.presentation.name()),
            self.presentation.clone(),
            self.parent.clone(),
            self.embedding.iter().map(|&g| ObjectExpr::single(g)).collect(),
            hom_maps,
        )
    }
}

/// Restricts `f` to functor between full subcategories of its source and target.
pub fn restrict_functor(f: &LinearFunctor, src: &FullSubcategory, tgt: &FullSubcategory) -> Result<LinearFunctor> {
    let mut objects = Vec::with_capacity(src.embedding.len());
    for &g in &src.embedding {
        let image = &f.object_map[g];
        let relabelled = tgt.relabel_object(image).ok_or_else(|| {
            Error::hypothesis(
                format!("{} maps {} into {}", f.name, src.presentation.name(), tgt.presentation.name()),
                format!("{}({}) = {}", f.name, f.source.generator_name(g), f.target.display_object(image)),
            )
        })?;
        objects.push(relabelled);
    }
    let mut hom_maps = Vec::new();
    for &a in &src.embedding {
        for &b in &src.embedding {
            hom_maps.push(f.hom_map(a, b).clone());
        }
    }
    LinearFunctor::new(f.name.clone(), src.presentation.clone(), tgt.presentation.clone(), objects, hom_maps)
}
