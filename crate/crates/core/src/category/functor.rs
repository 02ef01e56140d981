//! Additive functors between presentations.

use std::sync::Arc;

use super::object::ObjectExpr;
use super::presentation::{FinLinCategory, Morphism};
use super::subcategory::Subcategory;
use crate::error::{Error, Result};
use crate::linalg::{matrix_of, Mat};
use crate::report::ValidationReport;

/// An additive functor, determined by generator images and one linear map
/// `Hom(a, b) → Hom(F a, F b)` per generator pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctor {
    pub name: String,
    pub source: Arc<FinLinCategory>,
    pub target: Arc<FinLinCategory>,
    pub object_map: Vec<ObjectExpr>,
    /// Indexed by `a * n + b` over source generators.
    pub hom_maps: Vec<Mat>,
}

impl LinearFunctor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<FinLinCategory>,
        target: Arc<FinLinCategory>,
        object_map: Vec<ObjectExpr>,
        hom_maps: Vec<Mat>,
    ) -> Result<Self> {
        let name = name.into();
        let n = source.num_generators();
        if object_map.len() != n || hom_maps.len() != n * n {
            return Err(Error::DimensionMismatch(format!("functor `{name}` does not cover every generator")));
        }
        for obj in &object_map {
            target.check_object(obj)?;
        }
        for a in 0..n {
            for b in 0..n {
                let m = &hom_maps[a * n + b];
                let rows = target.hom_space(&object_map[a], &object_map[b]).dim;
                if m.cols() != source.hom_dim(a, b) || m.rows() != rows {
                    return Err(Error::DimensionMismatch(format!(
                        "functor `{name}`: map on Hom({}, {}) is {}x{}, expected {}x{}",
                        source.generator_name(a),
                        source.generator_name(b),
                        m.rows(),
                        m.cols(),
                        rows,
                        source.hom_dim(a, b)
                    )));
                }
            }
        }
        Ok(LinearFunctor { name, source, target, object_map, hom_maps })
    }

    pub fn identity(cat: Arc<FinLinCategory>) -> Self {
        let n = cat.num_generators();
        let object_map = (0..n).map(ObjectExpr::single).collect();
        let hom_maps = (0..n * n).map(|i| Mat::identity(cat.field(), cat.hom_dim(i / n, i % n))).collect();
        LinearFunctor { name: format!("Id_{}", cat.name()), source: cat.clone(), target: cat, object_map, hom_maps }
    }

    pub fn zero(source: Arc<FinLinCategory>, target: Arc<FinLinCategory>) -> Self {
        let n = source.num_generators();
        let object_map = vec![ObjectExpr::zero(); n];
        let hom_maps = (0..n * n).map(|i| Mat::zeros(source.field(), 0, source.hom_dim(i / n, i % n))).collect();
        LinearFunctor { name: "0".into(), source, target, object_map, hom_maps }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn hom_map(&self, a: usize, b: usize) -> &Mat {
        &self.hom_maps[a * self.source.num_generators() + b]
    }

    pub fn apply_object(&self, a: &ObjectExpr) -> ObjectExpr {
        a.summands().iter().fold(ObjectExpr::zero(), |acc, &g| acc.concat(&self.object_map[g]))
    }

    /// Summand positions of `F(a)` contributed by each summand of `a`.
    fn ranges(&self, a: &ObjectExpr) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(a.len());
        let mut pos = 0;
        for &g in a.summands() {
            let len = self.object_map[g].len();
            out.push((pos..pos + len).collect());
            pos += len;
        }
        out
    }

    pub fn apply_morphism(&self, m: &Morphism) -> Morphism {
        let src = &self.source;
        let tgt = &self.target;
        let fa = self.apply_object(&m.source);
        let fb = self.apply_object(&m.target);
        let mut out = tgt.zero_morphism(&fa, &fb);
        let sr = self.ranges(&m.source);
        let tr = self.ranges(&m.target);
        let hs = src.hom_space(&m.source, &m.target);
        for (ti, &t) in m.target.summands().iter().enumerate() {
            for (si, &s) in m.source.summands().iter().enumerate() {
                let block = &m.coords[hs.block_range(ti, si)];
                if block.is_empty() {
                    continue;
                }
                let image = self.hom_map(s, t).apply(block);
                let small = Morphism {
                    source: self.object_map[s].clone(),
                    target: self.object_map[t].clone(),
                    coords: image,
                };
                tgt.place(&mut out, &small, &sr[si], &tr[ti]);
            }
        }
        out
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &LinearFunctor) -> Result<LinearFunctor> {
        if first.target != self.source {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose `{}` after `{}`",
                self.name, first.name
            )));
        }
        let src = first.source.clone();
        let n = src.num_generators();
        let object_map: Vec<ObjectExpr> = first.object_map.iter().map(|o| self.apply_object(o)).collect();
        let mut hom_maps = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let dout = self.target.hom_space(&object_map[a], &object_map[b]).dim;
                hom_maps.push(matrix_of(src.field(), src.hom_dim(a, b), dout, |v| {
                    let m = src.generator_morphism(a, b, v.to_vec());
                    self.apply_morphism(&first.apply_morphism(&m)).coords
                }));
            }
        }
        Ok(LinearFunctor {
            name: format!("{}∘{}", self.name, first.name),
            source: src,
            target: self.target.clone(),
            object_map,
            hom_maps,
        })
    }

    /// Every generator-pairwise Hom map is a bijection. Returns the first
    /// failing pair as a witness.
    pub fn full_embedding_witness(&self) -> Option<String> {
        let n = self.source.num_generators();
        for a in 0..n {
            for b in 0..n {
                let m = self.hom_map(a, b);
                if !m.is_invertible() {
                    return Some(format!(
                        "Hom({}, {}) → Hom({}, {}) is {}x{} of rank {}",
                        self.source.generator_name(a),
                        self.source.generator_name(b),
                        self.target.display_object(&self.object_map[a]),
                        self.target.display_object(&self.object_map[b]),
                        m.rows(),
                        m.cols(),
                        m.rank()
                    ));
                }
            }
        }
        None
    }

    /// Every generator-pairwise Hom map is surjective.
    pub fn fullness_witness(&self) -> Option<String> {
        let n = self.source.num_generators();
        for a in 0..n {
            for b in 0..n {
                let m = self.hom_map(a, b);
                if m.rank() != m.rows() {
                    return Some(format!(
                        "Hom({}, {}) → Hom({}, {}) is not surjective",
                        self.source.generator_name(a),
                        self.source.generator_name(b),
                        self.target.display_object(&self.object_map[a]),
                        self.target.display_object(&self.object_map[b]),
                    ));
                }
            }
        }
        None
    }
}

/// Checks identity preservation and `F(g f) = F(g) F(f)` on all basis pairs.
pub fn validate_functor(f: &LinearFunctor) -> ValidationReport {
    let src = &f.source;
    let tgt = &f.target;
    let n = src.num_generators();
    let mut report = ValidationReport::new(format!("functor {}", f.name));
    for a in 0..n {
        let one = src.identity(&ObjectExpr::single(a));
        let image = f.apply_morphism(&one);
        let want = tgt.identity(&f.object_map[a]);
        report.check(image == want, "preserves identities", || src.generator_name(a).to_string());
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for i in 0..src.hom_dim(b, c) {
                    for j in 0..src.hom_dim(a, b) {
                        let g = src.basis_morphism(&ObjectExpr::single(b), &ObjectExpr::single(c), i);
                        let h = src.basis_morphism(&ObjectExpr::single(a), &ObjectExpr::single(b), j);
                        let gf = src.compose(&g, &h).expect("composable");
                        let lhs = f.apply_morphism(&gf);
                        let rhs = tgt.compose(&f.apply_morphism(&g), &f.apply_morphism(&h)).expect("composable");
                        report.check(lhs == rhs, "preserves composition", || {
                            format!("({}, {})", src.hom_basis(b, c)[i], src.hom_basis(a, b)[j])
                        });
                    }
                }
            }
        }
    }
    report
}

/// Target generators occurring in some `F(G)`.
pub fn image_subcategory(f: &LinearFunctor) -> Subcategory {
    Subcategory::new(f.target.clone(), f.object_map.iter().flat_map(|o| o.summands().iter().copied()))
}

/// Source generators sent to a zero object (every summand of `F(G)` null).
pub fn kernel_subcategory(f: &LinearFunctor) -> Subcategory {
    let members = (0..f.source.num_generators()).filter(|&g| f.target.is_zero_object(&f.object_map[g]));
    Subcategory::new(f.source.clone(), members)
}

/// Incremental construction of a [`LinearFunctor`]. Basis elements without an
/// explicit image go to the identity if they are the identity of their
/// generator and to zero otherwise.
pub struct FunctorBuilder {
    name: String,
    source: Arc<FinLinCategory>,
    target: Arc<FinLinCategory>,
    objects: Vec<Option<ObjectExpr>>,
    images: Vec<(String, Vec<crate::linalg::Scalar>)>,
}

impl FunctorBuilder {
    pub fn new(name: impl Into<String>, source: Arc<FinLinCategory>, target: Arc<FinLinCategory>) -> Self {
        let n = source.num_generators();
        FunctorBuilder { name: name.into(), source, target, objects: vec![None; n], images: Vec::new() }
    }

    pub fn object<S: AsRef<str>>(mut self, g: &str, image: &[S]) -> Result<Self> {
        let gi = self.source.generator_index(g)?;
        let obj = image.iter().map(|h| self.target.generator_index(h.as_ref())).collect::<Result<ObjectExpr>>()?;
        self.objects[gi] = Some(obj);
        Ok(self)
    }

    pub fn object_expr(mut self, g: usize, image: ObjectExpr) -> Self {
        self.objects[g] = Some(image);
        self
    }

    /// Image of a basis element, as coordinates in `Hom(F a, F b)`.
    pub fn map_coords(mut self, elem: &str, coords: Vec<crate::linalg::Scalar>) -> Self {
        self.images.push((elem.to_string(), coords));
        self
    }

    /// Image of a basis element between generators sent to single generators.
    pub fn map<S: AsRef<str>>(self, elem: &str, combo: &[(crate::linalg::Scalar, S)]) -> Result<Self> {
        let (a, b, _) = self
            .source
            .basis_element(elem)
            .ok_or_else(|| Error::UnknownGenerator(format!("basis element {elem}")))?;
        let fa = self.objects[a].clone().unwrap_or_else(ObjectExpr::zero);
        let fb = self.objects[b].clone().unwrap_or_else(ObjectExpr::zero);
        let (&[x], &[y]) = (fa.summands(), fb.summands()) else {
            return Err(Error::DimensionMismatch(format!(
                "functor `{}`: image of `{elem}` needs block coordinates",
                self.name
            )));
        };
        let coords = self.target.combination(x, y, combo)?;
        Ok(self.map_coords(elem, coords))
    }

    pub fn build(self) -> Result<LinearFunctor> {
        let src = &self.source;
        let tgt = &self.target;
        let n = src.num_generators();
        let objects: Vec<ObjectExpr> = self.objects.into_iter().map(|o| o.unwrap_or_else(ObjectExpr::zero)).collect();
        let mut hom_maps = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let rows = tgt.hom_space(&objects[a], &objects[b]).dim;
                let mut m = Mat::zeros(src.field(), rows, src.hom_dim(a, b));
                if a == b {
                    let id = src.identity_coords(a);
                    let one = src.field().one();
                    let nonzero: Vec<usize> = (0..id.len()).filter(|&k| id[k] != src.field().zero()).collect();
                    if let [k] = nonzero[..] {
                        if id[k] == one {
                            let tid = tgt.identity(&objects[a]);
                            for (r, v) in tid.coords.iter().enumerate() {
                                m.set(r, k, v.clone());
                            }
                        }
                    }
                }
                hom_maps.push(m);
            }
        }
        for (elem, coords) in &self.images {
            let (a, b, k) = src
                .basis_element(elem)
                .ok_or_else(|| Error::UnknownGenerator(format!("basis element {elem}")))?;
            let m = &mut hom_maps[a * n + b];
            if coords.len() != m.rows() {
                return Err(Error::DimensionMismatch(format!(
                    "functor `{}`: image of `{elem}` has {} coordinates, expected {}",
                    self.name,
                    coords.len(),
                    m.rows()
                )));
            }
            for (r, v) in coords.iter().enumerate() {
                m.set(r, k, src.field().normalize(v.clone()));
            }
        }
        LinearFunctor::new(self.name, self.source.clone(), self.target.clone(), objects, hom_maps)
    }
}
