//! Builds engine objects from parsed declarations.

use std::collections::BTreeMap;
use std::sync::Arc;

use rclkit_core::adjunction::Adjunction;
use rclkit_core::recollement::Recollement;
use rclkit_core::triangulated::{ExactFunctorData, MutationData, Triangle, TriangulatedPresentation, TriangulatedRecollement};
use rclkit_core::{
    CategoryBuilder, Error as CoreError, FieldSpec, FinLinCategory, FunctorBuilder, LinearFunctor, Morphism, NatTransform,
    ObjectExpr, Scalar, Subcategory,
};

use crate::ast::*;
use crate::error::CliError;
use crate::lexer::{Diagnostic, Pos};

#[derive(Clone, Debug, Default)]
pub struct Resolved {
    pub categories: BTreeMap<String, Arc<FinLinCategory>>,
    pub subcategories: BTreeMap<String, Subcategory>,
    pub functors: BTreeMap<String, LinearFunctor>,
    pub transformations: BTreeMap<String, NatTransform>,
    pub adjunctions: BTreeMap<String, Adjunction>,
    pub recollements: BTreeMap<String, Recollement>,
    pub triangulated: BTreeMap<String, TriangulatedPresentation>,
    pub exact: BTreeMap<String, ExactFunctorData>,
    pub mutations: BTreeMap<String, MutationData>,
    pub trirecollements: BTreeMap<String, TriangulatedRecollement>,
}

struct Ctx<'w> {
    ws: &'w Workspace,
    field: FieldSpec,
    out: Resolved,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str, pos: Pos) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| Diagnostic::new(pos, format!("unknown {kind} `{name}`")).into())
}

impl Ctx<'_> {
    fn wrap<T>(&self, kind: &'static str, name: &str, r: Result<T, CoreError>) -> Result<T, CliError> {
        r.map_err(|source| CliError::Declaration { pos: self.ws.pos(kind, name), kind, name: name.to_string(), source })
    }

    fn scalars(&self, c: &Coords) -> Result<Vec<Scalar>, CoreError> {
        c.iter().map(|x| self.field.try_normalize(x.clone())).collect()
    }

    fn object(c: &FinLinCategory, spec: &ObjectSpec) -> Result<ObjectExpr, CoreError> {
        spec.iter().map(|g| c.generator_index(g)).collect()
    }

    fn morphism(&self, c: &FinLinCategory, s: &ObjectExpr, t: &ObjectExpr, coords: &Coords) -> Result<Morphism, CoreError> {
        c.morphism(s, t, self.scalars(coords)?)
    }

    fn category(&self, name: &str, d: &CategoryDecl) -> Result<FinLinCategory, CoreError> {
        let mut b = CategoryBuilder::new(name, self.field);
        for g in &d.generators {
            b = b.generator(g);
        }
        let mut home: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
        for ((a, bb), basis) in &d.homs {
            let names: Vec<&str> = basis.iter().map(String::as_str).collect();
            b = b.hom(a, bb, &names)?;
            for e in basis {
                if home.insert(e, (a, bb)).is_some() {
                    return Err(CoreError::DimensionMismatch(format!("basis element `{e}` declared twice")));
                }
            }
        }
        let combo = |a: &str, c: &str, coords: &Coords| -> Result<Vec<(Scalar, String)>, CoreError> {
            let basis = d.homs.get(&(a.to_string(), c.to_string())).map(Vec::as_slice).unwrap_or(&[]);
            if basis.len() != coords.len() {
                return Err(CoreError::DimensionMismatch(format!(
                    "Hom({a}, {c}) has dimension {}, got {} coordinates",
                    basis.len(),
                    coords.len()
                )));
            }
            Ok(self.scalars(coords)?.into_iter().zip(basis.iter().cloned()).collect())
        };
        for (g, e) in &d.identities {
            b = match e {
                Element::Named(e) => b.identity_element(g, e)?,
                Element::Coords(c) => b.identity_combination(g, combo(g, g, c)?)?,
            };
        }
        for ((g, f), value) in &d.products {
            let missing = |e: &str| CoreError::UnknownGenerator(format!("basis element {e}"));
            let (_, gt) = *home.get(g.as_str()).ok_or_else(|| missing(g))?;
            let (fs, _) = *home.get(f.as_str()).ok_or_else(|| missing(f))?;
            b = b.product(g, f, combo(fs, gt, value)?);
        }
        b.build()
    }

    fn functor(&self, name: &str, d: &FunctorDecl, pos: Pos) -> Result<LinearFunctor, CliError> {
        let src = lookup(&self.out.categories, "category", &d.source, pos)?.clone();
        let tgt = lookup(&self.out.categories, "category", &d.target, pos)?.clone();
        let build = || -> Result<LinearFunctor, CoreError> {
            let mut b = FunctorBuilder::new(name, src.clone(), tgt.clone());
            for (g, image) in &d.objects {
                b = b.object(g, image)?;
            }
            for (e, c) in &d.maps {
                b = b.map_coords(e, self.scalars(c)?);
            }
            b.build()
        };
        self.wrap("functor", name, build())
    }

    /// One component per source generator of `from`; absent ones are zero.
    fn components(
        &self,
        c: &FinLinCategory,
        from: impl Fn(usize) -> ObjectExpr,
        to: impl Fn(usize) -> ObjectExpr,
        n: &FinLinCategory,
        given: &BTreeMap<String, Coords>,
    ) -> Result<Vec<Morphism>, CoreError> {
        for g in given.keys() {
            n.generator_index(g)?;
        }
        (0..n.num_generators())
            .map(|g| {
                let (s, t) = (from(g), to(g));
                match given.get(n.generator_name(g)) {
                    Some(coords) => self.morphism(c, &s, &t, coords),
                    None => Ok(c.zero_morphism(&s, &t)),
                }
            })
            .collect()
    }

    fn transformation(&self, name: &str, d: &TransformationDecl, pos: Pos) -> Result<NatTransform, CliError> {
        let f = lookup(&self.out.functors, "functor", &d.from, pos)?;
        let g = lookup(&self.out.functors, "functor", &d.to, pos)?;
        let build = || {
            let comps = self.components(&f.target, |x| f.object_map[x].clone(), |x| g.object_map[x].clone(), &f.source, &d.components)?;
            NatTransform::new(f.clone(), g.clone(), comps)
        };
        self.wrap("transformation", name, build())
    }

    fn adjunction(&self, name: &str, d: &AdjunctionDecl, pos: Pos) -> Result<Adjunction, CliError> {
        let l = lookup(&self.out.functors, "functor", &d.left, pos)?;
        let r = lookup(&self.out.functors, "functor", &d.right, pos)?;
        let build = || {
            if l.target != r.source || r.target != l.source {
                return Err(CoreError::BoundaryMismatch(format!("`{}` and `{}` do not point in opposite directions", l.name, r.name)));
            }
            let lower = &l.source;
            let upper = &l.target;
            let unit = self.components(lower, ObjectExpr::single, |x| r.apply_object(&l.object_map[x]), lower, &d.unit)?;
            let counit = self.components(upper, |y| l.apply_object(&r.object_map[y]), ObjectExpr::single, upper, &d.counit)?;
            Adjunction::new(name, l.clone(), r.clone(), unit, counit)
        };
        self.wrap("adjunction", name, build())
    }

    fn triangle(&self, c: &FinLinCategory, shift: &LinearFunctor, d: &TriangleDecl) -> Result<Triangle, CoreError> {
        let (x, y, z) = (Self::object(c, &d.x)?, Self::object(c, &d.y)?, Self::object(c, &d.z)?);
        let tx = shift.apply_object(&x);
        Triangle::new(self.morphism(c, &x, &y, &d.f)?, self.morphism(c, &y, &z, &d.g)?, self.morphism(c, &z, &tx, &d.h)?)
    }

    fn triangulated(&self, name: &str, d: &TriangulatedDecl, pos: Pos) -> Result<TriangulatedPresentation, CliError> {
        let c = lookup(&self.out.categories, "category", &d.category, pos)?;
        let t = lookup(&self.out.functors, "functor", &d.shift, pos)?;
        let build = || {
            if &t.source != c || &t.target != c {
                return Err(CoreError::BoundaryMismatch(format!("shift `{}` is not an endofunctor of {}", t.name, c.name())));
            }
            let basic = d
                .triangles
                .iter()
                .map(|(n, td)| Ok((n.clone(), self.triangle(c, t, td)?)))
                .collect::<Result<Vec<_>, CoreError>>()?;
            TriangulatedPresentation::new(name, t.clone(), basic)
        };
        self.wrap("triangulated", name, build())
    }

    fn exact(&self, name: &str, d: &ExactDecl, pos: Pos) -> Result<ExactFunctorData, CliError> {
        let f = lookup(&self.out.functors, "functor", &d.functor, pos)?;
        let s = lookup(&self.out.triangulated, "triangulated category", &d.source, pos)?;
        let t = lookup(&self.out.triangulated, "triangulated category", &d.target, pos)?;
        let build = || {
            if d.phi.is_empty() {
                return ExactFunctorData::strict(s.clone(), t.clone(), f.clone());
            }
            if f.source != s.base || f.target != t.base {
                return Err(CoreError::BoundaryMismatch(format!("`{}` does not run from {} to {}", f.name, s.name, t.name)));
            }
            let from = |g: usize| f.apply_object(&s.shift.object_map[g]);
            let to = |g: usize| t.shift.apply_object(&f.object_map[g]);
            let comps = self.components(&t.base, from, to, &s.base, &d.phi)?;
            ExactFunctorData::new(s.clone(), t.clone(), f.clone(), comps)
        };
        self.wrap("exact", name, build())
    }

    fn members(c: &Arc<FinLinCategory>, m: &Members) -> Result<Subcategory, CoreError> {
        match m {
            Members::All => Ok(Subcategory::all(c.clone())),
            Members::List(names) => Subcategory::from_names(c.clone(), names),
        }
    }

    fn mutation(&self, name: &str, d: &MutationDecl, pos: Pos) -> Result<MutationData, CliError> {
        let tp = lookup(&self.out.triangulated, "triangulated category", &d.triangulated, pos)?;
        let build = || {
            let c = &tp.base;
            let slots = |given: &BTreeMap<String, TriangleDecl>| -> Result<Vec<Option<Triangle>>, CoreError> {
                let mut v = vec![None; c.num_generators()];
                for (g, td) in given {
                    v[c.generator_index(g)?] = Some(self.triangle(c, &tp.shift, td)?);
                }
                Ok(v)
            };
            MutationData::new(name, tp.clone(), Self::members(c, &d.z)?, Self::members(c, &d.d)?, slots(&d.fixed)?, slots(&d.cofixed)?)
        };
        self.wrap("mutation", name, build())
    }

    fn trirecollement(&self, name: &str, d: &TriRecollementDecl, pos: Pos) -> Result<TriangulatedRecollement, CliError> {
        let r = lookup(&self.out.recollements, "recollement", &d.recollement, pos)?;
        let tri = |n: &str| lookup(&self.out.triangulated, "triangulated category", n, pos).cloned();
        let (left, middle, right) = (tri(&d.left)?, tri(&d.middle)?, tri(&d.right)?);
        lookup(&self.out.mutations, "mutation", &d.mutation, pos)?;
        let exact = d
            .exact
            .iter()
            .map(|n| lookup(&self.out.exact, "exact functor", n, pos).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        let exact: [ExactFunctorData; 6] = exact.try_into().map_err(|_| Diagnostic::new(pos, "expected 6 exactness declarations"))?;
        self.wrap("trirecollement", name, TriangulatedRecollement::new(r.clone(), left, middle, right, exact))
    }
}

/// Resolves every declaration, reporting the first failure with its position.
pub fn resolve(ws: &Workspace) -> Result<Resolved, CliError> {
    let d = &ws.decls;
    let mut cx = Ctx { ws, field: d.field, out: Resolved::default() };
    for (n, c) in &d.categories {
        let cat = cx.category(n, c);
        let cat = cx.wrap("category", n, cat)?;
        cx.out.categories.insert(n.clone(), Arc::new(cat));
    }
    for (n, s) in &d.subcategories {
        let pos = ws.pos("subcategory", n);
        let c = lookup(&cx.out.categories, "category", &s.category, pos)?.clone();
        let sub = cx.wrap("subcategory", n, Subcategory::from_names(c, &s.members))?;
        cx.out.subcategories.insert(n.clone(), sub);
    }
    for (n, f) in &d.functors {
        let v = cx.functor(n, f, ws.pos("functor", n))?;
        cx.out.functors.insert(n.clone(), v);
    }
    for (n, t) in &d.transformations {
        let v = cx.transformation(n, t, ws.pos("transformation", n))?;
        cx.out.transformations.insert(n.clone(), v);
    }
    for (n, a) in &d.adjunctions {
        let v = cx.adjunction(n, a, ws.pos("adjunction", n))?;
        cx.out.adjunctions.insert(n.clone(), v);
    }
    for (n, r) in &d.recollements {
        let pos = ws.pos("recollement", n);
        let adjs = r
            .adjunctions
            .iter()
            .map(|a| lookup(&cx.out.adjunctions, "adjunction", a, pos).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        let adjs: [Adjunction; 4] = adjs.try_into().map_err(|_| Diagnostic::new(pos, "expected 4 adjunctions"))?;
        let v = cx.wrap("recollement", n, Recollement::new(n.clone(), adjs))?;
        cx.out.recollements.insert(n.clone(), v);
    }
    for (n, t) in &d.triangulated {
        let v = cx.triangulated(n, t, ws.pos("triangulated", n))?;
        cx.out.triangulated.insert(n.clone(), v);
    }
    for (n, e) in &d.exact {
        let v = cx.exact(n, e, ws.pos("exact", n))?;
        cx.out.exact.insert(n.clone(), v);
    }
    for (n, m) in &d.mutations {
        let v = cx.mutation(n, m, ws.pos("mutation", n))?;
        cx.out.mutations.insert(n.clone(), v);
    }
    for (n, t) in &d.trirecollements {
        let v = cx.trirecollement(n, t, ws.pos("trirecollement", n))?;
        cx.out.trirecollements.insert(n.clone(), v);
    }
    Ok(cx.out)
}
