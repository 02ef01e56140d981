//! Triangulated presentations: a strict shift and a finite table of basic
//! triangles whose sums of rotations, closed under isomorphism, are the
//! distinguished triangles.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{
    iso_class_representatives, is_isomorphic, FinLinCategory, IsoVerdict, LinearFunctor, Morphism, MorphismSystem,
    ObjectExpr,
};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A sextuple `X →f Y →g Z →h S X` for a shift-like functor `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub x: ObjectExpr,
    pub y: ObjectExpr,
    pub z: ObjectExpr,
    pub f: Morphism,
    pub g: Morphism,
    pub h: Morphism,
}

impl Triangle {
    pub fn new(f: Morphism, g: Morphism, h: Morphism) -> Result<Self> {
        if f.target != g.source || g.target != h.source {
            return Err(Error::BoundaryMismatch("triangle morphisms are not composable".into()));
        }
        Ok(Triangle { x: f.source.clone(), y: f.target.clone(), z: g.target.clone(), f, g, h })
    }

    /// `(X, X, 0; 1, 0, 0)`.
    pub fn identity(c: &FinLinCategory, shift: &LinearFunctor, x: &ObjectExpr) -> Self {
        let zero = ObjectExpr::zero();
        Triangle {
            x: x.clone(),
            y: x.clone(),
            z: zero.clone(),
            f: c.identity(x),
            g: c.zero_morphism(x, &zero),
            h: c.zero_morphism(&zero, &shift.apply_object(x)),
        }
    }

    pub fn direct_sum(c: &FinLinCategory, parts: &[Triangle]) -> Self {
        let pick = |sel: fn(&Triangle) -> &Morphism| c.direct_sum_all(&parts.iter().map(|t| sel(t).clone()).collect::<Vec<_>>());
        let f = pick(|t| &t.f);
        let g = pick(|t| &t.g);
        let h = pick(|t| &t.h);
        Triangle { x: f.source.clone(), y: f.target.clone(), z: g.target.clone(), f, g, h }
    }

    pub fn map(&self, f: &LinearFunctor, shift_iso: impl Fn(&ObjectExpr) -> Morphism) -> Result<Triangle> {
        let h = f.target.compose(&shift_iso(&self.x), &f.apply_morphism(&self.h))?;
        Triangle::new(f.apply_morphism(&self.f), f.apply_morphism(&self.g), h)
    }

    pub fn display(&self, c: &FinLinCategory) -> String {
        format!(
            "({}, {}, {}; {}, {}, {})",
            c.display_object(&self.x),
            c.display_object(&self.y),
            c.display_object(&self.z),
            c.display_morphism(&self.f),
            c.display_morphism(&self.g),
            c.display_morphism(&self.h)
        )
    }

    /// `g ∘ f`, `h ∘ g` and `S(f) ∘ h` vanish.
    pub fn composites_vanish(&self, c: &FinLinCategory, shift: &LinearFunctor) -> Result<bool> {
        Ok(c.compose(&self.g, &self.f)?.is_zero()
            && c.compose(&self.h, &self.g)?.is_zero()
            && c.compose(&shift.apply_morphism(&self.f), &self.h)?.is_zero())
    }
}

/// `(Y, Z, SX; g, h, -S f)`.
pub fn rotate(c: &FinLinCategory, shift: &LinearFunctor, t: &Triangle) -> Triangle {
    let f = c.neg(&shift.apply_morphism(&t.f));
    Triangle { x: t.y.clone(), y: t.z.clone(), z: f.source.clone(), f: t.g.clone(), g: t.h.clone(), h: f }
}

/// `(S⁻¹Z, X, Y; -S⁻¹h, f, g)`, for a strict inverse `S⁻¹`.
pub fn rotate_back(c: &FinLinCategory, shift_inv: &LinearFunctor, t: &Triangle) -> Triangle {
    let f = c.neg(&shift_inv.apply_morphism(&t.h));
    Triangle { x: f.source.clone(), y: t.x.clone(), z: t.y.clone(), f, g: t.f.clone(), h: t.g.clone() }
}

/// Isomorphisms `(a, b, c)` from `t1` to `t2` over the shift `shift`:
/// `b f1 = f2 a`, `c g1 = g2 b`, `S(a) h1 = h2 c`, all three invertible.
pub fn triangle_iso(c: &FinLinCategory, shift: &LinearFunctor, t1: &Triangle, t2: &Triangle) -> Result<Option<[Morphism; 3]>> {
    for (u, v) in [(&t1.x, &t2.x), (&t1.y, &t2.y), (&t1.z, &t2.z)] {
        if is_isomorphic(c, u, v) == IsoVerdict::NotIsomorphic {
            return Ok(None);
        }
    }
    let mut sys = MorphismSystem::new(
        c,
        vec![c.hom_space(&t1.x, &t2.x), c.hom_space(&t1.y, &t2.y), c.hom_space(&t1.z, &t2.z)],
    );
    let bf1 = |b: &Morphism| c.compose(b, &t1.f);
    let f2a = |a: &Morphism| c.compose(&t2.f, a).map(|m| c.neg(&m));
    sys.homogeneous(&[(1, &bf1), (0, &f2a)], &t1.x, &t2.y)?;
    let cg1 = |m: &Morphism| c.compose(m, &t1.g);
    let g2b = |b: &Morphism| c.compose(&t2.g, b).map(|m| c.neg(&m));
    sys.homogeneous(&[(2, &cg1), (1, &g2b)], &t1.y, &t2.z)?;
    let sah1 = |a: &Morphism| c.compose(&shift.apply_morphism(a), &t1.h);
    let h2c = |m: &Morphism| c.compose(&t2.h, m).map(|x| c.neg(&x));
    sys.homogeneous(&[(0, &sah1), (2, &h2c)], &t1.z, &t2.h.target)?;
    for sol in sys.generic_solutions(16) {
        if all_invertible(c, &sol)? {
            let [a, b, m] = <[Morphism; 3]>::try_from(sol).expect("three unknowns");
            return Ok(Some([a, b, m]));
        }
    }
    Ok(None)
}

pub(crate) fn all_invertible(c: &FinLinCategory, ms: &[Morphism]) -> Result<bool> {
    for m in ms {
        if c.inverse(m)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite category with strict shift automorphism and basic triangles.
#[derive(Clone, Debug)]
pub struct TriangulatedPresentation {
    pub name: String,
    pub base: Arc<FinLinCategory>,
    pub shift: LinearFunctor,
    pub shift_inv: LinearFunctor,
    pub basic: Vec<(String, Triangle)>,
    /// Rotations of basic and identity triangles, deduplicated.
    pub rotations: Vec<Triangle>,
}

/// Strict inverse of a shift that permutes generators.
pub fn strict_inverse(shift: &LinearFunctor) -> Result<LinearFunctor> {
    let c = &shift.source;
    if shift.target != *c {
        return Err(Error::BoundaryMismatch(format!("shift `{}` is not an endofunctor", shift.name)));
    }
    let n = c.num_generators();
    let mut inv = vec![usize::MAX; n];
    for (g, o) in shift.object_map.iter().enumerate() {
        match o.summands() {
            [h] if inv[*h] == usize::MAX => inv[*h] = g,
            _ => {
                return Err(Error::Inconsistent(format!(
                    "shift `{}` does not permute generators: {} ↦ {}",
                    shift.name,
                    c.generator_name(g),
                    c.display_object(o)
                )))
            }
        }
    }
    let mut hom_maps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let m = shift.hom_map(inv[a], inv[b]);
            let mi = m.inverse().ok_or_else(|| {
                Error::Inconsistent(format!(
                    "shift `{}` is not invertible on Hom({}, {})",
                    shift.name,
                    c.generator_name(inv[a]),
                    c.generator_name(inv[b])
                ))
            })?;
            hom_maps.push(mi);
        }
    }
    LinearFunctor::new(
        format!("{}^-1", shift.name),
        c.clone(),
        c.clone(),
        inv.into_iter().map(ObjectExpr::single).collect(),
        hom_maps,
    )
}

fn permutation_order(shift: &LinearFunctor) -> usize {
    let n = shift.source.num_generators();
    let mut order = 1;
    for g in 0..n {
        let mut k = 1;
        let mut cur = shift.object_map[g].summands()[0];
        while cur != g && k <= n {
            cur = shift.object_map[cur].summands()[0];
            k += 1;
        }
        order = num_integer::lcm(order, k);
    }
    order
}

impl TriangulatedPresentation {
    pub fn new(name: impl Into<String>, shift: LinearFunctor, basic: Vec<(String, Triangle)>) -> Result<Self> {
        let base = shift.source.clone();
        let shift_inv = strict_inverse(&shift)?;
        let steps = (3 * permutation_order(&shift)).min(48);
        let mut seeds: Vec<Triangle> = basic.iter().map(|(_, t)| t.clone()).collect();
        for g in 0..base.num_generators() {
            if !base.is_null(g) {
                seeds.push(Triangle::identity(&base, &shift, &ObjectExpr::single(g)));
            }
        }
        let mut rotations: Vec<Triangle> = Vec::new();
        for seed in seeds {
            let mut fwd = seed.clone();
            let mut back = seed.clone();
            for _ in 0..steps {
                for t in [&fwd, &back] {
                    if !rotations.contains(t) {
                        rotations.push(t.clone());
                    }
                }
                fwd = rotate(&base, &shift, &fwd);
                back = rotate_back(&base, &shift_inv, &back);
            }
        }
        Ok(TriangulatedPresentation { name: name.into(), base, shift, shift_inv, basic, rotations })
    }

    pub fn basic_triangle(&self, name: &str) -> Option<&Triangle> {
        self.basic.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    fn class_vector(&self, reps: &Option<Vec<Option<usize>>>, o: &ObjectExpr) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &g in o.summands() {
            if self.base.is_null(g) {
                continue;
            }
            let r = reps.as_ref().and_then(|r| r[g]).unwrap_or(g);
            *m.entry(r).or_insert(0) += 1;
        }
        m
    }

    /// Multisets of rotations whose vertices match the given class vectors.
    /// `None` entries are unconstrained.
    fn combinations(&self, targets: [Option<&ObjectExpr>; 3], limit: usize) -> Vec<Vec<usize>> {
        let reps = iso_class_representatives(&self.base);
        let want: Vec<Option<BTreeMap<usize, usize>>> =
            targets.iter().map(|t| t.map(|o| self.class_vector(&reps, o))).collect();
        let vectors: Vec<[BTreeMap<usize, usize>; 3]> = self
            .rotations
            .iter()
            .map(|t| [self.class_vector(&reps, &t.x), self.class_vector(&reps, &t.y), self.class_vector(&reps, &t.z)])
            .collect();
        let useful: Vec<usize> = (0..vectors.len())
            .filter(|&i| (0..3).any(|k| want[k].is_some() && !vectors[i][k].is_empty()))
            .collect();
        let mut out = Vec::new();
        let mut current = Vec::new();
        search(&vectors, &useful, 0, want, &mut current, &mut out, limit);
        out
    }

    /// Whether `t` is isomorphic to a sum of rotations of basic and identity triangles.
    pub fn is_distinguished(&self, t: &Triangle) -> Result<bool> {
        Ok(self.distinguished_witness(t)?.is_some())
    }

    pub fn distinguished_witness(&self, t: &Triangle) -> Result<Option<Triangle>> {
        let c = &self.base;
        if t.h.target != self.shift.apply_object(&t.x) {
            return Ok(None);
        }
        if !t.composites_vanish(c, &self.shift)? {
            return Ok(None);
        }
        for combo in self.combinations([Some(&t.x), Some(&t.y), Some(&t.z)], 400) {
            let parts: Vec<Triangle> = combo.iter().map(|&i| self.rotations[i].clone()).collect();
            let s = Triangle::direct_sum(c, &parts);
            if triangle_iso(c, &self.shift, &s, t)?.is_some() {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// A distinguished triangle `(X, Y, Z; f, g, h)` on a given `f`.
    pub fn complete(&self, f: &Morphism) -> Result<Option<Triangle>> {
        let c = &self.base;
        for combo in self.combinations([Some(&f.source), Some(&f.target), None], 400) {
            let parts: Vec<Triangle> = combo.iter().map(|&i| self.rotations[i].clone()).collect();
            let s = Triangle::direct_sum(c, &parts);
            let mut sys = MorphismSystem::new(c, vec![c.hom_space(&s.x, &f.source), c.hom_space(&s.y, &f.target)]);
            let bfs = |b: &Morphism| c.compose(b, &s.f);
            let fa = |a: &Morphism| c.compose(f, a).map(|m| c.neg(&m));
            sys.homogeneous(&[(1, &bfs), (0, &fa)], &s.x, &f.target)?;
            for sol in sys.generic_solutions(8) {
                let (a, b) = (&sol[0], &sol[1]);
                let (Some(_), Some(b_inv)) = (c.inverse(a)?, c.inverse(b)?) else {
                    continue;
                };
                let g = c.compose(&s.g, &b_inv)?;
                let h = c.compose(&self.shift.apply_morphism(a), &s.h)?;
                return Ok(Some(Triangle::new(f.clone(), g, h)?));
            }
        }
        Ok(None)
    }
}

fn search(
    vectors: &[[BTreeMap<usize, usize>; 3]],
    useful: &[usize],
    from: usize,
    remaining: Vec<Option<BTreeMap<usize, usize>>>,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if remaining.iter().all(|r| r.as_ref().map_or(true, |m| m.values().all(|&v| v == 0))) {
        out.push(current.clone());
        return;
    }
    for pos in from..useful.len() {
        let i = useful[pos];
        let mut next = remaining.clone();
        let mut fits = true;
        for k in 0..3 {
            if let Some(rem) = next[k].as_mut() {
                for (g, &cnt) in &vectors[i][k] {
                    match rem.get_mut(g) {
                        Some(v) if *v >= cnt => *v -= cnt,
                        _ => fits = false,
                    }
                }
            }
        }
        if !fits {
            continue;
        }
        current.push(i);
        search(vectors, useful, pos, next, current, out, limit);
        current.pop();
    }
}

/// Strict inverse, vanishing composites of basic triangles, and membership of
/// every identity triangle.
pub fn validate_triangulated(t: &TriangulatedPresentation) -> ValidationReport {
    let c = &t.base;
    let mut report = ValidationReport::new(format!("triangulated presentation {}", t.name));
    report.merge("category", crate::category::validate_category(c));
    report.merge("shift", crate::category::validate_functor(&t.shift));
    let id = LinearFunctor::identity(c.clone());
    for (label, comp) in [("T ∘ T⁻¹ = Id", t.shift.after(&t.shift_inv)), ("T⁻¹ ∘ T = Id", t.shift_inv.after(&t.shift))] {
        let ok = matches!(comp, Ok(f) if f.object_map == id.object_map && f.hom_maps == id.hom_maps);
        report.check(ok, label, || t.shift.name.clone());
    }
    for (name, tri) in &t.basic {
        let ok = tri.h.target == t.shift.apply_object(&tri.x) && matches!(tri.composites_vanish(c, &t.shift), Ok(true));
        report.check(ok, "basic triangle composites vanish", || name.clone());
    }
    for g in 0..c.num_generators() {
        let tri = Triangle::identity(c, &t.shift, &ObjectExpr::single(g));
        let ok = matches!(t.is_distinguished(&tri), Ok(true));
        report.check(ok, "identity triangle is distinguished", || c.generator_name(g).to_string());
    }
    report
}
