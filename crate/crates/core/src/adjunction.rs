//! Adjoint pairs stored as unit and counit, with derived Hom bijections.

use std::sync::Arc;

use crate::category::{validate_functor, FinLinCategory, LinearFunctor, Morphism, NatTransform, ObjectExpr};
use crate::error::{Error, Result};
use crate::linalg::{generic_combinations, matrix_of, LinearSystem, Mat};
use crate::report::ValidationReport;

/// An adjoint pair `(left, right)` with `left: C → D`, `right: D → C`,
/// unit `Id_C ⇒ right∘left` and counit `left∘right ⇒ Id_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub name: String,
    pub left: LinearFunctor,
    pub right: LinearFunctor,
    pub unit: NatTransform,
    pub counit: NatTransform,
}

impl Adjunction {
    pub fn new(
        name: impl Into<String>,
        left: LinearFunctor,
        right: LinearFunctor,
        unit: Vec<Morphism>,
        counit: Vec<Morphism>,
    ) -> Result<Self> {
        if left.target != right.source || right.target != left.source {
            return Err(Error::BoundaryMismatch(format!(
                "`{}` and `{}` do not point in opposite directions",
                left.name, right.name
            )));
        }
        let c = left.source.clone();
        let d = left.target.clone();
        let unit = NatTransform::new(LinearFunctor::identity(c), right.after(&left)?, unit)?;
        let counit = NatTransform::new(left.after(&right)?, LinearFunctor::identity(d), counit)?;
        Ok(Adjunction { name: name.into(), left, right, unit, counit })
    }

    pub fn identity(cat: Arc<FinLinCategory>) -> Self {
        let id = LinearFunctor::identity(cat.clone());
        let comps: Vec<Morphism> = (0..cat.num_generators()).map(|g| cat.identity(&ObjectExpr::single(g))).collect();
        Adjunction::new(format!("Id_{}", cat.name()), id.clone(), id, comps.clone(), comps).expect("identity adjunction")
    }

    /// Domain of the left adjoint.
    pub fn lower(&self) -> &Arc<FinLinCategory> {
        &self.left.source
    }

    /// Domain of the right adjoint.
    pub fn upper(&self) -> &Arc<FinLinCategory> {
        &self.left.target
    }

    pub fn unit_at(&self, a: &ObjectExpr) -> Morphism {
        self.unit.component_at(a)
    }

    pub fn counit_at(&self, b: &ObjectExpr) -> Morphism {
        self.counit.component_at(b)
    }

    /// `g: a → G b` ↦ `ε_b ∘ F(g): F a → b`.
    pub fn transpose_left(&self, g: &Morphism, b: &ObjectExpr) -> Result<Morphism> {
        self.upper().compose(&self.counit_at(b), &self.left.apply_morphism(g))
    }

    /// `η(f) = G(f) ∘ η_a` for `f: F a → b`.
    pub fn eta(&self, a: &ObjectExpr, f: &Morphism) -> Result<Morphism> {
        if f.source != self.left.apply_object(a) {
            return Err(Error::BoundaryMismatch("η expects a morphism out of F(a)".into()));
        }
        self.lower().compose(&self.right.apply_morphism(f), &self.unit_at(a))
    }

    /// `τ(g) = ε_b ∘ F(g)` for `g: a → G b`.
    pub fn tau(&self, b: &ObjectExpr, g: &Morphism) -> Result<Morphism> {
        if g.target != self.right.apply_object(b) {
            return Err(Error::BoundaryMismatch("τ expects a morphism into G(b)".into()));
        }
        self.transpose_left(g, b)
    }
}

/// Triangle identities on every generator, plus naturality of unit and counit.
pub fn validate_adjunction(adj: &Adjunction) -> ValidationReport {
    let c = adj.lower();
    let d = adj.upper();
    let mut report = ValidationReport::new(format!("adjunction {} ⊣ {}", adj.left.name, adj.right.name));
    report.merge("left adjoint", validate_functor(&adj.left));
    report.merge("right adjoint", validate_functor(&adj.right));
    let same = |f: &LinearFunctor, g: std::result::Result<LinearFunctor, Error>| {
        matches!(g, Ok(g) if f.object_map == g.object_map && f.hom_maps == g.hom_maps)
    };
    let unit_fits = same(&adj.unit.to, adj.right.after(&adj.left));
    let counit_fits = same(&adj.counit.from, adj.left.after(&adj.right));
    report.check(unit_fits, "unit lands in right ∘ left", || adj.name.clone());
    report.check(counit_fits, "counit starts at left ∘ right", || adj.name.clone());
    if unit_fits && counit_fits {
        report.merge("unit", adj.unit.validate());
        report.merge("counit", adj.counit.validate());
    }
    for x in 0..c.num_generators() {
        let xo = ObjectExpr::single(x);
        let fx = adj.left.apply_object(&xo);
        let lhs = d.compose(&adj.counit_at(&fx), &adj.left.apply_morphism(&adj.unit_at(&xo)));
        let ok = matches!(&lhs, Ok(m) if *m == d.identity(&fx));
        report.check(ok, "triangle identity ε_F ∘ F(η) = 1", || c.generator_name(x).to_string());
    }
    for y in 0..d.num_generators() {
        let yo = ObjectExpr::single(y);
        let gy = adj.right.apply_object(&yo);
        let lhs = c.compose(&adj.right.apply_morphism(&adj.counit_at(&yo)), &adj.unit_at(&gy));
        let ok = matches!(&lhs, Ok(m) if *m == c.identity(&gy));
        report.check(ok, "triangle identity G(ε) ∘ η_G = 1", || d.generator_name(y).to_string());
    }
    report
}

/// The mutually inverse linear maps `Hom(F a, b) ⇄ Hom(a, G b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBijection {
    pub source: ObjectExpr,
    pub target: ObjectExpr,
    /// `η`, columns indexed by the basis of `Hom(F a, b)`.
    pub forward: Mat,
    /// `τ`, columns indexed by the basis of `Hom(a, G b)`.
    pub backward: Mat,
}

impl HomBijection {
    pub fn is_mutually_inverse(&self) -> bool {
        let n = self.forward.cols();
        let m = self.forward.rows();
        let f = self.forward.field();
        self.backward.mul(&self.forward).map_or(false, |x| x == Mat::identity(f, n))
            && self.forward.mul(&self.backward).map_or(false, |x| x == Mat::identity(f, m))
    }
}

pub fn hom_bijection(adj: &Adjunction, a: &ObjectExpr, b: &ObjectExpr) -> Result<HomBijection> {
    let c = adj.lower();
    let d = adj.upper();
    let fa = adj.left.apply_object(a);
    let gb = adj.right.apply_object(b);
    let left_space = d.hom_space(&fa, b);
    let right_space = c.hom_space(a, &gb);
    let field = c.field();
    let mut err = None;
    let forward = matrix_of(field, left_space.dim, right_space.dim, |v| {
        let f = Morphism { source: fa.clone(), target: b.clone(), coords: v.to_vec() };
        adj.eta(a, &f).map(|m| m.coords).unwrap_or_else(|e| {
            err = Some(e);
            vec![field.zero(); right_space.dim]
        })
    });
    let backward = matrix_of(field, right_space.dim, left_space.dim, |v| {
        let g = Morphism { source: a.clone(), target: gb.clone(), coords: v.to_vec() };
        adj.tau(b, &g).map(|m| m.coords).unwrap_or_else(|e| {
            err = Some(e);
            vec![field.zero(); left_space.dim]
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(HomBijection { source: a.clone(), target: b.clone(), forward, backward }),
    }
}

/// Which functor of the pair is the full embedding to be made strict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddedSide {
    /// The left adjoint is fully faithful; the right adjoint is adjusted so that
    /// `right ∘ left = Id` and the unit is the identity.
    Left,
    /// The right adjoint is fully faithful; the left adjoint is adjusted so that
    /// `left ∘ right = Id` and the counit is the identity.
    Right,
}

/// Conjugates `f` by per-generator isomorphisms `theta[g]: f(g) → targets[g]`.
fn conjugate(f: &LinearFunctor, targets: Vec<ObjectExpr>, theta: &[Morphism], theta_inv: &[Morphism]) -> Result<LinearFunctor> {
    let src = &f.source;
    let tgt = &f.target;
    let n = src.num_generators();
    let mut hom_maps = Vec::with_capacity(n * n);
    let mut err = None;
    for a in 0..n {
        for b in 0..n {
            let dout = tgt.hom_space(&targets[a], &targets[b]).dim;
            hom_maps.push(matrix_of(src.field(), src.hom_dim(a, b), dout, |v| {
                let e = src.generator_morphism(a, b, v.to_vec());
                let image = f.apply_morphism(&e);
                match tgt.compose_chain(&[&theta_inv[a], &image, &theta[b]]) {
                    Ok(m) => m.coords,
                    Err(e) => {
                        err = Some(e);
                        vec![src.field().zero(); dout]
                    }
                }
            }));
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    LinearFunctor::new(f.name.clone(), src.clone(), tgt.clone(), targets, hom_maps)
}

fn embedding_images(f: &LinearFunctor) -> Result<Vec<usize>> {
    if let Some(w) = f.full_embedding_witness() {
        return Err(Error::NotFullEmbedding(format!("`{}`: {w}", f.name)));
    }
    let mut images = Vec::new();
    for (g, o) in f.object_map.iter().enumerate() {
        if f.source.is_null(g) {
            images.push(usize::MAX);
            continue;
        }
        match o.summands() {
            [h] if !images.contains(h) => images.push(*h),
            _ => {
                return Err(Error::NotFullEmbedding(format!(
                    "`{}` sends {} to {}, not to a single new generator",
                    f.name,
                    f.source.generator_name(g),
                    f.target.display_object(o)
                )))
            }
        }
    }
    Ok(images)
}

/// Replaces the adjunction by an isomorphic one in which the composite on the
/// embedded side is literally the identity functor, with identity unit (or counit).
pub fn normalize_embedding(adj: &Adjunction) -> Result<Adjunction> {
    match normalize_with(adj, EmbeddedSide::Right) {
        Ok(a) => Ok(a),
        Err(Error::NotFullEmbedding(_)) => normalize_with(adj, EmbeddedSide::Left),
        Err(e) => Err(e),
    }
}

pub fn normalize_with(adj: &Adjunction, side: EmbeddedSide) -> Result<Adjunction> {
    normalize_with_iso(adj, side).map(|(a, _)| a)
}

/// As [`normalize_with`], also returning the natural isomorphism `θ` from the
/// replaced functor to its replacement, one component per source generator.
pub fn normalize_with_iso(adj: &Adjunction, side: EmbeddedSide) -> Result<(Adjunction, Vec<Morphism>)> {
    let c = adj.lower().clone();
    let d = adj.upper().clone();
    let out = match side {
        EmbeddedSide::Right => {
            // θ_X: F X → F' X, equal to ε_Y on X = G(Y)
            let images = embedding_images(&adj.right)?;
            let n = c.num_generators();
            let mut targets: Vec<ObjectExpr> = adj.left.object_map.clone();
            let mut theta: Vec<Morphism> = targets.iter().map(|o| d.identity(o)).collect();
            for (y, &x) in images.iter().enumerate() {
                if x == usize::MAX {
                    continue;
                }
                targets[x] = ObjectExpr::single(y);
                theta[x] = adj.counit.components[y].clone();
            }
            let theta_inv = invert_all(&d, &theta)?;
            let left = conjugate(&adj.left, targets, &theta, &theta_inv)?;
            let unit = (0..n)
                .map(|x| c.compose(&adj.right.apply_morphism(&theta[x]), &adj.unit.components[x]))
                .collect::<Result<Vec<_>>>()?;
            let counit = (0..d.num_generators())
                .map(|y| {
                    let gy = adj.right.apply_object(&ObjectExpr::single(y));
                    d.compose(&adj.counit.components[y], &theta_inv_at(&d, &theta_inv, &gy))
                })
                .collect::<Result<Vec<_>>>()?;
            (Adjunction::new(adj.name.clone(), left, adj.right.clone(), unit, counit)?, theta)
        }
        EmbeddedSide::Left => {
            // θ_Y: G Y → G' Y, equal to η_X^{-1} on Y = F(X)
            let images = embedding_images(&adj.left)?;
            let mut targets: Vec<ObjectExpr> = adj.right.object_map.clone();
            let mut theta: Vec<Morphism> = targets.iter().map(|o| c.identity(o)).collect();
            let mut theta_inv = theta.clone();
            for (x, &y) in images.iter().enumerate() {
                if y == usize::MAX {
                    continue;
                }
                targets[y] = ObjectExpr::single(x);
                let eta = adj.unit.components[x].clone();
                theta_inv[y] = eta.clone();
                theta[y] = c.inverse(&eta)?.ok_or_else(|| {
                    Error::NotFullEmbedding(format!("unit at {} is not invertible", c.generator_name(x)))
                })?;
            }
            let right = conjugate(&adj.right, targets, &theta, &theta_inv)?;
            let unit = (0..c.num_generators())
                .map(|x| {
                    let fx = adj.left.apply_object(&ObjectExpr::single(x));
                    let th = c.direct_sum_all(&fx.summands().iter().map(|&y| theta[y].clone()).collect::<Vec<_>>());
                    c.compose(&th, &adj.unit.components[x])
                })
                .collect::<Result<Vec<_>>>()?;
            let counit = (0..d.num_generators())
                .map(|y| d.compose(&adj.counit.components[y], &adj.left.apply_morphism(&theta_inv[y])))
                .collect::<Result<Vec<_>>>()?;
            (Adjunction::new(adj.name.clone(), adj.left.clone(), right, unit, counit)?, theta)
        }
    };
    let report = validate_adjunction(&out.0);
    if !report.passed() {
        return Err(Error::Inconsistent(format!(
            "normalized adjunction `{}` fails validation: {}",
            adj.name,
            report
        )));
    }
    Ok(out)
}

/// Moves an adjunction `(F, G)` along a natural isomorphism `θ: G ⇒ G'`.
pub fn transport_right(adj: &Adjunction, new_right: LinearFunctor, theta: &[Morphism]) -> Result<Adjunction> {
    let c = adj.lower();
    let d = adj.upper();
    let theta_inv = invert_all(c, theta)?;
    let unit = (0..c.num_generators())
        .map(|x| {
            let fx = adj.left.apply_object(&ObjectExpr::single(x));
            let th = c.direct_sum_all(&fx.summands().iter().map(|&y| theta[y].clone()).collect::<Vec<_>>());
            c.compose(&th, &adj.unit.components[x])
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = (0..d.num_generators())
        .map(|y| d.compose(&adj.counit.components[y], &adj.left.apply_morphism(&theta_inv[y])))
        .collect::<Result<Vec<_>>>()?;
    Adjunction::new(adj.name.clone(), adj.left.clone(), new_right, unit, counit)
}

/// Moves an adjunction `(F, G)` along a natural isomorphism `θ: F ⇒ F'`.
pub fn transport_left(adj: &Adjunction, new_left: LinearFunctor, theta: &[Morphism]) -> Result<Adjunction> {
    let c = adj.lower();
    let d = adj.upper();
    let theta_inv = invert_all(d, theta)?;
    let unit = (0..c.num_generators())
        .map(|x| c.compose(&adj.right.apply_morphism(&theta[x]), &adj.unit.components[x]))
        .collect::<Result<Vec<_>>>()?;
    let counit = (0..d.num_generators())
        .map(|y| {
            let gy = adj.right.apply_object(&ObjectExpr::single(y));
            d.compose(&adj.counit.components[y], &theta_inv_at(d, &theta_inv, &gy))
        })
        .collect::<Result<Vec<_>>>()?;
    Adjunction::new(adj.name.clone(), new_left, adj.right.clone(), unit, counit)
}

fn invert_all(cat: &FinLinCategory, ms: &[Morphism]) -> Result<Vec<Morphism>> {
    ms.iter()
        .map(|m| {
            cat.inverse(m)?
                .ok_or_else(|| Error::NotFullEmbedding(format!("{} is not invertible", cat.display_morphism(m))))
        })
        .collect()
}

/// `θ^{-1}` at the object `G y = ⊕ X_i`, block-diagonal over summands.
fn theta_inv_at(d: &FinLinCategory, theta_inv: &[Morphism], gy: &ObjectExpr) -> Morphism {
    d.direct_sum_all(&gy.summands().iter().map(|&x| theta_inv[x].clone()).collect::<Vec<_>>())
}

/// Searches for unit and counit making `(f, g)` an adjoint pair.
///
/// The unit is drawn from the space of natural transformations `Id ⇒ g∘f`
/// (a generic element first, then basis elements and seeded combinations);
/// for each candidate the counit is solved linearly from its naturality and
/// both triangle identities.
pub fn solve_unit_counit(f: &LinearFunctor, g: &LinearFunctor) -> Result<Option<Adjunction>> {
    if f.target != g.source || g.target != f.source {
        return Err(Error::BoundaryMismatch(format!("`{}` and `{}` are not opposite", f.name, g.name)));
    }
    let c = f.source.clone();
    let fld = c.field();
    let gf = g.after(f)?;
    let fg = f.after(g)?;
    let nc = c.num_generators();

    // naturality of the unit: u_b ∘ e = GF(e) ∘ u_a
    let unit_spaces: Vec<_> = (0..nc).map(|x| c.hom_space(&ObjectExpr::single(x), &gf.object_map[x])).collect();
    let mut sys = LinearSystem::new(fld, &unit_spaces.iter().map(|s| s.dim).collect::<Vec<_>>());
    for a in 0..nc {
        for b in 0..nc {
            for k in 0..c.hom_dim(a, b) {
                let e = c.basis_morphism(&ObjectExpr::single(a), &ObjectExpr::single(b), k);
                let out = c.hom_space(&ObjectExpr::single(a), &gf.object_map[b]);
                let post = c.linear_map(&unit_spaces[b], &c.zero_morphism(&out.source, &out.target), |u| c.compose(u, &e))?;
                let gfe = gf.apply_morphism(&e);
                let pre = c.linear_map(&unit_spaces[a], &c.zero_morphism(&out.source, &out.target), |u| c.compose(&gfe, u))?;
                let neg = negate(&pre);
                let rhs = vec![fld.zero(); out.dim];
                if a == b {
                    let sum = post.add(&neg)?;
                    sys.add_equation(&[(a, &sum)], &rhs)?;
                } else {
                    sys.add_equation(&[(b, &post), (a, &neg)], &rhs)?;
                }
            }
        }
    }
    let basis: Vec<Vec<_>> = sys.homogeneous_basis().into_iter().map(|blocks| blocks.concat()).collect();
    let mut candidates = generic_combinations(fld, &basis, 24);
    if basis.is_empty() {
        candidates.push(vec![fld.zero(); sys.num_unknowns()]);
    }
    for cand in candidates {
        let mut units = Vec::with_capacity(nc);
        let mut pos = 0;
        for s in &unit_spaces {
            units.push(Morphism { source: s.source.clone(), target: s.target.clone(), coords: cand[pos..pos + s.dim].to_vec() });
            pos += s.dim;
        }
        if let Some(adj) = solve_counit(f, g, &fg, &units)? {
            if validate_adjunction(&adj).passed() {
                return Ok(Some(adj));
            }
        }
    }
    Ok(None)
}

fn negate(m: &Mat) -> Mat {
    let f = m.field();
    let data = m.entries().iter().map(|x| f.neg(x)).collect();
    Mat::from_rows(f, m.rows(), m.cols(), data).expect("same shape")
}

fn solve_counit(f: &LinearFunctor, g: &LinearFunctor, fg: &LinearFunctor, units: &[Morphism]) -> Result<Option<Adjunction>> {
    let c = f.source.clone();
    let d = f.target.clone();
    let fld = c.field();
    let nd = d.num_generators();
    let spaces: Vec<_> = (0..nd).map(|y| d.hom_space(&fg.object_map[y], &ObjectExpr::single(y))).collect();
    let mut sys = LinearSystem::new(fld, &spaces.iter().map(|s| s.dim).collect::<Vec<_>>());
    let mk = |y: usize, coords: &[crate::linalg::Scalar]| Morphism {
        source: spaces[y].source.clone(),
        target: spaces[y].target.clone(),
        coords: coords.to_vec(),
    };
    // naturality: c_b ∘ FG(e) = e ∘ c_a
    for a in 0..nd {
        for b in 0..nd {
            for k in 0..d.hom_dim(a, b) {
                let e = d.basis_morphism(&ObjectExpr::single(a), &ObjectExpr::single(b), k);
                let fge = fg.apply_morphism(&e);
                let dim_out = d.hom_space(&fg.object_map[a], &ObjectExpr::single(b)).dim;
                let lhs = matrix_of(fld, spaces[b].dim, dim_out, |v| d.compose(&mk(b, v), &fge).expect("composable").coords);
                let rhs = matrix_of(fld, spaces[a].dim, dim_out, |v| d.compose(&e, &mk(a, v)).expect("composable").coords);
                let zero = vec![fld.zero(); dim_out];
                if a == b {
                    sys.add_equation(&[(a, &lhs.add(&negate(&rhs))?)], &zero)?;
                } else {
                    sys.add_equation(&[(b, &lhs), (a, &negate(&rhs))], &zero)?;
                }
            }
        }
    }
    // ε_{F x} ∘ F(u_x) = 1_{F x}: the counit at F x is block diagonal in the c_y
    for (x, u) in units.iter().enumerate() {
        let fx = f.object_map[x].clone();
        let fu = f.apply_morphism(u);
        let id = d.identity(&fx);
        let mut per_block: Vec<Option<Mat>> = vec![None; nd];
        for (pos, &y) in fx.summands().iter().enumerate() {
            let m = matrix_of(fld, spaces[y].dim, id.coords.len(), |v| {
                let mut eps = d.zero_morphism(&fu.target, &fx);
                let src_sel = summand_range(&fg.object_map, &fx, pos);
                d.place(&mut eps, &mk(y, v), &src_sel, &[pos]);
                d.compose(&eps, &fu).expect("composable").coords
            });
            per_block[y] = Some(match per_block[y].take() {
                Some(prev) => prev.add(&m)?,
                None => m,
            });
        }
        let terms: Vec<(usize, &Mat)> = per_block.iter().enumerate().filter_map(|(y, m)| m.as_ref().map(|m| (y, m))).collect();
        if terms.is_empty() {
            if !id.is_zero() {
                return Ok(None);
            }
            continue;
        }
        sys.add_equation(&terms, &id.coords)?;
    }
    // G(c_y) ∘ u_{G y} = 1_{G y}
    for y in 0..nd {
        let gy = g.object_map[y].clone();
        let u_gy = c.direct_sum_all(&gy.summands().iter().map(|&x| units[x].clone()).collect::<Vec<_>>());
        let id = c.identity(&gy);
        let m = matrix_of(fld, spaces[y].dim, id.coords.len(), |v| {
            c.compose(&g.apply_morphism(&mk(y, v)), &u_gy).expect("composable").coords
        });
        sys.add_equation(&[(y, &m)], &id.coords)?;
    }
    let Some(sol) = sys.solve()? else {
        return Ok(None);
    };
    let counit: Vec<Morphism> = sol.iter().enumerate().map(|(y, v)| mk(y, v)).collect();
    Ok(Some(Adjunction::new(format!("({}, {})", f.name, g.name), f.clone(), g.clone(), units.to_vec(), counit)?))
}

/// Positions in `F G (fx)` contributed by summand `pos` of `fx`.
fn summand_range(fg_map: &[ObjectExpr], fx: &ObjectExpr, pos: usize) -> Vec<usize> {
    let start: usize = fx.summands()[..pos].iter().map(|&y| fg_map[y].len()).sum();
    let len = fg_map[fx.summands()[pos]].len();
    (start..start + len).collect()
}
