//! Small worked presentations used by tests, benchmarks and documentation.

use std::sync::Arc;

use crate::adjunction::Adjunction;
use crate::category::{
    CategoryBuilder, FinLinCategory, FunctorBuilder, LinearFunctor, Morphism, ObjectExpr, Subcategory,
};
use crate::error::Result;
use crate::linalg::{FieldSpec, Mat, Scalar};
use crate::recollement::Recollement;
use crate::triangulated::{ExactFunctorData, MutationData, Triangle, TriangulatedPresentation, TriangulatedRecollement};

/// Six functors and four adjunctions of a recollement `A' → A → A''`.
#[derive(Clone, Debug)]
pub struct RecollementData {
    pub left: Arc<FinLinCategory>,
    pub middle: Arc<FinLinCategory>,
    pub right: Arc<FinLinCategory>,
    pub i_upper: LinearFunctor,
    pub i_lower: LinearFunctor,
    pub i_shriek: LinearFunctor,
    pub j_shriek: LinearFunctor,
    pub j_upper: LinearFunctor,
    pub j_lower: LinearFunctor,
    /// `(i^*, i_*)`, `(i_*, i^!)`, `(j_!, j^*)`, `(j^*, j_*)`.
    pub adjunctions: [Adjunction; 4],
}

pub(crate) fn obj(cat: &FinLinCategory, names: &[&str]) -> ObjectExpr {
    names.iter().map(|n| cat.generator_index(n).expect("sample generator")).collect()
}

pub(crate) fn mor(cat: &FinLinCategory, src: &[&str], tgt: &[&str], coords: &[i64]) -> Morphism {
    let f = cat.field();
    cat.morphism(&obj(cat, src), &obj(cat, tgt), coords.iter().map(|&c| f.from_int(c)).collect())
        .expect("sample morphism")
}


fn point(name: &str, field: FieldSpec) -> Result<Arc<FinLinCategory>> {
    let c = CategoryBuilder::new(name, field)
        .generator("k")
        .hom("k", "k", &["e"])?
        .identity_element("k", "e")?
        .build()?;
    Ok(Arc::new(c))
}

/// Modules over the path algebra of `1 → 2`: simples `S1`, `S2` and the
/// projective-injective `P1`, with `iota: S2 → P1` and `pi: P1 → S1`.
pub fn a2_category(field: FieldSpec) -> Result<FinLinCategory> {
    CategoryBuilder::new("A", field)
        .generator("S1")
        .generator("S2")
        .generator("P1")
        .hom("S1", "S1", &["s1"])?
        .hom("S2", "S2", &["s2"])?
        .hom("P1", "P1", &["p1"])?
        .hom("S2", "P1", &["iota"])?
        .hom("P1", "S1", &["pi"])?
        .identity_element("S1", "s1")?
        .identity_element("S2", "s2")?
        .identity_element("P1", "p1")?
        .build()
}

/// The recollement of `mod A2` by the simples at the two vertices.
pub fn a2_recollement(field: FieldSpec) -> Result<RecollementData> {
    let left = point("Ak", field)?;
    let right = point("Akk", field)?;
    let middle = Arc::new(a2_category(field)?);
    let e = |c: &str| -> Vec<(Scalar, String)> { vec![(field.one(), c.to_string())] };

    let i_upper = FunctorBuilder::new("i*", middle.clone(), left.clone()).object("S2", &["k"])?.build()?;
    let i_lower = FunctorBuilder::new("i_*", left.clone(), middle.clone()).object("k", &["S2"])?.build()?;
    let i_shriek = FunctorBuilder::new("i^!", middle.clone(), left.clone())
        .object("S2", &["k"])?
        .object("P1", &["k"])?
        .map("iota", &e("e"))?
        .build()?;
    let j_shriek = FunctorBuilder::new("j_!", right.clone(), middle.clone()).object("k", &["P1"])?.build()?;
    let j_upper = FunctorBuilder::new("j*", middle.clone(), right.clone())
        .object("S1", &["k"])?
        .object("P1", &["k"])?
        .map("pi", &e("e"))?
        .build()?;
    let j_lower = FunctorBuilder::new("j_*", right.clone(), middle.clone()).object("k", &["S1"])?.build()?;

    let (l, m, r) = (&*left, &*middle, &*right);
    let adj1 = Adjunction::new(
        "(i*, i_*)",
        i_upper.clone(),
        i_lower.clone(),
        vec![mor(m, &["S1"], &[], &[]), mor(m, &["S2"], &["S2"], &[1]), mor(m, &["P1"], &[], &[])],
        vec![mor(l, &["k"], &["k"], &[1])],
    )?;
    let adj2 = Adjunction::new(
        "(i_*, i^!)",
        i_lower.clone(),
        i_shriek.clone(),
        vec![mor(l, &["k"], &["k"], &[1])],
        vec![mor(m, &[], &["S1"], &[]), mor(m, &["S2"], &["S2"], &[1]), mor(m, &["S2"], &["P1"], &[1])],
    )?;
    let adj3 = Adjunction::new(
        "(j_!, j*)",
        j_shriek.clone(),
        j_upper.clone(),
        vec![mor(r, &["k"], &["k"], &[1])],
        vec![mor(m, &["P1"], &["S1"], &[1]), mor(m, &[], &["S2"], &[]), mor(m, &["P1"], &["P1"], &[1])],
    )?;
    let adj4 = Adjunction::new(
        "(j*, j_*)",
        j_upper.clone(),
        j_lower.clone(),
        vec![mor(m, &["S1"], &["S1"], &[1]), mor(m, &["S2"], &[], &[]), mor(m, &["P1"], &["S1"], &[1])],
        vec![mor(r, &["k"], &["k"], &[1])],
    )?;
    Ok(RecollementData {
        left,
        middle,
        right,
        i_upper,
        i_lower,
        i_shriek,
        j_shriek,
        j_upper,
        j_lower,
        adjunctions: [adj1, adj2, adj3, adj4],
    })
}

/// The stable category of `k[x]/(x³)`: `M1 = k`, `M2 = k[x]/(x²)`, with the
/// socle inclusion `iota: M1 → M2` and the projection `pi: M2 → M1`. Generator
/// and basis names carry `prefix`.
pub fn stab3_category(name: &str, prefix: &str, field: FieldSpec) -> Result<FinLinCategory> {
    let p = |s: &str| format!("{prefix}{s}");
    CategoryBuilder::new(name, field)
        .generator(&p("M1"))
        .generator(&p("M2"))
        .hom(&p("M1"), &p("M1"), &[&p("e1")])?
        .hom(&p("M2"), &p("M2"), &[&p("e2")])?
        .hom(&p("M1"), &p("M2"), &[&p("iota")])?
        .hom(&p("M2"), &p("M1"), &[&p("pi")])?
        .identity_element(&p("M1"), &p("e1"))?
        .identity_element(&p("M2"), &p("e2"))?
        .build()
}

/// The syzygy shift of `stab3_category`, swapping `M1` and `M2`.
fn stab3_shift(c: &Arc<FinLinCategory>, prefix: &str) -> Result<LinearFunctor> {
    let p = |s: &str| format!("{prefix}{s}");
    let f = c.field();
    let e = |x: &str| -> Vec<(Scalar, String)> { vec![(f.one(), p(x))] };
    FunctorBuilder::new("T", c.clone(), c.clone())
        .object(&p("M1"), &[p("M2")])?
        .object(&p("M2"), &[p("M1")])?
        .map(&p("iota"), &e("pi"))?
        .map(&p("pi"), &e("iota"))?
        .build()
}

fn stab3_triangles(c: &FinLinCategory, prefix: &str) -> Vec<(String, Triangle)> {
    let p = |s: &str| format!("{prefix}{s}");
    let (m1, m2) = (p("M1"), p("M2"));
    let a = Triangle::new(
        mor(c, &[&m1], &[&m2], &[1]),
        mor(c, &[&m2], &[&m1], &[1]),
        mor(c, &[&m1], &[&m2], &[1]),
    )
    .expect("composable");
    let b = Triangle::new(
        mor(c, &[&m2], &[&m1], &[1]),
        mor(c, &[&m1], &[&m2], &[1]),
        mor(c, &[&m2], &[&m1], &[-1]),
    )
    .expect("composable");
    vec![(p("A"), a), (p("B"), b)]
}

/// `stab3_category` with its shift and the triangles of the two short exact
/// sequences `0 → M1 → M2 → M1 → 0` and `0 → M2 → k[x]/(x³) ⊕ M1 → M2 → 0`.
pub fn stab3_triangulated(field: FieldSpec) -> Result<TriangulatedPresentation> {
    let c = Arc::new(stab3_category("STAB3", "", field)?);
    let t = stab3_shift(&c, "")?;
    TriangulatedPresentation::new("STAB3", t, stab3_triangles(&c, ""))
}

/// Mutation data with `Z` everything and `D = add(M2)`: the first basic
/// triangle fixes `M1`, the identity triangle fixes `M2`.
pub fn stab3_mutation(field: FieldSpec) -> Result<MutationData> {
    let tp = stab3_triangulated(field)?;
    let c = tp.base.clone();
    let a = tp.basic_triangle("A").expect("basic triangle").clone();
    let m2 = obj(&c, &["M2"]);
    let fixed = vec![Some(a), Some(Triangle::identity(&c, &tp.shift, &m2))];
    let cofixed = vec![None, None];
    MutationData::new(
        "STAB3/add(M2)",
        tp,
        Subcategory::all(c.clone()),
        Subcategory::from_names(c.clone(), &["M2"])?,
        fixed,
        cofixed,
    )
}

/// Coproduct of presentations; generators and basis elements are renamed
/// `prefix` + name, and morphisms between different factors vanish.
pub fn product_category(name: &str, parts: &[(&str, &FinLinCategory)]) -> Result<FinLinCategory> {
    let field = parts.first().map(|(_, c)| c.field()).unwrap_or(FieldSpec::Rationals);
    let owner: Vec<(usize, usize)> =
        parts.iter().enumerate().flat_map(|(i, (_, c))| (0..c.num_generators()).map(move |g| (i, g))).collect();
    let n = owner.len();
    let mut generators = Vec::with_capacity(n);
    let mut identities = Vec::with_capacity(n);
    for &(i, g) in &owner {
        let (p, c) = parts[i];
        generators.push(format!("{p}{}", c.generator_name(g)));
        identities.push(c.identity_coords(g).to_vec());
    }
    let mut hom_bases = Vec::with_capacity(n * n);
    let mut comp = Vec::with_capacity(n * n * n);
    for &(ia, a) in &owner {
        for &(ib, b) in &owner {
            if ia == ib {
                let (p, c) = parts[ia];
                hom_bases.push(c.hom_basis(a, b).iter().map(|e| format!("{p}{e}")).collect());
            } else {
                hom_bases.push(Vec::new());
            }
            for &(ic, cc) in &owner {
                if ia == ib && ib == ic {
                    comp.push(parts[ia].1.comp_table(a, b, cc).to_vec());
                } else {
                    comp.push(Vec::new());
                }
            }
        }
    }
    FinLinCategory::new(name, field, generators, hom_bases, identities, comp)
}

/// Inclusion of the factor `C_k` into `C_1 × C_2`, generators offset by `offset`.
fn factor_inclusion(name: &str, factor: &Arc<FinLinCategory>, product: &Arc<FinLinCategory>, offset: usize) -> Result<LinearFunctor> {
    let n = factor.num_generators();
    let mut hom_maps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            hom_maps.push(Mat::identity(factor.field(), factor.hom_dim(a, b)));
        }
    }
    LinearFunctor::new(name, factor.clone(), product.clone(), (0..n).map(|g| ObjectExpr::single(g + offset)).collect(), hom_maps)
}

/// Projection of `C_1 × C_2` onto the factor occupying `offset..offset + len`.
fn factor_projection(name: &str, product: &Arc<FinLinCategory>, factor: &Arc<FinLinCategory>, offset: usize) -> Result<LinearFunctor> {
    let n = product.num_generators();
    let len = factor.num_generators();
    let inside = |g: usize| (offset..offset + len).contains(&g);
    let object_map: Vec<ObjectExpr> =
        (0..n).map(|g| if inside(g) { ObjectExpr::single(g - offset) } else { ObjectExpr::zero() }).collect();
    let mut hom_maps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let rows = factor.hom_space(&object_map[a], &object_map[b]).dim;
            hom_maps.push(if inside(a) && inside(b) {
                Mat::identity(product.field(), rows)
            } else {
                Mat::zeros(product.field(), rows, product.hom_dim(a, b))
            });
        }
    }
    LinearFunctor::new(name, product.clone(), factor.clone(), object_map, hom_maps)
}

/// Identity on the factor summands, zero elsewhere: a natural transformation
/// between two functors that agree on the factor.
fn factor_components(f: &LinearFunctor, g: &LinearFunctor) -> Vec<Morphism> {
    let c = &f.target;
    f.object_map
        .iter()
        .zip(&g.object_map)
        .map(|(a, b)| if a == b { c.identity(a) } else { c.zero_morphism(a, b) })
        .collect()
}

fn shift_product(c: &Arc<FinLinCategory>, shifts: &[&LinearFunctor]) -> Result<LinearFunctor> {
    let n = c.num_generators();
    let mut object_map = Vec::with_capacity(n);
    let mut offsets = Vec::new();
    let mut acc = 0;
    for t in shifts {
        offsets.push(acc);
        for o in &t.object_map {
            object_map.push(o.map_generators(|g| g + acc));
        }
        acc += t.source.num_generators();
    }
    let owner = |g: usize| offsets.iter().rposition(|&o| o <= g).expect("some factor");
    let mut hom_maps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (ia, ib) = (owner(a), owner(b));
            if ia == ib {
                hom_maps.push(shifts[ia].hom_map(a - offsets[ia], b - offsets[ia]).clone());
            } else {
                hom_maps.push(Mat::zeros(c.field(), 0, 0));
            }
        }
    }
    LinearFunctor::new("T", c.clone(), c.clone(), object_map, hom_maps)
}

/// `C1 → C1 × C2 → C2` for two copies of the triangulated `stab3_category`,
/// with inclusions and projections as the six functors and identity units
/// and counits on the surviving factor.
pub fn prod_triangulated_recollement(field: FieldSpec) -> Result<TriangulatedRecollement> {
    let left = Arc::new(stab3_category("C1", "", field)?);
    let right = Arc::new(stab3_category("C2", "", field)?);
    let middle = Arc::new(product_category("C", &[("C1.", &left), ("C2.", &right)])?);
    let (tl, tr) = (stab3_shift(&left, "")?, stab3_shift(&right, "")?);
    let tm = shift_product(&middle, &[&tl, &tr])?;
    let mut basic = stab3_triangles(&middle, "C1.");
    basic.extend(stab3_triangles(&middle, "C2."));
    let left_tp = TriangulatedPresentation::new("C1", tl, stab3_triangles(&left, ""))?;
    let right_tp = TriangulatedPresentation::new("C2", tr, stab3_triangles(&right, ""))?;
    let middle_tp = TriangulatedPresentation::new("C", tm, basic)?;

    let i_upper = factor_projection("i*", &middle, &left, 0)?;
    let i_lower = factor_inclusion("i_*", &left, &middle, 0)?;
    let i_shriek = factor_projection("i^!", &middle, &left, 0)?;
    let j_shriek = factor_inclusion("j_!", &right, &middle, 2)?;
    let j_upper = factor_projection("j*", &middle, &right, 2)?;
    let j_lower = factor_inclusion("j_*", &right, &middle, 2)?;

    let id = |c: &Arc<FinLinCategory>| LinearFunctor::identity(c.clone());
    let adj = |name: &str, l: &LinearFunctor, r: &LinearFunctor| -> Result<Adjunction> {
        let rl = r.after(l)?;
        let lr = l.after(r)?;
        let unit = factor_components(&id(&l.source), &rl);
        let counit = factor_components(&lr, &id(&l.target));
        Adjunction::new(name, l.clone(), r.clone(), unit, counit)
    };
    let adjunctions = [
        adj("(i*, i_*)", &i_upper, &i_lower)?,
        adj("(i_*, i^!)", &i_lower, &i_shriek)?,
        adj("(j_!, j*)", &j_shriek, &j_upper)?,
        adj("(j*, j_*)", &j_upper, &j_lower)?,
    ];
    let recollement = Recollement::new("PROD", adjunctions)?;
    let tps = [&middle_tp, &left_tp, &middle_tp, &right_tp, &middle_tp, &right_tp];
    let tgts = [&left_tp, &middle_tp, &left_tp, &middle_tp, &right_tp, &middle_tp];
    let fs = [i_upper, i_lower, i_shriek, j_shriek, j_upper, j_lower];
    let mut exact = Vec::with_capacity(6);
    for k in 0..6 {
        exact.push(ExactFunctorData::strict(tps[k].clone(), tgts[k].clone(), fs[k].clone())?);
    }
    let exact: [ExactFunctorData; 6] = exact.try_into().expect("six functors");
    TriangulatedRecollement::new(recollement, left_tp, middle_tp, right_tp, exact)
}

/// Mutation data on `C1 × C2` relative to `D = add(C1.M2)`: the first basic
/// triangle for `C1.M1`, the identity triangle for `C1.M2`, and `X → 0 → TX`
/// on the second factor.
pub fn prod_mutation(tr: &TriangulatedRecollement) -> Result<MutationData> {
    let tp = tr.middle.clone();
    let c = tp.base.clone();
    let a = tp.basic_triangle("C1.A").expect("basic triangle").clone();
    let mut fixed = vec![Some(a), Some(Triangle::identity(&c, &tp.shift, &obj(&c, &["C1.M2"])))];
    for g in ["C2.M1", "C2.M2"] {
        let x = obj(&c, &[g]);
        let tx = tp.shift.apply_object(&x);
        let zero = ObjectExpr::zero();
        fixed.push(Some(Triangle::new(
            c.zero_morphism(&x, &zero),
            c.zero_morphism(&zero, &tx),
            c.neg(&c.identity(&tx)),
        )?));
    }
    let n = c.num_generators();
    MutationData::new(
        "C/add(C1.M2)",
        tp,
        Subcategory::all(c.clone()),
        Subcategory::from_names(c.clone(), &["C1.M2"])?,
        fixed,
        vec![None; n],
    )
}
