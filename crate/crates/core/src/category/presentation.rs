//! Finite presentations of additive k-linear categories.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::Zero;

use super::object::ObjectExpr;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Mat, Scalar};

/// A Krull–Schmidt presentation: generators are the chosen indecomposables,
/// `Hom(a, b)` has a named basis for every generator pair, and composition is
/// given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLinCategory {
    name: String,
    field: FieldSpec,
    generators: Vec<String>,
    hom_bases: Vec<Vec<String>>,
    identities: Vec<Vec<Scalar>>,
    /// Indexed by `(a * n + b) * n + c`; entry `[(i * dim_ab + j) * dim_ac + k]`
    /// is the `k`-th coordinate of `g_i ∘ f_j` for `g_i ∈ Hom(b, c)`, `f_j ∈ Hom(a, b)`.
    comp: Vec<Vec<Scalar>>,
    basis_index: HashMap<String, (usize, usize, usize)>,
}

/// Block layout of `Hom(source, target)` for two formal sums. Blocks are
/// ordered target-summand-major: `(t0, s0), (t0, s1), …, (t1, s0), …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub source: ObjectExpr,
    pub target: ObjectExpr,
    pub dim: usize,
    offsets: Vec<usize>,
    dims: Vec<usize>,
}

impl HomSpace {
    pub fn block_range(&self, ti: usize, si: usize) -> std::ops::Range<usize> {
        let idx = ti * self.source.len() + si;
        self.offsets[idx]..self.offsets[idx] + self.dims[idx]
    }
}

/// A morphism between formal sums, stored as coordinates in the layout of
/// the corresponding [`HomSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: ObjectExpr,
    pub target: ObjectExpr,
    pub coords: Vec<Scalar>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl FinLinCategory {
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        generators: Vec<String>,
        hom_bases: Vec<Vec<String>>,
        identities: Vec<Vec<Scalar>>,
        comp: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = generators.len();
        let name = name.into();
        if hom_bases.len() != n * n || identities.len() != n || comp.len() != n * n * n {
            return Err(Error::DimensionMismatch(format!("malformed presentation of `{name}`")));
        }
        let mut basis_index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for (k, e) in hom_bases[a * n + b].iter().enumerate() {
                    if basis_index.insert(e.clone(), (a, b, k)).is_some() {
                        return Err(Error::DimensionMismatch(format!(
                            "basis element `{e}` declared twice in `{name}`"
                        )));
                    }
                }
            }
        }
        for g in 0..n {
            if identities[g].len() != hom_bases[g * n + g].len() {
                return Err(Error::DimensionMismatch(format!(
                    "identity of `{}` has wrong length",
                    generators[g]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let want = hom_bases[b * n + c].len() * hom_bases[a * n + b].len() * hom_bases[a * n + c].len();
                    if comp[(a * n + b) * n + c].len() != want {
                        return Err(Error::DimensionMismatch(format!(
                            "composition table {}→{}→{} has wrong size",
                            generators[a], generators[b], generators[c]
                        )));
                    }
                }
            }
        }
        let identities = identities.into_iter().map(|v| v.into_iter().map(|x| field.normalize(x)).collect()).collect();
        let comp = comp.into_iter().map(|v| v.into_iter().map(|x| field.normalize(x)).collect()).collect();
        Ok(FinLinCategory { name, field, generators, hom_bases, identities, comp, basis_index })
    }

    /// The category with no generators: every object is zero.
    pub fn zero_category(name: impl Into<String>, field: FieldSpec) -> Self {
        Self::new(name, field, Vec::new(), Vec::new(), Vec::new(), Vec::new()).expect("empty presentation")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let mut c = self.clone();
        c.name = name.into();
        c
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_name(&self, g: usize) -> &str {
        &self.generators[g]
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(format!("{name} (in `{}`)", self.name)))
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom_bases[a * self.num_generators() + b].len()
    }

    pub fn hom_basis(&self, a: usize, b: usize) -> &[String] {
        &self.hom_bases[a * self.num_generators() + b]
    }

    /// Looks up a basis element by name: `(source, target, index)`.
    pub fn basis_element(&self, name: &str) -> Option<(usize, usize, usize)> {
        self.basis_index.get(name).copied()
    }

    /// Coordinates in `Hom(a, b)` of a combination of named basis elements.
    pub fn combination<S: AsRef<str>>(&self, a: usize, b: usize, combo: &[(Scalar, S)]) -> Result<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); self.hom_dim(a, b)];
        for (c, e) in combo {
            let e = e.as_ref();
            match self.basis_element(e) {
                Some((ea, eb, k)) if (ea, eb) == (a, b) => v[k] = self.field.add(&v[k], c),
                Some(_) => {
                    return Err(Error::BoundaryMismatch(format!(
                        "`{e}` is not in Hom({}, {})",
                        self.generator_name(a),
                        self.generator_name(b)
                    )))
                }
                None => return Err(Error::UnknownGenerator(format!("basis element {e}"))),
            }
        }
        Ok(v)
    }

    pub fn identity_coords(&self, g: usize) -> &[Scalar] {
        &self.identities[g]
    }

    /// A generator is null when its endomorphism space is zero, i.e. it is a
    /// zero object. Quotient presentations keep such generators.
    pub fn is_null(&self, g: usize) -> bool {
        self.hom_dim(g, g) == 0
    }

    pub fn is_zero_object(&self, a: &ObjectExpr) -> bool {
        a.summands().iter().all(|&g| self.is_null(g))
    }

    pub fn comp_table(&self, a: usize, b: usize, c: usize) -> &[Scalar] {
        let n = self.num_generators();
        &self.comp[(a * n + b) * n + c]
    }

    /// Composes `g ∈ Hom(b, c)` after `f ∈ Hom(a, b)` on generators.
    pub fn compose_gen(&self, a: usize, b: usize, c: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let (dab, dbc, dac) = (self.hom_dim(a, b), self.hom_dim(b, c), self.hom_dim(a, c));
        debug_assert_eq!(g.len(), dbc);
        debug_assert_eq!(f.len(), dab);
        let fld = self.field;
        let table = self.comp_table(a, b, c);
        let mut out = vec![Scalar::zero(); dac];
        for (i, gi) in g.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, fj) in f.iter().enumerate() {
                if fj.is_zero() {
                    continue;
                }
                let coef = fld.mul(gi, fj);
                let base = (i * dab + j) * dac;
                for (k, o) in out.iter_mut().enumerate() {
                    let t = &table[base + k];
                    if !t.is_zero() {
                        *o = fld.add(o, &fld.mul(&coef, t));
                    }
                }
            }
        }
        out
    }

    pub fn hom_space(&self, source: &ObjectExpr, target: &ObjectExpr) -> HomSpace {
        let mut offsets = Vec::with_capacity(source.len() * target.len());
        let mut dims = Vec::with_capacity(source.len() * target.len());
        let mut acc = 0;
        for &t in target.summands() {
            for &s in source.summands() {
                let d = self.hom_dim(s, t);
                offsets.push(acc);
                dims.push(d);
                acc += d;
            }
        }
        HomSpace { source: source.clone(), target: target.clone(), dim: acc, offsets, dims }
    }

    pub fn check_object(&self, a: &ObjectExpr) -> Result<()> {
        match a.summands().iter().find(|&&g| g >= self.num_generators()) {
            Some(g) => Err(Error::UnknownGenerator(format!("index {g} in `{}`", self.name))),
            None => Ok(()),
        }
    }

    pub fn zero_morphism(&self, source: &ObjectExpr, target: &ObjectExpr) -> Morphism {
        let dim = self.hom_space(source, target).dim;
        Morphism { source: source.clone(), target: target.clone(), coords: vec![Scalar::zero(); dim] }
    }

    pub fn morphism(&self, source: &ObjectExpr, target: &ObjectExpr, coords: Vec<Scalar>) -> Result<Morphism> {
        let dim = self.hom_space(source, target).dim;
        if coords.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for Hom({}, {}) of dimension {dim}",
                coords.len(),
                self.display_object(source),
                self.display_object(target)
            )));
        }
        let coords = coords.into_iter().map(|x| self.field.normalize(x)).collect();
        Ok(Morphism { source: source.clone(), target: target.clone(), coords })
    }

    /// The `k`-th basis vector of `Hom(source, target)`.
    pub fn basis_morphism(&self, source: &ObjectExpr, target: &ObjectExpr, k: usize) -> Morphism {
        let mut m = self.zero_morphism(source, target);
        m.coords[k] = self.field.one();
        m
    }

    pub fn generator_morphism(&self, a: usize, b: usize, coords: Vec<Scalar>) -> Morphism {
        Morphism { source: ObjectExpr::single(a), target: ObjectExpr::single(b), coords }
    }

    pub fn identity(&self, a: &ObjectExpr) -> Morphism {
        let hs = self.hom_space(a, a);
        let mut coords = vec![Scalar::zero(); hs.dim];
        for (i, &g) in a.summands().iter().enumerate() {
            let r = hs.block_range(i, i);
            coords[r].clone_from_slice(&self.identities[g]);
        }
        Morphism { source: a.clone(), target: a.clone(), coords }
    }

    pub fn block(&self, m: &Morphism, ti: usize, si: usize) -> Vec<Scalar> {
        let hs = self.hom_space(&m.source, &m.target);
        m.coords[hs.block_range(ti, si)].to_vec()
    }

    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose {} → {} after {} → {}",
                self.display_object(&g.source),
                self.display_object(&g.target),
                self.display_object(&f.source),
                self.display_object(&f.target)
            )));
        }
        let fs = self.hom_space(&f.source, &f.target);
        let gs = self.hom_space(&g.source, &g.target);
        let out = self.hom_space(&f.source, &g.target);
        let mut coords = vec![Scalar::zero(); out.dim];
        for (ti, &t) in g.target.summands().iter().enumerate() {
            for (si, &s) in f.source.summands().iter().enumerate() {
                let r = out.block_range(ti, si);
                if r.is_empty() {
                    continue;
                }
                for (mi, &m) in f.target.summands().iter().enumerate() {
                    let gb = &g.coords[gs.block_range(ti, mi)];
                    let fb = &f.coords[fs.block_range(mi, si)];
                    if gb.is_empty() || fb.is_empty() {
                        continue;
                    }
                    let prod = self.compose_gen(s, m, t, gb, fb);
                    for (o, p) in coords[r.clone()].iter_mut().zip(prod) {
                        *o = self.field.add(o, &p);
                    }
                }
            }
        }
        Ok(Morphism { source: f.source.clone(), target: g.target.clone(), coords })
    }

    /// Composes a chain given in application order: `compose_chain(&[f, g, h]) = h∘g∘f`.
    pub fn compose_chain(&self, chain: &[&Morphism]) -> Result<Morphism> {
        let (first, rest) = chain.split_first().expect("nonempty chain");
        rest.iter().try_fold((*first).clone(), |acc, m| self.compose(m, &acc))
    }

    pub fn add(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        if a.source != b.source || a.target != b.target {
            return Err(Error::BoundaryMismatch("sum of morphisms with different boundaries".into()));
        }
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| self.field.add(x, y)).collect();
        Ok(Morphism { source: a.source.clone(), target: a.target.clone(), coords })
    }

    pub fn sub(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        self.add(a, &self.scale(b, &self.field.from_int(-1)))
    }

    pub fn scale(&self, a: &Morphism, c: &Scalar) -> Morphism {
        let coords = a.coords.iter().map(|x| self.field.mul(c, x)).collect();
        Morphism { source: a.source.clone(), target: a.target.clone(), coords }
    }

    pub fn neg(&self, a: &Morphism) -> Morphism {
        self.scale(a, &self.field.from_int(-1))
    }

    /// Copies `small` into the blocks of `big` selected by summand positions:
    /// source summand `i` of `small` sits at `src_sel[i]` of `big.source`, etc.
    pub fn place(&self, big: &mut Morphism, small: &Morphism, src_sel: &[usize], tgt_sel: &[usize]) {
        let bs = self.hom_space(&big.source, &big.target);
        let ss = self.hom_space(&small.source, &small.target);
        for (ti, &bt) in tgt_sel.iter().enumerate() {
            for (si, &bsi) in src_sel.iter().enumerate() {
                let src = &small.coords[ss.block_range(ti, si)];
                let dst = bs.block_range(bt, bsi);
                big.coords[dst].clone_from_slice(src);
            }
        }
    }

    /// Extracts the sub-morphism between selected summands.
    pub fn select(&self, m: &Morphism, src_sel: &[usize], tgt_sel: &[usize]) -> Morphism {
        let source: ObjectExpr = src_sel.iter().map(|&i| m.source.summands()[i]).collect();
        let target: ObjectExpr = tgt_sel.iter().map(|&i| m.target.summands()[i]).collect();
        let ms = self.hom_space(&m.source, &m.target);
        let hs = self.hom_space(&source, &target);
        let mut coords = vec![Scalar::zero(); hs.dim];
        for (ti, &bt) in tgt_sel.iter().enumerate() {
            for (si, &bsi) in src_sel.iter().enumerate() {
                coords[hs.block_range(ti, si)].clone_from_slice(&m.coords[ms.block_range(bt, bsi)]);
            }
        }
        Morphism { source, target, coords }
    }

    /// Block-diagonal sum `f ⊕ g`.
    pub fn direct_sum(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let source = f.source.concat(&g.source);
        let target = f.target.concat(&g.target);
        let mut out = self.zero_morphism(&source, &target);
        let (fs, ft) = (f.source.len(), f.target.len());
        self.place(&mut out, f, &(0..fs).collect::<Vec<_>>(), &(0..ft).collect::<Vec<_>>());
        self.place(
            &mut out,
            g,
            &(fs..fs + g.source.len()).collect::<Vec<_>>(),
            &(ft..ft + g.target.len()).collect::<Vec<_>>(),
        );
        out
    }

    pub fn direct_sum_all(&self, parts: &[Morphism]) -> Morphism {
        parts.iter().fold(self.zero_morphism(&ObjectExpr::zero(), &ObjectExpr::zero()), |acc, p| {
            self.direct_sum(&acc, p)
        })
    }

    /// `(f; g): a → b ⊕ c` from `f: a → b` and `g: a → c`.
    pub fn pair_into(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        if f.source != g.source {
            return Err(Error::BoundaryMismatch("pairing morphisms with different sources".into()));
        }
        let target = f.target.concat(&g.target);
        let mut out = self.zero_morphism(&f.source, &target);
        let src: Vec<usize> = (0..f.source.len()).collect();
        let ft = f.target.len();
        self.place(&mut out, f, &src, &(0..ft).collect::<Vec<_>>());
        self.place(&mut out, g, &src, &(ft..ft + g.target.len()).collect::<Vec<_>>());
        Ok(out)
    }

    /// Re-expresses `m` with summands permuted: `new_source[i] = source[src_perm[i]]`.
    pub fn permute(&self, m: &Morphism, src_perm: &[usize], tgt_perm: &[usize]) -> Morphism {
        self.select(m, src_perm, tgt_perm)
    }

    /// Drops null summands and sorts the rest by generator index.
    pub fn canonicalize(&self, m: &Morphism) -> Morphism {
        let keep = |o: &ObjectExpr| -> Vec<usize> {
            let mut idx: Vec<usize> = (0..o.len()).filter(|&i| !self.is_null(o.summands()[i])).collect();
            idx.sort_by_key(|&i| (o.summands()[i], i));
            idx
        };
        self.select(m, &keep(&m.source), &keep(&m.target))
    }

    /// Finds `x ∈ unknown` with `map(x) = rhs` for a linear `map`, returning the
    /// canonical particular solution.
    pub fn solve_linear<F>(&self, unknown: &HomSpace, rhs: &Morphism, map: F) -> Result<Option<Morphism>>
    where
        F: Fn(&Morphism) -> Result<Morphism>,
    {
        let mat = self.linear_map(unknown, rhs, &map)?;
        Ok(mat
            .solve_vec(&rhs.coords)?
            .map(|coords| Morphism { source: unknown.source.clone(), target: unknown.target.clone(), coords }))
    }

    /// Matrix of a linear operator on a Hom space (columns = images of basis morphisms).
    pub fn linear_map<F>(&self, domain: &HomSpace, codomain_example: &Morphism, map: F) -> Result<Mat>
    where
        F: Fn(&Morphism) -> Result<Morphism>,
    {
        let mut cols = Vec::with_capacity(domain.dim);
        for k in 0..domain.dim {
            let e = self.basis_morphism(&domain.source, &domain.target, k);
            let img = map(&e)?;
            if img.source != codomain_example.source || img.target != codomain_example.target {
                return Err(Error::BoundaryMismatch("linear operator changed its codomain".into()));
            }
            cols.push(img.coords);
        }
        Ok(Mat::from_columns(self.field, codomain_example.coords.len(), &cols))
    }

    /// Whether `m` is invertible, returning its inverse.
    pub fn inverse(&self, m: &Morphism) -> Result<Option<Morphism>> {
        let hs = self.hom_space(&m.target, &m.source);
        let id_t = self.identity(&m.target);
        let Some(inv) = self.solve_linear(&hs, &id_t, |x| self.compose(m, x))? else {
            return Ok(None);
        };
        let back = self.compose(&inv, m)?;
        Ok((back == self.identity(&m.source)).then_some(inv))
    }

    pub fn display_object(&self, a: &ObjectExpr) -> String {
        if a.is_empty() {
            return "0".into();
        }
        a.summands().iter().map(|&g| self.generators[g].as_str()).collect::<Vec<_>>().join(" + ")
    }

    /// Renders a generator-to-generator coordinate vector as a linear combination of basis names.
    pub fn display_coords(&self, a: usize, b: usize, coords: &[Scalar]) -> String {
        let mut s = String::new();
        for (x, name) in coords.iter().zip(self.hom_basis(a, b)) {
            if x.is_zero() {
                continue;
            }
            let c = self.field.display(x);
            let (sign, mag) = match c.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", c),
            };
            if s.is_empty() {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            if mag == "1" {
                s.push_str(name);
            } else {
                let _ = write!(s, "{mag} {name}");
            }
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    pub fn display_morphism(&self, m: &Morphism) -> String {
        let hs = self.hom_space(&m.source, &m.target);
        let rows: Vec<String> = (0..m.target.len())
            .map(|ti| {
                let cells: Vec<String> = (0..m.source.len())
                    .map(|si| {
                        self.display_coords(
                            m.source.summands()[si],
                            m.target.summands()[ti],
                            &m.coords[hs.block_range(ti, si)],
                        )
                    })
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!(
            "{} → {}: [{}]",
            self.display_object(&m.source),
            self.display_object(&m.target),
            rows.join(", ")
        )
    }
}

/// Assembles a presentation from named pieces. Products not set explicitly
/// default to the identity rule when one factor is a declared identity basis
/// element, and to zero otherwise.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    name: String,
    field: FieldSpec,
    generators: Vec<String>,
    homs: HashMap<(usize, usize), Vec<String>>,
    identity_elements: HashMap<usize, String>,
    identity_coords: HashMap<usize, Vec<(Scalar, String)>>,
    products: Vec<(String, String, Vec<(Scalar, String)>)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>, field: FieldSpec) -> Self {
        CategoryBuilder {
            name: name.into(),
            field,
            generators: Vec::new(),
            homs: HashMap::new(),
            identity_elements: HashMap::new(),
            identity_coords: HashMap::new(),
            products: Vec::new(),
        }
    }

    fn idx(&self, g: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }

    pub fn generator(mut self, name: &str) -> Self {
        self.generators.push(name.to_string());
        self
    }

    pub fn hom(mut self, a: &str, b: &str, basis: &[&str]) -> Result<Self> {
        let key = (self.idx(a)?, self.idx(b)?);
        self.homs.entry(key).or_default().extend(basis.iter().map(|s| s.to_string()));
        Ok(self)
    }

    /// Declares `elem ∈ End(g)` to be the identity of `g`.
    pub fn identity_element(mut self, g: &str, elem: &str) -> Result<Self> {
        let gi = self.idx(g)?;
        self.identity_elements.insert(gi, elem.to_string());
        Ok(self)
    }

    /// Declares the identity of `g` as a linear combination of basis elements.
    pub fn identity_combination(mut self, g: &str, combo: Vec<(Scalar, String)>) -> Result<Self> {
        let gi = self.idx(g)?;
        self.identity_coords.insert(gi, combo);
        Ok(self)
    }

    /// Sets `g ∘ f` for basis elements `g`, `f`.
    pub fn product(mut self, g: &str, f: &str, value: Vec<(Scalar, String)>) -> Self {
        self.products.push((g.to_string(), f.to_string(), value));
        self
    }

    pub fn build(self) -> Result<FinLinCategory> {
        let n = self.generators.len();
        let fld = self.field;
        let mut hom_bases = vec![Vec::new(); n * n];
        let mut index: HashMap<String, (usize, usize, usize)> = HashMap::new();
        for ((a, b), basis) in &self.homs {
            hom_bases[a * n + b] = basis.clone();
            for (k, e) in basis.iter().enumerate() {
                index.insert(e.clone(), (*a, *b, k));
            }
        }
        let lookup = |e: &str| index.get(e).copied().ok_or_else(|| Error::UnknownGenerator(format!("basis element {e}")));
        let combo_coords = |combo: &[(Scalar, String)], a: usize, b: usize| -> Result<Vec<Scalar>> {
            let mut v = vec![Scalar::zero(); hom_bases[a * n + b].len()];
            for (c, e) in combo {
                let (ea, eb, k) = lookup(e)?;
                if (ea, eb) != (a, b) {
                    return Err(Error::BoundaryMismatch(format!("basis element `{e}` lies in the wrong Hom space")));
                }
                v[k] = fld.add(&v[k], c);
            }
            Ok(v)
        };
        let mut identities = Vec::with_capacity(n);
        let mut id_elem: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for g in 0..n {
            let v = if let Some(e) = self.identity_elements.get(&g) {
                let loc = lookup(e)?;
                if (loc.0, loc.1) != (g, g) {
                    return Err(Error::BoundaryMismatch(format!("identity `{e}` is not an endomorphism of {}", self.generators[g])));
                }
                id_elem.insert(loc, g);
                let mut v = vec![Scalar::zero(); hom_bases[g * n + g].len()];
                v[loc.2] = fld.one();
                v
            } else if let Some(combo) = self.identity_coords.get(&g) {
                combo_coords(combo, g, g)?
            } else if hom_bases[g * n + g].is_empty() {
                Vec::new()
            } else {
                return Err(Error::DimensionMismatch(format!("no identity declared for {}", self.generators[g])));
            };
            identities.push(v);
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (dab, dbc, dac) = (hom_bases[a * n + b].len(), hom_bases[b * n + c].len(), hom_bases[a * n + c].len());
                    let mut t = vec![Scalar::zero(); dbc * dab * dac];
                    for i in 0..dbc {
                        for j in 0..dab {
                            let base = (i * dab + j) * dac;
                            if id_elem.get(&(b, c, i)).is_some() && b == c {
                                t[base + j] = fld.one();
                            } else if id_elem.get(&(a, b, j)).is_some() && a == b {
                                t[base + i] = fld.one();
                            }
                        }
                    }
                    comp.push(t);
                }
            }
        }
        for (g, f, value) in &self.products {
            let (gb, gc, gi) = lookup(g)?;
            let (fa, fb, fj) = lookup(f)?;
            if gb != fb {
                return Err(Error::BoundaryMismatch(format!("product `{g} * {f}` is not composable")));
            }
            let v = combo_coords(value, fa, gc)?;
            let dab = hom_bases[fa * n + fb].len();
            let dac = hom_bases[fa * n + gc].len();
            let t = &mut comp[(fa * n + fb) * n + gc];
            let base = (gi * dab + fj) * dac;
            t[base..base + dac].clone_from_slice(&v);
        }
        FinLinCategory::new(self.name, fld, self.generators, hom_bases, identities, comp)
    }
}
