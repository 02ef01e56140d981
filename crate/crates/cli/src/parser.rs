//! Recursive-descent parser for workspace files.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rclkit_core::{FieldSpec, Scalar};

use crate::ast::*;
use crate::lexer::{tokenize, Diagnostic, Pos, Tok};

struct Parser {
    toks: Vec<(Pos, Tok)>,
    at: usize,
    end: Pos,
}

type PResult<T> = Result<T, Diagnostic>;

pub fn parse_scalar(w: &str) -> Option<Scalar> {
    let (num, den) = match w.split_once('/') {
        Some((n, d)) => (n, d),
        None => (w, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) || den.starts_with(['-', '+']) {
        return None;
    }
    Some(Scalar::new(n, d))
}

fn insert_unique<K: Ord, V>(map: &mut BTreeMap<K, V>, key: K, value: V, pos: Pos, what: impl FnOnce() -> String) -> PResult<()> {
    if map.contains_key(&key) {
        return Err(Diagnostic::new(pos, format!("duplicate {}", what())));
    }
    map.insert(key, value);
    Ok(())
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> PResult<(Pos, Tok)> {
        let t = self.toks.get(self.at).cloned().ok_or_else(|| Diagnostic::new(self.end, "unexpected end of file"))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        let (pos, t) = self.next()?;
        if t != want {
            return Err(Diagnostic::new(pos, format!("expected {want}, found {t}")));
        }
        Ok(())
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let (pos, t) = self.next()?;
        match t {
            Tok::Word(w) if w == kw => Ok(()),
            other => Err(Diagnostic::new(pos, format!("expected `{kw}`, found {other}"))),
        }
    }

    fn name(&mut self) -> PResult<(Pos, String)> {
        let (pos, t) = self.next()?;
        match t {
            Tok::Word(w) | Tok::Str(w) => Ok((pos, w)),
            other => Err(Diagnostic::new(pos, format!("expected a name, found {other}"))),
        }
    }

    fn scalar(&mut self) -> PResult<Scalar> {
        let (pos, t) = self.next()?;
        match &t {
            Tok::Word(w) => parse_scalar(w).ok_or_else(|| Diagnostic::new(pos, format!("`{w}` is not an integer or fraction"))),
            other => Err(Diagnostic::new(pos, format!("expected a number, found {other}"))),
        }
    }

    fn coords(&mut self) -> PResult<Coords> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        while !self.eat(&Tok::RBrack) {
            out.push(self.scalar()?);
        }
        Ok(out)
    }

    fn name_list(&mut self) -> PResult<Vec<String>> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        while !self.eat(&Tok::RBrack) {
            out.push(self.name()?.1);
        }
        Ok(out)
    }

    /// `0`, a generator, or `( G H … )`.
    fn object(&mut self) -> PResult<ObjectSpec> {
        if self.eat(&Tok::LParen) {
            let mut out = Vec::new();
            while !self.eat(&Tok::RParen) {
                out.push(self.name()?.1);
            }
            return Ok(out);
        }
        let (pos, t) = self.next()?;
        match t {
            Tok::Word(w) if w == "0" => Ok(Vec::new()),
            Tok::Word(w) | Tok::Str(w) => Ok(vec![w]),
            other => Err(Diagnostic::new(pos, format!("expected an object, found {other}"))),
        }
    }

    fn members(&mut self) -> PResult<Members> {
        if self.peek() == Some(&Tok::Word("all".into())) {
            self.at += 1;
            return Ok(Members::All);
        }
        Ok(Members::List(self.name_list()?))
    }

    fn triangle(&mut self) -> PResult<TriangleDecl> {
        let x = self.object()?;
        let y = self.object()?;
        let z = self.object()?;
        self.expect(Tok::Colon)?;
        let f = self.coords()?;
        let g = self.coords()?;
        let h = self.coords()?;
        Ok(TriangleDecl { x, y, z, f, g, h })
    }

    /// Statements `key … ;` inside braces, dispatched on the leading keyword.
    fn block(&mut self, mut stmt: impl FnMut(&mut Self, Pos, &str) -> PResult<()>) -> PResult<()> {
        self.expect(Tok::LBrace)?;
        while !self.eat(&Tok::RBrace) {
            let (pos, t) = self.next()?;
            let Tok::Word(kw) = t else {
                return Err(Diagnostic::new(pos, format!("expected a statement, found {t}")));
            };
            stmt(self, pos, &kw)?;
            self.expect(Tok::Semi)?;
        }
        Ok(())
    }

    fn component_map(&mut self, map: &mut BTreeMap<String, Coords>, pos: Pos, what: &str) -> PResult<()> {
        let (_, g) = self.name()?;
        self.expect(Tok::Eq)?;
        let c = self.coords()?;
        insert_unique(map, g.clone(), c, pos, || format!("{what} at `{g}`"))
    }

    fn category(&mut self) -> PResult<CategoryDecl> {
        let mut d = CategoryDecl::default();
        let mut seen_generators = false;
        self.block(|p, pos, kw| match kw {
            "generators" => {
                if seen_generators {
                    return Err(Diagnostic::new(pos, "duplicate generators statement"));
                }
                seen_generators = true;
                while !matches!(p.peek(), Some(Tok::Semi) | None) {
                    d.generators.push(p.name()?.1);
                }
                Ok(())
            }
            "hom" => {
                let (_, a) = p.name()?;
                let (_, b) = p.name()?;
                p.expect(Tok::Eq)?;
                let basis = p.name_list()?;
                insert_unique(&mut d.homs, (a.clone(), b.clone()), basis, pos, || format!("hom {a} {b}"))
            }
            "identity" => {
                let (_, g) = p.name()?;
                p.expect(Tok::Eq)?;
                let e = if p.peek() == Some(&Tok::LBrack) { Element::Coords(p.coords()?) } else { Element::Named(p.name()?.1) };
                insert_unique(&mut d.identities, g.clone(), e, pos, || format!("identity of {g}"))
            }
            "product" => {
                let (_, g) = p.name()?;
                let (_, f) = p.name()?;
                p.expect(Tok::Eq)?;
                let c = p.coords()?;
                insert_unique(&mut d.products, (g.clone(), f.clone()), c, pos, || format!("product {g} {f}"))
            }
            other => Err(Diagnostic::new(pos, format!("unknown category statement `{other}`"))),
        })?;
        Ok(d)
    }

    fn functor(&mut self) -> PResult<FunctorDecl> {
        self.expect(Tok::Colon)?;
        let (_, source) = self.name()?;
        self.keyword("->")?;
        let (_, target) = self.name()?;
        let mut objects = BTreeMap::new();
        let mut maps = BTreeMap::new();
        self.block(|p, pos, kw| match kw {
            "object" => {
                let (_, g) = p.name()?;
                p.expect(Tok::Eq)?;
                let o = p.object()?;
                insert_unique(&mut objects, g.clone(), o, pos, || format!("object image of `{g}`"))
            }
            "map" => p.component_map(&mut maps, pos, "image"),
            other => Err(Diagnostic::new(pos, format!("unknown functor statement `{other}`"))),
        })?;
        Ok(FunctorDecl { source, target, objects, maps })
    }

    fn transformation(&mut self) -> PResult<TransformationDecl> {
        self.expect(Tok::Colon)?;
        let (_, from) = self.name()?;
        self.keyword("->")?;
        let (_, to) = self.name()?;
        let mut components = BTreeMap::new();
        self.block(|p, pos, kw| match kw {
            "component" => p.component_map(&mut components, pos, "component"),
            other => Err(Diagnostic::new(pos, format!("unknown transformation statement `{other}`"))),
        })?;
        Ok(TransformationDecl { from, to, components })
    }

    fn adjunction(&mut self) -> PResult<AdjunctionDecl> {
        self.expect(Tok::Colon)?;
        let (_, left) = self.name()?;
        self.keyword("-|")?;
        let (_, right) = self.name()?;
        let mut unit = BTreeMap::new();
        let mut counit = BTreeMap::new();
        self.block(|p, pos, kw| match kw {
            "unit" => p.component_map(&mut unit, pos, "unit component"),
            "counit" => p.component_map(&mut counit, pos, "counit component"),
            other => Err(Diagnostic::new(pos, format!("unknown adjunction statement `{other}`"))),
        })?;
        Ok(AdjunctionDecl { left, right, unit, counit })
    }

    fn triangulated(&mut self) -> PResult<TriangulatedDecl> {
        self.expect(Tok::Colon)?;
        let (_, category) = self.name()?;
        let mut shift = None;
        let mut triangles = BTreeMap::new();
        self.block(|p, pos, kw| match kw {
            "shift" => {
                if shift.is_some() {
                    return Err(Diagnostic::new(pos, "duplicate shift"));
                }
                shift = Some(p.name()?.1);
                Ok(())
            }
            "triangle" => {
                let (_, n) = p.name()?;
                p.expect(Tok::Eq)?;
                let t = p.triangle()?;
                insert_unique(&mut triangles, n.clone(), t, pos, || format!("triangle `{n}`"))
            }
            other => Err(Diagnostic::new(pos, format!("unknown triangulated statement `{other}`"))),
        })?;
        let shift = shift.ok_or_else(|| Diagnostic::new(self.pos(), "triangulated declaration without a shift"))?;
        Ok(TriangulatedDecl { category, shift, triangles })
    }

    fn exact(&mut self) -> PResult<ExactDecl> {
        self.expect(Tok::Colon)?;
        let (_, functor) = self.name()?;
        self.expect(Tok::Colon)?;
        let (_, source) = self.name()?;
        self.keyword("->")?;
        let (_, target) = self.name()?;
        let mut phi = BTreeMap::new();
        self.block(|p, pos, kw| match kw {
            "phi" => p.component_map(&mut phi, pos, "shift isomorphism component"),
            other => Err(Diagnostic::new(pos, format!("unknown exact statement `{other}`"))),
        })?;
        Ok(ExactDecl { functor, source, target, phi })
    }

    fn mutation(&mut self) -> PResult<MutationDecl> {
        self.expect(Tok::Colon)?;
        let (_, triangulated) = self.name()?;
        let (mut z, mut d) = (None, None);
        let mut fixed = BTreeMap::new();
        let mut cofixed = BTreeMap::new();
        self.block(|p, pos, kw| match kw {
            "z" | "d" => {
                p.expect(Tok::Eq)?;
                let slot = if kw == "z" { &mut z } else { &mut d };
                if slot.is_some() {
                    return Err(Diagnostic::new(pos, format!("duplicate `{kw}`")));
                }
                *slot = Some(p.members()?);
                Ok(())
            }
            "fixed" | "cofixed" => {
                let (_, g) = p.name()?;
                p.expect(Tok::Eq)?;
                let t = p.triangle()?;
                let map = if kw == "fixed" { &mut fixed } else { &mut cofixed };
                insert_unique(map, g.clone(), t, pos, || format!("{kw} triangle for `{g}`"))
            }
            other => Err(Diagnostic::new(pos, format!("unknown mutation statement `{other}`"))),
        })?;
        let z = z.unwrap_or(Members::All);
        let d = d.ok_or_else(|| Diagnostic::new(self.pos(), "mutation declaration without `d`"))?;
        Ok(MutationDecl { triangulated, z, d, fixed, cofixed })
    }

    fn trirecollement(&mut self) -> PResult<TriRecollementDecl> {
        self.expect(Tok::Colon)?;
        let (_, recollement) = self.name()?;
        let mut slots: BTreeMap<&'static str, String> = BTreeMap::new();
        let mut exact = None;
        self.block(|p, pos, kw| {
            let key = match kw {
                "left" => "left",
                "middle" => "middle",
                "right" => "right",
                "mutation" => "mutation",
                "exact" => {
                    let names = p.name_list()?;
                    if names.len() != 6 {
                        return Err(Diagnostic::new(pos, format!("expected 6 exactness declarations, found {}", names.len())));
                    }
                    exact = Some(names);
                    return Ok(());
                }
                other => return Err(Diagnostic::new(pos, format!("unknown trirecollement statement `{other}`"))),
            };
            let v = p.name()?.1;
            insert_unique(&mut slots, key, v, pos, || format!("`{key}`"))
        })?;
        let pos = self.pos();
        let mut take = |k: &str| slots.remove(k).ok_or_else(|| Diagnostic::new(pos, format!("trirecollement without `{k}`")));
        Ok(TriRecollementDecl {
            recollement,
            left: take("left")?,
            middle: take("middle")?,
            right: take("right")?,
            mutation: take("mutation")?,
            exact: exact.ok_or_else(|| Diagnostic::new(pos, "trirecollement without `exact`"))?,
        })
    }
}

fn parse_field(pos: Pos, w: &str) -> PResult<FieldSpec> {
    if w == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = w
        .strip_prefix("F_")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Diagnostic::new(pos, format!("unknown field `{w}`; expected `Q` or `F_p`")))?;
    FieldSpec::prime(p).map_err(|e| Diagnostic::new(pos, e.to_string()))
}

/// Parses a workspace file. Cross references are not resolved here.
pub fn parse(src: &str) -> Result<Workspace, Diagnostic> {
    let toks = tokenize(src)?;
    let end = Pos { line: src.lines().count() + 1, col: 1 };
    let mut p = Parser { toks, at: 0, end };
    let mut ws = Workspace::default();
    let (mut saw_format, mut saw_field) = (false, false);
    while p.peek().is_some() {
        let (pos, t) = p.next()?;
        let Tok::Word(kw) = t else {
            return Err(Diagnostic::new(pos, format!("expected a declaration, found {t}")));
        };
        let d = &mut ws.decls;
        let kind: &'static str = match kw.as_str() {
            "format" => {
                if std::mem::replace(&mut saw_format, true) {
                    return Err(Diagnostic::new(pos, "duplicate format declaration"));
                }
                let (vpos, v) = p.name()?;
                d.format_version = v.parse().map_err(|_| Diagnostic::new(vpos, format!("bad format version `{v}`")))?;
                if d.format_version != 1 {
                    return Err(Diagnostic::new(vpos, format!("unsupported format version {}", d.format_version)));
                }
                p.expect(Tok::Semi)?;
                continue;
            }
            "field" => {
                if std::mem::replace(&mut saw_field, true) {
                    return Err(Diagnostic::new(pos, "duplicate field declaration"));
                }
                let (fpos, w) = p.name()?;
                d.field = parse_field(fpos, &w)?;
                p.expect(Tok::Semi)?;
                continue;
            }
            "category" => "category",
            "subcategory" => "subcategory",
            "functor" => "functor",
            "transformation" => "transformation",
            "adjunction" => "adjunction",
            "recollement" => "recollement",
            "triangulated" => "triangulated",
            "exact" => "exact",
            "mutation" => "mutation",
            "trirecollement" => "trirecollement",
            other => return Err(Diagnostic::new(pos, format!("unknown declaration `{other}`"))),
        };
        let (npos, name) = p.name()?;
        if ws.positions.contains_key(&(kind, name.clone())) {
            return Err(Diagnostic::new(npos, format!("duplicate {kind} `{name}`")));
        }
        ws.positions.insert((kind, name.clone()), pos);
        let d = &mut ws.decls;
        match kind {
            "category" => {
                d.categories.insert(name, p.category()?);
            }
            "subcategory" => {
                p.expect(Tok::Colon)?;
                let (_, category) = p.name()?;
                p.expect(Tok::Eq)?;
                let members = p.name_list()?;
                p.expect(Tok::Semi)?;
                d.subcategories.insert(name, SubcategoryDecl { category, members });
            }
            "functor" => {
                d.functors.insert(name, p.functor()?);
            }
            "transformation" => {
                d.transformations.insert(name, p.transformation()?);
            }
            "adjunction" => {
                d.adjunctions.insert(name, p.adjunction()?);
            }
            "recollement" => {
                p.expect(Tok::Eq)?;
                let lpos = p.pos();
                let adjunctions = p.name_list()?;
                if adjunctions.len() != 4 {
                    return Err(Diagnostic::new(lpos, format!("expected 4 adjunctions, found {}", adjunctions.len())));
                }
                p.expect(Tok::Semi)?;
                d.recollements.insert(name, RecollementDecl { adjunctions });
            }
            "triangulated" => {
                d.triangulated.insert(name, p.triangulated()?);
            }
            "exact" => {
                d.exact.insert(name, p.exact()?);
            }
            "mutation" => {
                d.mutations.insert(name, p.mutation()?);
            }
            _ => {
                d.trirecollements.insert(name, p.trirecollement()?);
            }
        }
    }
    Ok(ws)
}
