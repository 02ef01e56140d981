#!/usr/bin/env python3
"""Regenerates crates/cli/fixtures/*.rcl by brute force.

A2: representations of the quiver 1 -> 2 over Q. Hom spaces are solved
directly as commuting pairs (f1, f2); functors and adjunction data come from
vertex restriction, cokernels and the canonical maps between them.

STAB3: modules over k[x]/(x^3) as nilpotent matrices. Stable Hom is Hom
modulo maps factoring through the regular module P; the shift is the
cokernel of the injective hull and the triangles are read off from short
exact sequences via the connecting morphism.

PROD: two copies of STAB3 side by side.
"""

from fractions import Fraction as Fr
from itertools import product
from pathlib import Path
import sys

OUT = Path(__file__).resolve().parent.parent / "crates" / "cli" / "fixtures"


# ---------------------------------------------------------------- linear algebra

def zeros(r, c):
    return [[Fr(0)] * c for _ in range(r)]


def ident(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fr(1)
    return m


def matmul(a, b, ra, ca, cb):
    """Product of an ra x ca and a ca x cb matrix, allowing empty shapes."""
    return [[sum((a[i][k] * b[k][j] for k in range(ca)), Fr(0)) for j in range(cb)] for i in range(ra)]


def rref(rows, ncols):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows, ncols):
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fr(0)] * ncols
        v[f] = Fr(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def rank(vectors, n):
    return len(rref(vectors, n)[1]) if vectors else 0


def solve(columns, target, n):
    """Coefficients c with sum c_i columns_i = target, or None."""
    k = len(columns)
    rows = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    red, piv = rref(rows, k + 1)
    if k in piv:
        return None
    c = [Fr(0)] * k
    for i, p in enumerate(piv):
        c[p] = red[i][k]
    return c


def flat(m, r, c):
    return [m[i][j] for i in range(r) for j in range(c)]


def unflat(v, r, c):
    return [[v[i * c + j] for j in range(c)] for i in range(r)]


def invert(m, n):
    cols = [[m[i][j] for i in range(n)] for j in range(n)]
    out = zeros(n, n)
    for j in range(n):
        e = [Fr(int(i == j)) for i in range(n)]
        c = solve(cols, e, n)
        assert c is not None, "singular"
        for i in range(n):
            out[i][j] = c[i]
    return out


def fmt(x):
    x = Fr(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def coords(v):
    return "[" + " ".join(fmt(x) for x in v) + "]"


def quote(name):
    plain = name and name not in ("0", "all") and not any(ch.isspace() or ch in '{}[]():;="#' for ch in name)
    return name if plain else f'"{name}"'


def obj(names):
    if not names:
        return "0"
    if len(names) == 1:
        return quote(names[0])
    return "(" + " ".join(quote(n) for n in names) + ")"


# ------------------------------------------------------------ presentations

class Cat:
    def __init__(self, name, gens):
        self.name = name
        self.gens = list(gens)
        self.homs = {}
        self.ident = {}
        self.prods = {}

    def dim(self, a, b):
        return len(self.homs.get((a, b), []))

    def emit(self, out):
        out.append(f"category {quote(self.name)} {{")
        out.append("  generators " + " ".join(quote(g) for g in self.gens) + ";")
        for (a, b), names in self.homs.items():
            out.append(f"  hom {quote(a)} {quote(b)} = [" + " ".join(quote(n) for n in names) + "];")
        for g in self.gens:
            if self.dim(g, g) == 0:
                continue
            v = self.ident[g]
            ones = [i for i, x in enumerate(v) if x != 0]
            if len(ones) == 1 and v[ones[0]] == 1:
                out.append(f"  identity {quote(g)} = {quote(self.homs[(g, g)][ones[0]])};")
            else:
                out.append(f"  identity {quote(g)} = {coords(v)};")
        for (g, f), v in self.prods.items():
            out.append(f"  product {quote(g)} {quote(f)} = {coords(v)};")
        out.append("}")


def emit_functor(out, name, src, tgt, objects, maps):
    out.append(f"functor {quote(name)} : {quote(src)} -> {quote(tgt)} {{")
    for g, image in objects.items():
        out.append(f"  object {quote(g)} = {obj(image)};")
    for e, v in maps.items():
        out.append(f"  map {quote(e)} = {coords(v)};")
    out.append("}")


def emit_adjunction(out, name, left, right, unit, counit):
    out.append(f"adjunction {quote(name)} : {quote(left)} -| {quote(right)} {{")
    for g, v in unit.items():
        out.append(f"  unit {quote(g)} = {coords(v)};")
    for g, v in counit.items():
        out.append(f"  counit {quote(g)} = {coords(v)};")
    out.append("}")


def point(name):
    c = Cat(name, ["k"])
    c.homs[("k", "k")] = ["e"]
    c.ident["k"] = [Fr(1)]
    c.prods[("e", "e")] = [Fr(1)]
    return c


# ------------------------------------------------------------------------ A2

class Rep:
    def __init__(self, d1, d2, a):
        self.d1, self.d2, self.a = d1, d2, a


A2_GENS = {
    "S1": Rep(1, 0, []),
    "S2": Rep(0, 1, [[]]),
    "P1": Rep(1, 1, [[Fr(1)]]),
}
A2_NAMES = {("S1", "S1"): "s1", ("S2", "S2"): "s2", ("P1", "P1"): "p1", ("S2", "P1"): "iota", ("P1", "S1"): "pi"}


def rep_hom_basis(m, n):
    """Pairs (f1, f2) with f2 a_M = a_N f1."""
    k1, k2 = n.d1 * m.d1, n.d2 * m.d2
    eqs = []
    for i in range(n.d2):
        for j in range(m.d1):
            row = [Fr(0)] * (k1 + k2)
            for t in range(m.d2):
                row[k1 + i * m.d2 + t] += m.a[t][j]
            for t in range(n.d1):
                row[t * m.d1 + j] -= n.a[i][t]
            eqs.append(row)
    return [(unflat(v[:k1], n.d1, m.d1), unflat(v[k1:], n.d2, m.d2)) for v in nullspace(eqs, k1 + k2)]


def rep_vec(m, n, f):
    return flat(f[0], n.d1, m.d1) + flat(f[1], n.d2, m.d2)


def rep_coords(m, n, f, basis):
    if not basis:
        assert all(x == 0 for x in rep_vec(m, n, f)), "nonzero map into a zero Hom space"
        return []
    c = solve([rep_vec(m, n, b) for b in basis], rep_vec(m, n, f), n.d1 * m.d1 + n.d2 * m.d2)
    assert c is not None, "not a representation morphism"
    return c


def rep_compose(l, m, n, g, f):
    return (matmul(g[0], f[0], n.d1, m.d1, l.d1), matmul(g[1], f[1], n.d2, m.d2, l.d2))


def cokernel(m):
    """Basis complement of im a in V2: (section d2 x c, projection c x d2)."""
    im = [[m.a[i][j] for i in range(m.d2)] for j in range(m.d1)]
    im = rref(im, m.d2)[0] if im else []
    cols = [list(r) for r in im]
    comp = []
    for i in range(m.d2):
        e = [Fr(int(t == i)) for t in range(m.d2)]
        if rank(cols + comp + [e], m.d2) > len(cols) + len(comp):
            comp.append(e)
    full = cols + comp
    basis = [[full[j][i] for j in range(len(full))] for i in range(m.d2)]
    inv = invert(basis, m.d2) if m.d2 else []
    proj = inv[len(cols):]
    section = [[comp[j][i] for j in range(len(comp))] for i in range(m.d2)]
    return section, proj, len(comp)


def a2():
    gens = list(A2_GENS)
    homs = {}
    cat = Cat("A", gens)
    for a, b in product(gens, gens):
        basis = rep_hom_basis(A2_GENS[a], A2_GENS[b])
        homs[(a, b)] = basis
        if basis:
            assert len(basis) == 1, (a, b)
            cat.homs[(a, b)] = [A2_NAMES[(a, b)]]
    for g in gens:
        m = A2_GENS[g]
        cat.ident[g] = rep_coords(m, m, (ident(m.d1), ident(m.d2)), homs[(g, g)])
    for (b, c), gb in homs.items():
        for (a, b2), fb in homs.items():
            if b2 != b:
                continue
            for gi, g in enumerate(gb):
                for fi, f in enumerate(fb):
                    comp = rep_compose(A2_GENS[a], A2_GENS[b], A2_GENS[c], g, f)
                    v = rep_coords(A2_GENS[a], A2_GENS[c], comp, homs[(a, c)])
                    cat.prods[(cat.homs[(b, c)][gi], cat.homs[(a, b)][fi])] = v

    ak, akk = point("Ak"), point("Akk")
    out = ["# Generated by scripts/gen_fixtures.py; do not edit.", "format 1;", "field Q;"]
    for c in (ak, cat, akk):
        c.emit(out)

    def basis_elems():
        for (a, b), basis in homs.items():
            for i, f in enumerate(basis):
                yield a, b, cat.homs[(a, b)][i], f

    def to_point(name, tgt, space, action):
        """Functor A -> point sending M to a vector space and f to a matrix."""
        objects = {g: ["k"] * space(A2_GENS[g]) for g in gens}
        maps = {}
        for a, b, e, f in basis_elems():
            mat = action(A2_GENS[a], A2_GENS[b], f)
            maps[e] = flat(mat, space(A2_GENS[b]), space(A2_GENS[a]))
        emit_functor(out, name, "A", tgt, objects, maps)

    def from_point(name, src, g):
        m = A2_GENS[g]
        emit_functor(out, name, src, "A", {"k": [g]}, {"e": rep_coords(m, m, (ident(m.d1), ident(m.d2)), homs[(g, g)])})

    def coker_map(m, n, f):
        sm, _, cm = cokernel(m)
        _, pn, cn = cokernel(n)
        return matmul(pn, matmul(f[1], sm, n.d2, m.d2, cm), cn, n.d2, cm)

    to_point("i*", "Ak", lambda m: cokernel(m)[2], coker_map)
    from_point("i_*", "Ak", "S2")
    to_point("i^!", "Ak", lambda m: m.d2, lambda m, n, f: f[1])
    from_point("j_!", "Akk", "P1")
    to_point("j*", "Akk", lambda m: m.d1, lambda m, n, f: f[0])
    from_point("j_*", "Akk", "S1")

    def into_sum(m, parts, comps):
        """Coordinates of M -> X_1 + ... + X_r from component maps."""
        v = []
        for g, f in zip(parts, comps):
            v += rep_coords(m, A2_GENS[g], f, rep_hom_basis(m, A2_GENS[g]))
        return v

    def out_of_sum(n, parts, comps):
        v = []
        for g, f in zip(parts, comps):
            v += rep_coords(A2_GENS[g], n, f, rep_hom_basis(A2_GENS[g], n))
        return v

    unit, counit = {}, {}
    for g in gens:
        m = A2_GENS[g]
        _, p, c = cokernel(m)
        unit[g] = into_sum(m, ["S2"] * c, [(zeros(0, m.d1), [p[t]]) for t in range(c)])
    counit["k"] = [Fr(1)]
    emit_adjunction(out, "(i*, i_*)", "i*", "i_*", unit, counit)

    unit, counit = {"k": [Fr(1)]}, {}
    for g in gens:
        n = A2_GENS[g]
        comps = [(zeros(n.d1, 0), [[Fr(int(i == s))] for i in range(n.d2)]) for s in range(n.d2)]
        counit[g] = out_of_sum(n, ["S2"] * n.d2, comps)
    emit_adjunction(out, "(i_*, i^!)", "i_*", "i^!", unit, counit)

    unit, counit = {"k": [Fr(1)]}, {}
    for g in gens:
        n = A2_GENS[g]
        comps = []
        for s in range(n.d1):
            e = [[Fr(int(i == s))] for i in range(n.d1)]
            comps.append((e, matmul(n.a, e, n.d2, n.d1, 1)))
        counit[g] = out_of_sum(n, ["P1"] * n.d1, comps)
    emit_adjunction(out, "(j_!, j*)", "j_!", "j*", unit, counit)

    unit, counit = {}, {"k": [Fr(1)]}
    for g in gens:
        m = A2_GENS[g]
        comps = [([[Fr(int(j == t)) for j in range(m.d1)]], zeros(0, m.d2)) for t in range(m.d1)]
        unit[g] = into_sum(m, ["S1"] * m.d1, comps)
    emit_adjunction(out, "(j*, j_*)", "j*", "j_*", unit, counit)

    out.append('recollement A2 = ["(i*, i_*)" "(i_*, i^!)" "(j_!, j*)" "(j*, j_*)"];')
    return out


# --------------------------------------------------------------------- STAB3

class Mod:
    def __init__(self, n, x):
        self.n, self.x = n, x


def jordan(n):
    x = zeros(n, n)
    for i in range(n - 1):
        x[i + 1][i] = Fr(1)
    return x


P = Mod(3, jordan(3))
STAB_GENS = {"M1": Mod(1, jordan(1)), "M2": Mod(2, jordan(2))}
STAB_NAMES = {("M1", "M1"): "e1", ("M2", "M2"): "e2", ("M1", "M2"): "iota", ("M2", "M1"): "pi"}


def direct_sum(mods):
    n = sum(m.n for m in mods)
    x = zeros(n, n)
    o = 0
    for m in mods:
        for i in range(m.n):
            for j in range(m.n):
                x[o + i][o + j] = m.x[i][j]
        o += m.n
    return Mod(n, x)


def mod_hom_basis(m, n):
    """Matrices F with F X_M = X_N F."""
    k = n.n * m.n
    eqs = []
    for i in range(n.n):
        for j in range(m.n):
            row = [Fr(0)] * k
            for t in range(m.n):
                row[i * m.n + t] += m.x[t][j]
            for t in range(n.n):
                row[t * m.n + j] -= n.x[i][t]
            eqs.append(row)
    return [unflat(v, n.n, m.n) for v in nullspace(eqs, k)]


def is_hom(m, n, f):
    return matmul(f, m.x, n.n, m.n, m.n) == matmul(n.x, f, n.n, n.n, m.n)


def projective_part(m, n):
    """Basis of the maps M -> N factoring through P."""
    vecs = []
    for a in mod_hom_basis(m, P):
        for b in mod_hom_basis(P, n):
            vecs.append(flat(matmul(b, a, n.n, P.n, m.n), n.n, m.n))
    return rref(vecs, n.n * m.n)[0] if vecs else []


class Stable:
    """Stable Hom spaces between the non-projective generators."""

    def __init__(self):
        self.reps = {}
        self.ideal = {}
        for a, b in product(STAB_GENS, STAB_GENS):
            m, n = STAB_GENS[a], STAB_GENS[b]
            ideal = projective_part(m, n)
            reps = []
            for f in mod_hom_basis(m, n):
                v = flat(f, n.n, m.n)
                if rank(ideal + [flat(r, n.n, m.n) for r in reps] + [v], n.n * m.n) > len(ideal) + len(reps):
                    reps.append(f)
            self.reps[(a, b)] = reps
            self.ideal[(a, b)] = ideal

    def coords(self, a, b, f):
        m, n = STAB_GENS[a], STAB_GENS[b]
        assert is_hom(m, n, f), "not a module map"
        reps = [flat(r, n.n, m.n) for r in self.reps[(a, b)]]
        c = solve(reps + self.ideal[(a, b)], flat(f, n.n, m.n), n.n * m.n)
        assert c is not None
        return c[: len(reps)]


def first_with(candidates, ok):
    for c in candidates:
        if ok(c):
            return c
    raise AssertionError("no candidate found")


def combos(basis, r, c):
    """Basis elements, then small integer combinations, in a fixed order."""
    yield from basis
    for coeffs in product(range(-1, 2), repeat=len(basis)):
        if any(coeffs):
            yield [[sum(k * b[i][j] for k, b in zip(coeffs, basis)) for j in range(c)] for i in range(r)]


def hull_data(g):
    """Injective hull u: M -> P, cokernel section/projection and an iso coker -> T(M)."""
    m = STAB_GENS[g]
    u = first_with(combos(mod_hom_basis(m, P), P.n, m.n), lambda f: rank([list(r) for r in zip(*f)], P.n) == m.n)
    im = [[u[i][j] for i in range(P.n)] for j in range(m.n)]
    comp = []
    for i in range(P.n):
        e = [Fr(int(t == i)) for t in range(P.n)]
        if rank(im + comp + [e], P.n) > m.n + len(comp):
            comp.append(e)
    full = im + comp
    basis = [[full[j][i] for j in range(P.n)] for i in range(P.n)]
    inv = invert(basis, P.n)
    proj = inv[m.n:]
    section = [[comp[j][i] for j in range(len(comp))] for i in range(P.n)]
    c = len(comp)
    cx = matmul(proj, matmul(P.x, section, P.n, P.n, c), c, P.n, c)
    coker = Mod(c, cx)
    for t, tm in STAB_GENS.items():
        if tm.n != c:
            continue
        for phi in combos(mod_hom_basis(coker, tm), tm.n, c):
            if rank([list(r) for r in phi], c) == c:
                return u, section, proj, t, phi
    raise AssertionError("cokernel is not a generator")


HULL = {g: hull_data(g) for g in STAB_GENS}


def shift_map(a, b, f):
    """T(f): T(a) -> T(b) for a module map f: a -> b."""
    ua, sa, _, ta, phia = HULL[a]
    ub, _, pb, tb, phib = HULL[b]
    m, n = STAB_GENS[a], STAB_GENS[b]
    target = matmul(ub, f, P.n, n.n, m.n)
    basis = mod_hom_basis(P, P)
    lifts = [flat(matmul(g, ua, P.n, P.n, m.n), P.n, m.n) for g in basis]
    c = solve(lifts, flat(target, P.n, m.n), P.n * m.n)
    assert c is not None, "hull does not extend"
    g = [[sum(k * bb[i][j] for k, bb in zip(c, basis)) for j in range(P.n)] for i in range(P.n)]
    ca, cb = len(sa[0]), len(pb)
    induced = matmul(pb, matmul(g, sa, P.n, P.n, ca), cb, P.n, ca)
    return ta, tb, matmul(phib, matmul(induced, invert(phia, ca), cb, ca, ca), STAB_GENS[tb].n, cb, ca)


def connecting(xg, ys, zg, f, g):
    """Connecting morphism Z -> T(X) of 0 -> X -> Y -> Z -> 0, Y a list of modules."""
    x, z = STAB_GENS[xg], STAB_GENS[zg]
    y = direct_sum(ys)
    assert is_hom(x, y, f) and is_hom(y, z, g)
    assert matmul(g, f, z.n, y.n, x.n) == zeros(z.n, x.n)
    assert rank([list(r) for r in zip(*f)], y.n) == x.n and rank([list(r) for r in g], y.n) == z.n
    assert x.n + z.n == y.n
    u, _, proj, tx, phi = HULL[xg]
    basis = mod_hom_basis(y, P)
    vals = [flat(matmul(v, f, P.n, y.n, x.n), P.n, x.n) for v in basis]
    c = solve(vals, flat(u, P.n, x.n), P.n * x.n)
    assert c is not None, "hull does not extend along f"
    v = [[sum(k * bb[i][j] for k, bb in zip(c, basis)) for j in range(y.n)] for i in range(P.n)]
    cols = [[g[i][j] for i in range(z.n)] for j in range(y.n)]
    sec = []
    for t in range(z.n):
        e = [Fr(int(i == t)) for i in range(z.n)]
        s = solve(cols, e, z.n)
        sec.append(s)
    section = [[sec[t][j] for t in range(z.n)] for j in range(y.n)]
    cn = len(proj)
    h = matmul(phi, matmul(proj, matmul(v, section, P.n, y.n, z.n), cn, P.n, z.n), STAB_GENS[tx].n, cn, z.n)
    assert is_hom(z, STAB_GENS[tx], h)
    return tx, h


def blocks(mods):
    out, o = [], 0
    for m in mods:
        out.append((o, m.n))
        o += m.n
    return out


def stable_triangle(st, xg, ynames, zg, f, g):
    """(X, Y', Z, f, g, h) with Y' the non-projective summands of Y."""
    ymods = [P if n == "P" else STAB_GENS[n] for n in ynames]
    tx, h = connecting(xg, ymods, zg, f, g)
    x, z = STAB_GENS[xg], STAB_GENS[zg]
    keep = [(n, blk) for n, blk in zip(ynames, blocks(ymods)) if n != "P"]
    fv, gv = [], []
    for n, (o, d) in keep:
        fv += st.coords(xg, n, [f[o + i][:] for i in range(d)])
    for n, (o, d) in keep:
        gv += st.coords(n, zg, [[g[i][o + j] for j in range(d)] for i in range(z.n)])
    return [n for n, _ in keep], fv, gv, tx, st.coords(zg, tx, h)


def stab3_data():
    st = Stable()
    cat = Cat("STAB3", list(STAB_GENS))
    for (a, b), reps in st.reps.items():
        if reps:
            assert len(reps) == 1, (a, b)
            cat.homs[(a, b)] = [STAB_NAMES[(a, b)]]
    for g, m in STAB_GENS.items():
        cat.ident[g] = st.coords(g, g, ident(m.n))
    for (b, c), gr in st.reps.items():
        for (a, b2), fr in st.reps.items():
            if b2 != b:
                continue
            for gi, gm in enumerate(gr):
                for fi, fm in enumerate(fr):
                    m, n = STAB_GENS[a], STAB_GENS[b]
                    comp = matmul(gm, fm, STAB_GENS[c].n, n.n, m.n)
                    cat.prods[(cat.homs[(b, c)][gi], cat.homs[(a, b)][fi])] = st.coords(a, c, comp)
    shift_objects, shift_maps = {}, {}
    for g in STAB_GENS:
        shift_objects[g] = [HULL[g][3]]
    for (a, b), reps in st.reps.items():
        for i, f in enumerate(reps):
            ta, tb, tf = shift_map(a, b, f)
            shift_maps[cat.homs[(a, b)][i]] = st.coords(ta, tb, tf)

    # 0 -> M1 -> M2 -> M1 -> 0: socle inclusion and projection.
    f1 = [[Fr(0)], [Fr(1)]]
    g1 = [[Fr(1), Fr(0)]]
    # 0 -> M2 -> P + M1 -> M2 -> 0: 1 |-> (x, 1) and (p, m) |-> p - x m.
    f2 = [[Fr(0), Fr(0)], [Fr(1), Fr(0)], [Fr(0), Fr(1)], [Fr(1), Fr(0)]]
    g2 = [[Fr(1), Fr(0), Fr(0), Fr(0)], [Fr(0), Fr(1), Fr(0), Fr(-1)]]
    triangles = {}
    for name, x, ys, z, f, g in (("A", "M1", ["M2"], "M1", f1, g1), ("B", "M2", ["P", "M1"], "M2", f2, g2)):
        ykeep, fv, gv, _, hv = stable_triangle(st, x, ys, z, f, g)
        triangles[name] = ([x], ykeep, [z], fv, gv, hv)
    return cat, shift_objects, shift_maps, triangles


def emit_triangle(t):
    x, y, z, f, g, h = t
    return f"{obj(x)} {obj(y)} {obj(z)} : {coords(f)} {coords(g)} {coords(h)}"


def identity_triangle(cat, g):
    return ([g], [g], [], cat.ident[g], [], [])


def stab3():
    cat, so, sm, tris = stab3_data()
    out = ["# Generated by scripts/gen_fixtures.py; do not edit.", "format 1;", "field Q;"]
    cat.emit(out)
    emit_functor(out, "T", "STAB3", "STAB3", so, sm)
    out.append("triangulated STAB3 : STAB3 {")
    out.append("  shift T;")
    for n, t in tris.items():
        out.append(f"  triangle {n} = {emit_triangle(t)};")
    out.append("}")
    out.append('mutation "STAB3/add(M2)" : STAB3 {')
    out.append("  z = all;")
    out.append("  d = [M2];")
    out.append(f"  fixed M1 = {emit_triangle(tris['A'])};")
    out.append(f"  fixed M2 = {emit_triangle(identity_triangle(cat, 'M2'))};")
    out.append("}")
    return out


# ---------------------------------------------------------------------- PROD

def prod():
    base, so, sm, tris = stab3_data()

    def copy(name):
        c = Cat(name, base.gens)
        c.homs, c.ident, c.prods = dict(base.homs), dict(base.ident), dict(base.prods)
        return c

    c1, c2 = copy("C1"), copy("C2")
    mid = Cat("C", [f"{p}{g}" for p in ("C1.", "C2.") for g in base.gens])
    for p in ("C1.", "C2."):
        for (a, b), names in base.homs.items():
            mid.homs[(p + a, p + b)] = [p + n for n in names]
        for g, v in base.ident.items():
            mid.ident[p + g] = v
        for (g, f), v in base.prods.items():
            mid.prods[(p + g, p + f)] = v
    out = ["# Generated by scripts/gen_fixtures.py; do not edit.", "format 1;", "field Q;"]
    for c in (c1, mid, c2):
        c.emit(out)

    emit_functor(out, "T1", "C1", "C1", so, sm)
    emit_functor(out, "T2", "C2", "C2", so, sm)
    emit_functor(
        out,
        "T",
        "C",
        "C",
        {p + g: [p + t[0]] for p in ("C1.", "C2.") for g, t in so.items()},
        {p + e: v for p in ("C1.", "C2.") for e, v in sm.items()},
    )

    def projection(name, prefix, tgt):
        objects = {}
        maps = {}
        for p in ("C1.", "C2."):
            for g in base.gens:
                objects[p + g] = [g] if p == prefix else []
            for (a, b), names in base.homs.items():
                for i, e in enumerate(names):
                    if p == prefix:
                        maps[p + e] = [Fr(int(j == i)) for j in range(len(names))]
                    else:
                        maps[p + e] = []
        emit_functor(out, name, "C", tgt, objects, maps)

    def inclusion(name, prefix, src):
        objects = {g: [prefix + g] for g in base.gens}
        maps = {}
        for (a, b), names in base.homs.items():
            for i, e in enumerate(names):
                maps[e] = [Fr(int(j == i)) for j in range(len(names))]
        emit_functor(out, name, src, "C", objects, maps)

    projection("i*", "C1.", "C1")
    inclusion("i_*", "C1.", "C1")
    projection("i^!", "C1.", "C1")
    inclusion("j_!", "C2.", "C2")
    projection("j*", "C2.", "C2")
    inclusion("j_*", "C2.", "C2")

    def on_factor(gens_with_prefix, prefix):
        return {g: (base.ident[g[len(prefix):]] if g.startswith(prefix) else []) for g in gens_with_prefix}

    full = mid.gens
    emit_adjunction(out, "(i*, i_*)", "i*", "i_*", on_factor(full, "C1."), {g: base.ident[g] for g in base.gens})
    emit_adjunction(out, "(i_*, i^!)", "i_*", "i^!", {g: base.ident[g] for g in base.gens}, on_factor(full, "C1."))
    emit_adjunction(out, "(j_!, j*)", "j_!", "j*", {g: base.ident[g] for g in base.gens}, on_factor(full, "C2."))
    emit_adjunction(out, "(j*, j_*)", "j*", "j_*", on_factor(full, "C2."), {g: base.ident[g] for g in base.gens})
    out.append('recollement PROD = ["(i*, i_*)" "(i_*, i^!)" "(j_!, j*)" "(j*, j_*)"];')

    def prefixed(t, p):
        x, y, z, f, g, h = t
        return ([p + n for n in x], [p + n for n in y], [p + n for n in z], f, g, h)

    for name, shift, ts in (("C1", "T1", tris), ("C2", "T2", tris)):
        out.append(f"triangulated {name} : {name} {{")
        out.append(f"  shift {shift};")
        for n, t in ts.items():
            out.append(f"  triangle {n} = {emit_triangle(t)};")
        out.append("}")
    out.append("triangulated C : C {")
    out.append("  shift T;")
    for p in ("C1.", "C2."):
        for n, t in tris.items():
            out.append(f"  triangle {quote(p + n)} = {emit_triangle(prefixed(t, p))};")
    out.append("}")

    ends = {
        "i*": ("C", "C1"),
        "i_*": ("C1", "C"),
        "i^!": ("C", "C1"),
        "j_!": ("C2", "C"),
        "j*": ("C", "C2"),
        "j_*": ("C2", "C"),
    }
    for f, (s, t) in ends.items():
        out.append(f"exact {quote(f)} : {quote(f)} : {s} -> {t} {{")
        out.append("}")

    out.append('mutation "C/add(C1.M2)" : C {')
    out.append("  z = all;")
    out.append("  d = [C1.M2];")
    out.append(f"  fixed C1.M1 = {emit_triangle(prefixed(tris['A'], 'C1.'))};")
    out.append(f"  fixed C1.M2 = {emit_triangle(prefixed(identity_triangle(base, 'M2'), 'C1.'))};")
    for g in base.gens:
        tg = so[g][0]
        minus_one = [-x for x in base.ident[tg]]
        out.append(f"  fixed C2.{g} = {obj(['C2.' + g])} 0 {obj(['C2.' + tg])} : [] [] {coords(minus_one)};")
    out.append("}")
    out.append("trirecollement PROD : PROD {")
    out.append("  left C1;")
    out.append("  middle C;")
    out.append("  right C2;")
    out.append('  exact ["i*" "i_*" "i^!" "j_!" "j*" "j_*"];')
    out.append('  mutation "C/add(C1.M2)";')
    out.append("}")
    return out


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, build in (("fix_a2.rcl", a2), ("fix_stab3.rcl", stab3), ("fix_prod.rcl", prod)):
        text = "\n".join(build()) + "\n"
        (OUT / name).write_text(text)
        print(f"wrote {OUT / name}", file=sys.stderr)


if __name__ == "__main__":
    main()
