"""Finite categories, profunctors and monoids in Prof, with exhaustive law checks.

Categories are table driven: morphisms are interned integers and composition
is a dense table.  Profunctor elements are tagged with their (source,
target) pair so that every action can be checked for well-typedness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, NamedTuple

from .errors import LawViolation, NotCompact
from .intcat import CompactInstance, dual_morphism as _dual_morphism


class FiniteCategory:
    """A finite category with optional strict monoidal and compact data."""

    def __init__(self, objects, names, src, dst, comp, ident, monoidal=None, compact=None):
        self.objects = tuple(objects)
        self.names = list(names)
        self.src = list(src)
        self.dst = list(dst)
        self.comp = comp  # comp[f][g] = f then g, or -1
        self.ident = list(ident)
        self.monoidal = monoidal  # dict: tobj, tmor, unit, sigma
        self.compact = compact  # dict: dual, eta, eps
        self.index = {n: i for i, n in enumerate(self.names)}
        self._homs = {}
        for f in range(len(self.names)):
            self._homs.setdefault((self.src[f], self.dst[f]), []).append(f)

    @classmethod
    def build(cls, objects, morphisms, then: Callable, identity: Callable, monoidal=None, compact=None):
        """Intern morphisms given as (name, src, dst) and tabulate the given functions.

        ``monoidal`` has keys tensor_obj, tensor_mor, unit, symmetry;
        ``compact`` has keys dual, eta, eps.  Functions act on names and
        object values.
        """
        objects = tuple(objects)
        oi = {o: i for i, o in enumerate(objects)}
        names = [m[0] for m in morphisms]
        if len(set(names)) != len(names):
            raise ValueError("morphism names must be distinct")
        mi = {n: i for i, n in enumerate(names)}
        src = [oi[m[1]] for m in morphisms]
        dst = [oi[m[2]] for m in morphisms]
        n = len(names)
        comp = [[-1] * n for _ in range(n)]
        for f in range(n):
            for g in range(n):
                if dst[f] == src[g]:
                    comp[f][g] = mi[then(names[f], names[g])]
        ident = [mi[identity(o)] for o in objects]
        mon = None
        if monoidal is not None:
            mon = {
                "tobj": [[oi[monoidal["tensor_obj"](a, b)] for b in objects] for a in objects],
                "tmor": [[mi[monoidal["tensor_mor"](names[f], names[g])] for g in range(n)] for f in range(n)],
                "unit": oi[monoidal["unit"]],
                "sigma": [[mi[monoidal["symmetry"](a, b)] for b in objects] for a in objects],
            }
        cpt = None
        if compact is not None:
            cpt = {
                "dual": [oi[compact["dual"](a)] for a in objects],
                "eta": [mi[compact["eta"](a)] for a in objects],
                "eps": [mi[compact["eps"](a)] for a in objects],
            }
        return cls(objects, names, src, dst, comp, ident, mon, cpt)

    @property
    def n_mor(self) -> int:
        return len(self.names)

    def obj(self, o) -> int:
        return self.objects.index(o)

    def hom(self, c: int, d: int) -> list[int]:
        return self._homs.get((c, d), [])

    def then(self, f: int, g: int) -> int:
        h = self.comp[f][g]
        if h < 0:
            raise ValueError(f"{self.names[f]} and {self.names[g]} are not composable")
        return h

    def then_all(self, *fs: int) -> int:
        out = fs[0]
        for f in fs[1:]:
            out = self.then(out, f)
        return out

    # monoidal helpers
    def tobj(self, a: int, b: int) -> int:
        return self.monoidal["tobj"][a][b]

    def tmor(self, f: int, g: int) -> int:
        return self.monoidal["tmor"][f][g]

    @property
    def unit(self) -> int:
        return self.monoidal["unit"]

    def sigma(self, a: int, b: int) -> int:
        return self.monoidal["sigma"][a][b]

    def require_compact(self):
        if self.compact is None or self.monoidal is None:
            raise NotCompact("the category has no compact structure")

    def dual(self, a: int) -> int:
        self.require_compact()
        return self.compact["dual"][a]

    def eta(self, a: int) -> int:
        self.require_compact()
        return self.compact["eta"][a]

    def eps(self, a: int) -> int:
        self.require_compact()
        return self.compact["eps"][a]


def _violation(found: list, law: str, **witness):
    found.append(LawViolation(law, witness))


def category_violations(C: FiniteCategory) -> list[LawViolation]:
    out: list[LawViolation] = []
    n = C.n_mor
    for f in range(n):
        if C.comp[C.ident[C.src[f]]][f] != f or C.comp[f][C.ident[C.dst[f]]] != f:
            _violation(out, "identity", f=C.names[f])
        for g in range(n):
            fg = C.comp[f][g]
            if fg < 0:
                continue
            if C.src[fg] != C.src[f] or C.dst[fg] != C.dst[g]:
                _violation(out, "composite typing", f=C.names[f], g=C.names[g])
                continue
            for h in range(n):
                if C.comp[g][h] < 0:
                    continue
                if C.comp[fg][h] != C.comp[f][C.comp[g][h]]:
                    _violation(out, "associativity", f=C.names[f], g=C.names[g], h=C.names[h])
    return out


def monoidal_violations(C: FiniteCategory) -> list[LawViolation]:
    out: list[LawViolation] = []
    if C.monoidal is None:
        return out
    nobj, n = len(C.objects), C.n_mor
    I = C.unit
    for a in range(nobj):
        if C.tobj(I, a) != a or C.tobj(a, I) != a:
            _violation(out, "monoidal unit", a=C.objects[a])
        for b in range(nobj):
            for c in range(nobj):
                if C.tobj(C.tobj(a, b), c) != C.tobj(a, C.tobj(b, c)):
                    _violation(out, "monoidal associativity", a=C.objects[a], b=C.objects[b], c=C.objects[c])
    idI = C.ident[I]
    for f in range(n):
        if C.tmor(idI, f) != f or C.tmor(f, idI) != f:
            _violation(out, "tensor unit on morphisms", f=C.names[f])
    for f in range(n):
        for g in range(n):
            t = C.tmor(f, g)
            if C.src[t] != C.tobj(C.src[f], C.src[g]) or C.dst[t] != C.tobj(C.dst[f], C.dst[g]):
                _violation(out, "tensor typing", f=C.names[f], g=C.names[g])
            for h in range(n):
                if C.tmor(C.tmor(f, g), h) != C.tmor(f, C.tmor(g, h)):
                    _violation(out, "tensor associativity", f=C.names[f], g=C.names[g], h=C.names[h])
    for a in range(nobj):
        for b in range(nobj):
            if C.tmor(C.ident[a], C.ident[b]) != C.ident[C.tobj(a, b)]:
                _violation(out, "tensor preserves identities", a=C.objects[a], b=C.objects[b])
    for f1, g1 in itertools.product(range(n), repeat=2):
        if C.comp[f1][g1] < 0:
            continue
        for f2, g2 in itertools.product(range(n), repeat=2):
            if C.comp[f2][g2] < 0:
                continue
            if C.tmor(C.comp[f1][g1], C.comp[f2][g2]) != C.comp[C.tmor(f1, f2)][C.tmor(g1, g2)]:
                _violation(out, "interchange", f1=C.names[f1], g1=C.names[g1], f2=C.names[f2], g2=C.names[g2])
    for a in range(nobj):
        for b in range(nobj):
            s = C.sigma(a, b)
            if C.src[s] != C.tobj(a, b) or C.dst[s] != C.tobj(b, a):
                _violation(out, "symmetry typing", a=C.objects[a], b=C.objects[b])
                continue
            if C.comp[s][C.sigma(b, a)] != C.ident[C.tobj(a, b)]:
                _violation(out, "symmetry involution", a=C.objects[a], b=C.objects[b])
            for c in range(nobj):
                lhs = C.sigma(a, C.tobj(b, c))
                rhs = C.then(C.tmor(C.sigma(a, b), C.ident[c]), C.tmor(C.ident[b], C.sigma(a, c)))
                if lhs != rhs:
                    _violation(out, "hexagon", a=C.objects[a], b=C.objects[b], c=C.objects[c])
    for f in range(n):
        for g in range(n):
            lhs = C.then(C.tmor(f, g), C.sigma(C.dst[f], C.dst[g]))
            rhs = C.then(C.sigma(C.src[f], C.src[g]), C.tmor(g, f))
            if lhs != rhs:
                _violation(out, "symmetry naturality", f=C.names[f], g=C.names[g])
    return out


def compact_violations(C: FiniteCategory) -> list[LawViolation]:
    out: list[LawViolation] = []
    if C.compact is None:
        return out
    I = C.unit
    for a in range(len(C.objects)):
        d = C.dual(a)
        if C.dual(d) != a:
            _violation(out, "double dual", a=C.objects[a])
        e, k = C.eta(a), C.eps(a)
        if (C.src[e], C.dst[e]) != (I, C.tobj(d, a)) or (C.src[k], C.dst[k]) != (C.tobj(a, d), I):
            _violation(out, "unit/counit typing", a=C.objects[a])
            continue
        left = C.then(C.tmor(C.ident[a], e), C.tmor(k, C.ident[a]))
        if left != C.ident[a]:
            _violation(out, "zig-zag (X)", a=C.objects[a])
        right = C.then(C.tmor(e, C.ident[d]), C.tmor(C.ident[d], k))
        if right != C.ident[d]:
            _violation(out, "zig-zag (X*)", a=C.objects[a])
    return out


def category_law_violations(C: FiniteCategory) -> list[LawViolation]:
    return category_violations(C) + monoidal_violations(C) + compact_violations(C)


def verify(violations: list[LawViolation]):
    if violations:
        raise violations[0]


class TableCompact(CompactInstance):
    """A compact FiniteCategory seen through the generic compact interface."""

    def __init__(self, C: FiniteCategory):
        C.require_compact()
        self.C = C

    def identity(self, X):
        return self.C.ident[X]

    def compose(self, f, g):
        return self.C.then(f, g)

    def tensor(self, f, g):
        return self.C.tmor(f, g)

    def tensor_obj(self, X, Y):
        return self.C.tobj(X, Y)

    def symmetry(self, X, Y):
        return self.C.sigma(X, Y)

    def dual(self, X):
        return self.C.dual(X)

    def unit_mor(self, X):
        return self.C.eta(X)

    def counit_mor(self, X):
        return self.C.eps(X)

    def equal(self, f, g):
        return f == g


def dual_morphism(C: FiniteCategory, f: int) -> int:
    """f* : Y* -> X* for f : X -> Y."""
    return _dual_morphism(TableCompact(C), f, C.src[f], C.dst[f])


# -- built-in instances -----------------------------------------------------


def cyclic_group(n: int) -> FiniteCategory:
    """Z/n as a discrete compact category: tensor is addition, duals are negatives."""
    objs = list(range(n))
    return FiniteCategory.build(
        objs,
        [(("id", c), c, c) for c in objs],
        then=lambda f, g: f,
        identity=lambda c: ("id", c),
        monoidal={
            "tensor_obj": lambda a, b: (a + b) % n,
            "tensor_mor": lambda f, g: ("id", (f[1] + g[1]) % n),
            "unit": 0,
            "symmetry": lambda a, b: ("id", (a + b) % n),
        },
        compact={"dual": lambda a: (-a) % n, "eta": lambda a: ("id", 0), "eps": lambda a: ("id", 0)},
    )


def _rel(src: int, dst: int, pairs) -> tuple:
    return ("rel", src, dst, frozenset(pairs))


def finrel01() -> FiniteCategory:
    """Relations between the sets of size 0 and 1; tensor is cartesian product."""
    objs = [0, 1]
    mors = []
    for s in objs:
        for t in objs:
            mors.append((_rel(s, t, ()), s, t))
            if s and t:
                mors.append((_rel(s, t, [(0, 0)]), s, t))

    def then(r, q):
        pairs = {(x, z) for x, y in r[3] for y2, z in q[3] if y == y2}
        return _rel(r[1], q[2], pairs)

    def tensor_mor(r, q):
        full = (0, 0) in r[3] and (0, 0) in q[3]
        return _rel(r[1] * q[1], r[2] * q[2], [(0, 0)] if full else [])

    def ident(o):
        return _rel(o, o, [(0, 0)] if o else [])

    return FiniteCategory.build(
        objs,
        mors,
        then=then,
        identity=ident,
        monoidal={"tensor_obj": lambda a, b: a * b, "tensor_mor": tensor_mor, "unit": 1, "symmetry": lambda a, b: ident(a * b)},
        compact={
            "dual": lambda a: a,
            "eta": lambda a: _rel(1, a, [(0, 0)] if a else []),
            "eps": lambda a: _rel(a, 1, [(0, 0)] if a else []),
        },
    )


def converse(C: FiniteCategory, f: int) -> int:
    _, s, t, pairs = C.names[f]
    return C.index[_rel(t, s, {(y, x) for x, y in pairs})]


BUILTIN_CATEGORIES = {"Z2": lambda: cyclic_group(2), "Z3": lambda: cyclic_group(3), "FinRel01": finrel01}


# -- profunctors ------------------------------------------------------------


class Elem(NamedTuple):
    src: int
    dst: int
    value: Hashable


@dataclass
class FiniteProfunctor:
    """An endo-profunctor M on C: sets M(c, d) with actions on both sides.

    ``left[(g, m)]`` is g.m for g : d -> d'; ``right[(m, f)]`` is m.f for
    f : c' -> c.  Optional monoidal data: ``box[(m1, m2)]`` and ``unit_elem``.
    """

    C: FiniteCategory
    elems: dict  # (c, d) -> tuple of Elem
    left: dict
    right: dict
    box: dict | None = None
    unit_elem: Elem | None = None

    def all_elems(self) -> list[Elem]:
        return [m for key in sorted(self.elems) for m in self.elems[key]]

    def at(self, c: int, d: int) -> tuple:
        return self.elems.get((c, d), ())

    @property
    def monoidal(self) -> bool:
        return self.box is not None

    def act(self, g: int, m: Elem, f: int) -> Elem:
        """g . m . f"""
        return self.left[(g, self.right[(m, f)])]


def hom_profunctor(C: FiniteCategory) -> FiniteProfunctor:
    elems = {}
    for f in range(C.n_mor):
        elems.setdefault((C.src[f], C.dst[f]), []).append(Elem(C.src[f], C.dst[f], C.names[f]))
    elems = {k: tuple(v) for k, v in elems.items()}
    as_elem = lambda f: Elem(C.src[f], C.dst[f], C.names[f])
    left, right = {}, {}
    for m in range(C.n_mor):
        for g in range(C.n_mor):
            if C.comp[m][g] >= 0:
                left[(g, as_elem(m))] = as_elem(C.comp[m][g])
            if C.comp[g][m] >= 0:
                right[(as_elem(m), g)] = as_elem(C.comp[g][m])
    box = unit_elem = None
    if C.monoidal is not None:
        box = {(as_elem(f), as_elem(g)): as_elem(C.tmor(f, g)) for f in range(C.n_mor) for g in range(C.n_mor)}
        unit_elem = as_elem(C.ident[C.unit])
    return FiniteProfunctor(C, elems, left, right, box, unit_elem)


def profunctor_violations(M: FiniteProfunctor) -> list[LawViolation]:
    out: list[LawViolation] = []
    C = M.C
    for (c, d), ms in M.elems.items():
        for m in ms:
            if (m.src, m.dst) != (c, d):
                _violation(out, "element typing", m=m)
            if M.left.get((C.ident[d], m)) != m:
                _violation(out, "left unit", m=m)
            if M.right.get((m, C.ident[c])) != m:
                _violation(out, "right unit", m=m)
            for g in range(C.n_mor):
                if C.src[g] == d:
                    gm = M.left.get((g, m))
                    if gm is None or (gm.src, gm.dst) != (c, C.dst[g]):
                        _violation(out, "left action typing", g=C.names[g], m=m)
                        continue
                    for g2 in range(C.n_mor):
                        if C.src[g2] == C.dst[g] and M.left[(g2, gm)] != M.left[(C.then(g, g2), m)]:
                            _violation(out, "left associativity", g=C.names[g], g2=C.names[g2], m=m)
                if C.dst[g] == c:
                    mf = M.right.get((m, g))
                    if mf is None or (mf.src, mf.dst) != (C.src[g], d):
                        _violation(out, "right action typing", m=m, f=C.names[g])
                        continue
                    for f2 in range(C.n_mor):
                        if C.dst[f2] == C.src[g] and M.right[(mf, f2)] != M.right[(m, C.then(f2, g))]:
                            _violation(out, "right associativity", m=m, f=C.names[g], f2=C.names[f2])
    if out:
        return out
    for m in M.all_elems():
        for g in range(C.n_mor):
            if C.src[g] != m.dst:
                continue
            for f in range(C.n_mor):
                if C.dst[f] != m.src:
                    continue
                if M.right[(M.left[(g, m)], f)] != M.left[(g, M.right[(m, f)])]:
                    _violation(out, "bimodule", g=C.names[g], m=m, f=C.names[f])
    if M.monoidal and not out:
        out += _monoidal_profunctor_violations(M)
    return out


def _monoidal_profunctor_violations(M: FiniteProfunctor) -> list[LawViolation]:
    out: list[LawViolation] = []
    C = M.C
    I = C.unit
    u = M.unit_elem
    if u is None or (u.src, u.dst) != (I, I):
        _violation(out, "unit element typing", unit=u)
        return out
    elems = M.all_elems()
    for m1 in elems:
        if M.box.get((u, m1)) != m1 or M.box.get((m1, u)) != m1:
            _violation(out, "box unit", m=m1)
        for m2 in elems:
            b = M.box.get((m1, m2))
            if b is None or (b.src, b.dst) != (C.tobj(m1.src, m2.src), C.tobj(m1.dst, m2.dst)):
                _violation(out, "box typing", m1=m1, m2=m2)
                continue
            for m3 in elems:
                if M.box[(b, m3)] != M.box[(m1, M.box[(m2, m3)])]:
                    _violation(out, "box associativity", m1=m1, m2=m2, m3=m3)
            s_dst = C.sigma(m1.dst, m2.dst)
            s_src = C.sigma(m1.src, m2.src)
            if M.left[(s_dst, b)] != M.right[(M.box[(m2, m1)], s_src)]:
                _violation(out, "box symmetry", m1=m1, m2=m2)
            for g1 in range(C.n_mor):
                if C.src[g1] != m1.dst:
                    continue
                for g2 in range(C.n_mor):
                    if C.src[g2] != m2.dst:
                        continue
                    if M.box[(M.left[(g1, m1)], M.left[(g2, m2)])] != M.left[(C.tmor(g1, g2), b)]:
                        _violation(out, "box left naturality", g1=C.names[g1], m1=m1, g2=C.names[g2], m2=m2)
            for f1 in range(C.n_mor):
                if C.dst[f1] != m1.src:
                    continue
                for f2 in range(C.n_mor):
                    if C.dst[f2] != m2.src:
                        continue
                    if M.box[(M.right[(m1, f1)], M.right[(m2, f2)])] != M.right[(b, C.tmor(f1, f2))]:
                        _violation(out, "box right naturality", m1=m1, f1=C.names[f1], m2=m2, f2=C.names[f2])
    return out


@dataclass
class PointedEndo:
    M: FiniteProfunctor
    unit: dict  # morphism id -> Elem


@dataclass
class ProfMonoid:
    M: FiniteProfunctor
    unit: dict  # morphism id -> Elem
    mult: dict  # (n2, n1) -> Elem, n1 in M(c,d), n2 in M(d,e)


def pointed_violations(P) -> list[LawViolation]:
    """Unit laws that do not mention the multiplication."""
    M, i = P.M, P.unit
    C = M.C
    out = profunctor_violations(M)
    if out:
        return out
    for f in range(C.n_mor):
        x = i.get(f)
        if x is None or (x.src, x.dst) != (C.src[f], C.dst[f]):
            _violation(out, "unit typing", f=C.names[f])
            return out
    for f in range(C.n_mor):
        for g in range(C.n_mor):
            if C.src[g] == C.dst[f] and M.left[(g, i[f])] != i[C.then(f, g)]:
                _violation(out, "unit left equivariance", g=C.names[g], f=C.names[f])
            if C.dst[g] == C.src[f] and M.right[(i[f], g)] != i[C.then(g, f)]:
                _violation(out, "unit right equivariance", f=C.names[f], h=C.names[g])
    if M.monoidal:
        if i[C.ident[C.unit]] != M.unit_elem:
            _violation(out, "unit preserves the monoidal unit")
        for f in range(C.n_mor):
            for g in range(C.n_mor):
                if i[C.tmor(f, g)] != M.box[(i[f], i[g])]:
                    _violation(out, "unit preserves tensor", f=C.names[f], g=C.names[g])
    return out


def monoid_violations(N: ProfMonoid) -> list[LawViolation]:
    out = pointed_violations(N)
    if out:
        return out
    M, i, mul = N.M, N.unit, N.mult
    C = M.C
    elems = M.all_elems()
    for n1 in elems:
        for n2 in M.all_elems():
            if n2.src != n1.dst:
                continue
            x = mul.get((n2, n1))
            if x is None or (x.src, x.dst) != (n1.src, n2.dst):
                _violation(out, "multiplication typing", n2=n2, n1=n1)
    if out:
        return out
    for m in elems:
        for f in range(C.n_mor):
            if C.dst[f] == m.src and mul[(m, i[f])] != M.right[(m, f)]:
                _violation(out, "right unit", m=m, f=C.names[f])
            if C.src[f] == m.dst and mul[(i[f], m)] != M.left[(f, m)]:
                _violation(out, "left unit", f=C.names[f], m=m)
    by_src: dict = {}
    for m in elems:
        by_src.setdefault(m.src, []).append(m)
    for n1 in elems:
        for n2 in by_src.get(n1.dst, []):
            for n3 in by_src.get(n2.dst, []):
                if mul[(n3, mul[(n2, n1)])] != mul[(mul[(n3, n2)], n1)]:
                    _violation(out, "associativity", n3=n3, n2=n2, n1=n1)
    if M.monoidal:
        for n1 in elems:
            for n2 in by_src.get(n1.dst, []):
                for p1 in elems:
                    for p2 in by_src.get(p1.dst, []):
                        lhs = mul[(M.box[(n2, p2)], M.box[(n1, p1)])]
                        rhs = M.box[(mul[(n2, n1)], mul[(p2, p1)])]
                        if lhs != rhs:
                            _violation(out, "exchange", n2=n2, p2=p2, n1=n1, p1=p1)
    return out


def hom_monoid(C: FiniteCategory) -> ProfMonoid:
    M = hom_profunctor(C)
    as_elem = lambda f: Elem(C.src[f], C.dst[f], C.names[f])
    unit = {f: as_elem(f) for f in range(C.n_mor)}
    mult = {}
    for f in range(C.n_mor):
        for g in range(C.n_mor):
            if C.comp[f][g] >= 0:
                mult[(as_elem(g), as_elem(f))] = as_elem(C.comp[f][g])
    return ProfMonoid(M, unit, mult)


def forget_mult(N: ProfMonoid) -> PointedEndo:
    return PointedEndo(N.M, N.unit)


# -- collapse ---------------------------------------------------------------


@dataclass
class Collapse:
    category: FiniteCategory
    embedding: list[int]  # morphism id of C -> morphism id of Col M


def collapse(N: ProfMonoid) -> Collapse:
    """Col M: same objects, hom sets M(c, d), composition by the multiplication."""
    verify(monoid_violations(N))
    M = N.M
    C = M.C
    elems = M.all_elems()
    morphisms = [(m, m.src, m.dst) for m in elems]
    # objects of Col M are object indices of C, matching the Elem fields
    objs = list(range(len(C.objects)))
    mon = None
    if M.monoidal:
        mon = {
            "tensor_obj": lambda a, b: C.tobj(a, b),
            "tensor_mor": lambda m1, m2: M.box[(m1, m2)],
            "unit": C.unit,
            "symmetry": lambda a, b: N.unit[C.sigma(a, b)],
        }
    col = FiniteCategory.build(
        objs,
        morphisms,
        then=lambda m1, m2: N.mult[(m2, m1)],
        identity=lambda c: N.unit[C.ident[c]],
        monoidal=mon,
    )
    verify(category_violations(col) + monoidal_violations(col))
    embedding = [col.index[N.unit[f]] for f in range(C.n_mor)]
    verify(embedding_violations(C, col, embedding))
    return Collapse(col, embedding)


def embedding_violations(C: FiniteCategory, D: FiniteCategory, F: list[int]) -> list[LawViolation]:
    """F must be identity on objects and functorial."""
    out: list[LawViolation] = []
    for f in range(C.n_mor):
        if (D.src[F[f]], D.dst[F[f]]) != (C.src[f], C.dst[f]):
            _violation(out, "embedding is identity on objects", f=C.names[f])
    for c in range(len(C.objects)):
        if F[C.ident[c]] != D.ident[c]:
            _violation(out, "embedding preserves identities", c=C.objects[c])
    for f in range(C.n_mor):
        for g in range(C.n_mor):
            if C.comp[f][g] >= 0 and F[C.comp[f][g]] != D.comp[F[f]][F[g]]:
                _violation(out, "embedding preserves composition", f=C.names[f], g=C.names[g])
    return out


# -- the compact-base constructions -----------------------------------------


def derive_mult(P: PointedEndo) -> ProfMonoid:
    """n2 . n1 := (eps_d (x) id_e) . (n1 [x] i(id_d*) [x] n2) . (id_c (x) eta_d)."""
    M, i = P.M, P.unit
    C = M.C
    C.require_compact()
    if not M.monoidal:
        raise NotCompact("deriving a multiplication needs a monoidal profunctor")
    mult = {}
    elems = M.all_elems()
    for n1 in elems:
        c, d = n1.src, n1.dst
        ds = C.dual(d)
        mid = M.box[(n1, i[C.ident[ds]])]
        for n2 in [m for m in elems if m.src == d]:
            e = n2.dst
            x = M.box[(mid, n2)]
            x = M.right[(x, C.tmor(C.ident[c], C.eta(d)))]
            x = M.left[(C.tmor(C.eps(d), C.ident[e]), x)]
            mult[(n2, n1)] = x
    return ProfMonoid(M, i, mult)


def hom_shift(P, m: Elem) -> Elem:
    """M(a, b) -> M(I, a* (x) b): (i(id_a*) [x] m) . eta_a."""
    M, i = P.M, P.unit
    C = M.C
    a = m.src
    x = M.box[(i[C.ident[C.dual(a)]], m)]
    return M.right[(x, C.eta(a))]


def hom_unshift(P, m: Elem, a: int, b: int) -> Elem:
    """M(I, a* (x) b) -> M(a, b): (eps_a (x) id_b) . (i(id_a) [x] m)."""
    M, i = P.M, P.unit
    C = M.C
    if (m.src, m.dst) != (C.unit, C.tobj(C.dual(a), b)):
        raise ValueError(f"{m} is not in M(I, a* (x) b)")
    x = M.box[(i[C.ident[a]], m)]
    return M.left[(C.tmor(C.eps(a), C.ident[b]), x)]


def hom_shift_table(P, a: int, b: int) -> dict:
    """The bijection M(a, b) -> M(I, a* (x) b) as a dict."""
    return {m: hom_shift(P, m) for m in P.M.at(a, b)}


@dataclass
class Copresheaf:
    """A lax monoidal functor C -> Set, stored as tables."""

    C: FiniteCategory
    elems: dict  # object -> tuple of (object, value)
    act: dict  # (f, x) -> x'
    mult: dict  # (x, y) -> z
    unit: tuple


def copresheaf_violations(N: Copresheaf) -> list[LawViolation]:
    out: list[LawViolation] = []
    C = N.C
    for a, xs in N.elems.items():
        for x in xs:
            if N.act.get((C.ident[a], x)) != x:
                _violation(out, "copresheaf identity", x=x)
            for f in [f for f in range(C.n_mor) if C.src[f] == a]:
                y = N.act.get((f, x))
                if y is None or y[0] != C.dst[f]:
                    _violation(out, "copresheaf typing", f=C.names[f], x=x)
                    continue
                for g in range(C.n_mor):
                    if C.src[g] == C.dst[f] and N.act[(g, y)] != N.act[(C.then(f, g), x)]:
                        _violation(out, "copresheaf composition", f=C.names[f], g=C.names[g], x=x)
    if out:
        return out
    allx = [x for a in sorted(N.elems) for x in N.elems[a]]
    if N.unit[0] != C.unit:
        _violation(out, "copresheaf unit typing")
        return out
    for x in allx:
        if N.mult[(N.unit, x)] != x or N.mult[(x, N.unit)] != x:
            _violation(out, "copresheaf unit", x=x)
        for y in allx:
            z = N.mult[(x, y)]
            if z[0] != C.tobj(x[0], y[0]):
                _violation(out, "copresheaf mult typing", x=x, y=y)
            for w in allx:
                if N.mult[(z, w)] != N.mult[(x, N.mult[(y, w)])]:
                    _violation(out, "copresheaf mult associativity", x=x, y=y, w=w)
            for f in range(C.n_mor):
                if C.src[f] != x[0]:
                    continue
                for g in range(C.n_mor):
                    if C.src[g] == y[0] and N.mult[(N.act[(f, x)], N.act[(g, y)])] != N.act[(C.tmor(f, g), z)]:
                        _violation(out, "copresheaf mult naturality", f=C.names[f], g=C.names[g], x=x, y=y)
            s = C.sigma(x[0], y[0])
            if N.act[(s, z)] != N.mult[(y, x)]:
                _violation(out, "copresheaf symmetry", x=x, y=y)
    return out


def hom_copresheaf(C: FiniteCategory) -> Copresheaf:
    """Hom(I, -)."""
    I = C.unit
    elems = {a: tuple((a, C.names[f]) for f in C.hom(I, a)) for a in range(len(C.objects))}
    act, mult = {}, {}
    for f in range(C.n_mor):
        for x in C.hom(I, C.src[f]):
            act[(f, (C.src[f], C.names[x]))] = (C.dst[f], C.names[C.then(x, f)])
    allx = [f for a in range(len(C.objects)) for f in C.hom(I, a)]
    for x in allx:
        for y in allx:
            mult[((C.dst[x], C.names[x]), (C.dst[y], C.names[y]))] = (C.dst[C.tmor(x, y)], C.names[C.tmor(x, y)])
    return Copresheaf(C, elems, act, mult, (I, C.names[C.ident[I]]))


def constant_copresheaf(C: FiniteCategory) -> Copresheaf:
    elems = {a: ((a, "*"),) for a in range(len(C.objects))}
    act = {(f, (C.src[f], "*")): (C.dst[f], "*") for f in range(C.n_mor)}
    mult = {((a, "*"), (b, "*")): (C.tobj(a, b), "*") for a in elems for b in elems}
    return Copresheaf(C, elems, act, mult, (C.unit, "*"))


def _check_dual_of_tensor(C: FiniteCategory):
    for a in range(len(C.objects)):
        for b in range(len(C.objects)):
            if C.dual(C.tobj(a, b)) != C.tobj(C.dual(b), C.dual(a)):
                raise NotCompact("dual of a tensor is not the reversed tensor of duals")


def copresheaf_to_monoid(N: Copresheaf) -> ProfMonoid:
    """FM(a, b) := M(a* (x) b), with the canonical unit and the derived multiplication."""
    C = N.C
    C.require_compact()
    _check_dual_of_tensor(C)
    nobj = range(len(C.objects))
    tag = lambda a, b, x: Elem(a, b, x[1])
    elems = {(a, b): tuple(tag(a, b, x) for x in N.elems.get(C.tobj(C.dual(a), b), ())) for a in nobj for b in nobj}
    raw = lambda m: (C.tobj(C.dual(m.src), m.dst), m.value)
    left, right = {}, {}
    for (a, b), ms in elems.items():
        for m in ms:
            for g in range(C.n_mor):
                if C.src[g] == b:
                    y = N.act[(C.tmor(C.ident[C.dual(a)], g), raw(m))]
                    left[(g, m)] = Elem(a, C.dst[g], y[1])
                if C.dst[g] == a:
                    y = N.act[(C.tmor(dual_morphism(C, g), C.ident[b]), raw(m))]
                    right[(m, g)] = Elem(C.src[g], b, y[1])
    box = {}
    for m1 in [m for k in sorted(elems) for m in elems[k]]:
        for m2 in [m for k in sorted(elems) for m in elems[k]]:
            a1s, a2s = C.dual(m1.src), C.dual(m2.src)
            z = N.mult[(raw(m1), raw(m2))]
            swap = C.tmor(C.sigma(C.tobj(a1s, m1.dst), a2s), C.ident[m2.dst])
            y = N.act[(swap, z)]
            box[(m1, m2)] = Elem(C.tobj(m1.src, m2.src), C.tobj(m1.dst, m2.dst), y[1])
    unit = {}
    for f in range(C.n_mor):
        c, d = C.src[f], C.dst[f]
        path = C.then(C.eta(c), C.tmor(C.ident[C.dual(c)], f))
        y = N.act[(path, N.unit)]
        unit[f] = Elem(c, d, y[1])
    M = FiniteProfunctor(C, elems, left, right, box, unit[C.ident[C.unit]])
    return derive_mult(PointedEndo(M, unit))


def monoid_to_copresheaf(N: ProfMonoid) -> Copresheaf:
    """UN(a) := N(I, a), acted on by the left action, multiplied by the box product."""
    M = N.M
    C = M.C
    C.require_compact()
    I = C.unit
    key = lambda m: (m.dst, m.value)
    elems = {a: tuple(key(m) for m in M.at(I, a)) for a in range(len(C.objects))}
    act, mult = {}, {}
    for a in range(len(C.objects)):
        for m in M.at(I, a):
            for f in range(C.n_mor):
                if C.src[f] == a:
                    act[(f, key(m))] = key(M.left[(f, m)])
    allm = [m for a in range(len(C.objects)) for m in M.at(I, a)]
    for m1 in allm:
        for m2 in allm:
            mult[(key(m1), key(m2))] = key(M.box[(m1, m2)])
    return Copresheaf(C, elems, act, mult, key(M.unit_elem))


def copresheaf_equal(N1: Copresheaf, N2: Copresheaf) -> bool:
    return (
        {a: set(v) for a, v in N1.elems.items()} == {a: set(v) for a, v in N2.elems.items()}
        and N1.act == N2.act
        and N1.mult == N2.mult
        and N1.unit == N2.unit
    )


def shift_iso_violations(N: ProfMonoid) -> list[LawViolation]:
    """hom_shift must be a bijection N(a, b) -> F(U N)(a, b) respecting all structure."""
    out: list[LawViolation] = []
    M = N.M
    C = M.C
    FU = copresheaf_to_monoid(monoid_to_copresheaf(N))
    phi = {}
    for a in range(len(C.objects)):
        for b in range(len(C.objects)):
            for m in M.at(a, b):
                s = hom_shift(N, m)
                if hom_unshift(N, s, a, b) != m:
                    _violation(out, "hom shift round trip", m=m)
                phi[m] = Elem(a, b, s.value)
            images = {phi[m] for m in M.at(a, b)}
            if images != set(FU.M.at(a, b)):
                _violation(out, "hom shift bijection", a=C.objects[a], b=C.objects[b])
    if out:
        return out
    for f in range(C.n_mor):
        if phi[N.unit[f]] != FU.unit[f]:
            _violation(out, "hom shift preserves units", f=C.names[f])
    for (g, m), gm in M.left.items():
        if FU.M.left[(g, phi[m])] != phi[gm]:
            _violation(out, "hom shift preserves left action", g=C.names[g], m=m)
    for (m, f), mf in M.right.items():
        if FU.M.right[(phi[m], f)] != phi[mf]:
            _violation(out, "hom shift preserves right action", m=m, f=C.names[f])
    for (n2, n1), x in N.mult.items():
        if FU.mult[(phi[n2], phi[n1])] != phi[x]:
            _violation(out, "hom shift preserves multiplication", n2=n2, n1=n1)
    return out


# -- enumerations -----------------------------------------------------------


def relation_endo(C: FiniteCategory, R: Iterable[tuple[int, int]]) -> PointedEndo:
    """On a discrete category: M(c, d) is a point iff (c, d) in R."""
    R = set(R)
    elems = {(c, d): (Elem(c, d, "*"),) for c, d in R}
    left, right, box = {}, {}, {}
    for (c, d) in R:
        m = Elem(c, d, "*")
        left[(C.ident[d], m)] = m
        right[(m, C.ident[c])] = m
    for (c1, d1) in R:
        for (c2, d2) in R:
            t = (C.tobj(c1, c2), C.tobj(d1, d2))
            if t in R:
                box[(Elem(c1, d1, "*"), Elem(c2, d2, "*"))] = Elem(*t, "*")
    unit = {C.ident[c]: Elem(c, c, "*") for c in range(len(C.objects))}
    M = FiniteProfunctor(C, elems, left, right, box, Elem(C.unit, C.unit, "*"))
    return PointedEndo(M, unit)


def reflexive_multiplicative_relations(C: FiniteCategory) -> list[frozenset]:
    """All reflexive relations on a discrete monoidal category closed under tensor."""
    nobj = len(C.objects)
    off = [(c, d) for c in range(nobj) for d in range(nobj) if c != d]
    out = []
    for bits in itertools.product((False, True), repeat=len(off)):
        R = {(c, c) for c in range(nobj)} | {p for p, b in zip(off, bits) if b}
        if all((C.tobj(a, c), C.tobj(b, d)) in R for a, b in R for c, d in R):
            out.append(frozenset(R))
    return out


def discrete_monoids(C: FiniteCategory, max_diag: int = 2, max_off: int = 1) -> list[ProfMonoid]:
    """Every monoid in Prof on a discrete category with small hom sets.

    Diagonal sets have 1..max_diag elements (one of them the unit),
    off-diagonal sets 0..max_off.  Multiplication tables are found by
    backtracking with the unit laws fixed.
    """
    nobj = len(C.objects)
    pairs = [(c, d) for c in range(nobj) for d in range(nobj)]
    results = []
    ranges = [range(1, max_diag + 1) if c == d else range(0, max_off + 1) for c, d in pairs]
    for sizes in itertools.product(*ranges):
        elems = {p: tuple(Elem(p[0], p[1], k) for k in range(n)) for p, n in zip(pairs, sizes) if n}
        results.extend(_monoids_with(C, elems))
    return results


def _monoids_with(C: FiniteCategory, elems: dict) -> list[ProfMonoid]:
    left, right = {}, {}
    for (c, d), ms in elems.items():
        for m in ms:
            left[(C.ident[d], m)] = m
            right[(m, C.ident[c])] = m
    unit = {C.ident[c]: elems[(c, c)][0] for c in range(len(C.objects))}
    M = FiniteProfunctor(C, elems, left, right)
    units = set(unit.values())
    fixed, free = {}, []
    allm = M.all_elems()
    for n1 in allm:
        for n2 in allm:
            if n2.src != n1.dst:
                continue
            if n1 in units:
                fixed[(n2, n1)] = n2
            elif n2 in units:
                fixed[(n2, n1)] = n1
            else:
                free.append((n2, n1))
    found = []

    def assoc_ok(mult):
        for (n2, n1), x in mult.items():
            for n3 in allm:
                if n3.src != n2.dst:
                    continue
                a = mult.get((n3, n2))
                if a is None:
                    continue
                y = mult.get((n3, x))
                z = mult.get((a, n1))
                if y is not None and z is not None and y != z:
                    return False
        return True

    def search(k, mult):
        if k == len(free):
            found.append(ProfMonoid(M, unit, dict(mult)))
            return
        n2, n1 = free[k]
        for x in M.at(n1.src, n2.dst):
            mult[(n2, n1)] = x
            if assoc_ok(mult):
                search(k + 1, mult)
            del mult[(n2, n1)]

    if all(M.at(n1.src, n2.dst) for n2, n1 in free):
        search(0, dict(fixed))
    return found
