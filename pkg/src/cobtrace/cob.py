"""Labeled oriented 1-cobordisms between signed sets.

A cobordism is stored in canonical form: a perfect matching on its boundary
points plus a count of floating loops per label.  Boundary points are
addressed internally by flat 0-based positions, domain points first, so the
canonical arc order is the total order D.1 < ... < D.m < C.1 < ... < C.n.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    BoundaryMismatch,
    IndexOutOfRange,
    LabelMismatch,
    LabelSetMismatch,
    NotPerfectMatching,
    OrientationClash,
    PrefixMismatch,
    UnknownLabel,
)

PLUS = "+"
MINUS = "-"


def flip(sign: str) -> str:
    return MINUS if sign == PLUS else PLUS


class SignedPoint(NamedTuple):
    label: str
    sign: str

    def __str__(self):
        return f"{self.label}{self.sign}"


def _point(p) -> SignedPoint:
    if isinstance(p, SignedPoint):
        return p
    if isinstance(p, str):
        if len(p) < 2 or p[-1] not in (PLUS, MINUS):
            raise ValueError(f"cannot parse signed point {p!r}")
        return SignedPoint(p[:-1], p[-1])
    label, sign = p
    if sign not in (PLUS, MINUS):
        raise ValueError(f"bad sign {sign!r}")
    return SignedPoint(label, sign)


class SignedSet(tuple):
    """An ordered word of signed points.  Tensor is concatenation."""

    def __new__(cls, points: Iterable = ()):
        if isinstance(points, str):
            points = points.split()
        return super().__new__(cls, (_point(p) for p in points))

    @property
    def inp(self) -> tuple[str, ...]:
        return tuple(p.label for p in self if p.sign == MINUS)

    @property
    def outp(self) -> tuple[str, ...]:
        return tuple(p.label for p in self if p.sign == PLUS)

    def __add__(self, other):
        return SignedSet(tuple(self) + tuple(other))

    def __getitem__(self, item):
        got = tuple.__getitem__(self, item)
        return SignedSet(got) if isinstance(item, slice) else got

    def dual(self) -> "SignedSet":
        return dual_object(self)

    def __repr__(self):
        return f"SignedSet({' '.join(map(str, self))!r})"


def dual_object(X: SignedSet) -> SignedSet:
    """Flip every sign and reverse the order."""
    return SignedSet(SignedPoint(p.label, flip(p.sign)) for p in reversed(X))


def word_set(word: Sequence[str], sign: str) -> SignedSet:
    return SignedSet((a, sign) for a in word)


@dataclass(frozen=True)
class LabelSet:
    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        if isinstance(labels, str):
            labels = labels.split()
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"labels are not distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @cached_property
    def _rank(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.labels)}

    def __contains__(self, label):
        return label in self._rank

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def rank(self, label: str) -> int:
        try:
            return self._rank[label]
        except KeyError:
            raise UnknownLabel(f"label {label!r} not in {self.labels}") from None

    def signed(self, points) -> SignedSet:
        X = SignedSet(points)
        for p in X:
            self.rank(p.label)
        return X

    def __repr__(self):
        return f"LabelSet({' '.join(self.labels)!r})"


class EndpointRef(NamedTuple):
    side: str  # "dom" or "cod"
    index: int  # 1-based

    def __str__(self):
        return f"{'D' if self.side == 'dom' else 'C'}.{self.index}"


def _ref(e) -> EndpointRef:
    if isinstance(e, EndpointRef):
        return e
    if isinstance(e, Mapping):
        return EndpointRef(e["side"], int(e["index"]))
    side, index = e
    return EndpointRef(side, int(index))


@dataclass(frozen=True)
class Cobordism:
    labels: LabelSet
    dom: SignedSet
    cod: SignedSet
    arcs: tuple[tuple[int, int], ...]
    loops: tuple[tuple[str, int], ...] = field(default=())

    @property
    def n_points(self) -> int:
        return len(self.dom) + len(self.cod)

    def point(self, pos: int) -> SignedPoint:
        m = len(self.dom)
        return self.dom[pos] if pos < m else self.cod[pos - m]

    def eff(self, pos: int) -> str:
        """Effective sign: domain signs are flipped, codomain signs kept."""
        s = self.point(pos).sign
        return flip(s) if pos < len(self.dom) else s

    def ref(self, pos: int) -> EndpointRef:
        m = len(self.dom)
        return EndpointRef("dom", pos + 1) if pos < m else EndpointRef("cod", pos - m + 1)

    def flat(self, ref) -> int:
        ref = _ref(ref)
        if ref.side == "dom":
            size, base = len(self.dom), 0
        elif ref.side == "cod":
            size, base = len(self.cod), len(self.dom)
        else:
            raise ValueError(f"bad side {ref.side!r}")
        if not 1 <= ref.index <= size:
            raise IndexOutOfRange(f"{ref} out of range (side has {size} points)")
        return base + ref.index - 1

    @cached_property
    def partner(self) -> tuple[int, ...]:
        out = [0] * self.n_points
        for a, b in self.arcs:
            out[a], out[b] = b, a
        return tuple(out)

    @property
    def loop_map(self) -> dict[str, int]:
        return dict(self.loops)

    def arc_refs(self) -> list[tuple[EndpointRef, EndpointRef]]:
        return [(self.ref(a), self.ref(b)) for a, b in self.arcs]

    def validate(self) -> "Cobordism":
        rebuilt = _build(self.labels, self.dom, self.cod, self.arcs, Counter(self.loop_map))
        assert rebuilt == self
        return self

    def __str__(self):
        arcs = ", ".join(f"({a},{b})" for a, b in self.arc_refs())
        loops = ", ".join(f"{a}:{k}" for a, k in self.loops)
        dom = " ".join(map(str, self.dom)) or "I"
        cod = " ".join(map(str, self.cod)) or "I"
        return f"[{dom}] -> [{cod}] {{{arcs}}}" + (f" loops {{{loops}}}" if loops else "")


def _canon_loops(labels: LabelSet, loops: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    for a, k in loops.items():
        labels.rank(a)
        if int(k) < 0:
            raise ValueError(f"negative loop count for {a!r}")
    return tuple(sorted(((a, int(k)) for a, k in loops.items() if k), key=lambda t: labels.rank(t[0])))


def _build(labels, dom, cod, pairs, loops, check=True) -> Cobordism:
    n = len(dom) + len(cod)
    arcs = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
    if check:
        for p in list(dom) + list(cod):
            labels.rank(p.label)
        seen = [0] * n
        for a, b in arcs:
            for x in (a, b):
                if not 0 <= x < n:
                    raise IndexOutOfRange(f"endpoint position {x} out of range")
                seen[x] += 1
        if any(c != 1 for c in seen):
            missing = [i for i, c in enumerate(seen) if c != 1]
            raise NotPerfectMatching(f"endpoints not matched exactly once: {missing}")
    phi = Cobordism(labels, SignedSet(dom), SignedSet(cod), arcs, _canon_loops(labels, loops))
    if check:
        for a, b in arcs:
            pa, pb = phi.point(a), phi.point(b)
            if pa.label != pb.label:
                raise LabelMismatch(f"arc {phi.ref(a)}-{phi.ref(b)} joins {pa.label} to {pb.label}")
            if phi.eff(a) == phi.eff(b):
                raise OrientationClash(f"arc {phi.ref(a)}-{phi.ref(b)} joins two eff={phi.eff(a)} ends")
    return phi


def make_cobordism(dom, cod, arcs=(), loops=None, *, labels: LabelSet) -> Cobordism:
    """Validate and canonicalize.  ``arcs`` are pairs of endpoint refs."""
    dom, cod = SignedSet(dom), SignedSet(cod)
    probe = Cobordism(labels, dom, cod, ())
    pairs = []
    for a, b in arcs:
        pairs.append((probe.flat(a), probe.flat(b)))
    return _build(labels, dom, cod, pairs, Counter(loops or {}))


def canonicalize(phi: Cobordism) -> Cobordism:
    return _build(phi.labels, phi.dom, phi.cod, phi.arcs, Counter(phi.loop_map), check=False)


def equals(phi: Cobordism, psi: Cobordism) -> bool:
    return canonicalize(phi) == canonicalize(psi)


# -- generators -------------------------------------------------------------


def empty(labels: LabelSet) -> Cobordism:
    return Cobordism(labels, SignedSet(), SignedSet(), ())


def loops_only(labels: LabelSet, loops: Mapping[str, int]) -> Cobordism:
    return Cobordism(labels, SignedSet(), SignedSet(), (), _canon_loops(labels, loops))


def identity(X, *, labels: LabelSet) -> Cobordism:
    X = labels.signed(X)
    n = len(X)
    return Cobordism(labels, X, X, tuple((i, n + i) for i in range(n)))


def symmetry(X, Y, *, labels: LabelSet) -> Cobordism:
    X, Y = labels.signed(X), labels.signed(Y)
    m, n = len(X), len(Y)
    arcs = [(i, m + n + n + i) for i in range(m)] + [(m + j, m + n + j) for j in range(n)]
    return _build(labels, X + Y, Y + X, arcs, Counter(), check=False)


def cup(X, *, labels: LabelSet) -> Cobordism:
    """eta_X : I -> X* (x) X."""
    X = labels.signed(X)
    n = len(X)
    return _build(labels, (), dual_object(X) + X, [(k, 2 * n - 1 - k) for k in range(n)], Counter(), check=False)


def cap(X, *, labels: LabelSet) -> Cobordism:
    """epsilon_X : X (x) X* -> I."""
    X = labels.signed(X)
    n = len(X)
    return _build(labels, X + dual_object(X), (), [(k, 2 * n - 1 - k) for k in range(n)], Counter(), check=False)


def generator(kind: str, X, Y=None, *, labels: LabelSet) -> Cobordism:
    if (kind == "symmetry") != (Y is not None):
        raise ValueError("Y is required for symmetry and only for symmetry")
    if kind == "identity":
        return identity(X, labels=labels)
    if kind == "symmetry":
        return symmetry(X, Y, labels=labels)
    if kind == "cup":
        return cup(X, labels=labels)
    if kind == "cap":
        return cap(X, labels=labels)
    raise ValueError(f"unknown generator kind {kind!r}")


def permutation(X, perm: Sequence[int], *, labels: LabelSet) -> Cobordism:
    """Permutation cobordism sending point i of X to position perm[i] of the codomain."""
    X = labels.signed(X)
    n = len(X)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of {n} points")
    Y = [None] * n
    for i, j in enumerate(perm):
        Y[j] = X[i]
    return _build(labels, X, Y, [(i, n + perm[i]) for i in range(n)], Counter(), check=False)


# -- gluing -----------------------------------------------------------------


def glue(node_labels: Sequence[str], edges: Sequence[tuple[int, int]], boundary: Sequence[int]):
    """Decompose a graph of degree <= 2 into boundary paths and closed cycles.

    ``boundary`` lists the degree-1 nodes in output order.  Returns the list of
    paths as pairs of boundary positions, and a Counter of cycle labels.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in node_labels]
    for eid, (u, v) in enumerate(edges):
        adj[u].append((eid, v))
        adj[v].append((eid, u))
    used = [False] * len(edges)
    position = {node: i for i, node in enumerate(boundary)}

    def step(node):
        for eid, other in adj[node]:
            if not used[eid]:
                used[eid] = True
                return other
        return None

    paths = []
    done = set()
    for start in boundary:
        if start in done:
            continue
        node = step(start)
        while node is not None and node not in position:
            node = step(node)
        if node is None:
            raise AssertionError(f"dangling path from boundary node {start}")
        done.update((start, node))
        paths.append((position[start], position[node]))

    cycles: Counter = Counter()
    for eid, (u, _) in enumerate(edges):
        if used[eid]:
            continue
        label = node_labels[u]
        node = u
        while node is not None:
            if node_labels[node] != label:
                raise AssertionError("glued cycle mixes labels")
            node = step(node)
        cycles[label] += 1
    return paths, cycles


def _same_labels(phi: Cobordism, psi: Cobordism):
    if phi.labels != psi.labels:
        raise LabelSetMismatch(f"{phi.labels} vs {psi.labels}")


def compose(phi: Cobordism, psi: Cobordism) -> Cobordism:
    """phi : X -> Y then psi : Y -> Z."""
    _same_labels(phi, psi)
    if phi.cod != psi.dom:
        raise BoundaryMismatch(f"cannot glue {list(map(str, phi.cod))} to {list(map(str, psi.dom))}")
    m, n, p = len(phi.dom), len(phi.cod), len(psi.cod)
    off = m + n
    node_labels = [q.label for q in phi.dom + phi.cod + psi.dom + psi.cod]
    edges = list(phi.arcs)
    edges += [(off + a, off + b) for a, b in psi.arcs]
    edges += [(m + j, off + j) for j in range(n)]
    boundary = list(range(m)) + [off + n + k for k in range(p)]
    paths, cycles = glue(node_labels, edges, boundary)
    loops = Counter(phi.loop_map) + Counter(psi.loop_map) + cycles
    return _build(phi.labels, phi.dom, psi.cod, paths, loops, check=False)


def compose_all(*phis: Cobordism) -> Cobordism:
    out = phis[0]
    for phi in phis[1:]:
        out = compose(out, phi)
    return out


def tensor(phi: Cobordism, psi: Cobordism) -> Cobordism:
    _same_labels(phi, psi)
    m1, n1, m2, n2 = len(phi.dom), len(phi.cod), len(psi.dom), len(psi.cod)

    def shift_phi(x):
        return x if x < m1 else m1 + m2 + (x - m1)

    def shift_psi(x):
        return m1 + x if x < m2 else m1 + m2 + n1 + (x - m2)

    arcs = [(shift_phi(a), shift_phi(b)) for a, b in phi.arcs]
    arcs += [(shift_psi(a), shift_psi(b)) for a, b in psi.arcs]
    loops = Counter(phi.loop_map) + Counter(psi.loop_map)
    return _build(phi.labels, phi.dom + psi.dom, phi.cod + psi.cod, arcs, loops, check=False)


def tensor_all(labels: LabelSet, *phis: Cobordism) -> Cobordism:
    out = empty(labels)
    for phi in phis:
        out = tensor(out, phi)
    return out


def trace_cob(phi: Cobordism, k: int) -> Cobordism:
    """Close the first k domain points onto the first k codomain points."""
    m, n = len(phi.dom), len(phi.cod)
    if k < 0 or k > min(m, n) or phi.dom[:k] != phi.cod[:k]:
        raise PrefixMismatch(f"first {k} points of dom and cod differ")
    node_labels = [q.label for q in phi.dom + phi.cod]
    edges = list(phi.arcs) + [(i, m + i) for i in range(k)]
    boundary = list(range(k, m)) + list(range(m + k, m + n))
    paths, cycles = glue(node_labels, edges, boundary)
    loops = Counter(phi.loop_map) + cycles
    return _build(phi.labels, phi.dom[k:], phi.cod[k:], paths, loops, check=False)


# -- relabeling -------------------------------------------------------------


@dataclass(frozen=True)
class KleisliMap:
    """Sends each source label to a word of (target label, involution bit)."""

    source: LabelSet
    target: LabelSet
    assignment: tuple[tuple[str, tuple[tuple[str, bool], ...]], ...]

    def __init__(self, source: LabelSet, target: LabelSet, assignment: Mapping):
        words = []
        for a in source:
            if a not in assignment:
                raise UnknownLabel(f"no image for label {a!r}")
            word = []
            for letter in assignment[a]:
                b, inv = (letter, False) if isinstance(letter, str) else letter
                target.rank(b)
                word.append((b, bool(inv)))
            words.append((a, tuple(word)))
        for a in assignment:
            source.rank(a)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "assignment", tuple(words))

    def __call__(self, label: str) -> tuple[tuple[str, bool], ...]:
        for a, word in self.assignment:
            if a == label:
                return word
        raise UnknownLabel(f"label {label!r} not in source {self.source}")

    @classmethod
    def identity(cls, labels: LabelSet) -> "KleisliMap":
        return cls(labels, labels, {a: [(a, False)] for a in labels})

    def then(self, other: "KleisliMap") -> "KleisliMap":
        """Kleisli composite: first self, then other."""
        if self.target != other.source:
            raise LabelSetMismatch("Kleisli maps are not composable")
        out = {}
        for a, word in self.assignment:
            expanded = []
            for b, inv in word:
                block = other(b)
                if inv:
                    block = tuple((c, not j) for c, j in reversed(block))
                expanded.extend(block)
            out[a] = expanded
        return KleisliMap(self.source, other.target, out)


def relabel(phi: Cobordism, kappa: KleisliMap) -> Cobordism:
    """Functorial change of labels along a Kleisli map.

    A point (a, s) becomes the block kappa(a); each letter's sign is s times
    its involution bit and minus points lay the block out in reverse.  Arcs
    join equal letters at their two ends, so labels always agree.
    """
    if phi.labels != kappa.source:
        raise LabelSetMismatch(f"{phi.labels} is not the source of the map")
    images = dict(kappa.assignment)

    def expand(side):
        points, slots = [], []
        for p in side:
            word = images[p.label]
            r = len(word)
            block = [None] * r
            slot = [0] * r
            for t, (b, inv) in enumerate(word):
                where = t if p.sign == PLUS else r - 1 - t
                block[where] = SignedPoint(b, flip(p.sign) if inv else p.sign)
                slot[t] = len(points) + where
            points.extend(block)
            slots.append(slot)
        return points, slots

    dom, dom_slots = expand(phi.dom)
    cod, cod_slots = expand(phi.cod)
    m, m_new = len(phi.dom), len(dom)

    def slots(pos):
        return dom_slots[pos] if pos < m else [m_new + x for x in cod_slots[pos - m]]

    arcs = []
    for a, b in phi.arcs:
        arcs.extend(zip(slots(a), slots(b)))
    loops: Counter = Counter()
    for a, k in phi.loops:
        for b, _ in images[a]:
            loops[b] += k
    return _build(kappa.target, dom, cod, arcs, loops, check=False)


# -- standard decomposition -------------------------------------------------


@dataclass(frozen=True)
class StandardDecomposition:
    """Phi = perm_dom ; standard(A, B, C, D, E) ; perm_cod.

    The standard form has domain C- A- C+ B+ and codomain A- D- B+ D+.
    """

    labels: LabelSet
    A: tuple[str, ...]
    B: tuple[str, ...]
    C: tuple[str, ...]
    D: tuple[str, ...]
    E: tuple[tuple[str, int], ...]
    perm_dom: Cobordism
    perm_cod: Cobordism

    def standard(self) -> Cobordism:
        return standard_form(self.labels, self.A, self.B, self.C, self.D, dict(self.E))

    def reassemble(self) -> Cobordism:
        return compose_all(self.perm_dom, self.standard(), self.perm_cod)


def standard_dom(A, B, C) -> SignedSet:
    return word_set(C, MINUS) + word_set(A, MINUS) + word_set(C, PLUS) + word_set(B, PLUS)


def standard_cod(A, B, D) -> SignedSet:
    return word_set(A, MINUS) + word_set(D, MINUS) + word_set(B, PLUS) + word_set(D, PLUS)


def standard_form(labels: LabelSet, A, B, C, D, E=None) -> Cobordism:
    a, b, c, d = len(A), len(B), len(C), len(D)
    dom, cod = standard_dom(A, B, C), standard_cod(A, B, D)
    m = len(dom)
    arcs = [(i, c + a + i) for i in range(c)]
    arcs += [(c + i, m + i) for i in range(a)]
    arcs += [(2 * c + a + i, m + a + d + i) for i in range(b)]
    arcs += [(m + a + i, m + a + d + b + i) for i in range(d)]
    return _build(labels, dom, cod, arcs, Counter(E or {}))


def decompose(phi: Cobordism) -> StandardDecomposition:
    m = len(phi.dom)
    A, B, C, D = [], [], [], []
    for a, b in phi.arcs:
        pa, pb = phi.point(a), phi.point(b)
        in_dom_a, in_dom_b = a < m, b < m
        if in_dom_a and in_dom_b:
            minus = a if pa.sign == MINUS else b
            C.append((minus, a + b - minus))
        elif not in_dom_a and not in_dom_b:
            minus = a if pa.sign == MINUS else b
            D.append((minus, a + b - minus))
        elif pa.sign == MINUS:
            A.append((a, b))
        else:
            B.append((a, b))
    # arcs are sorted by smaller endpoint, which is the dom-side (or cod-minus) key
    for cls in (A, B, C, D):
        cls.sort()
    label = lambda pos: phi.point(pos).label
    wa, wb = tuple(label(x) for x, _ in A), tuple(label(x) for x, _ in B)
    wc, wd = tuple(label(x) for x, _ in C), tuple(label(x) for x, _ in D)
    na, nb, nc, nd = len(A), len(B), len(C), len(D)

    to_std = [0] * m
    for i, (minus, plus) in enumerate(C):
        to_std[minus] = i
        to_std[plus] = nc + na + i
    for i, (x, _) in enumerate(A):
        to_std[x] = nc + i
    for i, (x, _) in enumerate(B):
        to_std[x] = 2 * nc + na + i
    perm_dom = permutation(phi.dom, to_std, labels=phi.labels)

    n = len(phi.cod)
    from_std = [0] * n  # std cod position -> cod position
    for i, (_, y) in enumerate(A):
        from_std[i] = y - m
    for i, (minus, plus) in enumerate(D):
        from_std[na + i] = minus - m
        from_std[na + nd + nb + i] = plus - m
    for i, (_, y) in enumerate(B):
        from_std[na + nd + i] = y - m
    perm_cod = permutation(standard_cod(wa, wb, wd), from_std, labels=phi.labels)
    return StandardDecomposition(phi.labels, wa, wb, wc, wd, phi.loops, perm_dom, perm_cod)
