"""Traced categories with free object monoid, and algebras over cobordisms.

A traced instance handles arrows between label words.  An algebra assigns a
carrier to each signed set and lets cobordisms act on it.  The two
presentations are interconverted by ``algebra_from_traced`` and
``traced_from_algebra``.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from collections import Counter
from typing import Sequence

from . import cob
from .cob import MINUS, PLUS, Cobordism, LabelSet, SignedPoint, SignedSet, word_set
from .errors import TypeMismatch

Word = tuple


class Arrow:
    """A morphism ``dom -> cod`` between label words, with instance-specific data."""

    __slots__ = ("dom", "cod", "data")

    def __init__(self, dom: Sequence[str], cod: Sequence[str], data):
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.data = data

    def __repr__(self):
        return f"Arrow({' '.join(self.dom) or 'I'} -> {' '.join(self.cod) or 'I'}, {self.data!r})"


def inverse_perm(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return inv


def apply_perm(word: Sequence, perm: Sequence[int]) -> tuple:
    out = [None] * len(word)
    for i, j in enumerate(perm):
        out[j] = word[i]
    return tuple(out)


class TracedInstance(ABC):
    """A traced symmetric strict monoidal category whose objects are label words.

    ``compose(f, g)`` is diagrammatic order: first ``f``, then ``g``.
    """

    labels: LabelSet

    @abstractmethod
    def identity(self, word) -> Arrow: ...

    @abstractmethod
    def compose(self, f: Arrow, g: Arrow) -> Arrow: ...

    @abstractmethod
    def tensor(self, f: Arrow, g: Arrow) -> Arrow: ...

    @abstractmethod
    def symmetry(self, w, v) -> Arrow: ...

    @abstractmethod
    def trace(self, f: Arrow, u) -> Arrow: ...

    def equal(self, f: Arrow, g: Arrow) -> bool:
        return f.dom == g.dom and f.cod == g.cod and f.data == g.data

    def sample(self, dom, cod, rng) -> Arrow:
        raise NotImplementedError(f"{type(self).__name__} cannot sample arrows")

    def expect(self, f: Arrow, dom, cod):
        if f.dom != tuple(dom) or f.cod != tuple(cod):
            raise TypeMismatch(f"expected {tuple(dom)} -> {tuple(cod)}, got {f.dom} -> {f.cod}")

    def loop(self, label) -> Arrow:
        """The scalar Tr^a[id_a]."""
        return self.trace(self.identity((label,)), (label,))

    def permutation(self, word, perm: Sequence[int]) -> Arrow:
        """Symmetry ``word -> word'`` moving letter i to position perm[i]."""
        word = tuple(word)
        n = len(word)
        cur = list(range(n))  # cur[pos] = original letter index at pos
        target = {i: perm[i] for i in range(n)}
        out = self.identity(word)
        changed = True
        while changed:
            changed = False
            for j in range(n - 1):
                if target[cur[j]] > target[cur[j + 1]]:
                    letters = [word[i] for i in cur]
                    step = self.tensor(
                        self.tensor(self.identity(letters[:j]), self.symmetry(letters[j : j + 1], letters[j + 1 : j + 2])),
                        self.identity(letters[j + 2 :]),
                    )
                    out = self.compose(out, step)
                    cur[j], cur[j + 1] = cur[j + 1], cur[j]
                    changed = True
        return out

    def permute(self, f: Arrow, dom_perm: Sequence[int], cod_perm: Sequence[int]) -> Arrow:
        """Conjugate f so that its letters land at dom_perm / cod_perm."""
        new_dom = apply_perm(f.dom, dom_perm)
        pre = self.permutation(new_dom, inverse_perm(dom_perm))
        post = self.permutation(f.cod, cod_perm)
        return self.compose(self.compose(pre, f), post)


def _split_perm(phi: Cobordism) -> tuple[list[int], list[int]]:
    """Restrict a sign-preserving permutation cobordism to its minus and plus points."""
    m = len(phi.dom)
    rank_dom, rank_cod = {}, {}
    counts = Counter()
    for i, p in enumerate(phi.dom):
        rank_dom[i] = counts[p.sign]
        counts[p.sign] += 1
    counts = Counter()
    for j, p in enumerate(phi.cod):
        rank_cod[j] = counts[p.sign]
        counts[p.sign] += 1
    pin = [0] * len(phi.dom.inp)
    pout = [0] * len(phi.dom.outp)
    for a, b in phi.arcs:
        j = b - m
        if phi.dom[a].sign == MINUS:
            pin[rank_dom[a]] = rank_cod[j]
        else:
            pout[rank_dom[a]] = rank_cod[j]
    return pin, pout


def action(T: TracedInstance, phi: Cobordism, f: Arrow) -> Arrow:
    """P(phi)(f) = Tr^C[f] (x) id_D (x) loop scalars, up to the boundary permutations."""
    T.expect(f, phi.dom.inp, phi.dom.outp)
    d = cob.decompose(phi)
    pin, pout = _split_perm(d.perm_dom)
    g = T.permute(f, pin, pout)
    g = T.trace(g, d.C)
    g = T.tensor(g, T.identity(d.D))
    for label, k in d.E:
        for _ in range(k):
            g = T.tensor(g, T.loop(label))
    pin, pout = _split_perm(d.perm_cod)
    return T.permute(g, pin, pout)


# -- algebras ---------------------------------------------------------------


class Algebra(ABC):
    """A lax monoidal functor from cobordisms to sets, described lazily."""

    labels: LabelSet

    @abstractmethod
    def act(self, phi: Cobordism, x): ...

    @abstractmethod
    def unit(self): ...

    @abstractmethod
    def mult(self, x, y): ...

    @abstractmethod
    def contains(self, X: SignedSet, x) -> bool: ...

    def equal(self, x, y) -> bool:
        return x == y

    def sample(self, X: SignedSet, rng):
        raise NotImplementedError(f"{type(self).__name__} cannot sample elements")


class TracedAlgebra(Algebra):
    """P(X) = Hom(inp X, outp X) with the trace-formula action."""

    def __init__(self, T: TracedInstance):
        self.T = T
        self.labels = T.labels

    def carrier(self, X: SignedSet) -> tuple[Word, Word]:
        return tuple(X.inp), tuple(X.outp)

    def contains(self, X, x):
        return isinstance(x, Arrow) and (x.dom, x.cod) == self.carrier(SignedSet(X))

    def act(self, phi, x):
        return action(self.T, phi, x)

    def unit(self):
        return self.T.identity(())

    def mult(self, x, y):
        return self.T.tensor(x, y)

    def equal(self, x, y):
        return self.T.equal(x, y)

    def sample(self, X, rng):
        X = SignedSet(X)
        return self.T.sample(X.inp, X.outp, rng)


def algebra_from_traced(T: TracedInstance) -> TracedAlgebra:
    return TracedAlgebra(T)


def hom_box(w, v) -> SignedSet:
    """The signed set whose carrier presents Hom(w, v): w negative, then v positive."""
    return word_set(w, MINUS) + word_set(v, PLUS)


def _cob(labels, dom, cod, pairs) -> Cobordism:
    return cob._build(labels, dom, cod, pairs, Counter())


class AlgebraTraced(TracedInstance):
    """Hom(w, v) := P(w- v+); every operation is the action of a fixed cobordism."""

    def __init__(self, P: Algebra):
        self.P = P
        self.labels = P.labels

    def _wrap(self, w, v, x) -> Arrow:
        return Arrow(w, v, x)

    def bundle(self, w) -> Cobordism:
        n = len(w)
        return _cob(self.labels, (), hom_box(w, w), [(i, n + i) for i in range(n)])

    def identity(self, word):
        w = tuple(word)
        return self._wrap(w, w, self.P.act(self.bundle(w), self.P.unit()))

    def composer(self, w, v, u) -> Cobordism:
        a, b, c = len(w), len(v), len(u)
        dom = hom_box(w, v) + hom_box(v, u)
        m = len(dom)
        pairs = [(i, m + i) for i in range(a)]
        pairs += [(a + i, a + b + i) for i in range(b)]
        pairs += [(a + 2 * b + i, m + a + i) for i in range(c)]
        return _cob(self.labels, dom, hom_box(w, u), pairs)

    def compose(self, f, g):
        if f.cod != g.dom:
            raise TypeMismatch(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
        x = self.P.mult(f.data, g.data)
        return self._wrap(f.dom, g.cod, self.P.act(self.composer(f.dom, f.cod, g.cod), x))

    def tensorer(self, w1, v1, w2, v2) -> Cobordism:
        a1, b1, a2, b2 = len(w1), len(v1), len(w2), len(v2)
        dom = hom_box(w1, v1) + hom_box(w2, v2)
        # target layout: w1 w2 v1 v2
        to = list(range(a1)) + [a1 + a2 + i for i in range(b1)]
        to += [a1 + i for i in range(a2)] + [a1 + a2 + b1 + i for i in range(b2)]
        return cob.permutation(dom, to, labels=self.labels)

    def tensor(self, f, g):
        x = self.P.mult(f.data, g.data)
        phi = self.tensorer(f.dom, f.cod, g.dom, g.cod)
        return self._wrap(f.dom + g.dom, f.cod + g.cod, self.P.act(phi, x))

    def symmetrizer(self, w, v) -> Cobordism:
        a, b = len(w), len(v)
        cod = hom_box(tuple(w) + tuple(v), tuple(v) + tuple(w))
        pairs = [(i, a + b + b + i) for i in range(a)] + [(a + j, a + b + j) for j in range(b)]
        return _cob(self.labels, (), cod, pairs)

    def symmetry(self, w, v):
        w, v = tuple(w), tuple(v)
        return self._wrap(w + v, v + w, self.P.act(self.symmetrizer(w, v), self.P.unit()))

    def tracer(self, u, x, y) -> Cobordism:
        k, a, b = len(u), len(x), len(y)
        dom = hom_box(tuple(u) + tuple(x), tuple(u) + tuple(y))
        m = len(dom)
        pairs = [(i, k + a + i) for i in range(k)]
        pairs += [(k + i, m + i) for i in range(a)]
        pairs += [(2 * k + a + i, m + a + i) for i in range(b)]
        return _cob(self.labels, dom, hom_box(x, y), pairs)

    def trace(self, f, u):
        u = tuple(u)
        k = len(u)
        if f.dom[:k] != u or f.cod[:k] != u:
            raise TypeMismatch(f"{f.dom}->{f.cod} does not start with {u} on both sides")
        x, y = f.dom[k:], f.cod[k:]
        return self._wrap(x, y, self.P.act(self.tracer(u, x, y), f.data))

    def equal(self, f, g):
        return f.dom == g.dom and f.cod == g.cod and self.P.equal(f.data, g.data)

    def sample(self, dom, cod, rng):
        return self._wrap(tuple(dom), tuple(cod), self.P.sample(hom_box(dom, cod), rng))


def traced_from_algebra(P: Algebra) -> AlgebraTraced:
    return AlgebraTraced(P)


def is_algebra_morphism(P: Algebra, Q: Algebra, component, cases) -> bool:
    """Check a carrier map against units, products and the actions on samples.

    ``cases`` is an iterable of (phi, x, y) with x in P(phi.dom) and y any
    second element used for the product law.
    """
    if not Q.equal(component(P.unit()), Q.unit()):
        return False
    for phi, x, y in cases:
        if not Q.equal(component(P.act(phi, x)), Q.act(phi, component(x))):
            return False
        if not Q.equal(component(P.mult(x, y)), Q.mult(component(x), component(y))):
            return False
    return True


# -- the free algebra on named boxes ----------------------------------------


class FreeElement:
    """A cobordism out of a list of named boxes."""

    __slots__ = ("boxes", "cob")

    def __init__(self, boxes, phi: Cobordism):
        self.boxes = tuple(boxes)
        self.cob = phi

    def __repr__(self):
        return f"FreeElement({[n for n, _ in self.boxes]}, {self.cob})"


class FreeCobAlgebra(Algebra):
    """Elements are cobordisms from a tensor of named boxes.

    Evaluating a traced-category expression in ``traced_from_algebra`` of
    this algebra yields the cobordism the expression denotes, so two
    expressions denote the same morphism of every traced category exactly
    when their normalized elements agree.
    """

    def __init__(self, labels: LabelSet):
        self.labels = labels

    def generator(self, name: str, X) -> FreeElement:
        X = self.labels.signed(X)
        return FreeElement(((name, X),), cob.identity(X, labels=self.labels))

    def contains(self, X, x):
        return isinstance(x, FreeElement) and x.cob.cod == SignedSet(X)

    def act(self, phi, x):
        return FreeElement(x.boxes, cob.compose(x.cob, phi))

    def unit(self):
        return FreeElement((), cob.empty(self.labels))

    def mult(self, x, y):
        return FreeElement(x.boxes + y.boxes, cob.tensor(x.cob, y.cob))

    def normal(self, x: FreeElement) -> FreeElement:
        order = sorted(range(len(x.boxes)), key=lambda i: x.boxes[i][0])
        offsets, total = [], 0
        for _, X in x.boxes:
            offsets.append(total)
            total += len(X)
        # sorted layout -> original layout
        to = []
        for i in order:
            to.extend(range(offsets[i], offsets[i] + len(x.boxes[i][1])))
        sorted_dom = SignedSet(p for i in order for p in x.boxes[i][1])
        pi = cob.permutation(sorted_dom, to, labels=self.labels)
        return FreeElement([x.boxes[i] for i in order], cob.compose(pi, x.cob))

    def equal(self, x, y):
        a, b = self.normal(x), self.normal(y)
        return a.boxes == b.boxes and a.cob == b.cob


def free_box(T: AlgebraTraced, name: str, w, v) -> Arrow:
    """A named generating arrow w -> v of traced_from_algebra(FreeCobAlgebra)."""
    return Arrow(w, v, T.P.generator(name, hom_box(w, v)))


# -- Cob itself as a traced instance ----------------------------------------


def star(letter: str) -> str:
    return letter[:-1] if letter.endswith("*") else letter + "*"


def dual_word(word) -> tuple[str, ...]:
    return tuple(star(x) for x in reversed(word))


class CobTraced(TracedInstance):
    """Cob over ``base`` as a traced category on letters ``a`` (a+) and ``a*`` (a-)."""

    def __init__(self, base: LabelSet):
        self.base = base
        self.labels = LabelSet([x for a in base for x in (a, a + "*")])

    def points(self, word) -> SignedSet:
        return SignedSet(SignedPoint(x[:-1], MINUS) if x.endswith("*") else SignedPoint(x, PLUS) for x in word)

    def word(self, X: SignedSet) -> tuple[str, ...]:
        return tuple(p.label if p.sign == PLUS else p.label + "*" for p in X)

    def wrap(self, phi: Cobordism) -> Arrow:
        return Arrow(self.word(phi.dom), self.word(phi.cod), phi)

    def identity(self, word):
        return self.wrap(cob.identity(self.points(word), labels=self.base))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise TypeMismatch(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
        return self.wrap(cob.compose(f.data, g.data))

    def tensor(self, f, g):
        return self.wrap(cob.tensor(f.data, g.data))

    def symmetry(self, w, v):
        return self.wrap(cob.symmetry(self.points(w), self.points(v), labels=self.base))

    def trace(self, f, u):
        u = tuple(u)
        if f.dom[: len(u)] != u or f.cod[: len(u)] != u:
            raise TypeMismatch(f"{f.dom}->{f.cod} does not start with {u}")
        return self.wrap(cob.trace_cob(f.data, len(u)))

    def permutation(self, word, perm):
        return self.wrap(cob.permutation(self.points(word), perm, labels=self.base))
