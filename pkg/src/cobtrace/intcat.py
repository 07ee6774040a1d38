"""The Int construction: a compact category built from a traced one.

An object is a pair (neg, pos) of words.  A morphism A -> B carries a payload
in Hom_T(A.neg B.pos, A.pos B.neg).  Composition is the action of a two-box
wiring diagram, so every Int composite is one traced-category action.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from . import cob
from .cob import Cobordism, LabelSet, SignedSet
from .errors import CompositionTypeMismatch, TypeMismatch
from .operad import OUTER, make_wiring_diagram, wd_to_cobordism
from .traced import Arrow, TracedInstance, action, hom_box


@dataclass(frozen=True)
class IntObject:
    neg: tuple[str, ...] = ()
    pos: tuple[str, ...] = ()

    def __init__(self, neg=(), pos=()):
        object.__setattr__(self, "neg", tuple(neg))
        object.__setattr__(self, "pos", tuple(pos))

    def __str__(self):
        return f"({' '.join(self.neg)} | {' '.join(self.pos)})"


@dataclass(frozen=True)
class IntMorphism:
    source: IntObject
    target: IntObject
    payload: Arrow


def payload_type(A: IntObject, B: IntObject) -> tuple[tuple, tuple]:
    return A.neg + B.pos, A.pos + B.neg


def _blocks(sizes, order) -> list[int]:
    """Letter permutation moving block i to slot order[i]."""
    starts, pos = [], 0
    for s in sizes:
        starts.append(pos)
        pos += s
    new_sizes = [0] * len(sizes)
    for i, j in enumerate(order):
        new_sizes[j] = sizes[i]
    new_starts, pos = [], 0
    for s in new_sizes:
        new_starts.append(pos)
        pos += s
    perm = [0] * pos
    for i, j in enumerate(order):
        for t in range(sizes[i]):
            perm[starts[i] + t] = new_starts[j] + t
    return perm


class CompactInstance(ABC):
    """A strict compact category: enough structure for the canonical trace."""

    @abstractmethod
    def identity(self, X): ...

    @abstractmethod
    def compose(self, f, g): ...

    @abstractmethod
    def tensor(self, f, g): ...

    @abstractmethod
    def tensor_obj(self, X, Y): ...

    @abstractmethod
    def symmetry(self, X, Y): ...

    @abstractmethod
    def dual(self, X): ...

    @abstractmethod
    def unit_mor(self, X):
        """eta_X : I -> X* (x) X."""

    @abstractmethod
    def counit_mor(self, X):
        """epsilon_X : X (x) X* -> I."""

    @abstractmethod
    def equal(self, f, g) -> bool: ...

    def compose_all(self, *fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.compose(out, f)
        return out


def compact_trace(C: CompactInstance, f, U, X, Y):
    """Tr^U_{X,Y}[f] = (eta_U X) ; (U* f) ; (sigma_{U*,U} Y) ; (epsilon_U Y)."""
    Us = C.dual(U)
    return C.compose_all(
        C.tensor(C.unit_mor(U), C.identity(X)),
        C.tensor(C.identity(Us), f),
        C.tensor(C.symmetry(Us, U), C.identity(Y)),
        C.tensor(C.counit_mor(U), C.identity(Y)),
    )


def dual_morphism(C: CompactInstance, f, X, Y):
    """f* : Y* -> X* built from eta_X, f and epsilon_Y."""
    Xs, Ys = C.dual(X), C.dual(Y)
    return C.compose_all(
        C.tensor(C.unit_mor(X), C.identity(Ys)),
        C.tensor(C.tensor(C.identity(Xs), f), C.identity(Ys)),
        C.tensor(C.identity(Xs), C.counit_mor(Y)),
    )


class CobCompact(CompactInstance):
    """Cobordisms over a label set, with duals reversing and flipping."""

    def __init__(self, labels: LabelSet):
        self.labels = labels

    def identity(self, X):
        return cob.identity(X, labels=self.labels)

    def compose(self, f, g):
        return cob.compose(f, g)

    def tensor(self, f, g):
        return cob.tensor(f, g)

    def tensor_obj(self, X, Y):
        return SignedSet(X) + SignedSet(Y)

    def symmetry(self, X, Y):
        return cob.symmetry(X, Y, labels=self.labels)

    def dual(self, X):
        return cob.dual_object(SignedSet(X))

    def unit_mor(self, X):
        return cob.cup(X, labels=self.labels)

    def counit_mor(self, X):
        return cob.cap(X, labels=self.labels)

    def equal(self, f, g):
        return cob.equals(f, g)


class IntCategory(CompactInstance):
    def __init__(self, T: TracedInstance):
        self.T = T
        self.labels = T.labels

    # -- construction helpers ----------------------------------------------

    def morphism(self, A: IntObject, B: IntObject, payload: Arrow) -> IntMorphism:
        dom, cod = payload_type(A, B)
        self.T.expect(payload, dom, cod)
        return IntMorphism(A, B, payload)

    def sample(self, A: IntObject, B: IntObject, rng) -> IntMorphism:
        dom, cod = payload_type(A, B)
        return IntMorphism(A, B, self.T.sample(dom, cod, rng))

    def _structural(self, dom_blocks, cod_blocks, route) -> Arrow:
        """A pure wiring payload: route[i] is the cod block fed by dom block i."""
        words = [w for w in dom_blocks]
        sizes = [len(w) for w in words]
        perm = _blocks(sizes, route)
        arrow = self.T.permutation(tuple(x for w in words for x in w), perm)
        expected = tuple(x for w in cod_blocks for x in w)
        if arrow.cod != expected:
            raise AssertionError("structural payload does not land in the expected word")
        return arrow

    # -- compact structure ---------------------------------------------------

    def identity(self, A: IntObject) -> IntMorphism:
        return IntMorphism(A, A, self._structural([A.neg, A.pos], [A.pos, A.neg], [1, 0]))

    def compose(self, f: IntMorphism, g: IntMorphism) -> IntMorphism:
        return int_compose(self.T, f, g)

    def tensor_obj(self, A: IntObject, B: IntObject) -> IntObject:
        return IntObject(A.neg + B.neg, A.pos + B.pos)

    def tensor(self, f: IntMorphism, g: IntMorphism) -> IntMorphism:
        A, B, C, D = f.source, f.target, g.source, g.target
        x = self.T.tensor(f.payload, g.payload)
        # x : A- B+ C- D+ -> A+ B- C+ D-
        dom_perm = _blocks([len(A.neg), len(B.pos), len(C.neg), len(D.pos)], [0, 2, 1, 3])
        cod_perm = _blocks([len(A.pos), len(B.neg), len(C.pos), len(D.neg)], [0, 2, 1, 3])
        return IntMorphism(self.tensor_obj(A, C), self.tensor_obj(B, D), self.T.permute(x, dom_perm, cod_perm))

    def symmetry(self, A: IntObject, B: IntObject) -> IntMorphism:
        src, tgt = self.tensor_obj(A, B), self.tensor_obj(B, A)
        # A- B- B+ A+ -> A+ B+ B- A-
        payload = self._structural(
            [A.neg, B.neg, B.pos, A.pos], [A.pos, B.pos, B.neg, A.neg], [3, 2, 1, 0]
        )
        return IntMorphism(src, tgt, payload)

    def dual(self, A: IntObject) -> IntObject:
        return int_dual(A)

    def unit_mor(self, A: IntObject) -> IntMorphism:
        """eta_A : I -> A* (x) A, payload A- A+ -> A+ A-."""
        I = IntObject()
        target = self.tensor_obj(self.dual(A), A)
        return IntMorphism(I, target, self._structural([A.neg, A.pos], [A.pos, A.neg], [1, 0]))

    def counit_mor(self, A: IntObject) -> IntMorphism:
        """epsilon_A : A (x) A* -> I, payload A- A+ -> A+ A-."""
        I = IntObject()
        source = self.tensor_obj(A, self.dual(A))
        return IntMorphism(source, I, self._structural([A.neg, A.pos], [A.pos, A.neg], [1, 0]))

    def equal(self, f: IntMorphism, g: IntMorphism) -> bool:
        return f.source == g.source and f.target == g.target and self.T.equal(f.payload, g.payload)


def int_dual(A: IntObject) -> IntObject:
    return IntObject(A.pos, A.neg)


def int_identity(T: TracedInstance, A: IntObject) -> IntMorphism:
    return IntCategory(T).identity(A)


def int_tensor(T: TracedInstance, f: IntMorphism, g: IntMorphism) -> IntMorphism:
    return IntCategory(T).tensor(f, g)


def composition_diagram(labels: LabelSet, A: IntObject, B: IntObject, C: IntObject):
    """Two boxes f : A -> B and g : B -> C inside an outer box for A -> C."""
    box_f = hom_box(A.neg + B.pos, A.pos + B.neg)
    box_g = hom_box(B.neg + C.pos, B.pos + C.neg)
    outer = hom_box(A.neg + C.pos, A.pos + C.neg)
    na, nb, nc = (len(A.neg), len(A.pos)), (len(B.neg), len(B.pos)), (len(C.neg), len(C.pos))
    # offsets of each block inside its box (1-based indices)
    f_aneg, f_bpos = 1, 1 + na[0]
    f_apos, f_bneg = 1 + na[0] + nb[1], 1 + na[0] + nb[1] + na[1]
    g_bneg, g_cpos = 1, 1 + nb[0]
    g_bpos, g_cneg = 1 + nb[0] + nc[1], 1 + nb[0] + nc[1] + nb[1]
    o_aneg, o_cpos = 1, 1 + na[0]
    o_apos, o_cneg = 1 + na[0] + nc[1], 1 + na[0] + nc[1] + na[1]
    wires = []

    def run(box1, start1, box2, start2, n):
        wires.extend(((box1, start1 + t), (box2, start2 + t)) for t in range(n))

    run(OUTER, o_aneg, 1, f_aneg, na[0])
    run(OUTER, o_cpos, 2, g_cpos, nc[1])
    run(1, f_apos, OUTER, o_apos, na[1])
    run(2, g_cneg, OUTER, o_cneg, nc[0])
    run(2, g_bpos, 1, f_bpos, nb[1])  # feedback: g's B+ output into f
    run(1, f_bneg, 2, g_bneg, nb[0])  # feedback: f's B- output into g
    return make_wiring_diagram([box_f, box_g], outer, wires, labels=labels)


def int_compose(T: TracedInstance, f: IntMorphism, g: IntMorphism) -> IntMorphism:
    """g after f, as the action of the flattened composition diagram."""
    if f.target != g.source:
        raise CompositionTypeMismatch(f"target {f.target} differs from source {g.source}")
    W = composition_diagram(T.labels, f.source, f.target, g.target)
    phi = wd_to_cobordism(W)
    payload = action(T, phi, T.tensor(f.payload, g.payload))
    return IntMorphism(f.source, g.target, payload)


def int_compose_formula(T: TracedInstance, f: IntMorphism, g: IntMorphism) -> IntMorphism:
    """The same composite by explicit symmetries and one trace over B+ B-."""
    if f.target != g.source:
        raise CompositionTypeMismatch(f"target {f.target} differs from source {g.source}")
    A, B, C = f.source, f.target, g.target
    x = T.tensor(f.payload, g.payload)  # A- B+ B- C+ -> A+ B- B+ C-
    dom_perm = _blocks([len(A.neg), len(B.pos), len(B.neg), len(C.pos)], [2, 0, 1, 3])
    cod_perm = _blocks([len(A.pos), len(B.neg), len(B.pos), len(C.neg)], [2, 1, 0, 3])
    y = T.permute(x, dom_perm, cod_perm)  # B+ B- A- C+ -> B+ B- A+ C-
    return IntMorphism(A, C, T.trace(y, B.pos + B.neg))


def dense_int_compose(T, f: IntMorphism, g: IntMorphism) -> np.ndarray:
    """Index-level composite: sum over the B+ and B- indices of F and G."""
    A, B, C = f.source, f.target, g.target
    F = f.payload.data.matrix().reshape(T.size(A.pos), T.size(B.neg), T.size(A.neg), T.size(B.pos))
    G = g.payload.data.matrix().reshape(T.size(B.pos), T.size(C.neg), T.size(B.neg), T.size(C.pos))
    R = np.einsum(F, [0, 1, 2, 3], G, [3, 4, 1, 5], [0, 4, 2, 5])
    return np.asarray(R, dtype=F.dtype).reshape(T.size(A.pos + C.neg), T.size(A.neg + C.pos))


def unit_embed(T: TracedInstance, f: Arrow) -> IntMorphism:
    """f : w -> v as the Int morphism (w, ()) -> (v, ()) with the same payload."""
    return IntMorphism(IntObject(f.dom, ()), IntObject(f.cod, ()), f)
