import pytest
from hypothesis import given, settings

from cobtrace import cob
from cobtrace.cob import LabelSet, SignedSet
from cobtrace.errors import IndexOutOfRange, LabelMismatch, OrientationClash, SlotMismatch
from cobtrace.operad import (
    OUTER,
    identity_diagram,
    make_wiring_diagram,
    wd_from_cobordism,
    wd_substitute,
    wd_to_cobordism,
)
from cobtrace.sampling import random_cobordism, random_cobordism_from

from conftest import ABC, rng_for, seeds

L = ABC
S = SignedSet


def random_split(rng, X, max_boxes=4):
    n = rng.randint(0, max_boxes)
    if not X:
        return [S("")] * n
    n = max(n, 1)
    cuts = sorted(rng.randint(0, len(X)) for _ in range(n - 1))
    bounds = [0] + cuts + [len(X)]
    return [X[bounds[i] : bounds[i + 1]] for i in range(n)]


def random_diagram(rng, max_boxes=4, max_points=8):
    phi = random_cobordism(rng, L, max_points)
    return wd_from_cobordism(phi, random_split(rng, phi.dom, max_boxes))


def test_identity_shape_flattens_to_identity():
    X = S("a- b+ c+")
    W = make_wiring_diagram([X], X, [((1, k), (OUTER, k)) for k in (1, 2, 3)], labels=L)
    assert wd_to_cobordism(W) == cob.identity(X, labels=L)


def test_nullary_state():
    W = make_wiring_diagram([], S("a- a+"), [((OUTER, 1), (OUTER, 2))], labels=L)
    phi = wd_to_cobordism(W)
    assert phi.dom == S("") and phi == cob.cup(S("a+"), labels=L)


def test_intro_figure():
    labels = LabelSet("p q r s t u")
    X1, X2, Y = S("p- t- r+"), S("s- r- u+ t+"), S("s- p- u+")
    wires = [
        ((OUTER, 2), (1, 1)),
        ((1, 3), (2, 2)),
        ((2, 3), (OUTER, 3)),
        ((OUTER, 1), (2, 1)),
        ((2, 4), (1, 2)),
    ]
    W = make_wiring_diagram([X1, X2], Y, wires, labels=labels)
    phi = wd_to_cobordism(W)
    assert phi.dom == X1 + X2 and phi.cod == Y
    expected = {
        (("dom", 1), ("cod", 2)),
        (("dom", 2), ("dom", 7)),
        (("dom", 3), ("dom", 5)),
        (("dom", 4), ("cod", 1)),
        (("dom", 6), ("cod", 3)),
    }
    assert set(phi.arc_refs()) == expected
    # same diagram drawn as a two-stage composite
    assert cob.compose(phi, cob.identity(Y, labels=labels)) == phi


def test_wire_validation():
    with pytest.raises(OrientationClash):
        make_wiring_diagram([S("a-")], S("a+"), [((1, 1), (OUTER, 1))], labels=L)
    with pytest.raises(LabelMismatch):
        make_wiring_diagram([S("a-")], S("b-"), [((1, 1), (OUTER, 1))], labels=L)
    with pytest.raises(IndexOutOfRange):
        make_wiring_diagram([S("a-")], S("a-"), [((2, 1), (OUTER, 1))], labels=L)


def test_substitute_errors():
    W = identity_diagram(S("a+"), labels=L)
    V = identity_diagram(S("b+"), labels=L)
    with pytest.raises(SlotMismatch):
        wd_substitute(W, 0, V)
    with pytest.raises(IndexOutOfRange):
        wd_substitute(W, 1, W)


def test_substitute_closes_loop():
    # a box holding a cap fed by a cup gives a circle
    outer = make_wiring_diagram([S("a- a+")], S(""), [((1, 1), (1, 2))], labels=L)
    inner = make_wiring_diagram([], S("a- a+"), [((OUTER, 1), (OUTER, 2))], labels=L)
    out = wd_substitute(outer, 0, inner)
    assert out.inner == () and dict(out.loops) == {"a": 1}


@given(seeds)
@settings(max_examples=500)
def test_unit_laws(seed):
    rng = rng_for(seed)
    W = random_diagram(rng)
    for i, X in enumerate(W.inner):
        assert wd_substitute(W, i, identity_diagram(X, labels=L)) == W
    assert wd_substitute(identity_diagram(W.outer, labels=L), 0, W) == W


def diagram_with_outer(rng, Y, max_boxes=3, max_points=8):
    """A random diagram whose outer box is exactly ``Y``."""
    # a random h: Y* -> Z, bent around into Z* -> Y
    h = random_cobordism_from(rng, L, cob.dual_object(Y), max_points)
    Z = h.cod
    bent = cob.compose_all(
        cob.tensor(cob.identity(cob.dual_object(Z), labels=L), cob.cup(Y, labels=L)),
        cob.tensor_all(L, cob.identity(cob.dual_object(Z), labels=L), h, cob.identity(Y, labels=L)),
        cob.tensor(cob.cap(cob.dual_object(Z), labels=L), cob.identity(Y, labels=L)),
    )
    return wd_from_cobordism(bent, random_split(rng, bent.dom, max_boxes))


@given(seeds)
@settings(max_examples=500)
def test_substitute_then_flatten(seed):
    rng = rng_for(seed)
    W = random_diagram(rng)
    if not W.inner:
        return
    i = rng.randrange(len(W.inner))
    V = diagram_with_outer(rng, W.inner[i])
    assert V.outer == W.inner[i]
    before = S(p for X in W.inner[:i] for p in X)
    after = S(p for X in W.inner[i + 1 :] for p in X)
    rhs = cob.compose(
        cob.tensor_all(L, cob.identity(before, labels=L), wd_to_cobordism(V), cob.identity(after, labels=L)),
        wd_to_cobordism(W),
    )
    assert wd_to_cobordism(wd_substitute(W, i, V)) == rhs


@given(seeds)
@settings(max_examples=500)
def test_substitution_associative(seed):
    rng = rng_for(seed)
    W = random_diagram(rng)
    if not W.inner:
        return
    i = rng.randrange(len(W.inner))
    V = diagram_with_outer(rng, W.inner[i])
    if not V.inner:
        return
    j = rng.randrange(len(V.inner))
    U = diagram_with_outer(rng, V.inner[j])
    nested = wd_substitute(W, i, wd_substitute(V, j, U))
    sequential = wd_substitute(wd_substitute(W, i, V), i + j, U)
    assert nested == sequential
