import itertools
import random

import pytest
from hypothesis import given, settings

from cobtrace import cob
from cobtrace.cob import LabelSet, SignedSet
from cobtrace.errors import CompositionTypeMismatch, TypeMismatch
from cobtrace.intcat import (
    CobCompact,
    IntCategory,
    IntObject,
    compact_trace,
    dense_int_compose,
    dual_morphism,
    int_compose,
    int_compose_formula,
    int_dual,
    int_identity,
    payload_type,
    unit_embed,
)
from cobtrace.matrix import MatrixInstance
from cobtrace.sampling import random_cobordism
from cobtrace.traced import CobTraced

from conftest import ABC, AB, rng_for, seeds


def words(letters, n):
    return [w for k in range(n + 1) for w in itertools.product(letters, repeat=k)]


def objects(letters, n):
    ws = words(letters, n)
    return [IntObject(a, b) for a in ws for b in ws]


def rand_obj(rng, letters="ab", n=2):
    pick = lambda: tuple(rng.choice(letters) for _ in range(rng.randint(0, n)))
    return IntObject(pick(), pick())


BOOL = MatrixInstance(AB, {"a": 2, "b": 2}, "bool")
NAT = MatrixInstance(AB, {"a": 2, "b": 3}, "nat")


def test_dual_is_involutive():
    for A in objects("ab", 2):
        assert int_dual(int_dual(A)) == A
    assert int_dual(IntObject(("a",), ("b", "b"))) == IntObject(("b", "b"), ("a",))


def test_degenerate_identity_is_identity():
    A = IntObject(("a", "b"), ())
    assert NAT.equal(int_identity(NAT, A).payload, NAT.identity(("a", "b")))


def test_identity_payload_is_symmetry():
    A = IntObject(("a",), ("b", "a"))
    assert NAT.equal(int_identity(NAT, A).payload, NAT.symmetry(A.neg, A.pos))


def test_payload_type():
    A, B = IntObject(("a",), ("b",)), IntObject(("b", "b"), ())
    assert payload_type(A, B) == (("a",), ("b", "b", "b"))


def test_compose_type_mismatch():
    C = IntCategory(NAT)
    rng = random.Random(0)
    f = C.sample(IntObject(("a",)), IntObject(("b",)), rng)
    g = C.sample(IntObject(("a",)), IntObject(("b",)), rng)
    with pytest.raises(CompositionTypeMismatch):
        int_compose(NAT, f, g)
    with pytest.raises(TypeMismatch):
        C.morphism(IntObject(("a",)), IntObject(("b",)), NAT.identity(("a",)))


def test_unit_laws_exhaustive_bool():
    C = IntCategory(BOOL)
    rng = random.Random(1)
    for A in objects("ab", 1):
        for B in objects("ab", 2):
            f = C.sample(A, B, rng)
            assert C.equal(C.compose(C.identity(A), f), f)
            assert C.equal(C.compose(f, C.identity(B)), f)


def test_zig_zag_exhaustive_bool():
    C = IntCategory(BOOL)
    for A in objects("ab", 2):
        As = C.dual(A)
        eta, eps = C.unit_mor(A), C.counit_mor(A)
        left = C.compose(C.tensor(C.identity(A), eta), C.tensor(eps, C.identity(A)))
        right = C.compose(C.tensor(eta, C.identity(As)), C.tensor(C.identity(As), eps))
        assert C.equal(left, C.identity(A))
        assert C.equal(right, C.identity(As))


@pytest.mark.parametrize("T", [BOOL, NAT], ids=["bool", "nat"])
@given(seed=seeds)
@settings(max_examples=60)
def test_associativity(T, seed):
    rng = rng_for(seed)
    C = IntCategory(T)
    A, B, D, E = (rand_obj(rng, n=1) for _ in range(4))
    f, g, h = C.sample(A, B, rng), C.sample(B, D, rng), C.sample(D, E, rng)
    assert C.equal(C.compose(C.compose(f, g), h), C.compose(f, C.compose(g, h)))


@pytest.mark.parametrize("T", [BOOL, NAT], ids=["bool", "nat"])
@given(seed=seeds)
@settings(max_examples=100)
def test_compose_matches_oracles(T, seed):
    rng = rng_for(seed)
    C = IntCategory(T)
    A, B, D = (rand_obj(rng) for _ in range(3))
    f, g = C.sample(A, B, rng), C.sample(B, D, rng)
    got = int_compose(T, f, g)
    assert C.equal(got, int_compose_formula(T, f, g))
    assert T.sr.equal(T.matrix(got.payload), dense_int_compose(T, f, g))


@given(seeds)
@settings(max_examples=60)
def test_interchange_and_symmetry(seed):
    rng = rng_for(seed)
    C = IntCategory(NAT)
    A, B, D, A2, B2, D2 = (rand_obj(rng, n=1) for _ in range(6))
    f, g = C.sample(A, B, rng), C.sample(B, D, rng)
    f2, g2 = C.sample(A2, B2, rng), C.sample(B2, D2, rng)
    lhs = C.compose(C.tensor(f, f2), C.tensor(g, g2))
    rhs = C.tensor(C.compose(f, g), C.compose(f2, g2))
    assert C.equal(lhs, rhs)
    s = C.symmetry(A, A2)
    assert C.equal(C.compose(s, C.symmetry(A2, A)), C.identity(C.tensor_obj(A, A2)))
    assert C.equal(C.compose(s, C.tensor(f2, f)), C.compose(C.tensor(f, f2), C.symmetry(B, B2)))


@given(seeds)
@settings(max_examples=60)
def test_double_dual_morphism(seed):
    rng = rng_for(seed)
    C = IntCategory(NAT)
    A, B = rand_obj(rng, n=1), rand_obj(rng, n=1)
    f = C.sample(A, B, rng)
    fs = dual_morphism(C, f, A, B)
    assert (fs.source, fs.target) == (C.dual(B), C.dual(A))
    assert C.equal(dual_morphism(C, fs, C.dual(B), C.dual(A)), f)


# -- unit embedding ---------------------------------------------------------


def test_unit_embed_identity():
    w = ("a", "b")
    assert NAT.equal(unit_embed(NAT, NAT.identity(w)).payload, int_identity(NAT, IntObject(w)).payload)


@given(seeds)
@settings(max_examples=80)
def test_unit_embed_functorial(seed):
    rng = rng_for(seed)
    C = IntCategory(NAT)
    w, v, u = (tuple(rng.choice("ab") for _ in range(rng.randint(0, 2))) for _ in range(3))
    f, g = NAT.sample(w, v, rng), NAT.sample(v, u, rng)
    assert C.equal(unit_embed(NAT, NAT.compose(f, g)), int_compose(NAT, unit_embed(NAT, f), unit_embed(NAT, g)))


@given(seeds)
@settings(max_examples=80)
def test_unit_embed_preserves_trace(seed):
    rng = rng_for(seed)
    C = IntCategory(NAT)
    U, X, Y = (tuple(rng.choice("ab") for _ in range(rng.randint(0, 2))) for _ in range(3))
    f = NAT.sample(U + X, U + Y, rng)
    got = compact_trace(C, unit_embed(NAT, f), IntObject(U), IntObject(X), IntObject(Y))
    assert C.equal(got, unit_embed(NAT, NAT.trace(f, U)))


# -- compact structure on cobordisms ----------------------------------------


@given(seeds)
@settings(max_examples=300)
def test_canonical_trace_on_cobordisms(seed):
    rng = rng_for(seed)
    phi = random_cobordism(rng, ABC, 10)
    k = 0
    while k < min(len(phi.dom), len(phi.cod)) and phi.dom[k] == phi.cod[k]:
        k += 1
    k = rng.randint(0, k)
    U, X, Y = phi.dom[:k], phi.dom[k:], phi.cod[k:]
    assert cob.equals(compact_trace(CobCompact(ABC), phi, U, X, Y), cob.trace_cob(phi, k))


def test_cob_dual_morphism_rotates():
    C = CobCompact(ABC)
    X = SignedSet("a+ b-")
    assert C.equal(dual_morphism(C, C.identity(X), X, X), C.identity(C.dual(X)))


def test_int_over_cobordisms_iso():
    # in Int(Cob) the object (w, v) behaves like w* v; sigma and its inverse compose to the identity
    C = IntCategory(CobTraced(LabelSet("a")))
    A, B = IntObject(("a",), ("a*",)), IntObject((), ("a",))
    s = C.symmetry(A, B)
    assert C.equal(C.compose(s, C.symmetry(B, A)), C.identity(C.tensor_obj(A, B)))
    eta, eps = C.unit_mor(A), C.counit_mor(A)
    zig = C.compose(C.tensor(C.identity(A), eta), C.tensor(eps, C.identity(A)))
    assert C.equal(zig, C.identity(A))
