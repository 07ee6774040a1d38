import pytest
from hypothesis import given, settings

from cobtrace import cob
from cobtrace.cob import KleisliMap, LabelSet, SignedSet, dual_object, make_cobordism
from cobtrace.errors import (
    BoundaryMismatch,
    IndexOutOfRange,
    LabelMismatch,
    LabelSetMismatch,
    NotPerfectMatching,
    OrientationClash,
    PrefixMismatch,
    UnknownLabel,
)
from cobtrace.sampling import random_cobordism, random_cobordism_from, random_composable, random_kleisli

from conftest import ABC, rng_for, seeds

L = ABC


def S(text):
    return SignedSet(text)


def ident(X):
    return cob.identity(S(X) if isinstance(X, str) else X, labels=L)


# -- construction -----------------------------------------------------------


def test_empty_cobordism():
    phi = make_cobordism([], [], [], {}, labels=L)
    assert phi == cob.empty(L)
    assert phi.arcs == () and phi.loops == ()


def test_cap_is_valid():
    phi = make_cobordism(S("a- a+"), [], [(("dom", 1), ("dom", 2))], labels=L)
    assert phi.arc_refs() == [(("dom", 1), ("dom", 2))]


def test_pass_through_with_loops():
    phi = make_cobordism(S("a-"), S("a-"), [(("dom", 1), ("cod", 1))], {"b": 2}, labels=L)
    assert phi.loop_map == {"b": 2}


def test_arcs_stored_canonically():
    phi = make_cobordism(S("a+ b+"), S("b+ a+"), [(("cod", 2), ("dom", 1)), (("cod", 1), ("dom", 2))], labels=L)
    assert phi.arcs == ((0, 3), (1, 2))


@pytest.mark.parametrize(
    "dom,cod,arcs,err",
    [
        ("a- a+", "", [(("dom", 1), ("dom", 2)), (("dom", 1), ("dom", 2))], NotPerfectMatching),
        ("a- a+", "", [], NotPerfectMatching),
        ("a- a-", "", [(("dom", 1), ("dom", 2))], OrientationClash),
        ("a-", "a+", [(("dom", 1), ("cod", 1))], OrientationClash),
        ("a-", "b-", [(("dom", 1), ("cod", 1))], LabelMismatch),
        ("a-", "a-", [(("dom", 1), ("cod", 2))], IndexOutOfRange),
    ],
)
def test_invalid_cobordisms(dom, cod, arcs, err):
    with pytest.raises(err):
        make_cobordism(S(dom), S(cod), arcs, labels=L)


def test_unknown_label():
    with pytest.raises(UnknownLabel):
        make_cobordism(S("z-"), S("z-"), [(("dom", 1), ("cod", 1))], labels=L)


# -- generators -------------------------------------------------------------


def test_cup_on_single_point():
    eta = cob.generator("cup", S("a+"), labels=L)
    assert eta.dom == S("") and eta.cod == S("a- a+")
    assert eta.arc_refs() == [(("cod", 1), ("cod", 2))]


def test_symmetry_crossing():
    s = cob.generator("symmetry", S("a+"), S("b+"), labels=L)
    assert s.cod == S("b+ a+")
    assert s.arc_refs() == [(("dom", 1), ("cod", 2)), (("dom", 2), ("cod", 1))]


def test_identity_generator():
    i = cob.generator("identity", S("a- b+"), labels=L)
    assert i.arc_refs() == [(("dom", 1), ("cod", 1)), (("dom", 2), ("cod", 2))]


def test_cup_cap_arc_rule():
    X = S("a+ b- c+")
    eta, eps = cob.cup(X, labels=L), cob.cap(X, labels=L)
    assert eta.cod == dual_object(X) + X
    assert eta.arc_refs() == [(("cod", k), ("cod", 7 - k)) for k in (1, 2, 3)]
    assert eps.arc_refs() == [(("dom", k), ("dom", 7 - k)) for k in (1, 2, 3)]
    assert not eta.loops and not eps.loops


def test_generator_argument_check():
    with pytest.raises(ValueError):
        cob.generator("symmetry", S("a+"), labels=L)
    with pytest.raises(ValueError):
        cob.generator("cup", S("a+"), S("a+"), labels=L)


# -- dual -------------------------------------------------------------------


@pytest.mark.parametrize("X,expected", [("a+", "a-"), ("", ""), ("a- b+", "b- a+")])
def test_dual_object(X, expected):
    assert dual_object(S(X)) == S(expected)
    assert dual_object(dual_object(S(X))) == S(X)


# -- compose, tensor, trace -------------------------------------------------


def test_cup_then_cap_is_one_loop():
    phi = cob.compose(cob.cup(S("a+"), labels=L), cob.cap(S("a-"), labels=L))
    assert phi.dom == S("") and phi.cod == S("") and phi.loop_map == {"a": 1}


def test_boundary_mismatch():
    with pytest.raises(BoundaryMismatch):
        cob.compose(ident("a+"), ident("a-"))


def test_tensor_examples():
    phi = cob.cup(S("a+ b-"), labels=L)
    assert cob.tensor(cob.empty(L), phi) == phi
    assert cob.tensor(ident("a+"), ident("b-")) == ident("a+ b-")
    loops = cob.tensor(cob.loops_only(L, {"a": 1}), cob.loops_only(L, {"a": 2}))
    assert loops.loop_map == {"a": 3}


def test_tensor_label_set_mismatch():
    with pytest.raises(LabelSetMismatch):
        cob.tensor(ident("a+"), cob.identity(S("a+"), labels=LabelSet("a")))


def test_trace_examples():
    # closing a straight a-wire leaves one a-circle beside the b-strand
    traced = cob.trace_cob(ident("a+ b-"), 1)
    assert traced == cob.tensor(cob.loops_only(L, {"a": 1}), ident("b-"))
    sigma = cob.symmetry(S("a+"), S("a+"), labels=L)
    assert cob.trace_cob(sigma, 1) == ident("a+")
    closed = cob.trace_cob(ident("a+"), 1)
    assert closed.dom == S("") and closed.loop_map == {"a": 1}


def test_trace_prefix_mismatch():
    phi = cob.symmetry(S("a+"), S("b+"), labels=L)
    with pytest.raises(PrefixMismatch):
        cob.trace_cob(phi, 1)


def test_yanking_equals_identity():
    sigma = cob.generator("symmetry", S("b-"), S("b-"), labels=L)
    assert cob.equals(cob.trace_cob(sigma, 1), ident("b-"))


def test_superposition_as_cobordisms():
    g = make_cobordism(S("b- b+"), S(""), [(("dom", 1), ("dom", 2))], labels=L)
    f = cob.symmetry(S("a+"), S("a+"), labels=L)
    lhs = cob.tensor(cob.trace_cob(f, 1), g)
    rhs = cob.trace_cob(cob.tensor(f, g), 1)
    assert cob.equals(lhs, rhs)


def test_trace_over_nothing():
    f = random_cobordism(rng_for(5), L, 8)
    assert cob.trace_cob(f, 0) == f


# -- relabel ----------------------------------------------------------------


def test_relabel_identity_map():
    phi = random_cobordism(rng_for(1), L, 10)
    assert cob.relabel(phi, KleisliMap.identity(L)) == phi


def test_relabel_delete_strand():
    kappa = KleisliMap(L, L, {"a": [], "b": ["b"], "c": ["c"]})
    assert cob.relabel(ident("a+"), kappa) == cob.empty(L)


def test_relabel_loop_expands_per_letter():
    kappa = KleisliMap(L, L, {"a": ["b", "c"], "b": ["b"], "c": ["c"]})
    loop = cob.loops_only(L, {"a": 1})
    assert cob.relabel(loop, kappa).loop_map == {"b": 1, "c": 1}
    # the same loop built from cup and cap, relabelled before gluing
    eta, eps = cob.cup(S("a+"), labels=L), cob.cap(S("a-"), labels=L)
    glued = cob.compose(cob.relabel(eta, kappa), cob.relabel(eps, kappa))
    assert glued.loop_map == {"b": 1, "c": 1}


def test_relabel_ignores_involution_on_loops():
    kappa = KleisliMap(L, L, {"a": [("b", True)], "b": ["b"], "c": ["c"]})
    assert cob.relabel(cob.loops_only(L, {"a": 2}), kappa).loop_map == {"b": 2}


def test_relabel_involution_flips_signs():
    kappa = KleisliMap(L, L, {"a": [("b", True), ("c", False)], "b": ["b"], "c": ["c"]})
    out = cob.relabel(ident("a+"), kappa)
    assert out.dom == S("b- c+")
    out = cob.relabel(ident("a-"), kappa)
    assert out.dom == S("c- b+")


def test_relabel_unknown_label():
    with pytest.raises(UnknownLabel):
        KleisliMap(L, L, {"a": ["z"], "b": [], "c": []})
    with pytest.raises(UnknownLabel):
        KleisliMap(L, L, {"a": []})


# -- decompose --------------------------------------------------------------


def test_decompose_standard_figure():
    labels = LabelSet("a b c d e")
    phi = make_cobordism(
        S("a- c- c+ b+"),
        S("a- d- d+ b+"),
        [(("dom", 1), ("cod", 1)), (("dom", 2), ("dom", 3)), (("dom", 4), ("cod", 4)), (("cod", 2), ("cod", 3))],
        {"e": 1},
        labels=labels,
    )
    d = cob.decompose(phi)
    assert (d.A, d.B, d.C, d.D, d.E) == (("a",), ("b",), ("c",), ("d",), (("e", 1),))
    assert cob.equals(d.reassemble(), phi)


def test_decompose_identity():
    d = cob.decompose(ident("a-"))
    assert (d.A, d.B, d.C, d.D, d.E) == (("a",), (), (), (), ())


def test_decompose_cap():
    d = cob.decompose(cob.cap(S("a-"), labels=L))
    assert (d.A, d.B, d.C, d.D, d.E) == ((), (), ("a",), (), ())


def test_decompose_orders_c_by_minus_endpoint():
    phi = make_cobordism(
        S("b+ a- b- a+"), S(""), [(("dom", 1), ("dom", 3)), (("dom", 2), ("dom", 4))], labels=L
    )
    assert cob.decompose(phi).C == ("a", "b")


# -- properties -------------------------------------------------------------


@given(seeds)
@settings(max_examples=300)
def test_category_laws(seed):
    rng = rng_for(seed)
    f, g, h = random_composable(rng, L, 3)
    assert cob.compose(cob.compose(f, g), h) == cob.compose(f, cob.compose(g, h))
    assert cob.compose(cob.identity(f.dom, labels=L), f) == f
    assert cob.compose(f, cob.identity(f.cod, labels=L)) == f


@given(seeds)
def test_interchange(seed):
    rng = rng_for(seed)
    f1, g1 = random_composable(rng, L, 2, 6)
    f2, g2 = random_composable(rng, L, 2, 6)
    lhs = cob.compose(cob.tensor(f1, f2), cob.tensor(g1, g2))
    rhs = cob.tensor(cob.compose(f1, g1), cob.compose(f2, g2))
    assert lhs == rhs


@given(seeds)
def test_symmetry_involutive_and_natural(seed):
    rng = rng_for(seed)
    f = random_cobordism(rng, L, 6)
    g = random_cobordism(rng, L, 6)
    X, Y = f.dom, g.dom
    s = cob.symmetry(X, Y, labels=L)
    assert cob.compose(s, cob.symmetry(Y, X, labels=L)) == cob.identity(X + Y, labels=L)
    lhs = cob.compose(s, cob.tensor(g, f))
    rhs = cob.compose(cob.tensor(f, g), cob.symmetry(f.cod, g.cod, labels=L))
    assert lhs == rhs


@given(seeds)
def test_zig_zag(seed):
    rng = rng_for(seed)
    X = random_cobordism(rng, L, 8).dom
    Xs = dual_object(X)
    idX, idXs = cob.identity(X, labels=L), cob.identity(Xs, labels=L)
    eta, eps = cob.cup(X, labels=L), cob.cap(X, labels=L)
    assert cob.compose(cob.tensor(idX, eta), cob.tensor(eps, idX)) == idX
    assert cob.compose(cob.tensor(eta, idXs), cob.tensor(idXs, eps)) == idXs


def _explicit_trace(phi, k):
    U = phi.dom[:k]
    X, Y = phi.dom[k:], phi.cod[k:]
    Us = dual_object(U)
    return cob.compose_all(
        cob.tensor(cob.cup(U, labels=L), cob.identity(X, labels=L)),
        cob.tensor(cob.identity(Us, labels=L), phi),
        cob.tensor(cob.symmetry(Us, U, labels=L), cob.identity(Y, labels=L)),
        cob.tensor(cob.cap(U, labels=L), cob.identity(Y, labels=L)),
    )


@given(seeds)
def test_trace_matches_explicit_composite(seed):
    rng = rng_for(seed)
    phi = random_cobordism(rng, L, 10)
    k = 0
    while k < min(len(phi.dom), len(phi.cod)) and phi.dom[k] == phi.cod[k]:
        k += 1
    k = rng.randint(0, k)
    assert cob.trace_cob(phi, k) == _explicit_trace(phi, k)


@given(seeds)
def test_relabel_functorial(seed):
    rng = rng_for(seed)
    f, g = random_composable(rng, L, 2)
    target = LabelSet("x y")
    kappa = random_kleisli(rng, L, target)
    assert cob.relabel(cob.compose(f, g), kappa) == cob.compose(cob.relabel(f, kappa), cob.relabel(g, kappa))
    assert cob.relabel(cob.tensor(f, g), kappa) == cob.tensor(cob.relabel(f, kappa), cob.relabel(g, kappa))
    cob.relabel(f, kappa).validate()


@given(seeds)
def test_relabel_along_composite_maps(seed):
    rng = rng_for(seed)
    mid, end = LabelSet("x y"), LabelSet("p q r")
    k1, k2 = random_kleisli(rng, L, mid), random_kleisli(rng, mid, end)
    phi = random_cobordism(rng, L, 10)
    assert cob.relabel(phi, k1.then(k2)) == cob.relabel(cob.relabel(phi, k1), k2)


@given(seeds)
def test_relabel_commutes_with_dual(seed):
    rng = rng_for(seed)
    kappa = random_kleisli(rng, L, LabelSet("x y"))
    X = random_cobordism(rng, L, 8).dom
    r = lambda Z: cob.relabel(cob.identity(Z, labels=L), kappa).dom
    assert r(dual_object(X)) == dual_object(r(X))
    # cups go to cups
    assert cob.relabel(cob.cup(X, labels=L), kappa) == cob.cup(r(X), labels=kappa.target)


@given(seeds)
@settings(max_examples=300)
def test_decompose_round_trip(seed):
    phi = random_cobordism(rng_for(seed), L, 10, 3)
    d = cob.decompose(phi)
    assert cob.equals(d.reassemble(), phi)
    assert d.perm_dom.cod == cob.standard_dom(d.A, d.B, d.C)
    assert d.perm_cod.dom == cob.standard_cod(d.A, d.B, d.D)


@given(seeds)
def test_random_cobordisms_are_valid(seed):
    rng = rng_for(seed)
    phi = random_cobordism(rng, L, 10)
    phi.validate()
    random_cobordism_from(rng, L, phi.cod).validate()
