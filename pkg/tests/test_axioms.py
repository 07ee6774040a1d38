import random

import pytest

from cobtrace.axioms import AXIOMS, check_axiom_in_cob, check_axiom_in_instance, check_traced_axioms
from cobtrace.matrix import MatrixInstance, TruncatedTraceInstance

from conftest import AB

NAMES = [
    "left naturality",
    "right naturality",
    "dinaturality",
    "vanishing unit",
    "vanishing tensor",
    "superposition",
    "yanking",
]


def test_seven_axioms_in_order():
    assert [a.name for a in AXIOMS] == NAMES


@pytest.mark.parametrize(
    "dims,semiring",
    [({"a": 2, "b": 3}, "nat"), ({"a": 3, "b": 1}, "nat"), ({"a": 2, "b": 2}, "bool"), ({"a": 2, "b": 3}, "float")],
)
def test_matrix_instances_pass(dims, semiring):
    T = MatrixInstance(AB, dims, semiring)
    report = check_traced_axioms(T, cases=40, seed=1)
    assert report.passed, report.lines()
    assert [line.split(":")[0] for line in report.lines()] == [f"PASS {n}" for n in NAMES]


def test_cob_level_each_axiom():
    rng = random.Random(0)
    for axiom in AXIOMS:
        words = {k: tuple(rng.choice("ab") for _ in range(2)) for k in axiom.words}
        assert check_axiom_in_cob(axiom, AB, words), axiom.name


def test_truncated_trace_is_detected():
    T = TruncatedTraceInstance(AB, {"a": 2, "b": 2}, "nat")
    report = check_traced_axioms(T, cases=60, seed=0)
    failing = report.failing()
    assert "vanishing tensor" in failing
    assert "superposition" not in failing
    by_name = {r.name: r for r in report.results}
    vt = by_name["vanishing tensor"]
    # the equation is fine in Cob; only the instance breaks it
    assert vt.cob_failures == 0 and vt.instance_failures > 0
    assert vt.witness_size == 2
    line = [l for l in report.lines() if "vanishing tensor" in l][0]
    assert line.startswith("FAIL vanishing tensor") and "minimal witness" in line


def test_truncated_trace_single_strand_is_exact():
    T = TruncatedTraceInstance(AB, {"a": 2, "b": 3}, "nat")
    good = MatrixInstance(AB, {"a": 2, "b": 3}, "nat")
    rng = random.Random(5)
    f = good.sample(("a", "b"), ("a", "a"), rng)
    assert good.equal(T.trace(f, ("a",)), good.trace(f, ("a",)))


def test_instance_check_uses_given_rng():
    T = MatrixInstance(AB, {"a": 2, "b": 2}, "nat")
    words = {"U": ("a",), "X": ("b",), "Y": (), "W": ("a",), "Z": ("b",)}
    sup = [a for a in AXIOMS if a.name == "superposition"][0]
    assert check_axiom_in_instance(sup, T, words, random.Random(0))


def test_report_is_deterministic():
    T = MatrixInstance(AB, {"a": 2, "b": 2}, "nat")
    assert check_traced_axioms(T, cases=10, seed=7).lines() == check_traced_axioms(T, cases=10, seed=7).lines()
