"""The seven traced-category axioms, checked in Cob and in a concrete instance.

Each axiom is a function of a traced instance and a dictionary of arrows,
returning its two sides.  Running it in the free cobordism algebra checks
the equation as an equality of cobordisms; running it on sampled arrows of
an instance checks it extensionally.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .traced import (
    FreeCobAlgebra,
    TracedInstance,
    free_box,
    traced_from_algebra,
)


@dataclass(frozen=True)
class Axiom:
    name: str
    words: tuple[str, ...]  # word parameters
    boxes: tuple[tuple[str, str, str], ...]  # (name, dom expression, cod expression)
    sides: Callable


def _cat(*ws):
    return tuple(x for w in ws for x in w)


def _left_naturality(T, w, a):
    U, X, X2, Y = w["U"], w["X"], w["X2"], w["Y"]
    f, g = a["f"], a["g"]
    lhs = T.trace(T.compose(T.tensor(T.identity(U), g), f), U)
    rhs = T.compose(g, T.trace(f, U))
    return lhs, rhs


def _right_naturality(T, w, a):
    U = w["U"]
    f, h = a["f"], a["h"]
    lhs = T.trace(T.compose(f, T.tensor(T.identity(U), h)), U)
    rhs = T.compose(T.trace(f, U), h)
    return lhs, rhs


def _dinaturality(T, w, a):
    U, V, X, Y = w["U"], w["V"], w["X"], w["Y"]
    f, g = a["f"], a["g"]
    lhs = T.trace(T.compose(f, T.tensor(g, T.identity(Y))), U)
    rhs = T.trace(T.compose(T.tensor(g, T.identity(X)), f), V)
    return lhs, rhs


def _vanishing_unit(T, w, a):
    return T.trace(a["f"], ()), a["f"]


def _vanishing_tensor(T, w, a):
    U, V = w["U"], w["V"]
    f = a["f"]
    return T.trace(f, _cat(U, V)), T.trace(T.trace(f, U), V)


def _superposition(T, w, a):
    U = w["U"]
    f, g = a["f"], a["g"]
    return T.tensor(T.trace(f, U), g), T.trace(T.tensor(f, g), U)


def _yanking(T, w, a):
    U = w["U"]
    return T.trace(T.symmetry(U, U), U), T.identity(U)


AXIOMS: tuple[Axiom, ...] = (
    Axiom("left naturality", ("U", "X", "X2", "Y"), (("f", "U X", "U Y"), ("g", "X2", "X")), _left_naturality),
    Axiom("right naturality", ("U", "X", "Y", "Y2"), (("f", "U X", "U Y"), ("h", "Y", "Y2")), _right_naturality),
    Axiom("dinaturality", ("U", "V", "X", "Y"), (("f", "U X", "V Y"), ("g", "V", "U")), _dinaturality),
    Axiom("vanishing unit", ("X", "Y"), (("f", "X", "Y"),), _vanishing_unit),
    Axiom("vanishing tensor", ("U", "V", "X", "Y"), (("f", "U V X", "U V Y"),), _vanishing_tensor),
    Axiom("superposition", ("U", "X", "Y", "W", "Z"), (("f", "U X", "U Y"), ("g", "W", "Z")), _superposition),
    Axiom("yanking", ("U",), (), _yanking),
)


def _resolve(expr: str, words) -> tuple[str, ...]:
    return _cat(*(words[k] for k in expr.split()))


@dataclass
class AxiomResult:
    name: str
    cases: int = 0
    cob_failures: int = 0
    instance_failures: int = 0
    witness: dict | None = None
    witness_size: int = field(default=-1, repr=False)

    @property
    def passed(self) -> bool:
        return self.cob_failures == 0 and self.instance_failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.cases} cases"
        if not self.passed:
            text += f", {self.cob_failures} cob failures, {self.instance_failures} instance failures"
            text += f", minimal witness {self.witness}"
        return text


@dataclass
class AxiomReport:
    results: list[AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failing(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


def check_axiom_in_cob(axiom: Axiom, labels, words) -> bool:
    FT = traced_from_algebra(FreeCobAlgebra(labels))
    arrows = {name: free_box(FT, name, _resolve(d, words), _resolve(c, words)) for name, d, c in axiom.boxes}
    lhs, rhs = axiom.sides(FT, words, arrows)
    return FT.equal(lhs, rhs)


def check_axiom_in_instance(axiom: Axiom, T: TracedInstance, words, rng) -> bool:
    arrows = {name: T.sample(_resolve(d, words), _resolve(c, words), rng) for name, d, c in axiom.boxes}
    lhs, rhs = axiom.sides(T, words, arrows)
    return T.equal(lhs, rhs)


def check_traced_axioms(
    T: TracedInstance,
    cases: int = 200,
    seed: int = 0,
    max_len: int = 2,
    max_points: int | None = None,
    cob_level: bool = True,
) -> AxiomReport:
    """Check all seven axioms on ``cases`` random word choices each.

    Words have at most ``max_len`` letters; ``max_points`` caps the total
    number of letters over all word parameters.  A failing case is reported
    by the smallest witness found.
    """
    rng = random.Random(seed)
    labels = T.labels.labels
    results = []
    for axiom in AXIOMS:
        res = AxiomResult(axiom.name)
        for _ in range(cases):
            words = {}
            budget = max_points if max_points is not None else len(axiom.words) * max_len
            for k in axiom.words:
                n = rng.randint(0, min(max_len, budget))
                budget -= n
                words[k] = tuple(rng.choice(labels) for _ in range(n))
            res.cases += 1
            cob_ok = check_axiom_in_cob(axiom, T.labels, words) if cob_level else True
            inst_ok = check_axiom_in_instance(axiom, T, words, rng)
            if cob_ok and inst_ok:
                continue
            res.cob_failures += not cob_ok
            res.instance_failures += not inst_ok
            size = sum(len(v) for v in words.values())
            if res.witness is None or size < res.witness_size:
                res.witness = {k: " ".join(v) for k, v in words.items()}
                res.witness_size = size
        results.append(res)
    return AxiomReport(results)
