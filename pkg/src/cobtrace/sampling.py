"""Seeded random generators for cobordisms, words and Kleisli maps."""
from __future__ import annotations

import random
from collections import Counter

from .cob import (
    MINUS,
    PLUS,
    Cobordism,
    KleisliMap,
    LabelSet,
    SignedPoint,
    SignedSet,
    _build,
)


def random_word(rng: random.Random, labels: LabelSet, max_len: int, min_len: int = 0) -> tuple[str, ...]:
    return tuple(rng.choice(labels.labels) for _ in range(rng.randint(min_len, max_len)))


def random_signed_set(rng: random.Random, labels: LabelSet, max_len: int) -> SignedSet:
    return SignedSet((rng.choice(labels.labels), rng.choice((PLUS, MINUS))) for _ in range(rng.randint(0, max_len)))


def _random_loops(rng, labels, max_loops):
    loops = Counter()
    for _ in range(rng.randint(0, max_loops)):
        loops[rng.choice(labels.labels)] += 1
    return loops


def random_cobordism(rng: random.Random, labels: LabelSet, max_points: int = 10, max_loops: int = 2) -> Cobordism:
    """Random valid cobordism with at most ``max_points`` boundary points."""
    dom_pts: list = []
    cod_pts: list = []
    arcs = []
    for _ in range(rng.randint(0, max_points // 2)):
        a = rng.choice(labels.labels)
        kind = rng.choice("ABCD")
        if kind == "A":  # input passing through
            arcs.append((("d", len(dom_pts)), ("c", len(cod_pts))))
            dom_pts.append(SignedPoint(a, MINUS))
            cod_pts.append(SignedPoint(a, MINUS))
        elif kind == "B":  # output passing through
            arcs.append((("d", len(dom_pts)), ("c", len(cod_pts))))
            dom_pts.append(SignedPoint(a, PLUS))
            cod_pts.append(SignedPoint(a, PLUS))
        elif kind == "C":  # feedback
            arcs.append((("d", len(dom_pts)), ("d", len(dom_pts) + 1)))
            dom_pts += [SignedPoint(a, MINUS), SignedPoint(a, PLUS)]
        else:  # new loop through the outer box
            arcs.append((("c", len(cod_pts)), ("c", len(cod_pts) + 1)))
            cod_pts += [SignedPoint(a, MINUS), SignedPoint(a, PLUS)]
    dom_order = list(range(len(dom_pts)))
    cod_order = list(range(len(cod_pts)))
    rng.shuffle(dom_order)
    rng.shuffle(cod_order)
    dom = [None] * len(dom_pts)
    cod = [None] * len(cod_pts)
    for i, j in enumerate(dom_order):
        dom[j] = dom_pts[i]
    for i, j in enumerate(cod_order):
        cod[j] = cod_pts[i]
    m = len(dom)

    def flat(end):
        side, i = end
        return dom_order[i] if side == "d" else m + cod_order[i]

    pairs = [(flat(x), flat(y)) for x, y in arcs]
    return _build(labels, dom, cod, pairs, _random_loops(rng, labels, max_loops))


def random_cobordism_from(
    rng: random.Random, labels: LabelSet, X: SignedSet, max_new: int = 2, max_loops: int = 1
) -> Cobordism:
    """Random cobordism out of a fixed domain X."""
    X = SignedSet(X)
    free = list(range(len(X)))
    rng.shuffle(free)
    pairs = []
    through = []
    while free:
        i = free.pop()
        partner = None
        if rng.random() < 0.4:
            for j in free:
                if X[j].label == X[i].label and X[j].sign != X[i].sign:
                    partner = j
                    break
        if partner is not None:
            free.remove(partner)
            pairs.append((i, partner))
        else:
            through.append(i)
    cod_pts = [("x", i) for i in through]
    for _ in range(rng.randint(0, max_new)):
        cod_pts.append(("n", rng.choice(labels.labels)))
    rng.shuffle(cod_pts)
    m = len(X)
    cod: list = []
    caps: dict[str, list[int]] = {}
    new_points = []
    for entry in cod_pts:
        if entry[0] == "x":
            pairs.append((entry[1], m + len(cod)))
            cod.append(X[entry[1]])
        else:
            new_points.append((entry[1], len(cod)))
            cod.append(None)
            cod.append(None)
    # each new entry opened two slots; give them a random (minus, plus) order
    for a, slot in new_points:
        first, second = (MINUS, PLUS) if rng.random() < 0.5 else (PLUS, MINUS)
        cod[slot] = SignedPoint(a, first)
        cod[slot + 1] = SignedPoint(a, second)
        pairs.append((m + slot, m + slot + 1))
    return _build(labels, X, cod, pairs, _random_loops(rng, labels, max_loops))


def random_composable(rng, labels, count: int, max_points: int = 10):
    """A chain of ``count`` composable cobordisms with bounded boundaries."""
    first = random_cobordism(rng, labels, max_points)
    chain = [first]
    while len(chain) < count:
        X = chain[-1].cod
        budget = max(0, (max_points - len(X)) // 2)
        chain.append(random_cobordism_from(rng, labels, X, max_new=min(2, budget)))
    return chain


def random_kleisli(rng: random.Random, source: LabelSet, target: LabelSet, max_len: int = 2, involution=True):
    assignment = {}
    for a in source:
        assignment[a] = [
            (rng.choice(target.labels), involution and rng.random() < 0.5) for _ in range(rng.randint(0, max_len))
        ]
    return KleisliMap(source, target, assignment)
