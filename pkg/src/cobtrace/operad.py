"""Wiring diagrams: n-ary morphisms of the cobordism operad.

Inner boxes play the role of the domain (effective sign flipped), the outer
box the codomain.  Boxes are numbered from 1 in documents and error
messages; the Python API takes 0-based slots.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import cob
from .cob import Cobordism, LabelSet, SignedSet
from .errors import BoundaryMismatch, IndexOutOfRange, SlotMismatch

OUTER = "outer"


class WireEnd(NamedTuple):
    box: object  # 1-based box number or "outer"
    index: int  # 1-based

    def __str__(self):
        return f"{'Y' if self.box == OUTER else 'X' + str(self.box)}.{self.index}"


@dataclass(frozen=True)
class WiringDiagram:
    labels: LabelSet
    inner: tuple[SignedSet, ...]
    outer: SignedSet
    wires: tuple[tuple[int, int], ...]  # flat positions: boxes in order, then outer
    loops: tuple[tuple[str, int], ...] = ()

    @property
    def offsets(self) -> list[int]:
        out, total = [], 0
        for X in self.inner:
            out.append(total)
            total += len(X)
        return out

    def end(self, pos: int) -> WireEnd:
        for b, (off, X) in enumerate(zip(self.offsets, self.inner), start=1):
            if pos < off + len(X):
                return WireEnd(b, pos - off + 1)
        return WireEnd(OUTER, pos - sum(map(len, self.inner)) + 1)

    def flat(self, end) -> int:
        if isinstance(end, Mapping):
            end = (end["box"], end["index"])
        box, index = end
        if box == OUTER:
            size, base = len(self.outer), sum(map(len, self.inner))
        else:
            if not 1 <= int(box) <= len(self.inner):
                raise IndexOutOfRange(f"box {box} out of range")
            size, base = len(self.inner[int(box) - 1]), self.offsets[int(box) - 1]
        if not 1 <= int(index) <= size:
            raise IndexOutOfRange(f"index {index} out of range for box {box}")
        return base + int(index) - 1

    def wire_ends(self) -> list[tuple[WireEnd, WireEnd]]:
        return [(self.end(a), self.end(b)) for a, b in self.wires]


def make_wiring_diagram(inner: Sequence, outer, wires: Iterable = (), loops=None, *, labels: LabelSet) -> WiringDiagram:
    inner = tuple(labels.signed(X) for X in inner)
    outer = labels.signed(outer)
    probe = WiringDiagram(labels, inner, outer, ())
    pairs = [(probe.flat(a), probe.flat(b)) for a, b in wires]
    dom = SignedSet(p for X in inner for p in X)
    # validity is exactly cobordism validity with the boxes as domain
    phi = cob._build(labels, dom, outer, pairs, Counter(loops or {}))
    return WiringDiagram(labels, inner, outer, phi.arcs, phi.loops)


def wd_to_cobordism(W: WiringDiagram) -> Cobordism:
    dom = SignedSet(p for X in W.inner for p in X)
    return Cobordism(W.labels, dom, W.outer, W.wires, W.loops)


def wd_from_cobordism(phi: Cobordism, boxes: Sequence[SignedSet]) -> WiringDiagram:
    boxes = tuple(SignedSet(X) for X in boxes)
    if SignedSet(p for X in boxes for p in X) != phi.dom:
        raise BoundaryMismatch("box list does not concatenate to the cobordism's domain")
    return WiringDiagram(phi.labels, boxes, phi.cod, phi.arcs, phi.loops)


def wd_substitute(outer: WiringDiagram, slot: int, inner: WiringDiagram) -> WiringDiagram:
    """Plug ``inner`` into box ``slot`` (0-based) of ``outer``."""
    if not 0 <= slot < len(outer.inner):
        raise IndexOutOfRange(f"slot {slot} out of range for {len(outer.inner)} boxes")
    if inner.outer != outer.inner[slot]:
        raise SlotMismatch(f"inner diagram's outer box does not match box {slot + 1}")
    labels = outer.labels
    before = SignedSet(p for X in outer.inner[:slot] for p in X)
    after = SignedSet(p for X in outer.inner[slot + 1 :] for p in X)
    plug = cob.tensor_all(
        labels,
        cob.identity(before, labels=labels),
        wd_to_cobordism(inner),
        cob.identity(after, labels=labels),
    )
    glued = cob.compose(plug, wd_to_cobordism(outer))
    boxes = outer.inner[:slot] + inner.inner + outer.inner[slot + 1 :]
    return wd_from_cobordism(glued, boxes)


def identity_diagram(X, *, labels: LabelSet) -> WiringDiagram:
    return wd_from_cobordism(cob.identity(X, labels=labels), [labels.signed(X)])
