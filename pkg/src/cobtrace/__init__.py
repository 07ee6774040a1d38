"""Oriented 1-cobordisms as executable string diagrams.

Cobordisms compose, normalize and act on traced categories; the Int
construction and the finite profunctor toolkit sit on top.
"""
from .cob import (
    KleisliMap,
    LabelSet,
    SignedPoint,
    SignedSet,
    StandardDecomposition,
    canonicalize,
    compose,
    decompose,
    dual_object,
    equals,
    generator,
    make_cobordism,
    relabel,
    tensor,
    trace_cob,
)
from .operad import WiringDiagram, make_wiring_diagram, wd_from_cobordism, wd_substitute, wd_to_cobordism
from .traced import (
    Arrow,
    TracedInstance,
    action,
    algebra_from_traced,
    traced_from_algebra,
)
from .matrix import MatrixInstance, matrix_eval_oracle
from .axioms import check_traced_axioms
from .intcat import (
    IntCategory,
    IntMorphism,
    IntObject,
    compact_trace,
    int_compose,
    int_dual,
    int_identity,
    int_tensor,
    unit_embed,
)

__all__ = [
    "Arrow",
    "IntCategory",
    "IntMorphism",
    "IntObject",
    "KleisliMap",
    "LabelSet",
    "MatrixInstance",
    "SignedPoint",
    "SignedSet",
    "StandardDecomposition",
    "TracedInstance",
    "WiringDiagram",
    "action",
    "algebra_from_traced",
    "canonicalize",
    "check_traced_axioms",
    "compact_trace",
    "compose",
    "decompose",
    "dual_object",
    "equals",
    "generator",
    "int_compose",
    "int_dual",
    "int_identity",
    "int_tensor",
    "make_cobordism",
    "make_wiring_diagram",
    "matrix_eval_oracle",
    "relabel",
    "tensor",
    "trace_cob",
    "traced_from_algebra",
    "unit_embed",
    "wd_from_cobordism",
    "wd_substitute",
    "wd_to_cobordism",
]
