"""JSON documents for cobordisms, wiring diagrams, Kleisli maps, morphisms and tables."""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from .cob import (
    Cobordism,
    KleisliMap,
    LabelSet,
    SignedPoint,
    SignedSet,
    StandardDecomposition,
    make_cobordism,
)
from .intcat import IntMorphism, IntObject, payload_type
from .matrix import MatrixInstance
from .operad import OUTER, WiringDiagram, make_wiring_diagram
from .prof import Elem, FiniteCategory, FiniteProfunctor, ProfMonoid


class DocumentError(ValueError):
    """A document is malformed (as opposed to well formed but invalid)."""


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None


def _get(doc, key, kind=None, default=...):
    if not isinstance(doc, dict):
        raise DocumentError(f"expected an object, got {type(doc).__name__}")
    if key not in doc:
        if default is not ...:
            return default
        raise DocumentError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return value


# -- signed sets and cobordisms ---------------------------------------------


def signed_set_to_doc(X: SignedSet) -> list:
    return [{"label": p.label, "sign": p.sign} for p in X]


def signed_set_from_doc(doc) -> SignedSet:
    if not isinstance(doc, list):
        raise DocumentError("a signed set is a list of points")
    points = []
    for p in doc:
        label, sign = _get(p, "label", str), _get(p, "sign", str)
        if sign not in ("+", "-"):
            raise DocumentError(f"bad sign {sign!r}")
        points.append(SignedPoint(label, sign))
    return SignedSet(points)


def _labels_in_loops(doc) -> list[str]:
    loops = _get(doc, "loops", dict, {})
    return list(loops)


def cobordism_labels(doc) -> set[str]:
    out = {p.label for key in ("dom", "cod") for p in signed_set_from_doc(_get(doc, key, list))}
    return out | set(_labels_in_loops(doc))


def infer_labels(*docs, extra=()) -> LabelSet:
    found = set(extra)
    for d in docs:
        if isinstance(d, dict) and "labels" in d:
            found |= set(_get(d, "labels", list))
        elif isinstance(d, dict) and "inner" in d:
            found |= wiring_labels(d)
        else:
            found |= cobordism_labels(d)
    return LabelSet(sorted(found))


def _endpoint(e):
    if isinstance(e, dict):
        side, index = _get(e, "side", str), _get(e, "index", int)
    elif isinstance(e, list) and len(e) == 2:
        side, index = e
    else:
        raise DocumentError(f"bad endpoint {e!r}")
    if side not in ("dom", "cod") or not isinstance(index, int) or isinstance(index, bool):
        raise DocumentError(f"bad endpoint {e!r}")
    return side, index


def _pairs(doc, key, parse):
    arcs = _get(doc, key, list, [])
    out = []
    for a in arcs:
        if not isinstance(a, list) or len(a) != 2:
            raise DocumentError(f"each entry of {key!r} is a pair of endpoints")
        out.append((parse(a[0]), parse(a[1])))
    return out


def _loops(doc) -> dict:
    loops = _get(doc, "loops", dict, {})
    for k, v in loops.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise DocumentError(f"loop count for {k!r} must be an integer")
    return loops


def cobordism_from_doc(doc, labels: LabelSet | None = None) -> Cobordism:
    labels = labels or infer_labels(doc)
    dom = signed_set_from_doc(_get(doc, "dom", list))
    cod = signed_set_from_doc(_get(doc, "cod", list))
    return make_cobordism(dom, cod, _pairs(doc, "arcs", _endpoint), _loops(doc), labels=labels)


def cobordism_to_doc(phi: Cobordism) -> dict:
    arcs = [[{"side": x.side, "index": x.index} for x in pair] for pair in phi.arc_refs()]
    return {
        "dom": signed_set_to_doc(phi.dom),
        "cod": signed_set_to_doc(phi.cod),
        "arcs": arcs,
        "loops": dict(phi.loops),
    }


def decomposition_to_doc(d: StandardDecomposition) -> dict:
    return {
        "A": list(d.A),
        "B": list(d.B),
        "C": list(d.C),
        "D": list(d.D),
        "E": dict(d.E),
        "perm_dom": cobordism_to_doc(d.perm_dom),
        "perm_cod": cobordism_to_doc(d.perm_cod),
    }


# -- wiring diagrams ----------------------------------------------------------


def wiring_labels(doc) -> set[str]:
    out = set(_labels_in_loops(doc))
    for X in _get(doc, "inner", list):
        out |= {p.label for p in signed_set_from_doc(X)}
    return out | {p.label for p in signed_set_from_doc(_get(doc, "outer", list))}


def _wire_end(e):
    if not isinstance(e, dict):
        raise DocumentError(f"bad wire end {e!r}")
    box, index = e.get("box"), e.get("index")
    if not (box == OUTER or (isinstance(box, int) and not isinstance(box, bool))):
        raise DocumentError(f"bad box {box!r}")
    if not isinstance(index, int) or isinstance(index, bool):
        raise DocumentError(f"bad index {index!r}")
    return box, index


def wiring_from_doc(doc, labels: LabelSet | None = None) -> WiringDiagram:
    labels = labels or infer_labels(doc)
    inner = [signed_set_from_doc(X) for X in _get(doc, "inner", list)]
    outer = signed_set_from_doc(_get(doc, "outer", list))
    return make_wiring_diagram(inner, outer, _pairs(doc, "wires", _wire_end), _loops(doc), labels=labels)


def wiring_to_doc(W: WiringDiagram) -> dict:
    wires = [[{"box": e.box, "index": e.index} for e in pair] for pair in W.wire_ends()]
    return {
        "inner": [signed_set_to_doc(X) for X in W.inner],
        "outer": signed_set_to_doc(W.outer),
        "wires": wires,
        "loops": dict(W.loops),
    }


# -- Kleisli maps -------------------------------------------------------------


def kleisli_from_doc(doc, source: LabelSet | None = None) -> KleisliMap:
    mapping = _get(doc, "map", dict)
    src = LabelSet(_get(doc, "source", list)) if "source" in doc else (source or LabelSet(sorted(mapping)))
    assignment = {}
    targets = set()
    for a, word in mapping.items():
        if not isinstance(word, list):
            raise DocumentError(f"image of {a!r} must be a list")
        letters = []
        for x in word:
            if isinstance(x, str):
                letters.append((x, False))
            else:
                letters.append((_get(x, "label", str), bool(_get(x, "inv", bool, False))))
        targets |= {b for b, _ in letters}
        assignment[a] = letters
    tgt = LabelSet(_get(doc, "target", list)) if "target" in doc else LabelSet(sorted(targets))
    return KleisliMap(src, tgt, assignment)


def kleisli_to_doc(k: KleisliMap) -> dict:
    return {
        "source": list(k.source),
        "target": list(k.target),
        "map": {a: [{"label": b, "inv": inv} for b, inv in w] for a, w in k.assignment},
    }


# -- matrix morphisms ---------------------------------------------------------


def _dims(doc) -> dict:
    dims = _get(doc, "dims", dict)
    for k, v in dims.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise DocumentError(f"dimension of {k!r} must be a positive integer")
    return dims


def instance_from_doc(doc) -> MatrixInstance:
    dims = _dims(doc)
    sr = _get(doc, "semiring", str, "nat")
    return MatrixInstance(LabelSet(sorted(dims)), dims, sr)


def _entries(doc, T: MatrixInstance):
    raw = _get(doc, "entries", list)
    try:
        arr = np.array(raw, dtype=object)
    except ValueError as e:
        raise DocumentError(f"ragged entries: {e}") from None
    for x in arr.flat:
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise DocumentError("entries must be numbers")
        if T.sr.name != "float" and not isinstance(x, int):
            raise DocumentError("exact semirings need integer entries")
    if T.sr.name == "bool" and any(x not in (0, 1) for x in arr.flat):
        raise DocumentError("boolean entries must be 0 or 1")
    return arr


def _word(doc, key) -> tuple:
    w = _get(doc, key, list)
    if not all(isinstance(x, str) for x in w):
        raise DocumentError(f"{key!r} must be a list of labels")
    return tuple(w)


def morphism_from_doc(doc, T: MatrixInstance | None = None):
    T = T or instance_from_doc(doc)
    dom, cod = _word(doc, "dom"), _word(doc, "cod")
    return T, T.arrow(dom, cod, _entries(doc, T))


def _plain(x, sr):
    if sr.name == "bool":
        return int(bool(x))
    if sr.name == "float":
        return float(x)
    return int(x)


def matrix_to_list(M: np.ndarray, sr) -> list:
    return [[_plain(x, sr) for x in row] for row in M]


def morphism_to_doc(T: MatrixInstance, f) -> dict:
    return {
        "dims": dict(T.dims),
        "semiring": T.sr.name,
        "dom": list(f.dom),
        "cod": list(f.cod),
        "entries": matrix_to_list(T.matrix(f), T.sr),
    }


def int_object_from_doc(doc) -> IntObject:
    return IntObject(_word(doc, "neg"), _word(doc, "pos"))


def int_morphism_from_doc(doc, T: MatrixInstance | None = None):
    """A morphism document plus ``source`` and ``target`` Int objects."""
    T = T or instance_from_doc(doc)
    A = int_object_from_doc(_get(doc, "source", dict))
    B = int_object_from_doc(_get(doc, "target", dict))
    dom, cod = payload_type(A, B)
    if "dom" in doc and tuple(doc["dom"]) != dom or "cod" in doc and tuple(doc["cod"]) != cod:
        raise DocumentError("dom/cod disagree with the Int source and target")
    return T, IntMorphism(A, B, T.arrow(dom, cod, _entries(doc, T)))


def int_morphism_to_doc(T: MatrixInstance, f: IntMorphism) -> dict:
    doc = morphism_to_doc(T, f.payload)
    doc["source"] = {"neg": list(f.source.neg), "pos": list(f.source.pos)}
    doc["target"] = {"neg": list(f.target.neg), "pos": list(f.target.pos)}
    return doc


# -- finite categories and monoids --------------------------------------------


def _triples(doc, key):
    rows = _get(doc, key, list, [])
    for r in rows:
        if not isinstance(r, list) or len(r) != 3:
            raise DocumentError(f"each row of {key!r} has three entries")
    return rows


def category_from_doc(doc) -> FiniteCategory:
    """Tables keyed by names: morphisms [{name, src, dst}], comp rows [f, g, f;g]."""
    objects = _get(doc, "objects", list)
    mors = [(_get(m, "name", str), _get(m, "src"), _get(m, "dst")) for m in _get(doc, "morphisms", list)]
    comp = {(f, g): h for f, g, h in _triples(doc, "comp")}
    ident = _get(doc, "identity", dict)
    try:
        then = lambda f, g: comp[(f, g)]
        identity = lambda o: ident[str(o)]
        mon = cpt = None
        if "monoidal" in doc:
            m = doc["monoidal"]
            tobj = {(a, b): c for a, b, c in _triples(m, "tensor_obj")}
            tmor = {(f, g): h for f, g, h in _triples(m, "tensor_mor")}
            sym = {(a, b): s for a, b, s in _triples(m, "symmetry")}
            mon = {
                "tensor_obj": lambda a, b: tobj[(a, b)],
                "tensor_mor": lambda f, g: tmor[(f, g)],
                "unit": _get(m, "unit"),
                "symmetry": lambda a, b: sym[(a, b)],
            }
        if "compact" in doc:
            c = doc["compact"]
            dual, eta, eps = (_get(c, k, dict) for k in ("dual", "eta", "eps"))
            cpt = {
                "dual": lambda a: dual[str(a)],
                "eta": lambda a: eta[str(a)],
                "eps": lambda a: eps[str(a)],
            }
        return FiniteCategory.build(objects, mors, then, identity, mon, cpt)
    except KeyError as e:
        raise DocumentError(f"incomplete table: missing entry {e}") from None


def category_to_doc(C: FiniteCategory) -> dict:
    name = lambda f: str(C.names[f])
    obj = lambda o: C.objects[o]
    doc: dict[str, Any] = {
        "objects": list(C.objects),
        "morphisms": [{"name": name(f), "src": obj(C.src[f]), "dst": obj(C.dst[f])} for f in range(C.n_mor)],
        "comp": [
            [name(f), name(g), name(C.comp[f][g])] for f in range(C.n_mor) for g in range(C.n_mor) if C.comp[f][g] >= 0
        ],
        "identity": {str(obj(c)): name(C.ident[c]) for c in range(len(C.objects))},
    }
    if C.monoidal is not None:
        n, k = C.n_mor, len(C.objects)
        doc["monoidal"] = {
            "unit": obj(C.unit),
            "tensor_obj": [[obj(a), obj(b), obj(C.tobj(a, b))] for a in range(k) for b in range(k)],
            "tensor_mor": [[name(f), name(g), name(C.tmor(f, g))] for f in range(n) for g in range(n)],
            "symmetry": [[obj(a), obj(b), name(C.sigma(a, b))] for a in range(k) for b in range(k)],
        }
    if C.compact is not None:
        k = len(C.objects)
        doc["compact"] = {
            "dual": {str(obj(a)): obj(C.dual(a)) for a in range(k)},
            "eta": {str(obj(a)): name(C.eta(a)) for a in range(k)},
            "eps": {str(obj(a)): name(C.eps(a)) for a in range(k)},
        }
    return doc


def monoid_from_doc(doc, C: FiniteCategory) -> ProfMonoid:
    """Elements [{name, src, dst}]; left [g, m, g.m]; right [m, f, m.f]; unit {f: m}; mult [n2, n1, n2.n1]."""
    oi = {o: i for i, o in enumerate(C.objects)}
    try:
        named = {}
        elems: dict = {}
        for e in _get(doc, "elements", list):
            x = Elem(oi[_get(e, "src")], oi[_get(e, "dst")], _get(e, "name", str))
            named[x.value] = x
            elems.setdefault((x.src, x.dst), []).append(x)
        elems = {k: tuple(v) for k, v in elems.items()}
        mi = {str(n): i for i, n in enumerate(C.names)}
        left = {(mi[g], named[m]): named[r] for g, m, r in _triples(doc, "left")}
        right = {(named[m], mi[f]): named[r] for m, f, r in _triples(doc, "right")}
        unit = {mi[f]: named[m] for f, m in _get(doc, "unit", dict).items()}
        mult = {(named[a], named[b]): named[r] for a, b, r in _triples(doc, "mult")}
    except KeyError as e:
        raise DocumentError(f"unknown name {e}") from None
    # identity actions may be left implicit
    for (c, d), ms in elems.items():
        for m in ms:
            left.setdefault((C.ident[d], m), m)
            right.setdefault((m, C.ident[c]), m)
    return ProfMonoid(FiniteProfunctor(C, elems, left, right), unit, mult)
