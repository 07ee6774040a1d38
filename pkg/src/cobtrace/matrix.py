"""Matrices over a semiring as a traced category, stored as lazy tensor networks.

Every morphism is a network of dense factors whose wires either connect two
factor legs or end on the boundary.  Composition and trace only rename
wires; contraction happens when a dense value is requested.  This keeps
Kronecker-heavy expressions (Int composites, axiom templates) cheap.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .cob import MINUS, PLUS, Cobordism, LabelSet, SignedSet
from .errors import TypeMismatch
from .traced import Arrow, TracedInstance


@dataclass(frozen=True)
class Semiring:
    name: str
    dtype: object

    def from_int(self, n: int):
        if self.name == "bool":
            return bool(n)
        if self.name == "float":
            return float(n)
        return int(n)

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def zeros(self, shape) -> np.ndarray:
        out = np.zeros(shape, dtype=self.dtype)
        if self.dtype is object:
            out.fill(0)
        return out

    def eye(self, d: int) -> np.ndarray:
        out = self.zeros((d, d))
        for i in range(d):
            out[i, i] = self.one
        return out

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=self.dtype)
        if self.name == "nat":
            arr = np.vectorize(int, otypes=[object])(arr) if arr.size else arr
            if arr.size and min(arr.flat) < 0:
                raise ValueError("natural-number entries must be nonnegative")
        return arr

    def scale(self, arr: np.ndarray, s) -> np.ndarray:
        if self.name == "bool":
            return arr & s
        return arr * s

    def mul(self, a, b):
        return (a and b) if self.name == "bool" else a * b

    def add(self, a, b):
        return (a or b) if self.name == "bool" else a + b

    def equal(self, x: np.ndarray, y: np.ndarray) -> bool:
        if x.shape != y.shape:
            return False
        if self.name == "float":
            return bool(np.allclose(np.asarray(x, float), np.asarray(y, float), rtol=1e-9, atol=1e-12))
        return bool(np.array_equal(x, y))

    def random(self, rng, shape) -> np.ndarray:
        gen = np.random.default_rng(rng.getrandbits(64))
        if self.name == "bool":
            return gen.random(shape) < 0.5
        if self.name == "float":
            return gen.uniform(-1.0, 1.0, shape)
        return gen.integers(0, 4, shape).astype(object)


SEMIRINGS = {
    "nat": Semiring("nat", object),
    "bool": Semiring("bool", np.bool_),
    "float": Semiring("float", np.float64),
}


def semiring(name) -> Semiring:
    if isinstance(name, Semiring):
        return name
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(f"unknown semiring {name!r}; expected one of {sorted(SEMIRINGS)}") from None


class _Fresh:
    def __init__(self):
        self.n = 0

    def __call__(self) -> int:
        self.n += 1
        return self.n


_fresh = _Fresh()


class TensorNet:
    """A morphism as factors joined by wires.

    ``cod`` and ``dom`` list the wire at each boundary letter.  Every wire id
    occurs exactly twice among factor legs and boundary slots.
    """

    __slots__ = ("sr", "dims", "factors", "cod", "dom", "scalar", "_dense")

    def __init__(self, sr: Semiring, dims: dict, factors: list, cod: list, dom: list, scalar):
        self.sr = sr
        self.dims = dims
        self.factors = factors
        self.cod = cod
        self.dom = dom
        self.scalar = scalar
        self._dense = None

    @classmethod
    def leaf(cls, sr: Semiring, tensor: np.ndarray, cod_dims, dom_dims) -> "TensorNet":
        """A single factor with axes (cod letters..., dom letters...)."""
        cod = [_fresh() for _ in cod_dims]
        dom = [_fresh() for _ in dom_dims]
        dims = dict(zip(cod + dom, list(cod_dims) + list(dom_dims)))
        net = cls(sr, dims, [(tensor, tuple(cod + dom))], cod, dom, sr.one)
        net._dense = tensor
        return net

    @classmethod
    def wires(cls, sr: Semiring, dim_list, perm) -> "TensorNet":
        """Bare wires: dom letter i is joined to cod position perm[i]."""
        ids = [_fresh() for _ in dim_list]
        cod = [0] * len(ids)
        for i, j in enumerate(perm):
            cod[j] = ids[i]
        return cls(sr, dict(zip(ids, dim_list)), [], cod, ids, sr.one)

    def renamed(self) -> "TensorNet":
        table = {w: _fresh() for w in self.dims}
        out = TensorNet(
            self.sr,
            {table[w]: d for w, d in self.dims.items()},
            [(t, tuple(table[w] for w in ids)) for t, ids in self.factors],
            [table[w] for w in self.cod],
            [table[w] for w in self.dom],
            self.scalar,
        )
        out._dense = self._dense
        return out

    # -- structural operations ---------------------------------------------

    @staticmethod
    def _glue(sr, dims, factors, cod, dom, scalar, joins) -> "TensorNet":
        """Identify wires pairwise; wires left with no occurrence are closed loops."""
        parent = {w: w for w in dims}

        def find(w):
            while parent[w] != w:
                parent[w] = parent[parent[w]]
                w = parent[w]
            return w

        for x, y in joins:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx
        factors = [(t, tuple(find(w) for w in ids)) for t, ids in factors]
        cod = [find(w) for w in cod]
        dom = [find(w) for w in dom]
        used = {w for _, ids in factors for w in ids} | set(cod) | set(dom)
        for w in dims:
            if parent[w] == w and w not in used:
                scalar = sr.mul(scalar, sr.from_int(dims[w]))
        return TensorNet(sr, {w: dims[w] for w in used}, factors, cod, dom, scalar)

    def then(self, other: "TensorNet") -> "TensorNet":
        g = other.renamed()
        net = TensorNet._glue(
            self.sr,
            {**self.dims, **g.dims},
            self.factors + g.factors,
            g.cod,
            self.dom,
            self.sr.mul(self.scalar, g.scalar),
            list(zip(self.cod, g.dom)),
        )
        return net._maybe_collapse()

    def tensor(self, other: "TensorNet") -> "TensorNet":
        g = other.renamed()
        return TensorNet(
            self.sr,
            {**self.dims, **g.dims},
            self.factors + g.factors,
            self.cod + g.cod,
            self.dom + g.dom,
            self.sr.mul(self.scalar, g.scalar),
        )._maybe_collapse()

    def trace(self, k: int) -> "TensorNet":
        net = TensorNet._glue(
            self.sr,
            dict(self.dims),
            list(self.factors),
            self.cod[k:],
            self.dom[k:],
            self.scalar,
            list(zip(self.dom[:k], self.cod[:k])),
        )
        return net._maybe_collapse()

    def permuted(self, dom_perm, cod_perm) -> "TensorNet":
        cod = [0] * len(self.cod)
        dom = [0] * len(self.dom)
        for i, j in enumerate(cod_perm):
            cod[j] = self.cod[i]
        for i, j in enumerate(dom_perm):
            dom[j] = self.dom[i]
        return TensorNet(self.sr, self.dims, self.factors, cod, dom, self.scalar)

    def _maybe_collapse(self, limit: int = 6) -> "TensorNet":
        if len(self.factors) <= limit:
            return self
        return TensorNet.leaf(self.sr, self.tensor_form(), [self.dims[w] for w in self.cod], [self.dims[w] for w in self.dom])

    # -- contraction -------------------------------------------------------

    def tensor_form(self) -> np.ndarray:
        """Dense tensor with one axis per boundary letter, cod letters first."""
        if self._dense is not None:
            return self._dense
        sr = self.sr
        work = []
        for t, ids in self.factors:
            if len(set(ids)) < len(ids):
                keep = list(dict.fromkeys(w for w in ids if ids.count(w) == 1))
                local = {w: n for n, w in enumerate(dict.fromkeys(ids))}
                t = np.asarray(np.einsum(t, [local[w] for w in ids], [local[w] for w in keep]), dtype=sr.dtype)
                ids = tuple(keep)
            work.append((t, tuple(ids)))
        outputs = list(self.cod) + list(self.dom)
        # a wire with both ends on the boundary becomes an explicit identity
        out_ids = []
        seen: dict[int, int] = {}
        for w in outputs:
            if outputs.count(w) == 2:
                if w in seen:
                    out_ids.append(seen.pop(w))
                    continue
                a, b = _fresh(), _fresh()
                work.append((sr.eye(self.dims[w]), (a, b)))
                seen[w] = b
                out_ids.append(a)
            else:
                out_ids.append(w)
        while len(work) > 1:
            best = None
            for i, j in itertools.combinations(range(len(work)), 2):
                shared = set(work[i][1]) & set(work[j][1])
                gain = math.prod(self.dims.get(w, 1) for w in shared) if shared else 0
                size = work[i][0].size * work[j][0].size
                key = (-gain, size, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j, shared)
            _, i, j, shared = best
            (ta, ia), (tb, ib) = work[i], work[j]
            shared = [w for w in ia if w in shared]
            axes = ([ia.index(w) for w in shared], [ib.index(w) for w in shared])
            t = np.asarray(np.tensordot(ta, tb, axes=axes), dtype=sr.dtype)
            ids = tuple(w for w in ia if w not in shared) + tuple(w for w in ib if w not in shared)
            work = [x for n, x in enumerate(work) if n not in (i, j)] + [(t, ids)]
        if work:
            t, ids = work[0]
            t = np.transpose(t, [ids.index(w) for w in out_ids]) if ids else t
        else:
            t = sr.zeros(())
            t[()] = sr.one
        t = np.asarray(sr.scale(np.asarray(t, dtype=sr.dtype), self.scalar), dtype=sr.dtype)
        self._dense = t
        return t

    def matrix(self) -> np.ndarray:
        rows = math.prod(self.dims[w] for w in self.cod)
        cols = math.prod(self.dims[w] for w in self.dom)
        return self.tensor_form().reshape(rows, cols)


class MatrixInstance(TracedInstance):
    """Hom(w, v) = (prod dims v) x (prod dims w) matrices over a semiring."""

    def __init__(self, labels: LabelSet, dims: Mapping[str, int], sr="nat"):
        self.labels = labels
        self.dims = {a: int(dims[a]) for a in labels}
        if any(d < 1 for d in self.dims.values()):
            raise ValueError("dimensions must be positive")
        self.sr = semiring(sr)

    def word_dims(self, word) -> list[int]:
        return [self.dims[a] if a in self.dims else self.dims[self.labels.rank(a)] for a in word]

    def size(self, word) -> int:
        return math.prod(self.word_dims(word))

    def arrow(self, dom, cod, entries) -> Arrow:
        """Build a morphism from a (prod cod) x (prod dom) matrix."""
        dom, cod = tuple(dom), tuple(cod)
        arr = self.sr.array(entries)
        shape = (self.size(cod), self.size(dom))
        if arr.size != shape[0] * shape[1]:
            raise TypeMismatch(f"expected {shape[0]}x{shape[1]} entries, got {arr.size}")
        t = arr.reshape(self.word_dims(cod) + self.word_dims(dom))
        return Arrow(dom, cod, TensorNet.leaf(self.sr, t, self.word_dims(cod), self.word_dims(dom)))

    def matrix(self, f: Arrow) -> np.ndarray:
        return f.data.matrix()

    def identity(self, word):
        word = tuple(word)
        return Arrow(word, word, TensorNet.wires(self.sr, self.word_dims(word), range(len(word))))

    def compose(self, f, g):
        if f.cod != g.dom:
            raise TypeMismatch(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
        return Arrow(f.dom, g.cod, f.data.then(g.data))

    def tensor(self, f, g):
        return Arrow(f.dom + g.dom, f.cod + g.cod, f.data.tensor(g.data))

    def symmetry(self, w, v):
        w, v = tuple(w), tuple(v)
        a, b = len(w), len(v)
        perm = [b + i for i in range(a)] + list(range(b))
        return Arrow(w + v, v + w, TensorNet.wires(self.sr, self.word_dims(w + v), perm))

    def permutation(self, word, perm):
        word = tuple(word)
        out = [None] * len(word)
        for i, j in enumerate(perm):
            out[j] = word[i]
        return Arrow(word, tuple(out), TensorNet.wires(self.sr, self.word_dims(word), perm))

    def permute(self, f, dom_perm, cod_perm):
        dom = [None] * len(f.dom)
        cod = [None] * len(f.cod)
        for i, j in enumerate(dom_perm):
            dom[j] = f.dom[i]
        for i, j in enumerate(cod_perm):
            cod[j] = f.cod[i]
        return Arrow(tuple(dom), tuple(cod), f.data.permuted(dom_perm, cod_perm))

    def trace(self, f, u):
        u = tuple(u)
        k = len(u)
        if f.dom[:k] != u or f.cod[:k] != u:
            raise TypeMismatch(f"{f.dom}->{f.cod} does not start with {u} on both sides")
        return Arrow(f.dom[k:], f.cod[k:], f.data.trace(k))

    def equal(self, f, g):
        return f.dom == g.dom and f.cod == g.cod and self.sr.equal(f.data.tensor_form(), g.data.tensor_form())

    def sample(self, dom, cod, rng):
        dom, cod = tuple(dom), tuple(cod)
        shape = self.word_dims(cod) + self.word_dims(dom)
        t = self.sr.random(rng, shape)
        return Arrow(dom, cod, TensorNet.leaf(self.sr, t, self.word_dims(cod), self.word_dims(dom)))


class TruncatedTraceInstance(MatrixInstance):
    """Deliberately broken: a trace over several strands closes only the first.

    The remaining strands of U are pinned to basis index 0 on both sides.
    Single-strand traces are correct, so this is invisible to axioms that
    never trace over more than one letter at once.
    """

    def trace(self, f, u):
        u = tuple(u)
        if len(u) <= 1:
            return super().trace(f, u)
        rest = u[1:]
        pick = self.sr.zeros((1, self.size(rest)))
        pick[0, 0] = self.sr.one
        col = self.sr.zeros((self.size(rest), 1))
        col[0, 0] = self.sr.one
        inject = self.tensor(self.arrow((), rest, col), self.identity(f.dom[len(u):]))
        project = self.tensor(self.arrow(rest, (), pick), self.identity(f.cod[len(u):]))
        # restrict to U = u[0] (x) rest with rest fixed at index 0
        head = self.identity(u[:1])
        g = self.compose(self.compose(self.tensor(head, inject), f), self.tensor(head, project))
        return super().trace(g, u[:1])


# -- the independent oracle -------------------------------------------------


def point_dims(X: SignedSet, dims: Mapping[str, int]) -> list[int]:
    return [int(dims[p.label]) for p in X]


def matrix_eval_oracle(phi: Cobordism, dims: Mapping[str, int], sr="nat") -> np.ndarray:
    """Phi as a matrix from dom-point indices to cod-point indices.

    Each arc forces equal indices at its two ends, each loop multiplies by
    its dimension.  Rows and columns are row-major multi-indices.
    """
    sr = semiring(sr)
    m = len(phi.dom)
    dd, cd = point_dims(phi.dom, dims), point_dims(phi.cod, dims)
    out = sr.zeros((math.prod(cd), math.prod(dd)))
    weight = sr.one
    for a, k in phi.loops:
        for _ in range(k):
            weight = sr.mul(weight, sr.from_int(dims[a]))
    arc_dims = [int(dims[phi.point(a).label]) for a, _ in phi.arcs]
    for values in itertools.product(*(range(d) for d in arc_dims)):
        idx = [0] * phi.n_points
        for (a, b), v in zip(phi.arcs, values):
            idx[a] = idx[b] = v
        row = _flat_index(idx[m:], cd)
        col = _flat_index(idx[:m], dd)
        out[row, col] = sr.add(out[row, col], weight)
    return out


def _flat_index(idx, shape) -> int:
    n = 0
    for i, d in zip(idx, shape):
        n = n * d + i
    return n


def point_vector(T: MatrixInstance, f: Arrow, X: SignedSet) -> np.ndarray:
    """Flatten f in hom(inp X, outp X) with one axis per point of X, in X's order."""
    X = SignedSet(X)
    T.expect(f, X.inp, X.outp)
    t = f.data.tensor_form()
    n_out = len(X.outp)
    plus = minus = 0
    order = []
    for p in X:
        if p.sign == PLUS:
            order.append(plus)
            plus += 1
        else:
            order.append(n_out + minus)
            minus += 1
    return np.transpose(t, order).reshape(-1) if order else t.reshape(-1)


def from_point_vector(T: MatrixInstance, X: SignedSet, vec) -> Arrow:
    """Inverse of point_vector."""
    X = SignedSet(X)
    shape = point_dims(X, T.dims)
    t = T.sr.array(vec).reshape(shape)
    outs = [i for i, p in enumerate(X) if p.sign == PLUS]
    ins = [i for i, p in enumerate(X) if p.sign == MINUS]
    t = np.transpose(t, outs + ins) if len(X) else t
    return T.arrow(X.inp, X.outp, t.reshape(T.size(X.outp), T.size(X.inp)))


def oracle_action(T: MatrixInstance, phi: Cobordism, f: Arrow) -> np.ndarray:
    """Point vector of P(phi)(f) computed by the oracle matrix."""
    O = matrix_eval_oracle(phi, T.dims, T.sr)
    v = point_vector(T, f, phi.dom)
    if T.sr.name == "bool":
        return (O.astype(np.int64) @ v.astype(np.int64)) > 0
    return O.dot(v)
