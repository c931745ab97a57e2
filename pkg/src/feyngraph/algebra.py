"""Metrics, tensors, and cyclic/symmetric algebras over the rationals."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import cached_property
from typing import Literal

import numpy as np

from .errors import ConfigurationError, DegeneracyError, DomainError

Kind = Literal["cyclic", "symmetric"]
Index = tuple[int, ...]
Poly = dict[Index, Fraction]

__all__ = [
    "Tensor",
    "Metric",
    "SymAlgebra",
    "metric_inverse",
    "casimir",
    "check_invariance",
    "rotate_tensor",
    "lower_tensor",
    "gaussian_moment",
    "tensor_polynomial",
    "poly_mul",
    "poly_pow",
    "poly_expectation",
    "trace_tensor",
]


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Tensor:
    """Multilinear coefficients ``T[i_1, ..., i_r]`` with indices in ``0..dim-1``.

    Only nonzero entries are stored; :meth:`dense` gives the full array.
    """

    def __init__(self, dim: int, arity: int, entries: Mapping[Index, object] = ()):
        if dim < 1 or arity < 0:
            raise DomainError("tensor needs dim >= 1 and arity >= 0")
        self.dim, self.arity = dim, arity
        clean: dict[Index, Fraction] = {}
        for idx, val in dict(entries).items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != arity or any(not 0 <= i < dim for i in idx):
                raise DomainError(f"index {idx} out of range for dim {dim}, arity {arity}")
            val = _q(val)
            if val:
                clean[idx] = val
        self.entries = clean

    @classmethod
    def from_array(cls, array) -> Tensor:
        arr = np.asarray(array, dtype=object)
        dim = arr.shape[0] if arr.ndim else 1
        if any(s != dim for s in arr.shape):
            raise DomainError("tensor arrays must be cubical")
        return cls(dim, arr.ndim, {idx: arr[idx] for idx in np.ndindex(arr.shape)})

    @classmethod
    def from_function(cls, dim: int, arity: int, fn) -> Tensor:
        return cls(dim, arity, {idx: fn(idx) for idx in itertools.product(range(dim), repeat=arity)})

    def __getitem__(self, idx: Index) -> Fraction:
        return self.entries.get(tuple(idx), Fraction(0))

    def dense(self) -> np.ndarray:
        arr = np.full((self.dim,) * self.arity, Fraction(0), dtype=object)
        for idx, v in self.entries.items():
            arr[idx] = v
        return arr

    def permute(self, perm: Sequence[int]) -> Tensor:
        """Tensor whose slot ``j`` is slot ``perm[j]`` of this one."""
        return Tensor(self.dim, self.arity,
                      {tuple(idx[perm[j]] for j in range(self.arity)): v for idx, v in self.entries.items()})

    def scale(self, c) -> Tensor:
        c = _q(c)
        return Tensor(self.dim, self.arity, {k: c * v for k, v in self.entries.items()})

    def __add__(self, other: Tensor) -> Tensor:
        if (self.dim, self.arity) != (other.dim, other.arity):
            raise DomainError("cannot add tensors of different shapes")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return Tensor(self.dim, self.arity, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor) and self.dim == other.dim
                and self.arity == other.arity and self.entries == other.entries)

    def __hash__(self):
        return hash((self.dim, self.arity, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"Tensor(dim={self.dim}, arity={self.arity}, nnz={len(self.entries)})"


class Metric:
    """Symmetric bilinear form ``g_ij`` on a ``dim``-dimensional space."""

    def __init__(self, g):
        arr = np.array([[_q(x) for x in row] for row in g], dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise DomainError("metric must be a nonempty square matrix")
        if any(arr[i, j] != arr[j, i] for i in range(len(arr)) for j in range(i)):
            raise DomainError("metric must be symmetric")
        self.g = arr
        self.dim = arr.shape[0]
        self._moments: dict[Index, Fraction] = {(): Fraction(1)}

    @classmethod
    def identity(cls, dim: int) -> Metric:
        return cls([[int(i == j) for j in range(dim)] for i in range(dim)])

    @classmethod
    def diagonal(cls, values: Iterable) -> Metric:
        vals = list(values)
        return cls([[vals[i] if i == j else 0 for j in range(len(vals))] for i in range(len(vals))])

    def __eq__(self, other) -> bool:
        return isinstance(other, Metric) and self.dim == other.dim and bool((self.g == other.g).all())

    def __hash__(self):
        return hash(tuple(self.g.flat))

    def __repr__(self) -> str:
        return f"Metric({[[str(x) for x in row] for row in self.g]})"

    @cached_property
    def inverse(self) -> np.ndarray:
        return _gauss_jordan_inverse(self.g)

    def scaled(self, c) -> Metric:
        return Metric(self.g * _q(c))

    def moment(self, indices: Iterable[int]) -> Fraction:
        """``<v^{i_1} ... v^{i_m}>``, memoised on the sorted index multiset."""
        key = tuple(sorted(indices))
        if key in self._moments:
            return self._moments[key]
        if len(key) % 2:
            return Fraction(0)
        inv = self.inverse
        first, rest = key[0], key[1:]
        total = Fraction(0)
        for k, j in enumerate(rest):
            if k and rest[k - 1] == j:
                continue
            c = inv[first, j]
            if c:
                mult = sum(1 for x in rest if x == j)
                total += mult * c * self.moment(rest[:k] + rest[k + 1:])
        self._moments[key] = total
        return total


def _gauss_jordan_inverse(g: np.ndarray) -> np.ndarray:
    n = g.shape[0]
    a = [[_q(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(g)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DegeneracyError("metric is degenerate")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return np.array([row[n:] for row in a], dtype=object)


def metric_inverse(m: Metric) -> np.ndarray:
    """Exact ``g^{ij}``; raises :class:`DegeneracyError` for singular ``g``."""
    return m.inverse


def casimir(m: Metric) -> Tensor:
    """The element ``sum g^{ij} e_i (x) e_j``."""
    return Tensor.from_array(m.inverse)


def _rotations(idx: Index):
    return idx[-1:] + idx[:-1], idx[1:] + idx[:1]


def check_invariance(t: Tensor, kind: Kind) -> tuple[bool, Index | None]:
    """Test cyclic or full symmetric invariance; on failure return a witness index."""
    if kind not in ("cyclic", "symmetric"):
        raise DomainError(f"unknown invariance kind {kind!r}")
    if t.arity < 2:
        return True, None
    for idx in sorted(t.entries):
        v = t.entries[idx]
        if kind == "cyclic":
            moved = _rotations(idx)
        else:
            moved = [idx[:i] + (idx[i + 1], idx[i]) + idx[i + 2:] for i in range(t.arity - 1)]
        for other in moved:
            if t[other] != v:
                return False, idx
    return True, None


def _raise_slots(t: Tensor, m: Metric, slots: Sequence[int]) -> Tensor:
    arr = t.dense()
    inv = m.inverse
    for s in slots:
        arr = np.moveaxis(np.tensordot(arr, inv, axes=([s], [0])), -1, s)
    return Tensor.from_array(arr) if t.arity else t


def rotate_tensor(t: Tensor, m: Metric, p: int, path: str = "right") -> Tensor:
    """Mixed-variance form ``T_{p, r-p}``: ``p`` input slots then ``r-p`` outputs.

    ``path="right"`` bends the trailing slots up on the right, so outputs
    are slots ``r-1, ..., p``; ``path="left"`` bends the leading slots up
    on the left, leaving slots ``q..r-1`` as inputs and ``q-1, ..., 0`` as
    outputs.  The two agree for cyclic tensors.  Outputs carry raised
    indices.
    """
    r = t.arity
    if not 0 <= p <= r:
        raise DomainError(f"p={p} must lie in 0..{r}")
    if t.dim != m.dim:
        raise DomainError("tensor and metric dimensions differ")
    q = r - p
    if path == "right":
        raised = _raise_slots(t, m, range(p, r))
        order = list(range(p)) + list(range(r - 1, p - 1, -1))
    elif path == "left":
        raised = _raise_slots(t, m, range(q))
        order = list(range(q, r)) + list(range(q - 1, -1, -1))
    else:
        raise DomainError(f"unknown rotation path {path!r}")
    return raised.permute(order)


def lower_tensor(t: Tensor, m: Metric, p: int) -> Tensor:
    """Inverse of ``rotate_tensor(., m, p, "right")``."""
    r = t.arity
    if not 0 <= p <= r:
        raise DomainError(f"p={p} must lie in 0..{r}")
    arr = t.dense()
    for s in range(p, r):
        arr = np.moveaxis(np.tensordot(arr, m.g, axes=([s], [0])), -1, s)
    lowered = Tensor.from_array(arr) if r else t
    order = list(range(p)) + list(range(r - 1, p - 1, -1))
    return lowered.permute(order)


def gaussian_moment(indices: Iterable[int], m: Metric) -> Fraction:
    """``<v^{i_1} ... v^{i_m}>`` for the Gaussian measure of ``m``."""
    indices = tuple(indices)
    if any(not 0 <= i < m.dim for i in indices):
        raise DomainError("moment index out of range")
    return m.moment(indices)


# -- polynomials in the coordinates v^i --------------------------------------


def tensor_polynomial(t: Tensor, coefficient=1) -> Poly:
    """``coefficient * T(v, ..., v)`` as a map sorted-exponent-tuple -> value."""
    c = _q(coefficient)
    out: Poly = {}
    for idx, v in t.entries.items():
        key = tuple(sorted(idx))
        out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(sorted(ka + kb))
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def poly_pow(a: Poly, n: int) -> Poly:
    out: Poly = {(): Fraction(1)}
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def poly_expectation(p: Poly, m: Metric) -> Fraction:
    return sum((v * m.moment(k) for k, v in p.items()), Fraction(0))


def trace_tensor(n: int, k: int) -> Tensor:
    """``tr(X_1 ... X_k)`` on ``n x n`` matrices in the matrix-unit basis ``E_ab -> a*n+b``."""
    entries = {}
    for cyc in itertools.product(range(n), repeat=k):
        entries[tuple(cyc[i] * n + cyc[(i + 1) % k] for i in range(k))] = 1
    return Tensor(n * n, k, entries)


class SymAlgebra:
    """A metric together with a family of cyclic or symmetric tensors.

    Tensors are keyed by ``(valence, label)`` where ``label`` is ``None``
    for the undecorated family.
    """

    def __init__(self, metric: Metric, kind: Kind,
                 tensors: Mapping[tuple[int, str | None] | int, Tensor] = ()):
        if kind not in ("cyclic", "symmetric"):
            raise DomainError(f"unknown algebra kind {kind!r}")
        metric.inverse  # fail early on degenerate metrics
        self.metric, self.kind = metric, kind
        self.tensors: dict[tuple[int, str | None], Tensor] = {}
        for key, t in dict(tensors).items():
            key = (key, None) if isinstance(key, int) else key
            k, label = key
            if t.arity != k or t.dim != metric.dim:
                raise DomainError(f"tensor {key} has arity {t.arity} and dim {t.dim}")
            ok, witness = check_invariance(t, kind)
            if not ok:
                raise DomainError(f"tensor {key} is not {kind}: fails at {witness}")
            self.tensors[(k, label)] = t

    @property
    def dim(self) -> int:
        return self.metric.dim

    def tensor(self, k: int, label: str | None = None) -> Tensor:
        try:
            return self.tensors[(k, label)]
        except KeyError:
            name = f"T_{k}" if label is None else f"T_{k}[{label}]"
            raise ConfigurationError(f"algebra has no tensor {name}") from None

    def with_tensors(self, tensors: Mapping, kind: Kind | None = None) -> SymAlgebra:
        merged = dict(self.tensors)
        merged.update({((k, None) if isinstance(k, int) else k): t for k, t in tensors.items()})
        return SymAlgebra(self.metric, kind or self.kind, merged)

    def __repr__(self) -> str:
        keys = ", ".join(f"{k}" if l is None else f"{k}[{l}]" for k, l in sorted(self.tensors, key=str))
        return f"SymAlgebra(dim={self.dim}, kind={self.kind}, tensors=[{keys}])"
