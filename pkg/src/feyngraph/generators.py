"""Seeded random graphs, tensors and metrics for property checks."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .algebra import Metric, Tensor
from .errors import DegeneracyError
from .graphs import RibbonGraph

__all__ = [
    "random_rational",
    "random_metric",
    "random_spd_metric",
    "random_invariant_tensor",
    "random_graph",
]


def random_rational(rng: random.Random, size: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if q or not nonzero:
            return q


def random_metric(rng: random.Random, dim: int, size: int = 3) -> Metric:
    """Random symmetric nondegenerate rational metric (not necessarily definite)."""
    while True:
        g = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                g[i][j] = g[j][i] = random_rational(rng, size)
        m = Metric(g)
        try:
            m.inverse
        except DegeneracyError:
            continue
        return m


def random_spd_metric(rng: random.Random, dim: int, size: int = 3) -> Metric:
    """``B B^T + I`` for a random rational ``B``: symmetric positive definite."""
    b = [[random_rational(rng, size) for _ in range(dim)] for _ in range(dim)]
    return Metric([[sum(b[i][k] * b[j][k] for k in range(dim)) + (i == j) for j in range(dim)]
                   for i in range(dim)])


def random_invariant_tensor(rng: random.Random, dim: int, arity: int, kind: str, size: int = 3,
                            density: float = 1.0) -> Tensor:
    """Random tensor constant on cyclic (or permutation) orbits of indices."""
    if kind == "cyclic":
        def rep(idx):
            return min(idx[i:] + idx[:i] for i in range(len(idx))) if idx else idx
    else:
        def rep(idx):
            return tuple(sorted(idx))
    values: dict[tuple[int, ...], Fraction] = {}
    entries = {}
    for idx in itertools.product(range(dim), repeat=arity):
        r = rep(idx)
        if r not in values:
            values[r] = random_rational(rng, size) if rng.random() < density else Fraction(0)
        entries[idx] = values[r]
    return Tensor(dim, arity, entries)


def random_graph(rng: random.Random, p: int, q: int, max_vertices: int = 3, max_valence: int = 4,
                 cls=RibbonGraph):
    """Random graph of type ``(p, q)``: random vertices, random perfect matching."""
    while True:
        valences = [rng.randint(1, max_valence) for _ in range(rng.randint(0, max_vertices))]
        if (sum(valences) + p + q) % 2 == 0:
            break
    total = sum(valences) + p + q
    labels = list(range(total))
    rng.shuffle(labels)
    it = iter(labels)
    vertices = [tuple(next(it) for _ in range(k)) for k in valences]
    ins = [next(it) for _ in range(p)]
    outs = [next(it) for _ in range(q)]
    order = list(range(total))
    rng.shuffle(order)
    edges = [(order[i], order[i + 1]) for i in range(0, total, 2)]
    return cls.from_edges(vertices, edges, ins, outs)
