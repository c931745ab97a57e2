"""Graphical calculus: evaluate graphs against a cyclic or symmetric algebra.

Every vertex becomes its tensor with one slot per flag, every internal
edge the Casimir ``g^{ij}``.  Input legs leave a lower index free, output
legs a raised one, so that evaluating a composite equals contracting the
evaluations of its pieces.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from .algebra import Metric, SymAlgebra, Tensor, check_invariance
from .contraction import Node, contract_network
from .errors import DomainError
from .graphs import OrdinaryGraph, RibbonGraph, _FlagGraph

__all__ = [
    "vertex_tensor",
    "network",
    "random_schedule",
    "evaluate_closed",
    "evaluate_open",
    "wdvv_residual",
]


def vertex_tensor(g: _FlagGraph, v: int, algebra: SymAlgebra) -> Tensor:
    """Tensor attached to vertex ``v``; special vertices use the plain family."""
    return algebra.tensor(len(g.vertices[v]), g.decorations[v].tensor_label)


def _check_mode(g: _FlagGraph, algebra: SymAlgebra):
    if isinstance(g, OrdinaryGraph) and algebra.kind == "cyclic":
        raise DomainError("ordinary graphs need a symmetric algebra")
    if not isinstance(g, (RibbonGraph, OrdinaryGraph)):
        raise DomainError("not a graph")


def _matrix_node(labels, arr: np.ndarray) -> Node:
    n = arr.shape[0]
    return Node(tuple(labels), {(i, j): arr[i, j] for i in range(n) for j in range(n) if arr[i, j]})


def _delta(labels, n: int) -> Node:
    return Node(tuple(labels), {(i, i): Fraction(1) for i in range(n)})


def network(g: _FlagGraph, algebra: SymAlgebra) -> tuple[list[Node], tuple, Fraction]:
    """Nodes, output labels and a scalar prefactor (free circles) for ``g``."""
    _check_mode(g, algebra)
    m = algebra.metric
    n = m.dim
    nodes = []
    for v, flags in enumerate(g.vertices):
        t = vertex_tensor(g, v, algebra)
        nodes.append(Node(tuple(("f", f) for f in flags), dict(t.entries)))
    owner = g.vertex_of
    ins, outs = set(g.in_legs), set(g.out_legs)
    for f, h in enumerate(g.matching):
        if f > h:
            continue
        a, b = ("f", f), ("f", h)
        if owner[f] >= 0 and owner[h] >= 0:
            nodes.append(_matrix_node((a, b), m.inverse))
            continue
        if owner[f] < 0 and owner[h] < 0:
            # bare strand: variance of the two ends decides the matrix
            ends = (f in ins) + (h in ins)
            mat = {2: m.g, 0: m.inverse}.get(ends)
            nodes.append(_delta((("leg", f), ("leg", h)), n) if mat is None
                         else _matrix_node((("leg", f), ("leg", h)), mat))
            continue
        end, slot = (f, h) if owner[f] < 0 else (h, f)
        if end in outs:
            nodes.append(_matrix_node((("f", slot), ("leg", end)), m.inverse))
        else:
            nodes.append(_delta((("f", slot), ("leg", end)), n))
    outputs = tuple(("leg", f) for f in g.in_legs + g.out_legs)
    return nodes, outputs, Fraction(n) ** g.circles


def random_schedule(g: _FlagGraph, rng: random.Random | None = None) -> list:
    """A uniformly shuffled elimination order of the internal labels."""
    rng = rng or random.Random(0)
    legs = set(g.in_legs + g.out_legs)
    labels = [("f", f) for f in range(g.num_flags) if f not in legs]
    rng.shuffle(labels)
    return labels


def _evaluate(g: _FlagGraph, algebra: SymAlgebra, schedule) -> tuple[Node, Fraction]:
    nodes, outputs, factor = network(g, algebra)
    return contract_network(nodes, outputs, schedule), factor


def evaluate_closed(g: _FlagGraph, algebra: SymAlgebra, schedule: Sequence | None = None) -> Fraction:
    """``Z(g)`` for a closed graph."""
    if not g.is_closed:
        raise DomainError(f"graph of type {tuple(g.type)} is not closed")
    node, factor = _evaluate(g, algebra, schedule)
    return factor * node.data.get((), Fraction(0))


def evaluate_open(
    g: _FlagGraph,
    algebra: SymAlgebra,
    inputs: Sequence[Sequence] | None = None,
    schedule: Sequence | None = None,
) -> Tensor | Fraction:
    """Value of ``g`` as a tensor with axes ``in_legs + out_legs``.

    With ``inputs`` (one vector per leg, in axis order) the tensor is
    contracted against them and a scalar returned.
    """
    node, factor = _evaluate(g, algebra, schedule)
    arity = len(node.labels)
    t = Tensor(algebra.dim, arity, {k: factor * v for k, v in node.data.items()})
    if inputs is None:
        return t
    if len(inputs) != arity:
        raise DomainError(f"graph has {arity} legs but {len(inputs)} inputs were given")
    vecs = [[Fraction(x) for x in vec] for vec in inputs]
    if any(len(vec) != algebra.dim for vec in vecs):
        raise DomainError("input vectors must have the algebra's dimension")
    total = Fraction(0)
    for idx, v in t.entries.items():
        term = v
        for vec, i in zip(vecs, idx):
            term *= vec[i]
        total += term
    return total


def wdvv_residual(c: Tensor, m: Metric) -> Tensor:
    """``c_{ijm} g^{mn} c_{nkl} - c_{ilm} g^{mn} c_{njk}`` for symmetric ``c``."""
    if c.arity != 3 or c.dim != m.dim:
        raise DomainError("third derivatives must be an arity-3 tensor of the metric's dimension")
    ok, witness = check_invariance(c, "symmetric")
    if not ok:
        raise DomainError(f"third derivatives are not symmetric at {witness}")
    arr = c.dense()
    left = np.einsum("ijm,mn,nkl->ijkl", arr, m.inverse, arr)
    right = np.einsum("ilm,mn,njk->ijkl", arr, m.inverse, arr)
    return Tensor.from_array(left - right)
