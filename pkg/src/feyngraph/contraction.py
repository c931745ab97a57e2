"""Exact contraction of sparse tensor networks.

A network is a list of nodes, each a tuple of labels plus a sparse map
from index tuples to rationals.  Every label occurs on at most two nodes;
a label on two nodes is summed over, a label on one node is free.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = ["Node", "contract_pair", "contract_network"]

Label = object


@dataclass
class Node:
    labels: tuple
    data: dict[tuple, Fraction]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("a node may not repeat a label")


def contract_pair(a: Node, b: Node) -> Node:
    """Sum over the labels shared by ``a`` and ``b`` (outer product if none)."""
    shared = [l for l in a.labels if l in b.labels]
    a_pos = [a.labels.index(l) for l in shared]
    b_pos = [b.labels.index(l) for l in shared]
    a_keep = [i for i, l in enumerate(a.labels) if l not in shared]
    b_keep = [i for i, l in enumerate(b.labels) if l not in shared]
    index: dict[tuple, list[tuple[tuple, Fraction]]] = {}
    for idx, v in b.data.items():
        index.setdefault(tuple(idx[i] for i in b_pos), []).append((tuple(idx[i] for i in b_keep), v))
    out: dict[tuple, Fraction] = {}
    for idx, v in a.data.items():
        matches = index.get(tuple(idx[i] for i in a_pos))
        if not matches:
            continue
        head = tuple(idx[i] for i in a_keep)
        for tail, w in matches:
            key = head + tail
            out[key] = out.get(key, 0) + v * w
    labels = tuple(a.labels[i] for i in a_keep) + tuple(b.labels[i] for i in b_keep)
    return Node(labels, {k: v for k, v in out.items() if v})


def _greedy_pick(nodes: list[Node]) -> tuple[int, int]:
    best = None
    for i in range(len(nodes)):
        li = set(nodes[i].labels)
        for j in range(i + 1, len(nodes)):
            lj = set(nodes[j].labels)
            shared = len(li & lj)
            rank = len(li) + len(lj) - 2 * shared
            key = (shared == 0, rank, i, j)
            if best is None or key < best:
                best = key
    return best[2], best[3]


def contract_network(
    nodes: Sequence[Node],
    outputs: Sequence[Label] = (),
    schedule: Sequence[Label] | None = None,
) -> Node:
    """Contract every internal label; the result carries ``outputs`` in order.

    ``schedule`` lists internal labels in elimination order; when omitted
    the pair whose product has the smallest rank is contracted first.
    """
    nodes = list(nodes)
    seen: dict[Label, int] = {}
    for n in nodes:
        for l in n.labels:
            seen[l] = seen.get(l, 0) + 1
    if any(c > 2 for c in seen.values()):
        raise DomainError("a label occurs on more than two nodes")
    free = {l for l, c in seen.items() if c == 1}
    if free != set(outputs) or len(outputs) != len(set(outputs)):
        raise DomainError("free labels do not match the requested outputs")

    if schedule is not None:
        for label in schedule:
            holders = [i for i, n in enumerate(nodes) if label in n.labels]
            if len(holders) == 2:
                i, j = holders
                merged = contract_pair(nodes[i], nodes[j])
                nodes = [n for k, n in enumerate(nodes) if k not in (i, j)] + [merged]
    while len(nodes) > 1:
        i, j = _greedy_pick(nodes)
        merged = contract_pair(nodes[i], nodes[j])
        nodes = [n for k, n in enumerate(nodes) if k not in (i, j)] + [merged]

    result = nodes[0] if nodes else Node((), {(): Fraction(1)})
    perm = [result.labels.index(l) for l in outputs]
    return Node(tuple(outputs), {tuple(k[p] for p in perm): v for k, v in result.data.items()})
