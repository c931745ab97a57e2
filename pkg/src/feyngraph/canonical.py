"""Canonical encodings and automorphism counts.

Ribbon graphs are rigid once a single flag is fixed, so a connected
ribbon component is encoded by a breadth-first traversal from a root and
the canonical code is the smallest code over admissible roots.  Ordinary
graphs are handled at the vertex level with colour refinement plus
individualisation; parallel edges and loops then contribute their own
factorial symmetries to the automorphism count.
"""

from __future__ import annotations

from collections import Counter
from math import factorial
from typing import Literal

from .errors import DomainError
from .graphs import OrdinaryGraph, RibbonGraph, _FlagGraph, connected_components, forget_cyclic

Mode = Literal["ribbon", "ordinary"]

__all__ = ["canonical_form", "automorphism_count", "component_code", "Mode"]


def _deco_key(d) -> tuple[str, str]:
    return (d.kind, "" if d.value is None else str(d.value))


# -- ribbon -----------------------------------------------------------------


def _ribbon_code(g: RibbonGraph, root: int) -> tuple:
    """Traversal code of the component containing ``root``."""
    rot, match, owner = g.rotation, g.matching, g.vertex_of
    label = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        f = order[i]
        for nxt in (match[f], rot[f]):
            if nxt not in label:
                label[nxt] = len(order)
                order.append(nxt)
        i += 1
    code = []
    for f in order:
        if owner[f] >= 0:
            kind = ("v",) + _deco_key(g.decorations[owner[f]])
        else:
            side, pos = g.leg_position(f)
            kind = ("leg", side, str(pos))
        code.append((kind, label[match[f]], label[rot[f]]))
    return tuple(code)


def _ribbon_component(g: RibbonGraph) -> tuple[tuple, int]:
    """(code, number of roots attaining it) for a connected ribbon graph."""
    legs = [(0, i, f) for i, f in enumerate(g.in_legs)] + [(1, i, f) for i, f in enumerate(g.out_legs)]
    if legs:
        return _ribbon_code(g, min(legs)[2]), 1
    codes = Counter(_ribbon_code(g, r) for r in range(g.num_flags))
    best = min(codes)
    return best, codes[best]


# -- ordinary ---------------------------------------------------------------


def _ordinary_data(g: _FlagGraph):
    """Initial vertex colours and the multiplicity matrix of a connected graph."""
    n = g.num_vertices
    owner = g.vertex_of
    mult = [[0] * n for _ in range(n)]
    legs: list[list[tuple[str, int]]] = [[] for _ in range(n)]
    for f, h in enumerate(g.matching):
        a, b = owner[f], owner[h]
        if a >= 0 and b >= 0:
            if f < h:
                mult[a][b] += 1
                if a != b:
                    mult[b][a] += 1
        elif a >= 0:
            legs[a].append(g.leg_position(h))
    colours = [
        (_deco_key(d), len(v), tuple(sorted(legs[i])), mult[i][i])
        for i, (v, d) in enumerate(zip(g.vertices, g.decorations))
    ]
    return colours, mult


def _refine(cells: list[int], mult) -> list[int]:
    """Colour refinement to a stable, label-invariant partition."""
    n = len(cells)
    while True:
        sigs = [
            (cells[v], tuple(sorted((cells[u], mult[v][u]) for u in range(n) if mult[v][u] and u != v)))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(cells)):
            return new
        cells = new


def _ordinary_component(g: _FlagGraph) -> tuple[tuple, int]:
    """(code, vertex automorphism count) for a connected ordinary graph."""
    if g.num_vertices == 0:
        ends = tuple(sorted(g.leg_position(f) for f in g.in_legs + g.out_legs))
        return ("strand",) + ends, 1
    colours, mult = _ordinary_data(g)
    n = len(colours)
    ranks = {c: i for i, c in enumerate(sorted(set(colours)))}
    start = _refine([ranks[c] for c in colours], mult)

    best: list = [None, 0]

    def leaf_code(cells):
        order = sorted(range(n), key=lambda v: cells[v])
        return (
            tuple(colours[v] for v in order),
            tuple(mult[order[i]][order[j]] for i in range(n) for j in range(i + 1, n)),
        )

    def search(cells):
        counts = Counter(cells)
        target = min((c for c, k in counts.items() if k > 1), default=None)
        if target is None:
            code = leaf_code(cells)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, 1
            elif code == best[0]:
                best[1] += 1
            return
        for v in range(n):
            if cells[v] != target:
                continue
            # split v off in front of its cell, keeping ranks contiguous
            split = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(cells)]
            search(_refine(split, mult))

    search(start)
    return ("graph",) + best[0], best[1]


def _edge_symmetry(g: _FlagGraph) -> int:
    _, mult = _ordinary_data(g)
    total = 1
    for i, row in enumerate(mult):
        total *= factorial(row[i]) * 2 ** row[i]
        for j in range(i + 1, len(row)):
            total *= factorial(row[j])
    return total


# -- public -----------------------------------------------------------------


def _check_mode(g: _FlagGraph, mode: str) -> _FlagGraph:
    if mode == "ribbon":
        if not isinstance(g, RibbonGraph):
            raise DomainError("ribbon mode needs a RibbonGraph")
        return g
    if mode == "ordinary":
        return forget_cyclic(g)
    raise DomainError(f"unknown mode {mode!r}")


def component_code(g: _FlagGraph, mode: Mode) -> tuple:
    """Isomorphism-invariant code of a connected graph."""
    g = _check_mode(g, mode)
    if g.circles:
        return ("circle",)
    if mode == "ribbon":
        return _ribbon_component(g)[0]
    return _ordinary_component(g)[0]


def canonical_form(g: _FlagGraph, mode: Mode = "ribbon") -> bytes:
    """Byte string equal for two graphs iff they are isomorphic in ``mode``.

    Isomorphisms preserve decorations and the position of every leg; in
    ribbon mode they also preserve the cyclic order at each vertex.
    """
    g = _check_mode(g, mode)
    codes = sorted(component_code(c, mode) for c in connected_components(g) if not c.circles)
    payload = (mode, g.type, g.circles, tuple(codes))
    return repr(payload).encode()


def automorphism_count(g: _FlagGraph, mode: Mode = "ribbon") -> int:
    """Order of the flag-level automorphism group of a closed graph.

    This is the stabiliser of the matching under vertex permutations
    (within each sort) combined with rotations (ribbon) or arbitrary
    permutations (ordinary) of the flags at every vertex.
    """
    g = _check_mode(g, mode)
    if not g.is_closed:
        raise DomainError("automorphisms are only defined for closed graphs")
    if g.circles:
        raise DomainError("automorphisms of free circles are not defined")
    by_code: dict[tuple, list[int]] = {}
    for comp in connected_components(g):
        if mode == "ribbon":
            code, aut = _ribbon_component(comp)
        else:
            code, aut = _ordinary_component(comp)
            aut *= _edge_symmetry(comp)
        by_code.setdefault(code, []).append(aut)
    total = 1
    for auts in by_code.values():
        total *= auts[0] ** len(auts) * factorial(len(auts))
    return total
