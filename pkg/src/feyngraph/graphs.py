"""Ribbon and ordinary graphs with legs, stored as combinatorial maps.

A graph is a set of flags (half-edges) ``0..H-1``.  Vertex-attached flags
are grouped into vertices; for a :class:`RibbonGraph` the tuple order of a
vertex is its cyclic order, for an :class:`OrdinaryGraph` it carries no
meaning and is kept sorted.  The remaining flags are *leg-ends*: the
endpoints of the graph, each listed in exactly one of ``in_legs`` or
``out_legs``.  ``matching`` is a fixed-point-free involution on all flags:

* vertex flag <-> vertex flag is an internal edge,
* vertex flag <-> leg-end is a leg,
* leg-end <-> leg-end is a bare strand.

Closed strands produced by composition carry no flags at all and are
counted in ``circles``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import CompositionError, DomainError

__all__ = [
    "Decoration",
    "ORDINARY",
    "SPECIAL",
    "GraphType",
    "RibbonGraph",
    "OrdinaryGraph",
    "compose",
    "tensor",
    "connected_components",
    "b0",
    "holes",
    "edge_hole_incidence",
    "genus",
    "modular_genus",
    "forget_cyclic",
    "empty_graph",
    "strand",
    "cup",
    "cap",
    "corolla",
]

_DECORATION_KINDS = ("ordinary", "special", "label", "genus")


@dataclass(frozen=True, order=True)
class Decoration:
    """Vertex sort.  ``label`` carries a string, ``genus`` a natural number."""

    kind: str = "ordinary"
    value: str | int | None = None

    def __post_init__(self):
        if self.kind not in _DECORATION_KINDS:
            raise DomainError(f"unknown decoration kind {self.kind!r}")
        if self.kind in ("ordinary", "special"):
            if self.value is not None:
                raise DomainError(f"decoration {self.kind!r} takes no value")
        elif self.kind == "genus":
            if not isinstance(self.value, int) or self.value < 0:
                raise DomainError("genus decoration needs a natural number")
        elif not isinstance(self.value, str) or not self.value:
            raise DomainError("label decoration needs a nonempty string")

    @classmethod
    def parse(cls, text: str) -> Decoration:
        kind, _, value = text.partition(":")
        if kind == "genus":
            try:
                return cls("genus", int(value))
            except ValueError:
                raise DomainError(f"bad genus decoration {text!r}") from None
        if kind == "label":
            return cls("label", value)
        if value:
            raise DomainError(f"decoration {kind!r} takes no value")
        return cls(kind)

    def __str__(self) -> str:
        if self.value is None:
            return self.kind
        return f"{self.kind}:{self.value}"

    @property
    def tensor_label(self) -> str | None:
        """Key under which an algebra stores the tensor for this sort."""
        if self.kind in ("ordinary", "special"):
            return None
        if self.kind == "label":
            return str(self.value)
        return f"genus:{self.value}"


ORDINARY = Decoration()
SPECIAL = Decoration("special")


class GraphType(NamedTuple):
    p: int
    q: int


@dataclass(frozen=True)
class _FlagGraph:
    vertices: tuple[tuple[int, ...], ...]
    matching: tuple[int, ...]
    in_legs: tuple[int, ...] = ()
    out_legs: tuple[int, ...] = ()
    decorations: tuple[Decoration, ...] = ()
    circles: int = 0
    _cyclic = True

    def __post_init__(self):
        verts = tuple(tuple(int(f) for f in v) for v in self.vertices)
        if not self._cyclic:
            verts = tuple(tuple(sorted(v)) for v in verts)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "matching", tuple(int(f) for f in self.matching))
        object.__setattr__(self, "in_legs", tuple(int(f) for f in self.in_legs))
        object.__setattr__(self, "out_legs", tuple(int(f) for f in self.out_legs))
        decos = tuple(self.decorations) or (ORDINARY,) * len(verts)
        object.__setattr__(self, "decorations", decos)
        self._validate()

    def _validate(self):
        n = len(self.matching)
        seen = [f for v in self.vertices for f in v] + list(self.in_legs) + list(self.out_legs)
        if sorted(seen) != list(range(n)):
            raise DomainError("flags must be exactly 0..H-1, each in one vertex or leg list")
        for f, g in enumerate(self.matching):
            if not 0 <= g < n or g == f or self.matching[g] != f:
                raise DomainError(f"matching is not a fixed-point-free involution at flag {f}")
        if len(self.decorations) != len(self.vertices):
            raise DomainError("one decoration per vertex required")
        if any(not isinstance(d, Decoration) for d in self.decorations):
            raise DomainError("decorations must be Decoration instances")
        if any(len(v) == 0 for v in self.vertices):
            raise DomainError("vertices of valence 0 are not supported")
        if self.circles < 0:
            raise DomainError("negative circle count")

    # -- basic structure -------------------------------------------------

    @property
    def num_flags(self) -> int:
        return len(self.matching)

    @property
    def type(self) -> GraphType:
        return GraphType(len(self.in_legs), len(self.out_legs))

    @property
    def is_closed(self) -> bool:
        return not self.in_legs and not self.out_legs

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Vertex index of every flag, ``-1`` for leg-ends."""
        owner = [-1] * self.num_flags
        for i, v in enumerate(self.vertices):
            for f in v:
                owner[f] = i
        return tuple(owner)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Internal edges as ``(a, b)`` flag pairs with ``a < b``."""
        owner = self.vertex_of
        return tuple(
            (f, g) for f, g in enumerate(self.matching)
            if f < g and owner[f] >= 0 and owner[g] >= 0
        )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def valences(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.vertices)

    def vertex_classes(self) -> dict[tuple[int, Decoration], int]:
        """Count of vertices per ``(valence, decoration)``."""
        counts: dict[tuple[int, Decoration], int] = {}
        for v, d in zip(self.vertices, self.decorations):
            counts[(len(v), d)] = counts.get((len(v), d), 0) + 1
        return counts

    def leg_position(self, flag: int) -> tuple[str, int] | None:
        if flag in self.in_legs:
            return ("in", self.in_legs.index(flag))
        if flag in self.out_legs:
            return ("out", self.out_legs.index(flag))
        return None

    def relabel(self, perm: Sequence[int]):
        """Rename flag ``f`` to ``perm[f]``; returns an equal-up-to-labels graph."""
        perm = list(perm)
        if sorted(perm) != list(range(self.num_flags)):
            raise DomainError("relabeling must be a permutation of the flags")
        matching = [0] * self.num_flags
        for f, g in enumerate(self.matching):
            matching[perm[f]] = perm[g]
        return type(self)(
            vertices=tuple(tuple(perm[f] for f in v) for v in self.vertices),
            matching=tuple(matching),
            in_legs=tuple(perm[f] for f in self.in_legs),
            out_legs=tuple(perm[f] for f in self.out_legs),
            decorations=self.decorations,
            circles=self.circles,
        )

    def permute_vertices(self, order: Sequence[int]):
        """Reorder the vertex list (flags untouched)."""
        return type(self)(
            vertices=tuple(self.vertices[i] for i in order),
            matching=self.matching,
            in_legs=self.in_legs,
            out_legs=self.out_legs,
            decorations=tuple(self.decorations[i] for i in order),
            circles=self.circles,
        )

    def with_decorations(self, decorations: Sequence[Decoration]):
        return type(self)(
            self.vertices, self.matching, self.in_legs, self.out_legs,
            tuple(decorations), self.circles,
        )

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[Iterable[int]],
        edges: Iterable[tuple[int, int]],
        in_legs: Iterable[int] = (),
        out_legs: Iterable[int] = (),
        decorations: Iterable[Decoration] = (),
        circles: int = 0,
    ):
        vertices = tuple(tuple(v) for v in vertices)
        in_legs, out_legs = tuple(in_legs), tuple(out_legs)
        n = sum(len(v) for v in vertices) + len(in_legs) + len(out_legs)
        matching = [-1] * n
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or matching[a] != -1 or matching[b] != -1:
                raise DomainError(f"bad or repeated edge ({a}, {b})")
            matching[a], matching[b] = b, a
        if -1 in matching:
            raise DomainError(f"flag {matching.index(-1)} is not matched")
        return cls(vertices, tuple(matching), in_legs, out_legs, tuple(decorations), circles)


@dataclass(frozen=True)
class RibbonGraph(_FlagGraph):
    """Graph with a cyclic order on the flags at every vertex."""

    _cyclic = True

    @cached_property
    def rotation(self) -> tuple[int, ...]:
        """Successor of each flag in its vertex's cyclic order; leg-ends are fixed."""
        rot = list(range(self.num_flags))
        for v in self.vertices:
            for i, f in enumerate(v):
                rot[f] = v[(i + 1) % len(v)]
        return tuple(rot)


@dataclass(frozen=True)
class OrdinaryGraph(_FlagGraph):
    """Graph whose vertices are unordered flag sets."""

    _cyclic = False


# -- PROP structure ---------------------------------------------------------


def _same_kind(a: _FlagGraph, b: _FlagGraph) -> type:
    if type(a) is not type(b):
        raise DomainError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    return type(a)


def compose(top: _FlagGraph, bottom: _FlagGraph):
    """Stack ``top`` (type ``(q, r)``) on ``bottom`` (type ``(p, q)``).

    The i-th output leg-end of ``bottom`` is welded to the i-th input
    leg-end of ``top``; both leg-ends disappear and the strands through
    them are spliced.  Strands that close up on themselves become circles.
    """
    cls = _same_kind(top, bottom)
    if len(top.in_legs) != len(bottom.out_legs):
        raise CompositionError(
            f"cannot compose: top has {len(top.in_legs)} inputs, "
            f"bottom has {len(bottom.out_legs)} outputs"
        )
    hb = bottom.num_flags
    match = list(bottom.matching) + [g + hb for g in top.matching]
    weld: dict[int, int] = {}
    for o, i in zip(bottom.out_legs, top.in_legs):
        weld[o], weld[i + hb] = i + hb, o
    total = len(match)
    kept = [f for f in range(total) if f not in weld]
    new_index = {f: k for k, f in enumerate(kept)}

    visited: set[int] = set()
    new_match = [0] * len(kept)
    for f in kept:
        x = match[f]
        while x in weld:
            visited.add(x)
            visited.add(weld[x])
            x = match[weld[x]]
        new_match[new_index[f]] = new_index[x]

    new_circles = 0
    for x in weld:
        if x in visited:
            continue
        new_circles += 1
        y = x
        while y not in visited:
            visited.add(y)
            visited.add(weld[y])
            y = match[weld[y]]

    vertices = [tuple(new_index[f] for f in v) for v in bottom.vertices]
    vertices += [tuple(new_index[f + hb] for f in v) for v in top.vertices]
    return cls(
        vertices=tuple(vertices),
        matching=tuple(new_match),
        in_legs=tuple(new_index[f] for f in bottom.in_legs),
        out_legs=tuple(new_index[f + hb] for f in top.out_legs),
        decorations=bottom.decorations + top.decorations,
        circles=bottom.circles + top.circles + new_circles,
    )


def tensor(left: _FlagGraph, right: _FlagGraph):
    """Juxtapose two graphs; legs of ``left`` come first."""
    cls = _same_kind(left, right)
    h = left.num_flags
    return cls(
        vertices=left.vertices + tuple(tuple(f + h for f in v) for v in right.vertices),
        matching=left.matching + tuple(g + h for g in right.matching),
        in_legs=left.in_legs + tuple(f + h for f in right.in_legs),
        out_legs=left.out_legs + tuple(f + h for f in right.out_legs),
        decorations=left.decorations + right.decorations,
        circles=left.circles + right.circles,
    )


# -- topology ---------------------------------------------------------------


def _flag_classes(graph: _FlagGraph) -> list[list[int]]:
    parent = list(range(graph.num_flags))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for v in graph.vertices:
        for f in v[1:]:
            union(v[0], f)
    for f, g in enumerate(graph.matching):
        union(f, g)
    classes: dict[int, list[int]] = {}
    for f in range(graph.num_flags):
        classes.setdefault(find(f), []).append(f)
    return [classes[k] for k in sorted(classes)]


def connected_components(graph: _FlagGraph) -> list:
    """Connected pieces, ordered by smallest flag; each free circle is its own piece."""
    cls = type(graph)
    out = []
    for flags in _flag_classes(graph):
        index = {f: k for k, f in enumerate(flags)}
        members = set(flags)
        vids = [i for i, v in enumerate(graph.vertices) if v[0] in members]
        out.append(cls(
            vertices=tuple(tuple(index[f] for f in graph.vertices[i]) for i in vids),
            matching=tuple(index[graph.matching[f]] for f in flags),
            in_legs=tuple(index[f] for f in graph.in_legs if f in members),
            out_legs=tuple(index[f] for f in graph.out_legs if f in members),
            decorations=tuple(graph.decorations[i] for i in vids),
        ))
    out.extend(cls((), (), circles=1) for _ in range(graph.circles))
    return out


def b0(graph: _FlagGraph) -> int:
    """Number of connected components."""
    return len(_flag_classes(graph)) + graph.circles


def _require_closed(graph: _FlagGraph, what: str):
    if not graph.is_closed:
        raise DomainError(f"{what} is only defined for closed graphs (type (0,0))")


def holes(graph: RibbonGraph) -> list[tuple[int, ...]]:
    """Boundary cycles of the fattened surface.

    Holes are the orbits of ``f -> rotation(matching(f))``; each cycle is
    listed from its smallest flag.  A free circle fattens to an annulus and
    contributes two flagless holes ``()``.
    """
    if not isinstance(graph, RibbonGraph):
        raise DomainError("holes need a ribbon graph")
    _require_closed(graph, "holes")
    rot, match = graph.rotation, graph.matching
    seen = [False] * graph.num_flags
    cycles = []
    for start in range(graph.num_flags):
        if seen[start]:
            continue
        cycle = []
        f = start
        while not seen[f]:
            seen[f] = True
            cycle.append(f)
            f = rot[match[f]]
        cycles.append(tuple(cycle))
    cycles.extend(() for _ in range(2 * graph.circles))
    return cycles


def edge_hole_incidence(graph: RibbonGraph) -> list[tuple[tuple[int, int], int, int]]:
    """For each internal edge ``(a, b)``: the indices (into :func:`holes`) of the
    holes running along its two sides.  The two may coincide."""
    cycles = holes(graph)
    hole_of = {}
    for h, cycle in enumerate(cycles):
        for f in cycle:
            hole_of[f] = h
    return [((a, b), hole_of[a], hole_of[b]) for a, b in graph.edges]


def genus(graph: RibbonGraph) -> int:
    """Genus of the fattened surface of a closed connected ribbon graph."""
    if b0(graph) != 1:
        raise DomainError("genus needs a connected graph")
    chi = graph.num_vertices - graph.num_edges + len(holes(graph))
    if chi % 2 or chi > 2:
        raise AssertionError(f"Euler characteristic {chi} is not 2-2g")
    return (2 - chi) // 2


def modular_genus(graph: _FlagGraph) -> int:
    """Vertex genera plus first Betti number.

    Every vertex must be ``genus``-decorated, except univalent ``special``
    vertices which stand for legs and contribute no genus.
    """
    _require_closed(graph, "modular genus")
    total = 0
    for v, d in zip(graph.vertices, graph.decorations):
        if d.kind == "genus":
            total += d.value
        elif not (d.kind == "special" and len(v) == 1):
            raise DomainError(f"vertex with decoration {d} has no genus")
    betti = graph.num_edges - graph.num_vertices + b0(graph)
    return total + betti


def forget_cyclic(graph: _FlagGraph) -> OrdinaryGraph:
    """Drop the cyclic orders; flag labels are preserved."""
    if isinstance(graph, OrdinaryGraph):
        return graph
    return OrdinaryGraph(
        graph.vertices, graph.matching, graph.in_legs, graph.out_legs,
        graph.decorations, graph.circles,
    )


# -- small building blocks --------------------------------------------------


def empty_graph(cls=RibbonGraph):
    return cls((), ())


def strand(cls=RibbonGraph):
    """Identity on one strand, type (1,1)."""
    return cls((), (1, 0), in_legs=(0,), out_legs=(1,))


def cup(cls=RibbonGraph):
    """Bare strand with two outputs, type (0,2)."""
    return cls((), (1, 0), out_legs=(0, 1))


def cap(cls=RibbonGraph):
    """Bare strand with two inputs, type (2,0)."""
    return cls((), (1, 0), in_legs=(0, 1))


def corolla(valence: int, inputs: int | None = None, cls=RibbonGraph,
            decoration: Decoration = ORDINARY):
    """One vertex with ``valence`` legs; the first ``inputs`` in cyclic order are
    inputs and the remaining ones outputs (listed left to right, which is the
    reverse of the cyclic order)."""
    if inputs is None:
        inputs = valence
    if not 0 <= inputs <= valence:
        raise DomainError("inputs must lie in 0..valence")
    vertex = tuple(range(valence))
    legs = tuple(range(valence, 2 * valence))
    matching = list(legs) + list(vertex)
    outs = tuple(reversed(legs[inputs:]))
    return cls((vertex,), tuple(matching), legs[:inputs], outs, (decoration,))
