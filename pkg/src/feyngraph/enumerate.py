"""Wick pairings and exhaustive generation of closed graphs by valence profile."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .canonical import Mode, automorphism_count, canonical_form
from .errors import DomainError
from .graphs import (
    ORDINARY, Decoration, OrdinaryGraph, RibbonGraph, _FlagGraph,
    b0, connected_components, genus, holes,
)

__all__ = [
    "Pairing",
    "pairings",
    "double_factorial",
    "ValenceProfile",
    "GraphClass",
    "graphs_with_profile",
    "group_order",
    "alpha_coefficient",
    "CatalogEntry",
    "graphs_up_to_order",
    "profiles_up_to",
]


def double_factorial(n: int) -> int:
    """``n!!`` with the convention ``(-1)!! = 0!! = 1``."""
    return prod(range(n, 0, -2)) if n > 0 else 1


@dataclass(frozen=True)
class Pairing:
    """Perfect matching on slots ``0..2n-1``; blocks are sorted pairs."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        flat = sorted(s for b in self.blocks for s in b)
        if flat != list(range(len(flat))) or any(a >= b for a, b in self.blocks):
            raise DomainError("blocks must be increasing pairs partitioning 0..2n-1")

    def as_involution(self) -> tuple[int, ...]:
        inv = [0] * (2 * len(self.blocks))
        for a, b in self.blocks:
            inv[a], inv[b] = b, a
        return tuple(inv)


def _pairings(slots: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not slots:
        yield []
        return
    first, rest = slots[0], slots[1:]
    for k, partner in enumerate(rest):
        for tail in _pairings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + tail


def pairings(m: int) -> Iterator[Pairing]:
    """All perfect matchings of ``m`` slots, lexicographic by first partner."""
    if m < 0 or m % 2:
        raise DomainError(f"cannot pair an odd or negative number of slots ({m})")
    for blocks in _pairings(tuple(range(m))):
        yield Pairing(tuple(blocks))


@dataclass(frozen=True)
class ValenceProfile:
    """Number of vertices of each ``(valence, decoration)`` sort."""

    counts: tuple[tuple[tuple[int, Decoration], int], ...]

    def __init__(self, counts: Mapping[int | tuple[int, Decoration], int] | Iterable = ()):
        items: dict[tuple[int, Decoration], int] = {}
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        for key, n in pairs:
            if isinstance(key, int):
                key = (key, ORDINARY)
            k, deco = key
            if k < 1 or n < 0:
                raise DomainError("valences must be positive and counts nonnegative")
            if n:
                items[(k, deco)] = items.get((k, deco), 0) + n
        object.__setattr__(self, "counts", tuple(sorted(items.items(), key=_sort_key)))

    @classmethod
    def from_list(cls, ls: Iterable[int]) -> ValenceProfile:
        """``(l_1, l_2, ...)`` for undecorated vertices."""
        return cls({i + 1: n for i, n in enumerate(ls)})

    @classmethod
    def of_graph(cls, g: _FlagGraph) -> ValenceProfile:
        return cls(g.vertex_classes())

    @property
    def slots(self) -> int:
        return sum(k * n for (k, _), n in self.counts)

    @property
    def num_vertices(self) -> int:
        return sum(n for _, n in self.counts)

    def __bool__(self) -> bool:
        return bool(self.counts)

    def __str__(self) -> str:
        parts = []
        for (k, d), n in self.counts:
            parts.append(f"{k}:{n}" if d == ORDINARY else f"{k}[{d}]:{n}")
        return " ".join(parts) or "empty"

    def layout(self) -> tuple[tuple[tuple[int, ...], ...], tuple[Decoration, ...]]:
        """Contiguous slot blocks, one per vertex, sorts in profile order."""
        vertices, decos, nxt = [], [], 0
        for (k, d), n in self.counts:
            for _ in range(n):
                vertices.append(tuple(range(nxt, nxt + k)))
                decos.append(d)
                nxt += k
        return tuple(vertices), tuple(decos)


def _sort_key(item):
    (k, d), _ = item
    return (k, d.kind, "" if d.value is None else str(d.value))


def group_order(profile: ValenceProfile, mode: Mode) -> int:
    """``|K|`` for the slot layout of ``profile``."""
    per = (lambda k: k) if mode == "ribbon" else factorial
    return prod(per(k) ** n * factorial(n) for (k, _), n in profile.counts)


@dataclass(frozen=True)
class GraphClass:
    graph: _FlagGraph
    count: int
    form: bytes


def _graph_class(mode: Mode) -> type:
    if mode == "ribbon":
        return RibbonGraph
    if mode == "ordinary":
        return OrdinaryGraph
    raise DomainError(f"unknown mode {mode!r}")


@lru_cache(maxsize=None)
def _classes(profile: ValenceProfile, mode: Mode) -> tuple[GraphClass, ...]:
    if profile.slots % 2:
        return ()
    cls = _graph_class(mode)
    vertices, decos = profile.layout()
    buckets: dict[bytes, list] = {}
    for p in pairings(profile.slots):
        g = cls(vertices, p.as_involution(), decorations=decos)
        key = canonical_form(g, mode)
        if key in buckets:
            buckets[key][1] += 1
        else:
            buckets[key] = [g, 1]
    return tuple(GraphClass(g, n, k) for k, (g, n) in buckets.items())


def graphs_with_profile(profile: ValenceProfile, mode: Mode = "ribbon") -> list[GraphClass]:
    """Isomorphism classes obtained by pairing all slots of ``profile``.

    Each class carries its number of occurrences among the
    ``(slots - 1)!!`` pairings; classes appear in order of first occurrence.
    """
    return list(_classes(profile, mode))


def alpha_coefficient(g: _FlagGraph, profile: ValenceProfile, mode: Mode = "ribbon") -> int:
    """``|K| / |Aut g|``: how many pairings of the layout realise ``g``."""
    if ValenceProfile.of_graph(g) != profile:
        raise DomainError(f"graph does not have profile {profile}")
    order, aut = group_order(profile, mode), automorphism_count(g, mode)
    if order % aut:
        raise AssertionError(f"|Aut| = {aut} does not divide |K| = {order}")
    return order // aut


@dataclass(frozen=True)
class CatalogEntry:
    profile: ValenceProfile
    graph: _FlagGraph
    count: int
    aut: int
    b0: int
    genera: tuple[int, ...] = ()
    holes: tuple[int, ...] = ()

    @property
    def connected(self) -> bool:
        return self.b0 == 1


def profiles_up_to(
    max_slots: int,
    sorts: Iterable[tuple[int, Decoration]],
    min_slots: int = 0,
) -> list[ValenceProfile]:
    """All profiles over the given vertex sorts with an even slot total in range."""
    sorts = sorted(set(sorts), key=lambda s: (s[0], s[1].kind, str(s[1].value)))
    out = []

    def rec(i, remaining, acc):
        if i == len(sorts):
            prof = ValenceProfile(acc)
            if prof.slots % 2 == 0 and prof.slots >= min_slots:
                out.append(prof)
            return
        k = sorts[i][0]
        for n in range(remaining // k + 1):
            rec(i + 1, remaining - n * k, {**acc, sorts[i]: n})

    rec(0, max_slots, {})
    return sorted(out, key=lambda p: (p.slots, str(p)))


def graphs_up_to_order(
    max_total_valence: int,
    mode: Mode = "ribbon",
    decorations: Iterable[Decoration] = (ORDINARY,),
    max_valence: int | None = None,
) -> dict[ValenceProfile, list[CatalogEntry]]:
    """Every closed graph with at most ``max_total_valence`` slots, by profile."""
    top = max_total_valence if max_valence is None else min(max_valence, max_total_valence)
    sorts = [(k, d) for k in range(1, top + 1) for d in decorations]
    catalog = {}
    for prof in profiles_up_to(max_total_valence, sorts):
        entries = []
        for cl in graphs_with_profile(prof, mode):
            g = cl.graph
            comps = connected_components(g)
            gen = hol = ()
            if mode == "ribbon":
                gen = tuple(genus(c) for c in comps)
                hol = tuple(len(holes(c)) for c in comps)
            entries.append(CatalogEntry(prof, g, cl.count, automorphism_count(g, mode), b0(g), gen, hol))
        catalog[prof] = entries
    return catalog
