"""Text formats for graphs, algebras, vectors and profiles.

Graph files hold one statement per line::

    vertex <vid> cyclic(<flag>,...) [decor=<ordinary|special|label:K|genus:G>]
    edge <flag> <flag>
    in <position> <flag>
    out <position> <flag>
    circles <n>
    graph <ribbon|ordinary>

``set(...)`` in place of ``cyclic(...)`` makes an ordinary graph.  The
``graph`` statement is only needed when there are no vertices to tell.
Algebra files hold::

    dim <n>
    kind <cyclic|symmetric>
    metric <i> <j> <rational>
    tensor k=<k> [label=<name>] <i1> ... <ik> <rational>
    tensor k=<k> [label=<name>]

Indices start at 0.  The short tensor form declares a tensor with no
nonzero entries.  Each tensor entry also sets every entry related to
it by the algebra's symmetry, and each metric entry sets its transpose.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from .algebra import Metric, SymAlgebra, Tensor
from .enumerate import ValenceProfile
from .errors import DomainError, ParseError
from .graphs import Decoration, OrdinaryGraph, RibbonGraph, _FlagGraph

__all__ = [
    "parse_graph",
    "format_graph",
    "parse_algebra",
    "format_algebra",
    "parse_rational",
    "parse_vectors",
    "parse_profile",
]

_VERTEX = re.compile(r"vertex\s+(-?\d+)\s+(cyclic|set)\(([^)]*)\)(?:\s+decor=(\S+))?\s*$")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {s!r}") from None


def _int(s: str, line: int, what: str) -> int:
    try:
        value = int(s)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {s!r}", line) from None
    if value < 0:
        raise ParseError(f"{what} must be nonnegative", line)
    return value


def parse_graph(text: str) -> _FlagGraph:
    vertices: dict[int, tuple[tuple[int, ...], Decoration]] = {}
    kinds = set()
    edges: list[tuple[int, int]] = []
    legs: dict[str, dict[int, int]] = {"in": {}, "out": {}}
    circles = 0
    for n, line in _lines(text):
        word = line.split()[0]
        if word == "vertex":
            m = _VERTEX.match(line)
            if not m:
                raise ParseError("expected 'vertex <vid> cyclic(<flags>) [decor=<d>]'", n)
            vid = int(m.group(1))
            if vid in vertices:
                raise ParseError(f"vertex {vid} declared twice", n)
            flags = tuple(_int(f, n, "flag") for f in m.group(3).split(",") if f.strip())
            try:
                deco = Decoration.parse(m.group(4)) if m.group(4) else Decoration()
            except DomainError as exc:
                raise ParseError(str(exc), n) from None
            vertices[vid] = (flags, deco)
            kinds.add(m.group(2))
        elif word == "edge":
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("expected 'edge <flag> <flag>'", n)
            edges.append((_int(parts[1], n, "flag"), _int(parts[2], n, "flag")))
        elif word in ("in", "out"):
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"expected '{word} <position> <flag>'", n)
            pos = _int(parts[1], n, "position")
            if pos in legs[word]:
                raise ParseError(f"{word} position {pos} used twice", n)
            legs[word][pos] = _int(parts[2], n, "flag")
        elif word == "graph":
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("ribbon", "ordinary"):
                raise ParseError("expected 'graph ribbon' or 'graph ordinary'", n)
            kinds.add("cyclic" if parts[1] == "ribbon" else "set")
        elif word == "circles":
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected 'circles <n>'", n)
            circles = _int(parts[1], n, "circle count")
        else:
            raise ParseError(f"unknown statement {word!r}", n)
    if len(kinds) > 1:
        raise ParseError("cannot mix ribbon and ordinary vertices")
    cls = OrdinaryGraph if kinds == {"set"} else RibbonGraph
    ordered = [vertices[v] for v in sorted(vertices)]
    lists = {}
    for side, table in legs.items():
        if sorted(table) != list(range(len(table))):
            raise ParseError(f"{side} positions must be 0..{len(table) - 1}")
        lists[side] = [table[p] for p in range(len(table))]
    try:
        return cls.from_edges(
            [v for v, _ in ordered], edges, lists["in"], lists["out"], [d for _, d in ordered], circles)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: _FlagGraph) -> str:
    word = "cyclic" if isinstance(g, RibbonGraph) else "set"
    lines = []
    for i, (v, d) in enumerate(zip(g.vertices, g.decorations)):
        deco = "" if d == Decoration() else f" decor={d}"
        lines.append(f"vertex {i} {word}({','.join(map(str, v))}){deco}")
    for f, h in enumerate(g.matching):
        if f < h:
            lines.append(f"edge {f} {h}")
    lines += [f"in {p} {f}" for p, f in enumerate(g.in_legs)]
    lines += [f"out {p} {f}" for p, f in enumerate(g.out_legs)]
    if g.circles:
        lines.append(f"circles {g.circles}")
    if not g.vertices and word == "set":
        lines.insert(0, "graph ordinary")
    return "\n".join(lines) + "\n"


def _orbit(idx: tuple[int, ...], kind: str):
    if kind == "cyclic":
        return {idx[i:] + idx[:i] for i in range(len(idx))} or {idx}
    return set(itertools.permutations(idx))


def parse_algebra(text: str) -> SymAlgebra:
    """Read an algebra file; ``kind`` defaults to ``symmetric``."""
    dim = kind = None
    metric: dict[tuple[int, int], tuple[Fraction, int]] = {}
    raw_tensors: list[tuple[int, int, str | None, tuple[int, ...] | None, Fraction]] = []
    for n, line in _lines(text):
        parts = line.split()
        word = parts[0]
        if word == "dim":
            if len(parts) != 2 or dim is not None:
                raise ParseError("expected a single 'dim <n>'", n)
            dim = _int(parts[1], n, "dimension")
            if dim == 0:
                raise ParseError("dimension must be positive", n)
        elif word == "kind":
            if len(parts) != 2 or parts[1] not in ("cyclic", "symmetric"):
                raise ParseError("expected 'kind cyclic' or 'kind symmetric'", n)
            kind = parts[1]
        elif word == "metric":
            if len(parts) != 4:
                raise ParseError("expected 'metric <i> <j> <rational>'", n)
            i, j = _int(parts[1], n, "index"), _int(parts[2], n, "index")
            v = _rational_at(parts[3], n)
            for key in {(i, j), (j, i)}:
                if key in metric and metric[key][0] != v:
                    raise ParseError(f"metric entry {key} conflicts with line {metric[key][1]}", n)
                metric[key] = (v, n)
        elif word == "tensor":
            if len(parts) < 2 or not parts[1].startswith("k="):
                raise ParseError("expected 'tensor k=<k> [label=<name>] <indices> <rational>'", n)
            k = _int(parts[1][2:], n, "valence")
            rest = parts[2:]
            label = None
            if rest and rest[0].startswith("label="):
                label = rest[0][len("label="):] or None
                rest = rest[1:]
            if not rest:
                raw_tensors.append((n, k, label, None, Fraction(0)))
                continue
            if len(rest) != k + 1:
                raise ParseError(f"tensor k={k} needs {k} indices and a value", n)
            idx = tuple(_int(x, n, "index") for x in rest[:k])
            raw_tensors.append((n, k, label, idx, _rational_at(rest[-1], n)))
        else:
            raise ParseError(f"unknown statement {word!r}", n)
    if dim is None:
        raise ParseError("missing 'dim' statement")
    kind = kind or "symmetric"
    for (i, j), (_, n) in metric.items():
        if i >= dim or j >= dim:
            raise ParseError(f"metric index out of range for dim {dim}", n)
    entries: dict[tuple[int, str | None], dict[tuple[int, ...], tuple[Fraction, int]]] = {}
    for n, k, label, idx, v in raw_tensors:
        if idx is None:
            entries.setdefault((k, label), {})
            continue
        if any(i >= dim for i in idx):
            raise ParseError(f"tensor index out of range for dim {dim}", n)
        table = entries.setdefault((k, label), {})
        for key in _orbit(idx, kind):
            if key in table and table[key][0] != v:
                raise ParseError(
                    f"entry {idx} contradicts line {table[key][1]} under {kind} symmetry", n)
            table[key] = (v, n)
    try:
        m = Metric([[metric.get((i, j), (0, 0))[0] for j in range(dim)] for i in range(dim)])
        tensors = {key: Tensor(dim, key[0], {i: v for i, (v, _) in t.items()}) for key, t in entries.items()}
        return SymAlgebra(m, kind, tensors)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def _rational_at(s: str, line: int) -> Fraction:
    try:
        return parse_rational(s)
    except ParseError as exc:
        raise ParseError(str(exc), line) from None


def format_algebra(a: SymAlgebra) -> str:
    lines = [f"dim {a.dim}", f"kind {a.kind}"]
    for i in range(a.dim):
        for j in range(i, a.dim):
            if a.metric.g[i, j]:
                lines.append(f"metric {i} {j} {a.metric.g[i, j]}")
    for (k, label), t in sorted(a.tensors.items(), key=lambda kv: (kv[0][0], kv[0][1] or "")):
        lab = f" label={label}" if label is not None else ""
        if not t.entries:
            lines.append(f"tensor k={k}{lab}")
        for idx in sorted(t.entries):
            lines.append(f"tensor k={k}{lab} {' '.join(map(str, idx))} {t.entries[idx]}")
    return "\n".join(lines) + "\n"


def parse_vectors(text: str) -> list[list[Fraction]]:
    """``"1,0;0,1/2"`` -> two vectors."""
    return [[parse_rational(x) for x in chunk.split(",")] for chunk in text.split(";") if chunk.strip()]


def parse_profile(text: str) -> ValenceProfile:
    """``"0,2"`` is ``l_1 = 0, l_2 = 2``; ``"2:2,4:1"`` lists valence:count pairs."""
    text = text.strip()
    try:
        if ":" in text:
            pairs = [p.split(":") for p in text.split(",") if p.strip()]
            return ValenceProfile({int(k): int(n) for k, n in pairs})
        return ValenceProfile.from_list(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ParseError(f"cannot read profile {text!r}") from None
