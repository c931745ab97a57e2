"""Graph expansions of Gaussian integrals and their Taylor-Wick oracles.

Every computation here exists in two independent forms.  The graph side
sums ``Z(G) / |Aut G|`` over catalogs of closed graphs; the oracle side
expands the integrand as a polynomial and integrates it with Gaussian
moments, never building a graph.  Public functions that promise an
identity compute both sides and raise :class:`InvariantViolation` if they
disagree.

Vertices come in *sorts*: a valence, a decoration that keeps sorts apart
under isomorphism, the tensor they evaluate to, and the monomial they
contribute to the series.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .algebra import Metric, SymAlgebra, Tensor, poly_expectation, poly_mul, poly_pow, tensor_polynomial
from .canonical import automorphism_count
from .enumerate import ValenceProfile, graphs_with_profile
from .errors import DomainError, InvariantViolation
from .evaluate import evaluate_closed
from .graphs import ORDINARY, SPECIAL, Decoration, _FlagGraph, b0, modular_genus
from .series import MultiSeries

__all__ = [
    "Sort",
    "ExpansionRequest",
    "GraphTerm",
    "avg_product",
    "avg_product_oracle",
    "graph_terms",
    "partition_function",
    "partition_function_oracle",
    "partition_function_sequence_oracle",
    "free_energy",
    "connected_sum",
    "special_vertex_expectation",
    "special_vertex_oracle",
    "ModularTerm",
    "modular_terms",
    "modular_hbar_exponent",
    "modular_algebra",
    "modular_expansion",
    "modular_expansion_oracle",
]

MODES = ("ribbon", "ordinary", "modular")


@dataclass(frozen=True)
class Sort:
    valence: int
    decoration: Decoration
    tensor_key: tuple[int, str | None]
    exponent: tuple[int, ...]
    weight: int

    @property
    def key(self) -> tuple[int, Decoration]:
        return (self.valence, self.decoration)


@dataclass(frozen=True)
class ExpansionRequest:
    """What to expand and how far.

    ``order`` bounds the weighted degree of the result: half-edge count
    for the ribbon and ordinary modes, the power of ``hbar`` for the
    modular mode.  ``special`` maps valence to the number of special
    vertices.  ``zeta`` is the univalent cap of the modular mode.
    ``valences`` restricts which plain tensors take part.
    """

    algebra: SymAlgebra
    mode: str
    order: int
    special: Mapping[int, int] = field(default_factory=dict)
    zeta: Sequence | None = None
    valences: frozenset[int] | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"unknown expansion mode {self.mode!r}")
        if self.order < 0:
            raise DomainError("order must be nonnegative")
        if self.mode in ("ordinary", "modular") and self.algebra.kind != "symmetric":
            raise DomainError(f"{self.mode} expansions need a symmetric algebra")
        if self.zeta is not None and self.mode != "modular":
            raise DomainError("a univalent cap is only meaningful in modular mode")
        if self.special and self.mode == "modular":
            raise DomainError("special vertices are not supported in modular mode")
        if any(k < 1 or l < 0 for k, l in self.special.items()):
            raise DomainError("special profile needs positive valences and nonnegative counts")
        object.__setattr__(self, "special", {k: l for k, l in sorted(self.special.items()) if l})
        if self.valences is not None:
            object.__setattr__(self, "valences", frozenset(self.valences))

    @property
    def graph_mode(self) -> str:
        return "ribbon" if self.mode == "ribbon" else "ordinary"

    @property
    def per_vertex(self):
        """Normalisation of a ``k``-valent vertex: ``k`` (cyclic) or ``k!``."""
        return (lambda k: k) if self.mode == "ribbon" else factorial


# -- sorts and rings ----------------------------------------------------------


def _parse_genus(label: str | None) -> int | None:
    if label is not None and label.startswith("genus:"):
        return int(label.split(":", 1)[1])
    return None


def _plain_sorts(req: ExpansionRequest) -> tuple[list[str], list[int], list[tuple]]:
    """Variables, weights, and ``(key, decoration, {var: power}, weight)`` per sort."""
    items = []
    for (k, label) in sorted(req.algebra.tensors, key=lambda kl: (kl[0], kl[1] or "")):
        if req.valences is not None and k not in req.valences:
            continue
        if req.mode == "modular":
            g = _parse_genus(label)
            if g is None:
                continue
            if 3 * g - 3 + k <= 0:
                raise DomainError(f"S_{{{k},{g}}} lies below the stability bound 3g-3+k > 0")
            items.append(((k, label), Decoration("genus", g), {"hbar": g - 1}, 2 * g - 2 + k))
        elif label is None:
            items.append(((k, None), ORDINARY, {f"x{k}": 1}, k))
        else:
            if label.startswith("genus:"):
                continue
            items.append(((k, label), Decoration("label", label), {f"x{k}": 1, f"y_{label}": 1}, k))
    if req.mode == "modular":
        variables, weights = ["hbar"], [1]
        if req.zeta is not None:
            variables.append("s")
            weights.append(0)
    else:
        names = sorted({v for *_, mono, _ in items for v in mono}, key=_var_key)
        variables = names
        weights = [int(v[1:]) if v.startswith("x") else 0 for v in names]
    return variables, weights, items


def _var_key(name: str):
    return (0, int(name[1:]), "") if name.startswith("x") else (1, 0, name)


def _ring(req: ExpansionRequest) -> tuple[MultiSeries, list[Sort], list[Sort]]:
    variables, weights, items = _plain_sorts(req)
    template = MultiSeries(variables, req.order, {}, weights)

    def exponent(mono):
        return tuple(mono.get(v, 0) for v in variables)

    sorts = [Sort(key[0], deco, key, exponent(mono), w) for key, deco, mono, w in items]
    if req.zeta is not None:
        sorts.append(Sort(1, SPECIAL, (1, None), exponent({"s": 1}), 1))
    specials = [Sort(k, SPECIAL, (k, None), exponent({}), 0) for k in req.special]
    return template, sorts, specials


def modular_algebra(metric: Metric, tensors: Mapping[tuple[int, int], Tensor]) -> SymAlgebra:
    """Symmetric algebra holding ``S_{k,g}`` under the key ``(k, "genus:g")``."""
    return SymAlgebra(metric, "symmetric", {(k, f"genus:{g}"): t for (k, g), t in tensors.items()})


def _modular_algebra(req: ExpansionRequest) -> SymAlgebra:
    if req.zeta is None:
        return req.algebra
    if len(req.zeta) != req.algebra.dim:
        raise DomainError("zeta must have the algebra's dimension")
    return req.algebra.with_tensors({(1, None): Tensor(req.algebra.dim, 1, {(i,): z for i, z in enumerate(req.zeta)})})


def _budget(req: ExpansionRequest) -> int:
    return 2 * req.order if req.mode == "modular" else req.order


def _profiles(req: ExpansionRequest, sorts: Sequence[Sort], specials: Sequence[Sort]):
    """Profiles with total sort weight within budget and even slot count."""
    budget = _budget(req)
    fixed = {s.key: req.special[s.valence] for s in specials}
    fixed_slots = sum(k * n for (k, _), n in fixed.items())

    def rec(i, remaining, acc):
        if i == len(sorts):
            slots = fixed_slots + sum(sorts[j].valence * n for j, n in acc)
            if slots % 2 == 0:
                yield acc
            return
        w = sorts[i].weight
        top = remaining // w if w else 0
        for n in range(top + 1):
            yield from rec(i + 1, remaining - n * w, acc + ((i, n),) if n else acc)

    for counts in rec(0, budget, ()):
        profile = ValenceProfile({**fixed, **{sorts[i].key: n for i, n in counts}})
        yield profile, counts


def _monomial(req: ExpansionRequest, template: MultiSeries, sorts, counts, slots: int) -> tuple[int, ...]:
    exp = [0] * len(template.variables)
    for i, n in counts:
        for j, e in enumerate(sorts[i].exponent):
            exp[j] += n * e
    if req.mode == "modular":
        exp[0] += slots // 2
    return tuple(exp)


def _group_order(req: ExpansionRequest, profile: ValenceProfile) -> int:
    return prod(req.per_vertex(k) ** n * factorial(n) for (k, _), n in profile.counts)


# -- averages -------------------------------------------------------------------


def _profile_polynomial(algebra: SymAlgebra, profile: ValenceProfile):
    poly = {(): Fraction(1)}
    for (k, deco), n in profile.counts:
        poly = poly_mul(poly, poly_pow(tensor_polynomial(algebra.tensor(k, deco.tensor_label)), n))
    return poly


def avg_product_oracle(algebra: SymAlgebra, profile: ValenceProfile) -> Fraction:
    """``<prod T_k(v^k)^{l_k}>`` by expanding the product and taking moments."""
    if profile.slots % 2:
        return Fraction(0)
    return poly_expectation(_profile_polynomial(algebra, profile), algebra.metric)


def avg_product(algebra: SymAlgebra, profile: ValenceProfile | Sequence[int], mode: str | None = None) -> Fraction:
    """``<prod T_k(v^k)^{l_k}>`` as ``sum alpha_G Z(G)``, checked against the moment oracle."""
    if not isinstance(profile, ValenceProfile):
        profile = ValenceProfile.from_list(profile)
    mode = mode or ("ribbon" if algebra.kind == "cyclic" else "ordinary")
    graph_side = sum(
        (cl.count * evaluate_closed(cl.graph, algebra) for cl in graphs_with_profile(profile, mode)),
        Fraction(0),
    )
    oracle = avg_product_oracle(algebra, profile)
    if graph_side != oracle:
        raise InvariantViolation(f"graph sum {graph_side} != pairing sum {oracle} for profile {profile}")
    return graph_side


# -- graph sums ---------------------------------------------------------------


@dataclass(frozen=True)
class GraphTerm:
    graph: _FlagGraph
    profile: ValenceProfile
    aut: int
    value: Fraction
    exponent: tuple[int, ...]
    connected: bool

    @property
    def contribution(self) -> Fraction:
        return self.value / self.aut


def graph_terms(req: ExpansionRequest, connected_only: bool = False) -> list[GraphTerm]:
    """Every catalog graph contributing to ``req`` with its value and monomial."""
    template, sorts, specials = _ring(req)
    algebra = _modular_algebra(req) if req.mode == "modular" else req.algebra
    terms = []
    for profile, counts in _profiles(req, sorts, specials):
        exponent = _monomial(req, template, sorts, counts, profile.slots)
        if template.degree(exponent) > req.order:
            continue
        for cl in graphs_with_profile(profile, req.graph_mode):
            g = cl.graph
            connected = b0(g) == 1 if g.num_vertices else False
            if connected_only and not connected:
                continue
            aut = automorphism_count(g, req.graph_mode)
            terms.append(GraphTerm(g, profile, aut, evaluate_closed(g, algebra), exponent, connected))
    return terms


def _sum_terms(req: ExpansionRequest, terms: Iterable[GraphTerm]) -> MultiSeries:
    template, _, _ = _ring(req)
    out: dict[tuple[int, ...], Fraction] = {}
    for t in terms:
        out[t.exponent] = out.get(t.exponent, 0) + t.contribution
    return template._like(out)


def partition_function(req: ExpansionRequest) -> MultiSeries:
    """``sum_G Z(G) / |Aut G|`` over all closed graphs, the empty graph included."""
    return _sum_terms(req, graph_terms(req))


def partition_function_oracle(req: ExpansionRequest) -> MultiSeries:
    """Taylor expansion of the integrand integrated term by term; no graphs."""
    template, sorts, specials = _ring(req)
    algebra = _modular_algebra(req) if req.mode == "modular" else req.algebra
    out: dict[tuple[int, ...], Fraction] = {}
    for profile, counts in _profiles(req, sorts, specials):
        exponent = _monomial(req, template, sorts, counts, profile.slots)
        if template.degree(exponent) > req.order:
            continue
        value = avg_product_oracle(algebra, profile) / _group_order(req, profile)
        out[exponent] = out.get(exponent, 0) + value
    return template._like(out)


def partition_function_sequence_oracle(req: ExpansionRequest) -> MultiSeries:
    """The same oracle summed over ordered vertex sequences with ``1/n!``."""
    if req.special or req.mode == "modular":
        raise DomainError("the sequence form covers plain ribbon and ordinary expansions")
    template, sorts, _ = _ring(req)
    out: dict[tuple[int, ...], Fraction] = {}
    metric = req.algebra.metric
    polys = [tensor_polynomial(req.algebra.tensor(*s.tensor_key)) for s in sorts]
    n = 0
    while True:
        found = False
        for seq in itertools.product(range(len(sorts)), repeat=n):
            if sum(sorts[i].weight for i in seq) > req.order:
                continue
            found = True
            if sum(sorts[i].valence for i in seq) % 2:
                continue
            exponent = tuple(sum(sorts[i].exponent[j] for i in seq) for j in range(len(template.variables)))
            poly = {(): Fraction(1)}
            for i in seq:
                poly = poly_mul(poly, polys[i])
            denom = factorial(n) * prod(req.per_vertex(sorts[i].valence) for i in seq)
            out[exponent] = out.get(exponent, 0) + poly_expectation(poly, metric) / denom
        if not found or not sorts:
            break
        n += 1
    return template._like(out)


def connected_sum(req: ExpansionRequest) -> MultiSeries:
    return _sum_terms(req, graph_terms(req, connected_only=True))


def free_energy(req: ExpansionRequest) -> MultiSeries:
    """``log Z``, checked against the sum over connected graphs."""
    terms = graph_terms(req)
    logged = _sum_terms(req, terms).log()
    connected = _sum_terms(req, (t for t in terms if t.connected))
    if logged != connected:
        raise InvariantViolation(f"log Z = {logged} but connected sum = {connected}")
    return connected


def special_vertex_oracle(req: ExpansionRequest) -> MultiSeries:
    return partition_function_oracle(req)


def special_vertex_expectation(req: ExpansionRequest) -> MultiSeries:
    """Graph sum with special vertices evaluated to plain ``T_k``, checked by the oracle."""
    graph_side = partition_function(req)
    oracle = partition_function_oracle(req)
    if graph_side != oracle:
        raise InvariantViolation(f"special-vertex graph sum {graph_side} != oracle {oracle}")
    return graph_side


# -- modular graphs -----------------------------------------------------------


@dataclass(frozen=True)
class ModularTerm:
    term: GraphTerm
    hbar_exponent: int
    legs: int

    @property
    def genus_exponent(self) -> int:
        """``g(G) - b0(G)`` from the graph topology alone."""
        return modular_genus(self.term.graph) - b0(self.term.graph)


def modular_hbar_exponent(g: _FlagGraph) -> int:
    """Power of ``hbar`` carried by a modular graph, read off locally.

    Each genus-``g`` vertex gives ``hbar^(g-1)``, each edge ``hbar`` (the
    rescaled Casimir), each univalent special cap ``hbar^-1``.
    """
    total = g.num_edges
    for v, d in zip(g.vertices, g.decorations):
        if d.kind == "genus":
            total += d.value - 1
        elif d.kind == "special" and len(v) == 1:
            total -= 1
        else:
            raise DomainError(f"vertex decoration {d} has no hbar weight")
    return total


def modular_terms(req: ExpansionRequest) -> list[ModularTerm]:
    """Graph terms paired with their true ``hbar`` exponent."""
    if req.mode != "modular":
        raise DomainError("modular terms need a modular request")
    out = []
    for t in graph_terms(req):
        legs = sum(1 for d in t.graph.decorations if d.kind == "special")
        out.append(ModularTerm(t, modular_hbar_exponent(t.graph), legs))
    return out


def modular_expansion(req: ExpansionRequest) -> MultiSeries:
    """Stable-graph expansion in ``hbar`` (and ``s`` for caps).

    A cap is stored as ``s * hbar`` so every stored exponent is
    ``g(G) - b0(G) + n`` with ``n`` caps, never negative.  Each term's
    exponent is checked against the topology.
    """
    terms = modular_terms(req)
    for mt in terms:
        if mt.hbar_exponent != mt.genus_exponent:
            raise InvariantViolation(
                f"hbar exponent {mt.hbar_exponent} != g - b0 = {mt.genus_exponent} for {mt.term.graph}")
        if mt.term.exponent[0] != mt.hbar_exponent + mt.legs:
            raise InvariantViolation("stored exponent disagrees with the shift convention")
    return _sum_terms(req, (mt.term for mt in terms))


def modular_expansion_oracle(req: ExpansionRequest) -> MultiSeries:
    """Taylor-Wick expansion of the rescaled integral, same storage convention."""
    if req.mode != "modular":
        raise DomainError("modular oracle needs a modular request")
    return partition_function_oracle(req)
