"""Hermitian matrix models: Lambda-deformed trace algebra and hole colourings.

Matrices are coordinatised by the complex matrix units ``E_ab`` (index
``a*N + b``).  In that basis the deformed pairing ``<E_ab, E_cd>`` is
``delta_ad delta_bc (L_a + L_b)/2`` and the trace tensors are products of
Kronecker deltas, so every computation stays over the rationals.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .algebra import Metric, SymAlgebra, poly_expectation, poly_mul, poly_pow, tensor_polynomial, trace_tensor
from .canonical import automorphism_count
from .enumerate import ValenceProfile, graphs_with_profile
from .errors import DomainError
from .evaluate import evaluate_closed
from .expansion import ExpansionRequest, partition_function
from .graphs import RibbonGraph, b0, connected_components, edge_hole_incidence, holes
from .series import MultiSeries

__all__ = [
    "KontsevichSpectrum",
    "hermitian_algebra",
    "real_basis_metric",
    "z_gamma_coloring",
    "z_gamma_contraction",
    "standard_model_series",
    "standard_model_from_partition_function",
    "euler_profiles",
    "euler_series",
    "euler_oracle",
]


@dataclass(frozen=True)
class KontsevichSpectrum:
    lambdas: tuple[Fraction, ...]

    def __init__(self, lambdas: Sequence):
        values = tuple(Fraction(x) for x in lambdas)
        if not values:
            raise DomainError("spectrum must be nonempty")
        if any(x <= 0 for x in values):
            raise DomainError("eigenvalues must be positive")
        object.__setattr__(self, "lambdas", values)

    @classmethod
    def identity(cls, n: int) -> KontsevichSpectrum:
        return cls([1] * n)

    @property
    def N(self) -> int:
        return len(self.lambdas)


def _metric(spec: KontsevichSpectrum) -> Metric:
    n, lam = spec.N, spec.lambdas
    g = [[Fraction(0)] * (n * n) for _ in range(n * n)]
    for a, b in itertools.product(range(n), repeat=2):
        g[a * n + b][b * n + a] = (lam[a] + lam[b]) / 2
    return Metric(g)


def real_basis_metric(spec: KontsevichSpectrum) -> Metric:
    """Gram matrix ``diag((L_i + L_j)/2)`` in the orthonormal Hermitian basis ``e_ij``."""
    n, lam = spec.N, spec.lambdas
    return Metric.diagonal((lam[i] + lam[j]) / 2 for i in range(n) for j in range(n))


def hermitian_algebra(spec: KontsevichSpectrum, max_valence: int) -> SymAlgebra:
    """Cyclic algebra of ``N x N`` matrices with traces ``T_1 .. T_max_valence``."""
    if max_valence < 1:
        raise DomainError("max_valence must be at least 1")
    tensors = {k: trace_tensor(spec.N, k) for k in range(1, max_valence + 1)}
    return SymAlgebra(_metric(spec), "cyclic", tensors)


def _require_closed_ribbon(g):
    if not isinstance(g, RibbonGraph):
        raise DomainError("hole colourings need a ribbon graph")
    if not g.is_closed:
        raise DomainError("hole colourings need a closed graph")


def z_gamma_coloring(g: RibbonGraph, spec: KontsevichSpectrum) -> Fraction:
    """Sum over colourings of holes of the edge products ``2/(L_c+ + L_c-)``.

    Disconnected graphs factor into a product over components.
    """
    _require_closed_ribbon(g)
    return prod((_coloring_sum(c, spec) for c in connected_components(g)), start=Fraction(1))


def _coloring_sum(g: RibbonGraph, spec: KontsevichSpectrum) -> Fraction:
    nholes = len(holes(g))
    sides = [(h1, h2) for _, h1, h2 in edge_hole_incidence(g)]
    lam = spec.lambdas
    total = Fraction(0)
    for colours in itertools.product(range(spec.N), repeat=nholes):
        term = Fraction(1)
        for h1, h2 in sides:
            term *= Fraction(2) / (lam[colours[h1]] + lam[colours[h2]])
        total += term
    return total


def z_gamma_contraction(g: RibbonGraph, spec: KontsevichSpectrum) -> Fraction:
    """The same value by contracting trace tensors against the Casimir."""
    _require_closed_ribbon(g)
    top = max((len(v) for v in g.vertices), default=1)
    return evaluate_closed(g, hermitian_algebra(spec, top))


# -- standard model -------------------------------------------------------------


def standard_model_series(N: int, max_order: int) -> MultiSeries:
    """``sum_G N^holes / |Aut G| u^V lam^(2E)`` with ``u = 1/hbar``.

    ``lam`` counts half-edges and bounds the truncation; ``u`` has weight 0.
    """
    template = MultiSeries(("u", "lam"), max_order, {}, (0, 1))
    out: dict[tuple[int, int], Fraction] = {}
    for profile in _profiles_by_slots(max_order, range(1, max_order + 1)):
        for cl in graphs_with_profile(profile, "ribbon"):
            g = cl.graph
            e = (g.num_vertices, g.num_flags)
            out[e] = out.get(e, 0) + Fraction(N ** len(holes(g)), automorphism_count(g, "ribbon"))
    return template._like(out)


def standard_model_from_partition_function(N: int, max_order: int) -> MultiSeries:
    """Partition function of the ``Lambda = I`` algebra with ``x_j = u lam^j``."""
    algebra = hermitian_algebra(KontsevichSpectrum.identity(N), max(max_order, 1))
    z = partition_function(ExpansionRequest(algebra, "ribbon", max_order))
    template = MultiSeries(("u", "lam"), max_order, {}, (0, 1))
    subs = {v: template.monomial(1, u=1, lam=int(v[1:])) for v in z.variables}
    return z.substitute(subs, template)


def _profiles_by_slots(max_slots: int, valences) -> list[ValenceProfile]:
    valences = sorted(valences)
    out = []

    def rec(i, remaining, acc):
        if i == len(valences):
            p = ValenceProfile(acc)
            if p.slots % 2 == 0:
                out.append(p)
            return
        k = valences[i]
        for n in range(remaining // k + 1):
            rec(i + 1, remaining - n * k, {**acc, k: n})

    rec(0, max_slots, {})
    return out


# -- Euler characteristic series ------------------------------------------------


def euler_profiles(max_order: int) -> list[ValenceProfile]:
    """Profiles with valences >= 3 and ``E - V = sum (j-2) l_j / 2 <= max_order``."""
    budget = 2 * max_order
    valences = list(range(3, budget + 3))
    out = []

    def rec(i, remaining, acc):
        if i == len(valences):
            p = ValenceProfile(acc)
            if p.slots % 2 == 0:
                out.append(p)
            return
        w = valences[i] - 2
        for n in range(remaining // w + 1):
            rec(i + 1, remaining - n * w, {**acc, valences[i]: n})

    rec(0, budget, {})
    return sorted(out, key=lambda p: (p.slots, str(p)))


def euler_series(max_order: int, aut_from_counts: bool = False) -> MultiSeries:
    """``sum (-1)^E / |Aut G| t^(E-V) N^holes`` over connected ribbon graphs.

    With ``aut_from_counts`` the automorphism order is recovered from the
    pairing census as ``|K| / occurrences`` instead of a stabiliser search.
    """
    template = MultiSeries(("t", "N"), max_order, {}, (1, 0))
    out: dict[tuple[int, int], Fraction] = {}
    for profile in euler_profiles(max_order):
        order_k = prod(k ** n * factorial(n) for (k, _), n in profile.counts)
        for cl in graphs_with_profile(profile, "ribbon"):
            g = cl.graph
            if b0(g) != 1:
                continue
            aut = order_k // cl.count if aut_from_counts else automorphism_count(g, "ribbon")
            e = (g.num_edges - g.num_vertices, len(holes(g)))
            out[e] = out.get(e, 0) + Fraction((-1) ** g.num_edges, aut)
    return template._like(out)


def euler_oracle(N: int, max_order: int) -> MultiSeries:
    """``log`` of the matrix integral at ``Lambda = I`` expanded by Wick's rule, in ``t``.

    The coupling ``x_j = i^j t^((j-2)/2)`` turns a profile with ``E``
    edges into ``(-1)^E t^(E-V)``.
    """
    template = MultiSeries(("t",), max_order, {}, (1,))
    algebra = hermitian_algebra(KontsevichSpectrum.identity(N), 2 * max_order + 2)
    metric = algebra.metric
    polys = {}
    out: dict[tuple[int], Fraction] = {}
    for profile in euler_profiles(max_order):
        poly = {(): Fraction(1)}
        for (k, _), n in profile.counts:
            if k not in polys:
                polys[k] = tensor_polynomial(algebra.tensor(k))
            poly = poly_mul(poly, poly_pow(polys[k], n))
        edges = profile.slots // 2
        order_k = prod(k ** n * factorial(n) for (k, _), n in profile.counts)
        e = (edges - profile.num_vertices,)
        out[e] = out.get(e, 0) + (-1) ** edges * poly_expectation(poly, metric) / order_k
    return template._like(out).log()
