import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from feyngraph.algebra import casimir, check_invariance
from feyngraph.canonical import automorphism_count
from feyngraph.enumerate import ValenceProfile, graphs_with_profile
from feyngraph.errors import DomainError
from feyngraph.generators import random_graph
from feyngraph.graphs import b0, genus, holes, tensor
from feyngraph.kontsevich import (
    KontsevichSpectrum, euler_oracle, euler_profiles, euler_series, hermitian_algebra, real_basis_metric,
    standard_model_from_partition_function, standard_model_series, z_gamma_coloring, z_gamma_contraction,
)

import zoo


def test_spectrum_validation():
    with pytest.raises(DomainError):
        KontsevichSpectrum([1, 0])
    with pytest.raises(DomainError):
        KontsevichSpectrum([])
    assert KontsevichSpectrum.identity(3).N == 3


def test_hermitian_algebra_n1():
    a = hermitian_algebra(KontsevichSpectrum([F(5, 2)]), 4)
    assert a.dim == 1
    assert a.metric.g[0, 0] == F(5, 2)
    assert all(a.tensor(k).entries == {(0,) * k: 1} for k in range(1, 5))


def test_hermitian_algebra_identity_spectrum():
    a = hermitian_algebra(KontsevichSpectrum.identity(2), 3)
    # E_ab pairs with E_ba; in the real basis e_ij the same form is the identity
    for i, j in itertools.product(range(4), repeat=2):
        a1, b1, a2, b2 = divmod(i, 2) + divmod(j, 2)
        assert a.metric.g[i, j] == int(a1 == b2 and b1 == a2)
    assert (real_basis_metric(KontsevichSpectrum.identity(2)).g == np.eye(4, dtype=int)).all()
    # T_2(E_ab, E_cd) = tr(E_ab E_cd)
    assert a.tensor(2).entries == {(0, 0): 1, (1, 2): 1, (2, 1): 1, (3, 3): 1}


def test_casimir_of_deformed_metric():
    spec = KontsevichSpectrum([1, 2, F(1, 2)])
    c = casimir(hermitian_algebra(spec, 1).metric)
    lam, n = spec.lambdas, spec.N
    expected = {(a * n + b, b * n + a): 2 / (lam[a] + lam[b]) for a, b in itertools.product(range(n), repeat=2)}
    assert c.entries == expected


def test_trace_tensors_are_cyclic():
    for n in (1, 2, 3):
        a = hermitian_algebra(KontsevichSpectrum.identity(n), 5)
        assert all(check_invariance(a.tensor(k), "cyclic")[0] for k in range(1, 6))


def test_circle_graph():
    spec = KontsevichSpectrum([1, 2])
    assert z_gamma_coloring(zoo.loop(), spec) == F(17, 6) == z_gamma_contraction(zoo.loop(), spec)
    spec3 = KontsevichSpectrum([1, F(1, 3), 4])
    lam = spec3.lambdas
    expected = sum(2 / (lam[i] + lam[j]) for i in range(3) for j in range(3))
    assert z_gamma_coloring(zoo.loop(), spec3) == expected == z_gamma_contraction(zoo.loop(), spec3)


@pytest.mark.parametrize("theta", [zoo.planar_theta, zoo.twisted_theta])
def test_theta_at_n1(theta):
    lam = F(7, 3)
    spec = KontsevichSpectrum([lam])
    assert z_gamma_coloring(theta(), spec) == lam ** -3 == z_gamma_contraction(theta(), spec)


def test_open_graph_rejected():
    with pytest.raises(DomainError):
        z_gamma_coloring(zoo.triangle(), KontsevichSpectrum([1]))


def test_disconnected_graphs_factor():
    spec = KontsevichSpectrum([1, 3])
    g = tensor(zoo.planar_theta(), zoo.crossed_four())
    assert z_gamma_coloring(g, spec) == z_gamma_coloring(zoo.planar_theta(), spec) * z_gamma_coloring(
        zoo.crossed_four(), spec)
    assert z_gamma_coloring(g, spec) == z_gamma_contraction(g, spec)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_lemma_z1_on_random_graphs(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, 0, 0, max_vertices=3, max_valence=4)
    if g.num_edges > 4:
        return
    spec = KontsevichSpectrum([F(rng.randint(1, 6), rng.randint(1, 4)) for _ in range(n)])
    assert z_gamma_coloring(g, spec) == z_gamma_contraction(g, spec)
    assert z_gamma_coloring(g, KontsevichSpectrum.identity(n)) == n ** len(holes(g))


def test_standard_model_examples():
    assert standard_model_series(2, 0) == 1
    s = standard_model_series(3, 2)
    # the circle graph: one vertex, two half-edges, two holes, |Aut| = 2
    assert s.coeff(u=1, lam=2) == F(9, 2)


@pytest.mark.parametrize("n", [1, 2])
def test_standard_model_two_routes(n):
    assert standard_model_series(n, 6) == standard_model_from_partition_function(n, 6)


def test_euler_profiles_bound():
    for p in euler_profiles(2):
        assert all(k >= 3 for (k, _), _ in p.counts)
        assert p.slots // 2 - p.num_vertices <= 2


def test_euler_one_vertex_quartic_graphs():
    seen = {}
    for cl in graphs_with_profile(ValenceProfile({4: 1}), "ribbon"):
        g = cl.graph
        seen[(genus(g), len(holes(g)))] = g
    assert set(seen) == {(0, 3), (1, 1)}
    s = euler_series(1)
    # at t^1 the quartic graphs combine with the two-vertex cubic graphs (sign -1)
    cubic = [cl.graph for cl in graphs_with_profile(ValenceProfile({3: 2}), "ribbon") if b0(cl.graph) == 1]
    expected = {}
    for g in list(seen.values()) + cubic:
        key = len(holes(g))
        expected[key] = expected.get(key, 0) + F((-1) ** g.num_edges, automorphism_count(g))
    assert {e[1]: c for e, c in s.terms.items() if e[0] == 1} == {k: v for k, v in expected.items() if v}


def test_euler_series_order_two():
    s = euler_series(2)
    assert s.coeff(t=1, N=1) == F(1, 12)
    assert s.coeff(t=1, N=3) == F(-1, 6)
    assert s.coeff(t=2, N=2) == F(1, 24)
    assert s.coeff(t=2, N=4) == F(-1, 24)
    assert s == euler_series(2, aut_from_counts=True)
    assert euler_series(0) == 0


@pytest.mark.parametrize("n", [1, 2])
def test_euler_against_matrix_integral(n):
    oracle = euler_oracle(n, 1)
    assert euler_series(1).substitute({"N": n}, oracle) == oracle


def test_euler_exponent_is_two_g_minus_two_plus_n():
    for p in euler_profiles(2):
        for cl in graphs_with_profile(p, "ribbon"):
            g = cl.graph
            if b0(g) != 1:
                continue
            assert g.num_edges - g.num_vertices == 2 * genus(g) - 2 + len(holes(g))
