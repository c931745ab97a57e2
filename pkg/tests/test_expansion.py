import random
from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from feyngraph.algebra import Metric, SymAlgebra, Tensor
from feyngraph.enumerate import profiles_up_to
from feyngraph.errors import DomainError
from feyngraph.expansion import (
    ExpansionRequest, avg_product, avg_product_oracle, connected_sum, free_energy, graph_terms, modular_algebra,
    modular_expansion, modular_expansion_oracle, modular_hbar_exponent, modular_terms, partition_function,
    partition_function_oracle, partition_function_sequence_oracle, special_vertex_expectation,
)
from feyngraph.generators import random_invariant_tensor, random_metric
from feyngraph.graphs import ORDINARY, SPECIAL, Decoration, OrdinaryGraph

ONE = Metric.identity(1)


def _scalar(k, c):
    return Tensor(1, k, {(0,) * k: c})


def _random_algebra(rng, dim, kind, valences=range(1, 5)):
    m = random_metric(rng, dim)
    return SymAlgebra(m, kind, {k: random_invariant_tensor(rng, dim, k, kind) for k in valences})


def test_avg_product_examples():
    c = F(3, 2)
    algebra = SymAlgebra(ONE, "symmetric", {2: _scalar(2, c), 3: _scalar(3, 1)})
    assert avg_product(algebra, [0, 2]) == 3 * c ** 2
    assert avg_product(algebra, [0, 0, 1]) == 0
    assert avg_product(algebra, []) == 1


def test_avg_product_two_way_for_small_profiles():
    rng = random.Random(0)
    for kind, mode in (("cyclic", "ribbon"), ("symmetric", "ordinary")):
        algebra = _random_algebra(rng, 2, kind, range(1, 9))
        for prof in profiles_up_to(8, [(k, ORDINARY) for k in range(1, 9)]):
            assert avg_product(algebra, prof, mode) == avg_product_oracle(algebra, prof)


def test_partition_function_examples():
    quartic = SymAlgebra(ONE, "symmetric", {4: _scalar(4, 1)})
    z = partition_function(ExpansionRequest(quartic, "ribbon", 8))
    assert z.constant_term == 1
    assert z.coeff(x4=1) == F(3, 4)
    assert partition_function(ExpansionRequest(quartic, "ordinary", 8)).coeff(x4=1) == F(1, 8)
    assert z.substitute({"x4": 0}, z) == 1


def test_odd_coupling_has_no_first_order_term():
    algebra = SymAlgebra(ONE, "symmetric", {3: _scalar(3, 5)})
    for mode in ("ribbon", "ordinary"):
        req = ExpansionRequest(algebra, mode, 6)
        assert partition_function_oracle(req).coeff(x3=1) == 0
        assert partition_function(req).coeff(x3=2) != 0


def test_ordinary_quartic_second_order():
    quartic = SymAlgebra(ONE, "symmetric", {4: _scalar(4, 1)})
    req = ExpansionRequest(quartic, "ordinary", 8)
    # <v^8> / (4!^2 2!) = 105 / 1152
    assert partition_function(req).coeff(x4=2) == F(105, 1152) == F(35, 384)


def test_free_energy_examples():
    quartic = SymAlgebra(ONE, "symmetric", {4: _scalar(4, 1)})
    req = ExpansionRequest(quartic, "ribbon", 8)
    z, f = partition_function(req), free_energy(req)
    assert f.constant_term == 0
    assert f.coeff(x4=1) == F(3, 4)
    disconnected = sum((t.contribution for t in graph_terms(req) if not t.connected and t.exponent == (2,)), F(0))
    assert disconnected == F(3, 4) ** 2 / 2
    assert f.coeff(x4=2) == z.coeff(x4=2) - disconnected
    assert f == connected_sum(req) == z.log()


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2), st.sampled_from(["ribbon", "ordinary"]))
def test_three_routes_agree(seed, dim, mode):
    rng = random.Random(seed)
    kind = "cyclic" if mode == "ribbon" else "symmetric"
    req = ExpansionRequest(_random_algebra(rng, dim, kind), mode, 6)
    z = partition_function(req)
    assert z == partition_function_oracle(req) == partition_function_sequence_oracle(req)
    assert z.log() == connected_sum(req)


def test_symmetric_tensors_in_ribbon_mode_use_cyclic_normalisation():
    rng = random.Random(4)
    algebra = _random_algebra(rng, 2, "symmetric")
    ribbon = ExpansionRequest(algebra, "ribbon", 6)
    ordinary = ExpansionRequest(algebra, "ordinary", 6)
    assert partition_function(ribbon) == partition_function_oracle(ribbon)
    assert partition_function(ordinary) == partition_function_oracle(ordinary)
    # the two normalisations differ by k!/k per vertex: x_k^rib / k = x_k^ord / k!
    rescaled = partition_function(ordinary).substitute(
        {f"x{k}": partition_function(ribbon).monomial(F(factorial(k), k), **{f"x{k}": 1}) for k in range(1, 5)},
        partition_function(ribbon),
    )
    assert rescaled == partition_function(ribbon)


def test_labelled_tensors_get_their_own_couplings():
    rng = random.Random(5)
    base = _random_algebra(rng, 2, "symmetric", [3, 4])
    algebra = base.with_tensors({(3, "a"): random_invariant_tensor(rng, 2, 3, "symmetric")})
    req = ExpansionRequest(algebra, "ordinary", 6)
    z = partition_function(req)
    assert z.variables == ("x3", "x4", "y_a")
    assert z == partition_function_oracle(req)
    assert z.coeff(x3=2, y_a=1) != 0


def test_valence_restriction():
    rng = random.Random(6)
    algebra = _random_algebra(rng, 1, "symmetric")
    z = partition_function(ExpansionRequest(algebra, "ordinary", 6, valences={4}))
    assert z.variables == ("x4",)


def test_special_vertex_examples():
    c = F(3, 2)
    algebra = SymAlgebra(ONE, "symmetric", {1: _scalar(1, 2), 2: _scalar(2, c), 4: _scalar(4, 1)})
    req = ExpansionRequest(algebra, "ordinary", 4, special={2: 2})
    s = special_vertex_expectation(req)
    assert s.constant_term == 3 * c ** 2 / 8
    empty = ExpansionRequest(algebra, "ordinary", 4, special={})
    assert special_vertex_expectation(empty) == partition_function(empty)
    odd = ExpansionRequest(algebra, "ordinary", 4, special={1: 1})
    assert special_vertex_expectation(odd).constant_term == 0


def test_special_vertices_are_not_mixed_with_plain_ones():
    c = F(3, 2)
    algebra = SymAlgebra(ONE, "symmetric", {2: _scalar(2, c)})
    req = ExpansionRequest(algebra, "ordinary", 2, special={2: 1})
    terms = [t for t in graph_terms(req) if t.exponent == (1,)]
    # one special and one plain bivalent vertex: 2 classes (double edge, two loops)
    assert len(terms) == 2
    assert all(t.graph.vertex_classes().get((2, SPECIAL)) == 1 for t in terms)


def test_request_validation():
    cyclic = SymAlgebra(ONE, "cyclic", {2: _scalar(2, 1)})
    with pytest.raises(DomainError):
        ExpansionRequest(cyclic, "ordinary", 2)
    with pytest.raises(DomainError):
        ExpansionRequest(cyclic, "ribbon", -1)
    with pytest.raises(DomainError):
        ExpansionRequest(cyclic, "ribbon", 2, zeta=[1])
    with pytest.raises(DomainError):
        ExpansionRequest(cyclic, "planar", 2)
    sym = SymAlgebra(ONE, "symmetric")
    with pytest.raises(DomainError):
        ExpansionRequest(sym, "modular", 2, special={2: 1})


# -- modular ---------------------------------------------------------------------


def _genus(g):
    return Decoration("genus", g)


def test_modular_exponent_of_a_loop():
    loop = OrdinaryGraph.from_edges([(0, 1)], [(0, 1)], decorations=[_genus(1)])
    assert modular_hbar_exponent(loop) == 1
    with pytest.raises(DomainError):
        modular_hbar_exponent(OrdinaryGraph.from_edges([(0, 1)], [(0, 1)]))


def test_modular_zero_couplings():
    algebra = modular_algebra(ONE, {(2, 1): _scalar(2, 0)})
    assert modular_expansion(ExpansionRequest(algebra, "modular", 2)) == 1


def test_modular_rejects_unstable_sorts():
    for k, g in ((3, 0), (2, 0), (1, 0)):
        algebra = modular_algebra(ONE, {(k, g): _scalar(k, 1)})
        with pytest.raises(DomainError):
            modular_expansion(ExpansionRequest(algebra, "modular", 1))


def test_modular_first_order_by_hand():
    # hbar^1: loop on S_{2,1}, an edge between two S_{1,1}, the two-loop S_{4,0} vertex
    a, s11, s21, s40 = F(2), F(3), F(5), F(7)
    algebra = modular_algebra(Metric([[a]]), {(1, 1): _scalar(1, s11), (2, 1): _scalar(2, s21),
                                              (4, 0): _scalar(4, s40)})
    z = modular_expansion(ExpansionRequest(algebra, "modular", 1))
    assert z.constant_term == 1
    assert z.coeff(hbar=1) == s21 / (2 * a) + s11 ** 2 / (2 * a) + 3 * s40 / (24 * a ** 2)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2), st.booleans())
def test_modular_matches_rescaled_oracle(seed, dim, with_zeta):
    rng = random.Random(seed)
    m = random_metric(rng, dim)
    sorts = [(1, 1), (2, 1), (4, 0), (3, 1)]
    tensors = {kg: random_invariant_tensor(rng, dim, kg[0], "symmetric") for kg in sorts}
    zeta = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(dim)] if with_zeta else None
    req = ExpansionRequest(modular_algebra(m, tensors), "modular", 2, zeta=zeta)
    assert modular_expansion(req) == modular_expansion_oracle(req)
    for mt in modular_terms(req):
        assert mt.hbar_exponent == mt.genus_exponent
