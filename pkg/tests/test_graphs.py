import random

import pytest
from hypothesis import given, settings, strategies as st

from feyngraph.errors import CompositionError, DomainError
from feyngraph.generators import random_graph
from feyngraph.graphs import (
    ORDINARY, SPECIAL, Decoration, OrdinaryGraph, RibbonGraph, b0, cap, compose, connected_components, corolla,
    cup, edge_hole_incidence, empty_graph, forget_cyclic, genus, holes, modular_genus, strand, tensor,
)
from feyngraph.canonical import canonical_form

import zoo


def test_decoration_parse_roundtrip():
    for text in ("ordinary", "special", "label:a", "genus:2"):
        assert str(Decoration.parse(text)) == text
    assert Decoration.parse("genus:2").value == 2
    with pytest.raises(DomainError):
        Decoration.parse("genus:x")
    with pytest.raises(DomainError):
        Decoration.parse("colour:red")


def test_invalid_graphs_are_rejected():
    with pytest.raises(DomainError):
        RibbonGraph(((0, 1),), (0, 1))  # fixed points in the matching
    with pytest.raises(DomainError):
        RibbonGraph(((0,),), (1, 0))  # flag 1 is neither on a vertex nor a leg
    with pytest.raises(DomainError):
        RibbonGraph(((0, 1),), (2, 0, 1))  # not an involution


def test_type_and_basic_counts():
    t = zoo.triangle()
    assert t.type == (3, 0)
    assert not t.is_closed
    assert (t.num_vertices, t.num_edges) == (3, 3)
    assert zoo.planar_theta().type == (0, 0)


def test_identity_strand_composition():
    s = strand()
    assert canonical_form(compose(s, s)) == canonical_form(s)


def test_cap_after_cup_is_a_circle():
    g = compose(cap(), cup())
    assert g.type == (0, 0)
    assert g.circles == 1
    assert g.num_vertices == 0


def test_corollas_compose_to_theta():
    g = compose(corolla(3, 3), corolla(3, 0))
    assert g.is_closed
    assert (g.num_vertices, g.num_edges) == (2, 3)
    assert canonical_form(forget_cyclic(g), "ordinary") == canonical_form(forget_cyclic(zoo.planar_theta()), "ordinary")


def test_compose_arity_mismatch():
    with pytest.raises(CompositionError):
        compose(corolla(3, 3), corolla(2, 0))


def test_compose_mixed_kinds_rejected():
    with pytest.raises(DomainError):
        compose(strand(RibbonGraph), strand(OrdinaryGraph))


def test_tensor_examples():
    g = zoo.planar_theta()
    assert canonical_form(tensor(g, empty_graph())) == canonical_form(g)
    assert canonical_form(tensor(empty_graph(), g)) == canonical_form(g)
    assert tensor(strand(), strand()).type == (2, 2)
    two = tensor(zoo.loop(), zoo.loop())
    assert b0(two) == 2
    assert len(connected_components(two)) == 2


def test_components_examples():
    assert connected_components(empty_graph()) == []
    assert b0(empty_graph()) == 0
    assert b0(zoo.planar_theta()) == 1
    circle = compose(cap(), cup())
    assert b0(tensor(circle, zoo.loop())) == 2


@pytest.mark.parametrize(
    "graph, nholes, g",
    [(zoo.loop(), 2, 0), (zoo.planar_theta(), 3, 0), (zoo.twisted_theta(), 1, 1),
     (zoo.crossed_four(), 1, 1), (zoo.planar_four(), 3, 0)],
)
def test_holes_and_genus(graph, nholes, g):
    assert len(holes(graph)) == nholes
    assert genus(graph) == g


def test_holes_need_closed_graph():
    with pytest.raises(DomainError):
        holes(zoo.triangle())


def test_genus_needs_connected_graph():
    with pytest.raises(DomainError):
        genus(tensor(zoo.loop(), zoo.loop()))


def test_edge_hole_incidence_covers_each_edge_twice():
    g = zoo.planar_theta()
    incidence = edge_hole_incidence(g)
    assert len(incidence) == 3
    sides = [h for _, h1, h2 in incidence for h in (h1, h2)]
    # each hole of the planar theta is bounded by two edges
    assert sorted(sides.count(h) for h in set(sides)) == [2, 2, 2]
    twisted = edge_hole_incidence(zoo.twisted_theta())
    assert all(h1 == h2 == 0 for _, h1, h2 in twisted)


def _genus_deco(g):
    return Decoration("genus", g)


def test_modular_genus_examples():
    single = OrdinaryGraph.from_edges([(0, 1)], [(0, 1)], decorations=[_genus_deco(2)])
    assert modular_genus(single) == 3  # g(v) = 2 plus one loop
    theta = forget_cyclic(zoo.planar_theta()).with_decorations([_genus_deco(0)] * 2)
    assert modular_genus(theta) == 2
    loop = zoo.loop(OrdinaryGraph).with_decorations([_genus_deco(1)])
    assert modular_genus(loop) == 2
    with pytest.raises(DomainError):
        modular_genus(zoo.loop(OrdinaryGraph))


def test_modular_genus_ignores_univalent_caps():
    g = OrdinaryGraph.from_edges([(0, 1, 2), (3,)], [(0, 1), (2, 3)], decorations=[_genus_deco(0), SPECIAL])
    assert modular_genus(g) == 1


def test_forget_cyclic_examples():
    assert forget_cyclic(empty_graph()) == empty_graph(OrdinaryGraph)
    a, b = forget_cyclic(zoo.planar_theta()), forget_cyclic(zoo.twisted_theta())
    assert canonical_form(a, "ordinary") == canonical_form(b, "ordinary")


def test_corolla_legs():
    c = corolla(4, 1)
    assert c.type == (1, 3)
    assert c.decorations == (ORDINARY,)


def _graphs(draw_seed, p=0, q=0, cls=RibbonGraph):
    return random_graph(random.Random(draw_seed), p, q, max_vertices=4, max_valence=4, cls=cls)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_euler_relation_holds(seed):
    g = _graphs(seed)
    for c in connected_components(g):
        if c.circles:
            continue
        chi = c.num_vertices - c.num_edges + len(holes(c))
        assert chi % 2 == 0
        assert genus(c) >= 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 2), st.integers(0, 2))
def test_tensor_concatenates_legs(seed, p, q):
    rng = random.Random(seed)
    a = random_graph(rng, p, q)
    b = random_graph(rng, q, p)
    t = tensor(a, b)
    assert t.type == (p + q, q + p)
    assert b0(t) == b0(a) + b0(b)
