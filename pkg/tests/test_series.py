from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from feyngraph.errors import DomainError
from feyngraph.series import MultiSeries, default_weight, ring


def test_default_weights():
    assert [default_weight(v) for v in ("x1", "x4", "x_3", "hbar", "t", "N", "y_a")] == [1, 4, 3, 1, 1, 0, 0]


def test_multiplication_examples():
    r = ring(["x"], 2, [1])
    x = r.var("x")
    a = 1 + x + x * x
    assert a * 1 == a
    assert (1 + x) * (1 - x) == 1 - x * x
    assert a * (1 + x) == 1 + 2 * x + 2 * x * x


def test_truncation_drops_high_terms():
    r = ring(["x4", "N"], 5)
    s = r.monomial(3, x4=1, N=7) + r.monomial(1, x4=2)
    assert s.terms == {(1, 7): 3}


def test_exp_examples():
    r = ring(["x"], 3, [1])
    x = r.var("x")
    assert r.zero().exp() == 1
    assert x.exp() == 1 + x + x * x * F(1, 2) + x ** 3 * F(1, 6)
    assert (1 + x).log().exp() == 1 + x
    with pytest.raises(DomainError):
        (1 + x).exp()


def test_log_examples():
    r = ring(["x"], 3, [1])
    x = r.var("x")
    assert r.constant(1).log() == 0
    assert (x + x * x).exp().log() == x + x * x
    assert (1 + x).log() == x - x * x * F(1, 2) + x ** 3 * F(1, 3)
    with pytest.raises(DomainError):
        (2 + x).log()


def test_weight_zero_terms_block_exp():
    r = ring(["x2", "N"], 4)
    with pytest.raises(DomainError):
        r.var("N").exp()
    s = r.var("x2") * r.var("N")
    assert s.exp().coeff(x2=2, N=2) == F(1, 2)


def test_mismatched_rings():
    with pytest.raises(DomainError):
        ring(["x"], 2, [1]).var("x") + ring(["y"], 2, [1]).var("y")
    with pytest.raises(DomainError):
        ring(["x"], 2, [1]).monomial(1, y=1)
    with pytest.raises(DomainError):
        MultiSeries(["x", "x"], 2)
    with pytest.raises(DomainError):
        MultiSeries(["x"], 2, weights=[-1])


def test_substitute():
    src = ring(["x1", "x2"], 4)
    s = src.var("x1") * src.var("x2") + 3
    dst = ring(["u", "lam"], 4, [0, 1])
    out = s.substitute({"x1": dst.monomial(1, u=1, lam=1), "x2": dst.monomial(2, u=1, lam=2)}, dst)
    assert out == dst.monomial(2, u=2, lam=3) + 3
    assert s.substitute({"x1": 2, "x2": F(1, 2)}, ring([], 4)) == 4


def test_dump_roundtrip_and_str():
    r = ring(["x1", "hbar"], 3)
    s = r.monomial(F(-2, 3), x1=1, hbar=2) + r.monomial(5)
    text = s.dump()
    assert text.splitlines()[0] == "# x1:1 hbar:1 order=3"
    assert MultiSeries.parse_dump(text) == s
    assert str(s) == "5 + -2/3 * x1 hbar^2"
    assert str(r.zero()) == "0"


VARS = ["x1", "x2", "x3"]


@st.composite
def series(draw, order=6, constant=None):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2)),
        st.fractions(min_value=-5, max_value=5, max_denominator=6),
        max_size=6,
    ))
    if constant is not None:
        terms[(0, 0, 0)] = F(constant)
    return MultiSeries(VARS, order, terms)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(series(), series(), st.integers(0, 6))
def test_truncation_is_a_homomorphism(a, b, d):
    assert (a * b).truncate(d) == a.truncate(d) * b.truncate(d)
    assert (a + b).truncate(d) == a.truncate(d) + b.truncate(d)


@settings(max_examples=40, deadline=None)
@given(series(constant=0))
def test_log_exp_roundtrip(a):
    assert a.exp().log() == a


@settings(max_examples=40, deadline=None)
@given(series(constant=1))
def test_exp_log_roundtrip(a):
    assert a.log().exp() == a


@settings(max_examples=40, deadline=None)
@given(series(constant=0), series(constant=0))
def test_exp_turns_sums_into_products(a, b):
    assert (a + b).exp() == a.exp() * b.exp()
