from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cobordism_forge.graded import GradedRational as GR, mono_exponents, mono_key, mono_str
from oracles import to_sympy

D = 4


@st.composite
def graded(draw, degree=None):
    """Random homogeneous element of Q[m1..m4] of a random small degree."""
    if degree is None:
        degree = 2 * draw(st.integers(0, 4))
    n = degree // 2
    parts = [p for p in _parts(n)]
    terms = {}
    for part in draw(st.lists(st.sampled_from(parts), max_size=4)):
        exps = {}
        for i in part:
            exps[i] = exps.get(i, 0) + 1
        c = draw(st.fractions(min_value=-5, max_value=5, max_denominator=6))
        terms[mono_key(exps)] = terms.get(mono_key(exps), 0) + c
    return GR(degree, terms)


def _parts(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _parts(n - k, k):
            yield (k,) + rest


def test_packing_round_trip():
    key = mono_key({1: 2, 3: 1})
    assert mono_exponents(key) == {1: 2, 3: 1}
    assert mono_str(key) == "m1^2*m3"
    assert mono_key([2, 0, 1]) == key


def test_odd_degree_rejected():
    with pytest.raises(ValueError):
        GR(3, {})


def test_mixed_degree_sum_rejected():
    with pytest.raises(ValueError):
        GR.gen(1) + GR.gen(2)


def test_zero_is_homogeneous_of_every_degree():
    assert GR.zero(4) == GR.zero(0)
    assert GR.gen(2) + GR.zero(0) == GR.gen(2)


@settings(max_examples=60, deadline=None)
@given(graded(), graded(), graded())
def test_product_matches_sympy(a, b, c):
    lhs = to_sympy(a * (b * c), D)
    rhs = sp.expand(to_sympy(a, D) * to_sympy(b, D) * to_sympy(c, D))
    assert sp.expand(lhs - rhs) == 0
    assert (a * b).degree == a.degree + b.degree


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4).flatmap(lambda n: st.tuples(graded(2 * n), graded(2 * n))))
def test_sum_matches_sympy(pair):
    a, b = pair
    assert sp.expand(to_sympy(a + b, D) - to_sympy(a, D) - to_sympy(b, D)) == 0
    assert (a - a) == GR.zero(a.degree)


def test_scalar_division_and_power():
    x = GR.gen(1) * 3
    assert x / 3 == GR.gen(1)
    assert (GR.gen(1) ** 3).degree == 6
    assert GR.const(Fraction(4, 2)).constant_value() == 2
