from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gammafilt.algebra import (
    ONE,
    GenSeries,
    MPoly,
    T,
    Z,
    determinant,
    poly_arith,
    rational_expand,
    series_arith,
    series_compose,
    sylvester_resultant,
    working_precision,
)
from gammafilt.errors import (
    CompositionDivergence,
    InversionOfNonUnit,
    NonUnitDenominator,
    ZeroLeadingCoefficient,
)

exponents = st.tuples(*(st.integers(0, 3) for _ in range(3)))
mpolys = st.dictionaries(exponents, st.integers(-5, 5), max_size=5).map(MPoly)


def series(values, order=None):
    return GenSeries.from_ints(values, order)


# ---- MPoly -----------------------------------------------------------------


def test_binomial_square():
    assert (1 + Z) ** 2 == MPoly({(0, 0, 0): 1, (1, 0, 0): 2, (2, 0, 0): 1})


def test_is1_term_list():
    p = poly_arith(poly_arith(1 + Z, 2, "pow"), Z * Z * T, "mul")
    assert p.terms() == [((2, 1, 0), 1), ((3, 1, 0), 2), ((4, 1, 0), 1)]


def test_zero_annihilates():
    assert ((1 + Z + T) * MPoly()).is_zero()
    assert poly_arith(Z + T, MPoly(), "mul") == 0


def test_no_zero_terms_stored():
    p = (Z + T) - Z
    assert p.terms() == [((0, 1, 0), 1)]


def test_bad_exponent_rejected():
    with pytest.raises(ValueError):
        MPoly({(1, 2): 3})


@given(mpolys, mpolys, mpolys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


def test_derivative_and_specialize():
    p = 3 * Z**2 * T + Z * T**3
    assert p.diff("z") == 6 * Z * T + T**3
    assert p.specialize(t=2) == 6 * Z**2 + 8 * Z


def test_evaluate_on_fractions():
    p = Z**2 - 2 * Z * T + 1
    assert p.evaluate(z=Fraction(1, 2), t=3) == Fraction(1, 4) - 3 + 1


# ---- GenSeries -------------------------------------------------------------


def test_geometric_inverse():
    assert series([1, -1], 3).invert().ints() == [1, 1, 1, 1]


def test_telescoping_product():
    s = series([1, 1], 2) * series([1, -1], 2).invert()
    assert s.ints() == [1, 2, 2]


def test_inverting_non_unit_fails():
    with pytest.raises(InversionOfNonUnit):
        series([0, 1, 1], 3).invert()
    with pytest.raises(InversionOfNonUnit):
        series([2, 1], 3).invert()


def test_order_is_minimum():
    a, b = series([1, 2, 3, 4], 3), series([1, 1], 1)
    assert series_arith(a, b, "add").order == 1
    assert (a * b).order == 1


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=8))
@settings(max_examples=60, deadline=None)
def test_unit_times_inverse_is_one(tail):
    a = series([1] + tail)
    assert (a * a.invert()).ints() == [1] + [0] * len(tail)


def test_series_with_polynomial_coefficients():
    a = GenSeries([ONE, T, T**2], 2)
    b = (a * a).coeffs
    assert b == (ONE, 2 * T, 3 * T**2)


# ---- composition -----------------------------------------------------------


def test_compose_square():
    w = MPoly.var("z", 2)
    assert series_compose(w, series([0, 1, 1], 3)).ints() == [0, 0, 1, 2]


def test_compose_is1():
    is1 = (1 + Z) ** 2 * Z**2 * T
    got = series_compose(is1, series([0, 1, 1], 3))
    w = sympy.symbols("w")
    z = sympy.symbols("z")
    oracle = sympy.series(((1 + w) ** 2 * w**2).subs(w, z + z**2), z, 0, 4).removeO()
    assert [got[k].coeff(t=1) for k in range(4)] == [oracle.coeff(z, k) for k in range(4)]
    assert got[3] == 4 * T


def test_compose_rejects_constant_term():
    with pytest.raises(CompositionDivergence):
        series_compose(Z**2, series([1, 1], 3))


@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=5),
    st.lists(st.integers(-4, 4), min_size=1, max_size=5),
    st.lists(st.integers(-4, 4), min_size=1, max_size=5),
)
@settings(max_examples=50, deadline=None)
def test_compose_is_multiplicative(f, g, h_tail):
    order = 6
    h = series([0] + h_tail, order)
    fs, gs = series(f, order), series(g, order)
    left = series_compose(fs * gs, h)
    right = series_compose(fs, h) * series_compose(gs, h)
    assert left == right


def test_compose_series_outer_order():
    # outer known to z^2 and inner of valuation 2: result exact to z^5
    out = series_compose(series([1, 1, 1], 2), series([0, 0, 1], 10))
    assert out.order == 5
    assert out.ints() == [1, 0, 1, 0, 1, 0]


# ---- rational expansion ----------------------------------------------------


def test_rational_geometric():
    assert rational_expand(ONE, 1 - Z, 4).ints() == [1] * 5


def test_rational_psi1_against_sympy():
    got = rational_expand(Z**2, (Z**2 - Z + 1) ** 2, 8).ints()
    z = sympy.symbols("z")
    oracle = sympy.series(z**2 / (z**2 - z + 1) ** 2, z, 0, 9).removeO()
    assert got == [oracle.coeff(z, k) for k in range(9)]
    assert got[:4] == [0, 0, 1, 2]


def test_rational_negative_unit():
    assert rational_expand(ONE, Z - 1, 3).ints() == [-1, -1, -1, -1]


@pytest.mark.parametrize("den", [Z, 2 + Z, 3 * T + Z])
def test_rational_non_unit(den):
    with pytest.raises(NonUnitDenominator):
        rational_expand(ONE, den, 3)


# ---- resultants ------------------------------------------------------------


@pytest.mark.parametrize(
    "p, q, expected",
    [
        ([-1, 0, 1], [-1, 1], 0),
        ([-2, 0, 1], [-1, 1], -1),
        ([0, 1], [3, 1], 3),
    ],
)
def test_resultant_examples(p, q, expected):
    assert sylvester_resultant(p, q) == expected


def test_resultant_zero_leading():
    with pytest.raises(ZeroLeadingCoefficient):
        sylvester_resultant([1, 2, 0], [1, 1])


@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=3),
    st.lists(st.integers(-4, 4), min_size=1, max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_resultant_vanishes_iff_common_root(roots_p, roots_q):
    x = sympy.symbols("x")
    p = sympy.Poly(sympy.prod([x - r for r in roots_p]), x).all_coeffs()[::-1]
    q = sympy.Poly(sympy.prod([x - r for r in roots_q]), x).all_coeffs()[::-1]
    res = sylvester_resultant([int(c) for c in p], [int(c) for c in q])
    assert (res == 0) == bool(set(roots_p) & set(roots_q))
    # monic p: Res(p, q) is the product of q over the roots of p
    assert res == sympy.prod([sympy.prod([r - s for s in roots_q]) for r in roots_p])


def test_numeric_determinant():
    with working_precision(40):
        m = [[mpmath.mpf(2), mpmath.mpf(1)], [mpmath.mpf(1), mpmath.mpf(3)]]
        assert abs(determinant(m) - 5) < mpmath.mpf(10) ** -35
