from __future__ import annotations

import json

import pytest

from gammafilt.algebra import MPoly, T, Z
from gammafilt.diagram import genus, is_irreducible, shadow
from gammafilt.errors import UnsupportedGenus
from gammafilt.reference import I1_COEFFS, I2_COEFFS
from gammafilt.shadows import (
    arc_range,
    enumerate_irreducible_shadows,
    irreducible_polynomial,
    is_polynomial,
    shadows_with_arcs,
    write_catalog,
)


def test_genus_one_counts():
    assert tuple(enumerate_irreducible_shadows(1).counts()) == I1_COEFFS


def test_genus_two_counts():
    assert tuple(enumerate_irreducible_shadows(2).counts()) == I2_COEFFS


@pytest.mark.parametrize("g", [1, 2])
def test_members_are_irreducible_shadows(g):
    catalog = enumerate_irreducible_shadows(g)
    for d in catalog:
        assert shadow(d) == d
        assert is_irreducible(d)
        assert genus(d) == g
        assert d.is_matching()


@pytest.mark.parametrize("g", [1, 2])
def test_extreme_arc_counts_occupied(g):
    counts = enumerate_irreducible_shadows(g).counts()
    assert counts[0] > 0 and counts[-1] > 0
    assert list(arc_range(g)) == list(range(2 * g, 6 * g - 1))


def test_below_range_is_empty():
    assert shadows_with_arcs(2, 3) == ()


def test_canonical_order():
    members = enumerate_irreducible_shadows(2).by_arc_count[5]
    assert list(members) == sorted(members, key=lambda d: d.arcs)


def test_forked_search_matches_sequential():
    assert shadows_with_arcs(2, 8, threads=1) == shadows_with_arcs(2, 8, threads=2)


def test_polynomials():
    assert irreducible_polynomial(1) == Z**2 + 2 * Z**3 + Z**4
    assert irreducible_polynomial(1).coeff(z=5) == 0
    assert irreducible_polynomial(2) == MPoly.from_univariate([0, 0, 0, 0, *I2_COEFFS])


def test_is_polynomial_factored_forms():
    assert is_polynomial(1) == (1 + Z) ** 2 * Z**2 * T
    factored = (1 + Z) ** 4 * Z**4 * (24 * Z + 17) * (4 * Z + 1) * T**2 + (1 + Z) ** 2 * Z**2 * T
    assert is_polynomial(2) == factored
    assert is_polynomial(2).specialize(t=0).is_zero()


@pytest.mark.parametrize("g", [0, 3])
def test_unsupported_genus(g):
    with pytest.raises(UnsupportedGenus):
        enumerate_irreducible_shadows(g)
    with pytest.raises(UnsupportedGenus):
        is_polynomial(g)


def test_catalog_file(tmp_path):
    path = tmp_path / "g1.json"
    write_catalog(enumerate_irreducible_shadows(1), path)
    data = json.loads(path.read_text())
    assert data["coefficients"] == [1, 2, 1]
    assert data["shadows"]["2"] == [[[1, 3], [2, 4]]]
    assert b"\r" not in path.read_bytes()
