from __future__ import annotations

from math import prod

import pytest

from gammafilt.diagram import Diagram, genus, irreducible_shadows, is_tau_canonical_structure
from gammafilt.errors import SizeLimitExceeded
from gammafilt.oracle import (
    OracleConfig,
    _classify,
    brute_structures,
    count_matchings,
    count_shapes,
    count_structures,
    partial_structures,
    perfect_matchings,
)


def double_factorial(n):
    return prod(range(2 * n - 1, 0, -2))


@pytest.mark.parametrize("n", range(0, 7))
def test_matching_count(n):
    assert sum(1 for _ in perfect_matchings(n)) == double_factorial(n)


@pytest.mark.parametrize(
    "n, gamma, expected",
    [(2, 1, {0: 2, 1: 1}), (3, 2, {0: 5, 1: 10})],
)
def test_matching_examples(n, gamma, expected):
    assert count_matchings(n, gamma) == expected


@pytest.mark.parametrize("n", range(0, 6))
def test_no_exclusions_at_gamma_two(n):
    assert sum(count_matchings(n, 2).values()) == double_factorial(n)


@pytest.mark.parametrize("n", range(0, 8))
def test_gamma_one_below_gamma_two(n):
    one, two = count_matchings(n, 1), count_matchings(n, 2)
    assert all(c <= two.get(g, 0) for g, c in one.items())


def test_gamma_one_excludes_genus_two_shadows():
    assert sum(count_matchings(4, 1).values()) == 105 - 17


@pytest.mark.parametrize(
    "n, tau, gamma, expected",
    [(4, 2, 1, {0: 1}), (5, 2, 1, {0: 2}), (3, 1, 1, {0: 2})],
)
def test_structure_examples(n, tau, gamma, expected):
    assert count_structures(n, tau, gamma) == expected


def test_shape_examples():
    assert count_shapes(1, 1) == {(0, 1): 1}
    assert count_shapes(2, 1) == {(0, 2): 1, (1, 0): 1}


@pytest.mark.parametrize("n", range(0, 11))
@pytest.mark.parametrize("tau", [1, 2, 3])
def test_pruned_equals_unpruned(n, tau):
    assert sorted(partial_structures(n, tau)) == sorted(brute_structures(n, tau))


@pytest.mark.parametrize("n", range(0, 9))
def test_structures_satisfy_predicate(n):
    for arcs in partial_structures(n, 2):
        assert is_tau_canonical_structure(Diagram(n, arcs), 2, 2)


@pytest.mark.parametrize("m", range(2, 7))
def test_fast_classifier_agrees_with_diagram_module(m):
    for arcs in perfect_matchings(m):
        d = Diagram.matching(arcs)
        top = max((genus(s) for s in irreducible_shadows(d)), default=0)
        assert _classify(tuple(arcs)) == (genus(d), top)


def test_guardrails():
    with pytest.raises(SizeLimitExceeded):
        OracleConfig(max_arcs=10)
    with pytest.raises(SizeLimitExceeded):
        count_matchings(10, 1)
    with pytest.raises(SizeLimitExceeded):
        count_structures(17, 1, 1)
