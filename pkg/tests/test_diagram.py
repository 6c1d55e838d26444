from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammafilt.diagram import (
    Diagram,
    GenusTable,
    block_spans,
    blocks,
    boundary_components,
    components,
    concatenate,
    diagram_to_json,
    format_diagram,
    genus,
    irreducible_shadows,
    is_gamma_diagram,
    is_irreducible,
    is_shape,
    is_tau_canonical_structure,
    nest,
    one_arc_count,
    parse_diagram,
    random_diagram,
    shadow,
    shape_of,
    stacks,
)
from gammafilt.errors import InvalidDiagram, ParseError
from gammafilt.oracle import perfect_matchings

# A 2-matching with maximal arcs (1,6), (7,19), (17,20), (21,26), (23,28),
# five components and blocks over [1,6], [7,20], [21,28].
BLOCK_EXAMPLE = Diagram(
    28,
    [
        (1, 6), (2, 4), (3, 5), (7, 19), (17, 20), (8, 18), (9, 11),
        (10, 13), (12, 15), (14, 16), (21, 26), (23, 28), (22, 24), (25, 27),
    ],
)

# Shadow splits into a genus-1 and a genus-2 irreducible shadow: a 2-diagram, not a 1-diagram.
TWO_DIAGRAM = Diagram(20, [(1, 20), (2, 6), (3, 5), (4, 7), (9, 11), (12, 14), (13, 16), (15, 18), (17, 19)])


@st.composite
def diagrams(draw, max_n=20):
    n = draw(st.integers(0, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    fraction = draw(st.floats(0, 1))
    return random_diagram(random.Random(seed), n, fraction)


# ---- construction and formats ----------------------------------------------


def test_arcs_are_sorted():
    d = Diagram(4, [(2, 4), (1, 3)])
    assert d.arcs == ((1, 3), (2, 4))
    assert d.partner(1) == 3 and d.partner(4) == 2


@pytest.mark.parametrize(
    "n, arcs",
    [
        (3, [(1, 4)]),
        (4, [(1, 3), (3, 4)]),
        (4, [(2, 2)]),
        (4, [(3, 1)]),
        (4, [(1, 3), (1, 3)]),
    ],
)
def test_invalid_diagrams(n, arcs):
    with pytest.raises(InvalidDiagram):
        Diagram(n, arcs)


def test_text_round_trip():
    d = Diagram(6, [(1, 4), (2, 6)])
    text = format_diagram(d)
    assert text == "n=6;arcs=(1,4)(2,6)"
    assert parse_diagram(text) == d


def test_json_round_trip():
    d = Diagram(6, [(1, 4), (2, 6)])
    assert parse_diagram(json.dumps(diagram_to_json(d))) == d
    assert parse_diagram('{"n": 4, "arcs": [[1, 3], [2, 4]]}') == Diagram(4, [(1, 3), (2, 4)])


@pytest.mark.parametrize("text", ["arcs=(1,", "n=4;arcs=(1,3)(2,", "n=x;arcs=", "{\"n\": 4", "n=4;arcs=(1,5)"])
def test_parse_errors(text):
    with pytest.raises((ParseError, InvalidDiagram)):
        parse_diagram(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_diagram("n=4;arcs=(1,3)(2,")
    assert info.value.line == 1
    assert info.value.column > 1


@given(diagrams())
@settings(max_examples=100, deadline=None)
def test_format_parse_inverse(d):
    assert parse_diagram(format_diagram(d)) == d


# ---- genus -----------------------------------------------------------------


@pytest.mark.parametrize(
    "arcs, r, g",
    [
        ([(1, 2)], 2, 0),
        ([(1, 3), (2, 4)], 1, 1),
        ([(1, 4), (2, 5), (3, 6)], 2, 1),
        ([], 1, 0),
        ([(1, 4), (2, 3)], 3, 0),
    ],
)
def test_boundary_and_genus(arcs, r, g):
    d = Diagram.matching(arcs) if arcs else Diagram(0, [])
    assert boundary_components(d) == r
    assert genus(d) == g


def test_unpaired_vertices_do_not_change_genus():
    assert genus(Diagram(9, [(2, 5), (3, 8)])) == 1


@pytest.mark.parametrize("m", range(1, 6))
def test_parity_and_bounds_on_all_matchings(m):
    for arcs in perfect_matchings(m):
        d = Diagram.matching(arcs)
        r = boundary_components(d)
        assert (1 + m - r) % 2 == 0
        assert 0 <= genus(d) <= m // 2


# ---- shadows and components ------------------------------------------------


@pytest.mark.parametrize(
    "arcs, expected",
    [
        ([(1, 2)], []),
        ([(1, 6), (2, 5), (3, 8), (4, 7)], [(1, 3), (2, 4)]),
        ([(1, 3), (2, 4)], [(1, 3), (2, 4)]),
    ],
)
def test_shadow_examples(arcs, expected):
    assert shadow(Diagram.matching(arcs)).arcs == tuple(expected)


def test_shadow_needs_more_than_one_pass():
    # removing the noncrossing arc (3,4) leaves (2,5) and (1,6) stacked only afterwards
    d = Diagram(10, [(1, 7), (2, 6), (3, 4), (5, 9), (8, 10)])
    s = shadow(d)
    assert all(length == 1 for _, length in stacks(s))
    assert genus(s) == genus(d)


def test_components_examples():
    comps = components(Diagram.matching([(1, 3), (2, 4), (5, 6)]))
    assert sorted(c.arcs for c in comps) == [((1, 2),), ((1, 3), (2, 4))]
    assert components(Diagram(0, [])) == []
    assert len(components(BLOCK_EXAMPLE)) == 5


def test_block_example():
    assert block_spans(BLOCK_EXAMPLE) == [(1, 6), (7, 20), (21, 28)]
    assert [b.n for b in blocks(BLOCK_EXAMPLE)] == [6, 14, 8]
    assert genus(BLOCK_EXAMPLE) == sum(genus(c) for c in components(BLOCK_EXAMPLE))
    assert is_gamma_diagram(BLOCK_EXAMPLE, 2) and not is_gamma_diagram(BLOCK_EXAMPLE, 1)


@pytest.mark.parametrize("arcs", [[(1, 2)], [(1, 4), (2, 3)]])
def test_single_block(arcs):
    assert len(blocks(Diagram.matching(arcs))) == 1


@pytest.mark.parametrize(
    "arcs, expected",
    [
        ([(1, 3), (2, 4)], True),
        ([(1, 3), (2, 4), (5, 7), (6, 8)], False),
        ([(1, 2)], False),
    ],
)
def test_irreducible(arcs, expected):
    assert is_irreducible(Diagram.matching(arcs)) is expected


def test_two_diagram_example():
    parts = irreducible_shadows(TWO_DIAGRAM)
    assert sorted(genus(p) for p in parts) == [1, 2]
    assert is_gamma_diagram(TWO_DIAGRAM, 2)
    assert not is_gamma_diagram(TWO_DIAGRAM, 1)
    assert genus(TWO_DIAGRAM) == 3


def test_genus_two_shadow_is_not_one_diagram():
    d = Diagram.matching([(1, 3), (2, 5), (4, 7), (6, 8)])
    assert genus(d) == 2 and not is_gamma_diagram(d, 1)


@given(st.integers(0, 10), st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_noncrossing_is_one_diagram(k, seed):
    # nested and concatenated arcs only
    rng = random.Random(seed)
    d = Diagram(0, [])
    for _ in range(k):
        arc = Diagram(2, [(1, 2)])
        d = nest(d, arc) if rng.random() < 0.5 else concatenate(d, arc)
    assert shadow(d).arcs == ()
    assert is_gamma_diagram(d, 1)


# ---- structures and shapes -------------------------------------------------


@pytest.mark.parametrize(
    "arcs, n, tau, expected",
    [
        ([(1, 5), (2, 4)], 5, 2, True),
        ([(1, 3)], 3, 2, False),
        ([(1, 2)], 2, 1, False),
        ([(1, 3)], 3, 1, True),
    ],
)
def test_tau_canonical(arcs, n, tau, expected):
    assert is_tau_canonical_structure(Diagram(n, arcs), tau, 1) is expected


def test_stacks_and_shapes():
    d = Diagram(12, [(1, 10), (2, 9), (4, 6), (11, 12)])
    assert stacks(d) == [((1, 10), 2), ((4, 6), 1), ((11, 12), 1)]
    assert shape_of(d) == Diagram.matching([(1, 2), (3, 4)])
    assert one_arc_count(shape_of(d)) == 2
    assert is_shape(shape_of(d))
    assert not is_shape(Diagram.matching([(1, 4), (2, 3)]))


# ---- properties --------------------------------------------------------------


@given(diagrams(12), diagrams(12), st.integers(0, 100))
@settings(max_examples=200, deadline=None)
def test_genus_additive(a, b, pick):
    total = genus(a) + genus(b)
    assert genus(concatenate(a, b)) == total
    if b.arcs:
        arc = b.arcs[pick % len(b.arcs)]
        assert genus(nest(a, b, arc)) == total


@given(diagrams())
@settings(max_examples=200, deadline=None)
def test_shadow_idempotent_and_genus_preserving(d):
    s = shadow(d)
    assert shadow(s) == s
    assert genus(s) == genus(d)
    assert genus(d) == sum(genus(c) for c in irreducible_shadows(d))


@given(diagrams())
@settings(max_examples=100, deadline=None)
def test_shadow_has_no_stacks_or_noncrossing_arcs(d):
    s = shadow(d)
    assert all(length == 1 for _, length in stacks(s))
    assert all(len(c.arcs) >= 2 for c in components(s))
    assert s.is_matching()


def test_genus_table():
    table = GenusTable({(0, 2): 2, (1, 2): 1})
    assert table[(1, 2)] == 1 and table[(5, 2)] == 0
    assert table.row(2) == {0: 2, 1: 1}
    assert table.total(2) == 3
    assert table == GenusTable({(0, 2): 2, (1, 2): 1, (2, 2): 0})
