"""Brute-force counts used as ground truth for the generating functions.

Everything here enumerates diagrams explicitly and classifies each one with
the predicates of :mod:`gammafilt.diagram`; no generating function is used.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .diagram import (
    Diagram,
    GenusTable,
    genus,
    irreducible_shadows,
    is_shape,
    one_arc_count,
    stacks,
)
from .errors import SizeLimitExceeded

MAX_ARCS = 9
MAX_VERTICES = 16


@dataclass(frozen=True)
class OracleConfig:
    max_arcs: int = MAX_ARCS
    max_vertices: int = MAX_VERTICES
    gamma: int = 1
    tau: int = 1

    def __post_init__(self):
        if self.max_arcs > MAX_ARCS:
            raise SizeLimitExceeded(f"max_arcs is capped at {MAX_ARCS}")
        if self.max_vertices > MAX_VERTICES:
            raise SizeLimitExceeded(f"max_vertices is capped at {MAX_VERTICES}")


def perfect_matchings(n_arcs: int) -> Iterator[list[tuple[int, int]]]:
    """All (2n-1)!! perfect matchings of 1..2n, pairing the smallest free point first."""

    def rec(free: list[int]):
        if not free:
            yield []
            return
        first = free[0]
        for k in range(1, len(free)):
            rest = free[1:k] + free[k + 1 :]
            for tail in rec(rest):
                yield [(first, free[k])] + tail

    yield from rec(list(range(1, 2 * n_arcs + 1)))


def partial_structures(n: int, tau: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Arc lists of the partial matchings on 1..n without 1-arcs whose stacks all have length >= tau."""
    partner = [0] * (n + 2)

    def stack_length(i: int, j: int) -> int:
        length = 1
        while partner[i + length] == j - length and i + length < j - length:
            length += 1
        return length

    def finished_stack_ok(v: int) -> bool:
        # called once v+1 is decided: a stack whose outer arc ends at v is now complete
        i = partner[v]
        if i <= 0 or i > v:
            return True
        if partner[v + 1] == i - 1 and i > 1:
            return True
        return stack_length(i, v) >= tau

    def rec(v: int, opens: list[int]):
        if v > n:
            if not opens and finished_stack_ok(n):
                yield tuple((i, partner[i]) for i in range(1, n + 1) if partner[i] > i)
            return
        if len(opens) > n - v + 1:
            return
        # v unpaired
        if finished_stack_ok(v - 1):
            yield from rec(v + 1, opens)
        # v opens an arc
        if v < n and finished_stack_ok(v - 1):
            partner[v] = -1
            yield from rec(v + 1, opens + [v])
            partner[v] = 0
        # v closes an open arc
        for k, i in enumerate(opens):
            if v - i < 2:
                continue
            partner[i], partner[v] = v, i
            if finished_stack_ok(v - 1):
                yield from rec(v + 1, opens[:k] + opens[k + 1 :])
            partner[i], partner[v] = -1, 0

    yield from rec(1, [])


def _boundary_count(arcs) -> int:
    pts = sorted(p for a in arcs for p in a)
    index = {p: k for k, p in enumerate(pts)}
    swap = [0] * len(pts)
    for i, j in arcs:
        swap[index[i]] = index[j]
        swap[index[j]] = index[i]
    m2 = len(pts)
    seen = [False] * m2
    r = 0
    for s in range(m2):
        if not seen[s]:
            r += 1
            k = s
            while not seen[k]:
                seen[k] = True
                k = swap[(k + 1) % m2]
    return r


def _classify(arcs) -> tuple[int, int]:
    """(genus, largest genus among the irreducible shadows) of an arc list.

    The irreducible shadows are the crossing classes with at least two arcs,
    and collapsing stacks does not change their genus, so each class is
    measured directly.
    """
    m = len(arcs)
    if m < 2:
        return 0, 0
    parent = list(range(m))
    for a in range(m):
        i, j = arcs[a]
        for b in range(a + 1, m):
            k, l = arcs[b]
            if i < k < j < l or k < i < l < j:
                ra, rb = a, b
                while parent[ra] != ra:
                    ra = parent[ra]
                while parent[rb] != rb:
                    rb = parent[rb]
                parent[ra] = rb
    classes: dict[int, list] = {}
    for a in range(m):
        r = a
        while parent[r] != r:
            r = parent[r]
        classes.setdefault(r, []).append(arcs[a])
    top = 0
    for group in classes.values():
        if len(group) > 1:
            top = max(top, (1 + len(group) - _boundary_count(group)) // 2)
    return (1 + m - _boundary_count(arcs)) // 2, top


def _gamma_class(d: Diagram) -> tuple[int, int]:
    """Reference classification through the diagram module (shadow, components, genus)."""
    top = max((genus(s) for s in irreducible_shadows(d)), default=0)
    return genus(d), top


@lru_cache(maxsize=None)
def _matching_tally(n_arcs: int) -> Counter:
    return Counter(_classify(m) for m in perfect_matchings(n_arcs))


@lru_cache(maxsize=None)
def _structure_tally(n: int, tau: int) -> Counter:
    return Counter(_classify(arcs) for arcs in partial_structures(n, tau))


@lru_cache(maxsize=None)
def _shape_tally(n_arcs: int) -> Counter:
    tally = Counter()
    for m in perfect_matchings(n_arcs):
        d = Diagram.matching(m)
        if is_shape(d):
            g, top = _classify(m)
            tally[(g, top, one_arc_count(d))] += 1
    return tally


def count_matchings(n_arcs: int, gamma: int, config: OracleConfig | None = None) -> dict[int, int]:
    """Genus -> number of gamma-matchings with ``n_arcs`` arcs."""
    limit = (config or OracleConfig()).max_arcs
    if n_arcs > limit:
        raise SizeLimitExceeded(f"{n_arcs} arcs exceeds the limit of {limit}")
    row = Counter()
    for (g, top), c in _matching_tally(n_arcs).items():
        if top <= gamma:
            row[g] += c
    return dict(sorted(row.items()))


def count_structures(n: int, tau: int, gamma: int, config: OracleConfig | None = None) -> dict[int, int]:
    """Genus -> number of tau-canonical gamma-structures on ``n`` vertices (empty one included)."""
    limit = (config or OracleConfig()).max_vertices
    if n > limit:
        raise SizeLimitExceeded(f"{n} vertices exceeds the limit of {limit}")
    if tau < 1:
        raise ValueError("tau must be at least 1")
    row = Counter()
    for (g, top), c in _structure_tally(n, tau).items():
        if top <= gamma:
            row[g] += c
    return dict(sorted(row.items()))


def count_shapes(n_arcs: int, gamma: int, config: OracleConfig | None = None) -> dict[tuple[int, int], int]:
    """(genus, number of 1-arcs) -> number of gamma-shapes with ``n_arcs`` arcs."""
    limit = (config or OracleConfig()).max_arcs
    if n_arcs > limit:
        raise SizeLimitExceeded(f"{n_arcs} arcs exceeds the limit of {limit}")
    row = Counter()
    for (g, top, ones), c in _shape_tally(n_arcs).items():
        if top <= gamma:
            row[(g, ones)] += c
    return dict(sorted(row.items()))


def matching_table(max_arcs: int, gamma: int) -> GenusTable:
    return GenusTable({(g, n): c for n in range(max_arcs + 1) for g, c in count_matchings(n, gamma).items()})


def structure_table(max_vertices: int, tau: int, gamma: int) -> GenusTable:
    return GenusTable(
        {(g, n): c for n in range(max_vertices + 1) for g, c in count_structures(n, tau, gamma).items()}
    )


def brute_structures(n: int, tau: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Unpruned reference: every partial matching on 1..n filtered by the stack rules."""

    def rec(v: int, opens: list[int], arcs: list[tuple[int, int]]):
        if v > n:
            if not opens:
                yield Diagram(n, arcs)
            return
        yield from rec(v + 1, opens, arcs)
        yield from rec(v + 1, opens + [v], arcs)
        for k, i in enumerate(opens):
            yield from rec(v + 1, opens[:k] + opens[k + 1 :], arcs + [(i, v)])

    for d in rec(1, [], []):
        if any(j == i + 1 for i, j in d.arcs):
            continue
        if all(length >= tau for _, length in stacks(d)):
            yield d.arcs
