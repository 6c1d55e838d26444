"""Chord diagrams over a single backbone.

A diagram has vertices 1..n on the backbone and arcs (i, j), i < j, drawn in
the upper half-plane.  Each vertex is the endpoint of at most one arc.  The
genus is that of the fatgraph surface: with m arcs and r boundary components,
2g = 1 + m - r.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidDiagram, ParityViolation, ParseError

Arc = tuple[int, int]


@dataclass(frozen=True)
class Diagram:
    n: int
    arcs: tuple[Arc, ...] = ()
    _partner: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        arcs = tuple(sorted((int(i), int(j)) for i, j in self.arcs))
        if self.n < 0:
            raise InvalidDiagram("vertex count must be non-negative")
        partner = [0] * (self.n + 1)
        for i, j in arcs:
            if not 1 <= i < j <= self.n:
                raise InvalidDiagram(f"arc ({i},{j}) is not inside 1..{self.n} with i < j")
            if partner[i] or partner[j]:
                raise InvalidDiagram(f"vertex of arc ({i},{j}) is already paired")
            partner[i], partner[j] = j, i
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_partner", tuple(partner))

    @classmethod
    def matching(cls, arcs: Iterable[Arc]) -> Diagram:
        """A diagram whose vertices are exactly the arc endpoints."""
        arcs = list(arcs)
        return cls(2 * len(arcs), arcs)

    def partner(self, v: int) -> int:
        """Partner of vertex v, or 0 if v is unpaired."""
        return self._partner[v]

    @property
    def size(self) -> int:
        return len(self.arcs)

    def is_matching(self) -> bool:
        return 2 * len(self.arcs) == self.n

    def __str__(self) -> str:
        return format_diagram(self)


# ---------------------------------------------------------------------------
# text and JSON formats
# ---------------------------------------------------------------------------


def format_diagram(d: Diagram) -> str:
    return f"n={d.n};arcs=" + "".join(f"({i},{j})" for i, j in d.arcs)


def diagram_to_json(d: Diagram) -> dict:
    return {"n": d.n, "arcs": [[i, j] for i, j in d.arcs]}


_TEXT = re.compile(r"\s*n\s*=\s*(\d+)\s*;\s*arcs\s*=\s*")
_ARC = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse_diagram(text: str) -> Diagram:
    """Parse ``n=<int>;arcs=(i,j)...`` or the JSON form ``{"n":..,"arcs":[[i,j],..]}``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        try:
            n = data["n"]
            arcs = [tuple(a) for a in data["arcs"]]
            if not isinstance(n, int) or any(len(a) != 2 for a in arcs):
                raise TypeError
        except (KeyError, TypeError):
            raise ParseError("expected an object with integer 'n' and 'arcs' pairs") from None
        try:
            return Diagram(n, arcs)
        except InvalidDiagram as exc:
            raise ParseError(str(exc)) from None

    m = _TEXT.match(text)
    if not m:
        bad = len(text) - len(text.lstrip())
        raise ParseError("expected 'n=<int>;arcs='", *_position(text, bad))
    n = int(m.group(1))
    pos = m.end()
    arcs = []
    end = len(text.rstrip())
    while pos < end:
        am = _ARC.match(text, pos)
        if not am:
            raise ParseError("malformed arc, expected '(i,j)'", *_position(text, pos))
        arcs.append((int(am.group(1)), int(am.group(2))))
        pos = am.end()
    try:
        return Diagram(n, arcs)
    except InvalidDiagram as exc:
        raise ParseError(str(exc), *_position(text, m.end())) from None


# ---------------------------------------------------------------------------
# topology
# ---------------------------------------------------------------------------


def _relabel(arcs: Iterable[Arc]) -> Diagram:
    """Matching over the endpoints of ``arcs`` only, relabeled 1..2m."""
    arcs = list(arcs)
    pts = sorted(p for a in arcs for p in a)
    index = {p: k + 1 for k, p in enumerate(pts)}
    return Diagram(len(pts), [(index[i], index[j]) for i, j in arcs])


def boundary_components(d: Diagram) -> int:
    """Number of boundary components of the fatgraph of ``d``.

    Unpaired vertices are dropped; the 2m endpoints are read in backbone
    order and r is the number of cycles of (arc involution) o (rotation).
    """
    pts = [v for v in range(1, d.n + 1) if d.partner(v)]
    m2 = len(pts)
    if not m2:
        return 1
    index = {v: k for k, v in enumerate(pts)}
    swap = [index[d.partner(v)] for v in pts]
    seen = [False] * m2
    r = 0
    for start in range(m2):
        if seen[start]:
            continue
        r += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = swap[(k + 1) % m2]
    return r


def genus(d: Diagram) -> int:
    twice = 1 + len(d.arcs) - boundary_components(d)
    if twice % 2:
        raise ParityViolation(f"1 + m - r = {twice} is odd for {format_diagram(d)}")
    return twice // 2


def crosses(a: Arc, b: Arc) -> bool:
    (i, j), (k, l) = a, b
    return i < k < j < l or k < i < l < j


def _crossing_classes(arcs: Sequence[Arc]) -> list[list[Arc]]:
    parent = list(range(len(arcs)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(len(arcs)):
        for b in range(a + 1, len(arcs)):
            if crosses(arcs[a], arcs[b]):
                parent[find(a)] = find(b)
    groups: dict[int, list[Arc]] = {}
    for k, arc in enumerate(arcs):
        groups.setdefault(find(k), []).append(arc)
    return sorted(groups.values(), key=lambda g: g[0])


def component_arcs(d: Diagram) -> list[list[Arc]]:
    """Crossing-graph components as arc lists in the original labels."""
    return _crossing_classes(list(d.arcs))


def components(d: Diagram) -> list[Diagram]:
    """Connected components of the crossing graph, each relabeled on its own endpoints."""
    return [_relabel(group) for group in component_arcs(d)]


def is_irreducible(d: Diagram) -> bool:
    """Connected crossing graph on at least two arcs; a lone arc crosses nothing."""
    return len(d.arcs) >= 2 and len(component_arcs(d)) == 1


def _collapse_stacks(arcs: set[Arc]) -> set[Arc]:
    # keep the outermost arc of each stack
    return {(i, j) for i, j in arcs if (i - 1, j + 1) not in arcs}


def shadow(d: Diagram) -> Diagram:
    """Remove noncrossing arcs, drop unpaired vertices and collapse stacks, to a fixpoint."""
    arcs = list(d.arcs)
    while True:
        crossing = [a for a in arcs if any(crosses(a, b) for b in arcs)]
        relabeled = _relabel(crossing).arcs
        collapsed = _relabel(_collapse_stacks(set(relabeled))).arcs
        if list(collapsed) == arcs:
            return Diagram(2 * len(arcs), arcs)
        arcs = list(collapsed)


def irreducible_shadows(d: Diagram) -> list[Diagram]:
    """The irreducible shadows that the shadow of ``d`` decomposes into."""
    return components(shadow(d))


def is_gamma_diagram(d: Diagram, gamma: int) -> bool:
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    return all(genus(s) <= gamma for s in irreducible_shadows(d))


def stacks(d: Diagram) -> list[tuple[Arc, int]]:
    """Maximal stacks as (outermost arc, length)."""
    arcset = set(d.arcs)
    out = []
    for i, j in d.arcs:
        if (i - 1, j + 1) in arcset:
            continue
        length = 1
        while (i + length, j - length) in arcset:
            length += 1
        out.append(((i, j), length))
    return out


def is_tau_canonical_structure(d: Diagram, tau: int, gamma: int) -> bool:
    if tau < 1:
        raise ValueError("tau must be at least 1")
    if any(j == i + 1 for i, j in d.arcs):
        return False
    if any(length < tau for _, length in stacks(d)):
        return False
    return is_gamma_diagram(d, gamma)


def is_shape(d: Diagram) -> bool:
    """Matching whose stacks all have length one."""
    return d.is_matching() and all(length == 1 for _, length in stacks(d))


def shape_of(d: Diagram) -> Diagram:
    """Drop unpaired vertices and collapse every stack to one arc; noncrossing arcs stay."""
    arcs = _relabel(d.arcs).arcs
    return _relabel(_collapse_stacks(set(arcs)))


def one_arc_count(d: Diagram) -> int:
    return sum(1 for i, j in d.arcs if j == i + 1)


def blocks(d: Diagram) -> list[Diagram]:
    """Sub-diagrams over the backbone intervals spanned by components holding maximal arcs."""
    out = []
    for lo, hi in block_spans(d):
        inner = [(i - lo + 1, j - lo + 1) for i, j in d.arcs if lo <= i and j <= hi]
        out.append(Diagram(hi - lo + 1, inner))
    return out


def block_spans(d: Diagram) -> list[tuple[int, int]]:
    """Backbone intervals [lo, hi] of the blocks, in original labels."""
    arcs = list(d.arcs)
    maximal = [a for a in arcs if not any(b[0] < a[0] and a[1] < b[1] for b in arcs)]
    groups = component_arcs(d)
    owner = {arc: k for k, g in enumerate(groups) for arc in g}
    spans = set()
    for k in {owner[a] for a in maximal}:
        pts = [p for arc in groups[k] for p in arc]
        spans.add((min(pts), max(pts)))
    return sorted(spans)


# ---------------------------------------------------------------------------
# composition helpers
# ---------------------------------------------------------------------------


def concatenate(a: Diagram, b: Diagram) -> Diagram:
    shift = a.n
    return Diagram(a.n + b.n, list(a.arcs) + [(i + shift, j + shift) for i, j in b.arcs])


def nest(inner: Diagram, outer: Diagram, arc: Arc | None = None) -> Diagram:
    """Insert ``inner`` right after the left endpoint of ``arc`` in ``outer``.

    With ``arc`` omitted the outermost arc starting leftmost is used; for an
    outer diagram without arcs this reduces to concatenation.
    """
    if not outer.arcs:
        return concatenate(inner, outer)
    i, j = arc if arc is not None else outer.arcs[0]
    if (i, j) not in outer.arcs:
        raise InvalidDiagram(f"({i},{j}) is not an arc of the outer diagram")
    k = inner.n

    def move(v: int) -> int:
        return v + k if v > i else v

    arcs = [(move(x), move(y)) for x, y in outer.arcs]
    arcs += [(x + i, y + i) for x, y in inner.arcs]
    return Diagram(outer.n + k, arcs)


def random_diagram(rng, n: int, arc_fraction: float = 1.0) -> Diagram:
    """A random diagram on n vertices pairing about ``arc_fraction`` of them.

    ``rng`` is a :class:`random.Random`; the same seed gives the same diagram.
    """
    points = list(range(1, n + 1))
    rng.shuffle(points)
    paired = int(n * arc_fraction) // 2 * 2
    arcs = [tuple(sorted(points[k : k + 2])) for k in range(0, paired, 2)]
    return Diagram(n, arcs)


def genus_counts(diagrams: Iterable[Diagram]) -> Counter:
    return Counter(genus(d) for d in diagrams)


class GenusTable:
    """Counts keyed by (genus, size)."""

    def __init__(self, entries: dict[tuple[int, int], int] | None = None):
        self.entries: dict[tuple[int, int], int] = {}
        for (g, n), c in (entries or {}).items():
            if c < 0:
                raise ValueError("counts must be non-negative")
            if c:
                self.entries[(g, n)] = int(c)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenusTable):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"GenusTable({dict(sorted(self.entries.items()))})"

    def row(self, n: int) -> dict[int, int]:
        """Genus -> count at size n."""
        return {g: c for (g, m), c in sorted(self.entries.items()) if m == n}

    def total(self, n: int) -> int:
        return sum(self.row(n).values())

    def sizes(self) -> list[int]:
        return sorted({n for _, n in self.entries})

    def restrict(self, sizes) -> GenusTable:
        keep = set(sizes)
        return GenusTable({k: v for k, v in self.entries.items() if k[1] in keep})
