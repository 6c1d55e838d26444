"""Catalogs of irreducible shadows and the polynomials I_g(z), Is_gamma(z, t)."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from . import _search
from .algebra import MPoly, T
from .diagram import Diagram, diagram_to_json
from .errors import UnsupportedGenus

SUPPORTED_GENERA = (1, 2)


def _check_genus(g: int) -> None:
    if g not in SUPPORTED_GENERA:
        raise UnsupportedGenus(f"genus {g} is not supported (only {SUPPORTED_GENERA})")


def arc_range(g: int) -> range:
    """Arc counts an irreducible genus-g shadow can have: 2g .. 6g-2."""
    return range(2 * g, 6 * g - 1)


@dataclass(frozen=True)
class ShadowCatalog:
    genus: int
    by_arc_count: dict[int, tuple[Diagram, ...]]

    def counts(self) -> list[int]:
        return [len(self.by_arc_count.get(n, ())) for n in arc_range(self.genus)]

    def __len__(self) -> int:
        return sum(len(v) for v in self.by_arc_count.values())

    def __iter__(self):
        for n in sorted(self.by_arc_count):
            yield from self.by_arc_count[n]

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "arc_counts": list(arc_range(self.genus)),
            "coefficients": self.counts(),
            "shadows": {
                str(n): [diagram_to_json(d)["arcs"] for d in self.by_arc_count[n]]
                for n in sorted(self.by_arc_count)
            },
        }


def _default_workers() -> int:
    return os.cpu_count() or 1


def shadows_with_arcs(g: int, n_arcs: int, threads: int | None = None) -> tuple[Diagram, ...]:
    """All irreducible genus-g shadows on ``n_arcs`` arcs, lexicographically ordered."""
    _check_genus(g)
    if n_arcs not in arc_range(g):
        return ()
    threads = _default_workers() if threads is None else threads
    if threads <= 1 or n_arcs < 8:
        found = _search.run_search(n_arcs, g)
    else:
        # fork on the partner of the first point; merge order is fixed by the sort below
        partners = range(2, 2 * n_arcs)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(_search.run_search, [n_arcs] * len(partners), [g] * len(partners), partners)
            found = [arcs for part in parts for arcs in part]
    found.sort()
    return tuple(Diagram(2 * n_arcs, arcs) for arcs in found)


@lru_cache(maxsize=None)
def _enumerate(g: int, threads: int | None) -> ShadowCatalog:
    return ShadowCatalog(g, {n: shadows_with_arcs(g, n, threads) for n in arc_range(g)})


def enumerate_irreducible_shadows(g: int, threads: int | None = None) -> ShadowCatalog:
    _check_genus(g)
    return _enumerate(g, threads)


def irreducible_polynomial(g: int, threads: int | None = None) -> MPoly:
    """I_g(z): irreducible genus-g shadows counted by arcs."""
    catalog = enumerate_irreducible_shadows(g, threads)
    return MPoly({(n, 0, 0): c for n, c in zip(arc_range(g), catalog.counts())})


def is_polynomial(gamma: int, threads: int | None = None) -> MPoly:
    """Is_gamma(z, t) = sum over 1 <= g <= gamma of I_g(z) t^g."""
    _check_genus(gamma)
    total = MPoly()
    for g in range(1, gamma + 1):
        total = total + irreducible_polynomial(g, threads) * T ** g
    return total


def write_catalog(catalog: ShadowCatalog, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(catalog.to_json(), fh, indent=1)
        fh.write("\n")
