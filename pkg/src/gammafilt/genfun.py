"""Generating functions of gamma-matchings, gamma-shapes and tau-canonical gamma-structures.

H_gamma(z, t) is the unique series solution of

    H = 1 + z H^2 + Is_gamma(z H^2 / (1 - z H^2), t),

obtained by fixpoint iteration.  Shapes and structures follow by substitution
into H.  Throughout, t marks genus and z marks arcs (H, S) or vertices (G).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import ONE, E, GenSeries, MPoly, Z, rational_expand, series_compose
from .diagram import GenusTable
from .errors import DegenerateDistribution
from .shadows import SUPPORTED_GENERA, is_polynomial

XPoly = list  # coefficients of X^0, X^1, ... as MPoly in z, t


@dataclass(frozen=True)
class FunctionalSystem:
    """The data that pins down H_gamma: the bound, its Is polynomial and a truncation order."""

    gamma: int
    order: int
    is_poly: MPoly = field(default=None)

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError("gamma must be at least 1")
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if self.is_poly is None:
            object.__setattr__(self, "is_poly", is_polynomial(self.gamma))

    def solve(self, t: int | None = None) -> GenSeries:
        return _solve_h(self.is_poly, self.order, t)


def _solve_h(is_poly: MPoly, order: int, t: int | None) -> GenSeries:
    if t is not None:
        is_poly = is_poly.specialize(t=t)
    h = GenSeries.one(0)
    for k in range(1, order + 1):
        h = GenSeries(h.coeffs, k)
        zh2 = GenSeries.z(k) * h * h
        w = zh2 * (1 - zh2).invert()
        h = 1 + zh2 + series_compose(is_poly, w)
    return h


@lru_cache(maxsize=64)
def _cached_h(gamma: int, order: int, t: int | None) -> GenSeries:
    return _solve_h(is_polynomial(gamma), order, t)


def h_series(gamma: int, order: int, t: int | None = None, is_poly: MPoly | None = None) -> GenSeries:
    """H_gamma(z, t) to z^order; with ``t`` given, the specialization H_gamma(z, t)."""
    if is_poly is not None:
        return _solve_h(is_poly, order, t)
    if gamma not in SUPPORTED_GENERA:
        is_polynomial(gamma)  # raises UnsupportedGenus
    return _cached_h(gamma, order, t)


# ---------------------------------------------------------------------------
# the algebraic equation P_gamma(z, t, X) = 0
# ---------------------------------------------------------------------------


def _xmul(a: XPoly, b: XPoly) -> XPoly:
    out = [MPoly() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def _xadd(a: XPoly, b: XPoly) -> XPoly:
    n = max(len(a), len(b))
    a = a + [MPoly()] * (n - len(a))
    b = b + [MPoly()] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _xpow(a: XPoly, k: int) -> XPoly:
    out = [ONE]
    for _ in range(k):
        out = _xmul(out, a)
    return out


def _xtrim(a: XPoly) -> XPoly:
    a = list(a)
    while len(a) > 1 and not a[-1]:
        a.pop()
    return a


def p_polynomial(gamma: int, is_poly: MPoly | None = None) -> XPoly:
    """P_gamma(z, t, X) as its list of X-coefficients.

    P = (1 - zX^2)^K (-1 + X - zX^2) - (1 - zX^2)^K Is(zX^2 / (1 - zX^2), t)
    with K = 6 gamma - 2, which clears every denominator.
    """
    if is_poly is None:
        is_poly = is_polynomial(gamma)
    k_max = max(6 * gamma - 2, is_poly.degree("z"))
    one_minus = [ONE, MPoly(), -Z]  # 1 - z X^2
    zx2 = [MPoly(), MPoly(), Z]  # z X^2
    powers = [_xpow(one_minus, j) for j in range(k_max + 1)]
    result = _xmul(powers[k_max], [-ONE, ONE, -Z])
    for n, c_n in is_poly.split("z").items():
        term = _xmul(_xpow(zx2, n), powers[k_max - n])
        result = _xadd(result, [-(c_n * x) for x in term])
    return _xtrim(result)


def xpoly_terms(p: XPoly) -> dict[tuple[int, int, int], int]:
    """Flatten to {(deg_X, deg_z, deg_t): coefficient}."""
    out = {}
    for k, c in enumerate(p):
        for (dz, dt, _), v in c.terms():
            out[(k, dz, dt)] = v
    return out


def xpoly_str(p: XPoly) -> str:
    parts = []
    for (k, dz, dt), v in sorted(xpoly_terms(p).items()):
        mono = "*".join(
            f"{name}^{d}" if d > 1 else name for name, d in (("X", k), ("z", dz), ("t", dt)) if d
        )
        parts.append(f"{v}*{mono}" if mono else str(v))
    return " + ".join(parts).replace("+ -", "- ") or "0"


def substitute_x(p: XPoly, h: GenSeries) -> GenSeries:
    """P(z, t, h(z, t)) modulo z^(order+1)."""
    order = h.order
    acc = GenSeries.from_mpoly(p[-1], order)
    for c in reversed(p[:-1]):
        acc = acc * h + GenSeries.from_mpoly(c, order)
    return acc


def verify_algebraic(gamma: int, order: int, h: GenSeries | None = None, is_poly: MPoly | None = None) -> bool:
    """Whether P_gamma(z, t, H) vanishes to z^order."""
    if h is None:
        h = h_series(gamma, order)
    elif h.order < order:
        raise ValueError("series is truncated below the requested order")
    residual = substitute_x(p_polynomial(gamma, is_poly), h.truncate(order))
    return all(c.is_zero() for c in residual.coeffs)


def inverse_form_residual(gamma: int, order: int, z, t) -> object:
    """|1/H - 1 + z H + Is(w, t)/H| at numeric (z, t) for the truncated H, w = z H^2/(1 - z H^2).

    This is the reciprocal form of the functional equation; for small z the
    residual is of the size of the truncation error.
    """
    coeffs = h_series(gamma, order)
    h = sum(c.evaluate(t=t) * z**n for n, c in enumerate(coeffs.coeffs))
    w = z * h * h / (1 - z * h * h)
    is_val = is_polynomial(gamma).evaluate(z=w, t=t)
    return abs(1 / h - (1 - (z * h + is_val / h)))


# ---------------------------------------------------------------------------
# shapes and structures
# ---------------------------------------------------------------------------


def s_series(gamma: int, order: int) -> GenSeries:
    """S_gamma(z, t, e): gamma-shapes by arcs (z), genus (t) and 1-arcs (e)."""
    den = 1 + 2 * Z - Z * E
    prefactor = rational_expand(1 + Z, den, order)
    inner = rational_expand(Z * (1 + Z), den * den, order)
    return prefactor * series_compose(h_series(gamma, order), inner)


def structure_substitution(tau: int, order: int) -> tuple[GenSeries, GenSeries]:
    """The prefactor 1/(u z^2 - z + 1) and the argument u z^2/(u z^2 - z + 1)^2.

    With D = z^(2 tau) - z^2 + 1 one has u z^2 = z^(2 tau)/D, so both are
    rational functions with denominator z^(2 tau) + (1 - z) D.
    """
    if tau < 1:
        raise ValueError("tau must be at least 1")
    lead = Z ** (2 * tau)
    d = lead - Z ** 2 + 1
    den = lead + (1 - Z) * d
    prefactor = rational_expand(d, den, order)
    argument = rational_expand(lead * d, den * den, order)
    return prefactor, argument


def g_series(tau: int, gamma: int, order: int, t: int | None = None) -> GenSeries:
    """G_{tau,gamma}(z, t): tau-canonical gamma-structures by vertices (z) and genus (t)."""
    prefactor, argument = structure_substitution(tau, order)
    h = h_series(gamma, order // argument.valuation(), t)
    return prefactor * series_compose(h, argument)


def genus_table(series: GenSeries, sizes=None) -> GenusTable:
    """[z^n t^g] of a series in z, t as a (g, n) table."""
    sizes = range(series.order + 1) if sizes is None else sizes
    entries = {}
    for n in sizes:
        for (_, g, e), c in series[n].terms():
            if e:
                raise ValueError("series still depends on e")
            entries[(g, n)] = c
    return GenusTable(entries)


def genus_distribution(tau: int, gamma: int, n: int, series: GenSeries | None = None) -> list[Fraction]:
    """Exact P(genus = g) for g = 0..floor(n/2) over tau-canonical gamma-structures on n vertices."""
    if series is None:
        series = g_series(tau, gamma, n)
    if series.order < n:
        raise ValueError("series is truncated below n")
    coeff = series[n]
    total = sum(c for _, c in coeff.terms())
    if total == 0:
        raise DegenerateDistribution(f"no structures on {n} vertices")
    return [Fraction(coeff.coeff(t=g), total) for g in range(n // 2 + 1)]
