"""The acceptance criteria A1-A7, shared by ``gammafilt verify`` and the test suite.

Each criterion returns a :class:`CriterionResult` carrying a pass flag, a
one-line summary of what was measured and the elapsed time.  Time limits
are part of the criteria.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import asymptotics, diagram, genfun, oracle, shadows
from .algebra import MPoly
from .reference import CLT_TABLE, I1_COEFFS, I2_COEFFS, MEAN_AT_100, P1_TERMS, P2_TERMS

SEED = 20100
TABLE_CELLS = sorted(CLT_TABLE)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    measured: str
    seconds: float = 0.0
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        return f"{self.name} {self.status} ({self.seconds:.1f}s) {self.measured}"


def _timed(name: str, limit: float | None, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    start = time.perf_counter()
    passed, measured = body()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        passed = False
        measured += f"; exceeded {limit:.0f}s"
    return CriterionResult(name, passed, measured, elapsed)


# ---------------------------------------------------------------------------


def a1_shadow_catalogs(threads: int | None = None) -> CriterionResult:
    start = time.perf_counter()
    i1 = tuple(shadows.enumerate_irreducible_shadows(1, threads).counts())
    t1 = time.perf_counter() - start

    def body():
        i2 = tuple(shadows.enumerate_irreducible_shadows(2, threads).counts())
        ok = i1 == I1_COEFFS and t1 < 1.0 and i2 == I2_COEFFS
        return ok, f"I1={i1} in {t1:.2f}s, I2={i2}"

    result = _timed("A1", 3600.0, body)
    return CriterionResult(result.name, result.passed, result.measured, result.seconds + t1)


def a2_witness_polynomials(is2: MPoly | None = None) -> CriterionResult:
    """``is2`` replaces Is_2 (fault injection); the P_2 comparison must then fail."""

    def body():
        p1 = genfun.xpoly_terms(genfun.p_polynomial(1)) == P1_TERMS
        p2 = genfun.xpoly_terms(genfun.p_polynomial(2, is2)) == P2_TERMS
        v1 = genfun.verify_algebraic(1, 30)
        v2 = genfun.verify_algebraic(2, 30)
        return p1 and p2 and v1 and v2, f"P1 match={p1}, P2 match={p2}, algebraic(1,30)={v1}, algebraic(2,30)={v2}"

    return _timed("A2", None, body)


def _s_matches_shapes(gamma: int, max_arcs: int) -> bool:
    s = genfun.s_series(gamma, max_arcs)
    for n in range(max_arcs + 1):
        expected = oracle.count_shapes(n, gamma) if n else {(0, 0): 1}
        got = {(g, e): c for (_, g, e), c in s[n].terms()}
        if got != expected:
            return False
    return True


def a3_series_oracle(max_matching: int = 7, max_structure: int = 14, max_shape: int = 5) -> CriterionResult:
    def body():
        failures = []
        for gamma in (1, 2):
            h = genfun.h_series(gamma, max_matching)
            if genfun.genus_table(h) != oracle.matching_table(max_matching, gamma):
                failures.append(f"H{gamma}")
            for tau in (1, 2, 3):
                g = genfun.g_series(tau, gamma, max_structure)
                if genfun.genus_table(g) != oracle.structure_table(max_structure, tau, gamma):
                    failures.append(f"G{tau},{gamma}")
            if not _s_matches_shapes(gamma, max_shape):
                failures.append(f"S{gamma}")
        checked = f"H n<={max_matching}, G n<={max_structure}, S n<={max_shape}"
        return not failures, checked + (f"; mismatches {failures}" if failures else "; all equal")

    return _timed("A3", 15 * 60.0, body)


def a4_clt_table() -> CriterionResult:
    def body():
        worst, worst_gap = 0.0, 0.0
        for tau, gamma in TABLE_CELLS:
            rep = asymptotics.clt_params(tau, gamma)
            mu, s2 = CLT_TABLE[(tau, gamma)]
            worst = max(worst, abs(float(rep.mu) - mu), abs(float(rep.sigma2) - s2))
            worst_gap = max(worst_gap, float(rep.diagnostics["method_gap"]))
        ok = worst <= 1e-5 and worst_gap <= asymptotics.AGREEMENT_TOL
        return ok, f"max |table error|={worst:.2e}, max method gap={worst_gap:.2e}"

    return _timed("A4", 120.0, body)


def a5_distribution() -> CriterionResult:
    def body():
        parts, ok = [], True
        for tau, target in MEAN_AT_100.items():
            rep = asymptotics.gaussian_compare(tau, 1, 100)
            mean = float(rep.mean)
            ok &= abs(mean - target) <= 0.35
            parts.append(f"tau={tau} mean={mean:.4f}")
            if tau == 2:
                ok &= rep.tv_distance < 0.08
                parts.append(f"TV={rep.tv_distance:.4f}")
        return ok, ", ".join(parts)

    return _timed("A5", 300.0, body)


def _additivity(rng: random.Random, pairs: int) -> int:
    bad = 0
    for _ in range(pairs):
        a = diagram.random_diagram(rng, rng.randint(0, 12), rng.random())
        b = diagram.random_diagram(rng, rng.randint(0, 12), rng.random())
        total = diagram.genus(a) + diagram.genus(b)
        if diagram.genus(diagram.concatenate(a, b)) != total:
            bad += 1
        if b.arcs:
            arc = rng.choice(b.arcs)
            if diagram.genus(diagram.nest(a, b, arc)) != total:
                bad += 1
    return bad


def _shadow_laws(rng: random.Random, count: int) -> int:
    bad = 0
    for _ in range(count):
        d = diagram.random_diagram(rng, rng.randint(0, 20), rng.random())
        sh = diagram.shadow(d)
        if diagram.shadow(sh) != sh or diagram.genus(sh) != diagram.genus(d):
            bad += 1
    return bad


def _parity(max_arcs: int) -> int:
    bad = 0
    for n in range(max_arcs + 1):
        for m in oracle.perfect_matchings(n):
            r = diagram.boundary_components(diagram.Diagram.matching(m))
            bad += (1 + n - r) % 2
    return bad


def _double_factorial_sums(max_n: int) -> bool:
    h = genfun.h_series(2, max_n, t=1).ints()
    expected, df = [], 1
    for n in range(max_n + 1):
        expected.append(df)
        df *= 2 * n + 1
    return h == expected


def plateau_spread(tau: int, gamma: int, sizes=range(80, 121)) -> float:
    """Largest relative distance of n^(3/2) theta^n [z^n] G from the midpoint of its range."""
    values = [float(v) for v in asymptotics.subexponential_profile(tau, gamma, sizes).values()]
    mid = (max(values) + min(values)) / 2
    return max(abs(v / mid - 1) for v in values)


PLATEAU_CELLS = [(tau, gamma) for gamma in (1, 2) for tau in (1, 2, 3)]


def a6_properties(seed: int = SEED) -> CriterionResult:
    def body():
        rng = random.Random(seed)
        add_bad = _additivity(rng, 200)
        shadow_bad = _shadow_laws(rng, 200)
        parity_bad = _parity(7)
        df_ok = _double_factorial_sums(5)
        spread = max(plateau_spread(tau, gamma) for tau, gamma in PLATEAU_CELLS)
        ok = add_bad == 0 and shadow_bad == 0 and parity_bad == 0 and df_ok and spread <= 0.02
        return ok, (
            f"additivity failures={add_bad}, shadow failures={shadow_bad}, parity failures={parity_bad}, "
            f"(2n-1)!! sums={df_ok}, plateau spread={spread:.4f}"
        )

    return _timed("A6", None, body)


def a7_growth_rate(n: int = 100) -> CriterionResult:
    def body():
        worst, cell = 0.0, None
        for tau, gamma in TABLE_CELLS:
            ratio = float(asymptotics.coefficient_ratio(tau, gamma, n))
            dev = abs(ratio * float(asymptotics.theta(tau, gamma)) - 1)
            if dev > worst:
                worst, cell = dev, (tau, gamma)
        return worst <= 0.01, f"max |ratio*theta - 1| at n={n} is {worst:.4f} (tau, gamma)={cell}"

    return _timed("A7", None, body)


def run_all(quick: bool = False, threads: int | None = None, is2: MPoly | None = None) -> list[CriterionResult]:
    results = []
    if quick:
        results.append(CriterionResult("A1", True, "skipped (--quick)", skipped=True))
    else:
        results.append(a1_shadow_catalogs(threads))
    results.append(a2_witness_polynomials(is2))
    results.append(a3_series_oracle())
    results.append(a4_clt_table())
    results.append(a5_distribution())
    results.append(a6_properties())
    results.append(a7_growth_rate())
    return results
