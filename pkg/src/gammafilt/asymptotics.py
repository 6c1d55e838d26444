"""Singularity analysis of H_gamma and G_{tau,gamma} and the resulting genus CLT.

The dominant singularity rho_gamma(s) of H_gamma(z, e^s) is the critical point
of Phi(z, X) = P_gamma(z, e^s, X): Phi = Phi_X = 0.  The structure series has
its singularity theta_{tau,gamma}(s) where psi_tau(z) = rho_gamma(s), and the
genus of a random structure on n vertices is asymptotically normal with

    mu = -theta'(0)/theta(0),   sigma^2 = (theta'(0)/theta(0))^2 - theta''(0)/theta(0).

Derivatives in s are obtained twice: by propagating truncated Taylor series
through the defining equations, and by Richardson-extrapolated finite
differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .algebra import MPoly, Z, bigfloat, default_precision, sylvester_resultant, working_precision
from .errors import (
    ConvergenceFailure,
    DegenerateCritical,
    DominanceViolation,
    MethodDisagreement,
)
from .genfun import XPoly, g_series, genus_distribution, h_series, p_polynomial

SEED_ORDER = 60
CONTINUATION_STEP = Fraction(1, 100)
FD_STEP = Fraction(1, 1000)
AGREEMENT_TOL = 1e-7
DISAGREEMENT_LIMIT = 1e-6
RESULTANT_TOL = 1e-20


# ---------------------------------------------------------------------------
# truncated Taylor series in s
# ---------------------------------------------------------------------------


class Jet:
    """Taylor polynomial in s truncated after s^order."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @classmethod
    def constant(cls, x, order: int) -> Jet:
        return cls([x] + [0] * order)

    @classmethod
    def exp_s(cls, order: int) -> Jet:
        """e^s."""
        return cls([1 / mpmath.factorial(k) for k in range(order + 1)])

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def _lift(self, other) -> Jet:
        return other if isinstance(other, Jet) else Jet.constant(other, self.order)

    def __add__(self, other) -> Jet:
        other = self._lift(other)
        return Jet([a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self) -> Jet:
        return Jet([-a for a in self.c])

    def __sub__(self, other) -> Jet:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Jet:
        return self._lift(other) - self

    def __mul__(self, other) -> Jet:
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.c])
        n = self.order
        out = [0] * (n + 1)
        for i, a in enumerate(self.c):
            for j in range(n + 1 - i):
                out[i + j] += a * other.c[j]
        return Jet(out)

    __rmul__ = __mul__

    def inverse(self) -> Jet:
        a = self.c
        b = [1 / mpmath.mpf(a[0])]
        for m in range(1, len(a)):
            b.append(-sum(a[k] * b[m - k] for k in range(1, m + 1)) * b[0])
        return Jet(b)

    def __truediv__(self, other) -> Jet:
        if isinstance(other, Jet):
            return self * other.inverse()
        return Jet([a / other for a in self.c])

    def __rtruediv__(self, other) -> Jet:
        return self._lift(other) * self.inverse()


# ---------------------------------------------------------------------------
# the critical system
# ---------------------------------------------------------------------------


def _xderiv(p: XPoly) -> XPoly:
    return [c * k for k, c in enumerate(p)][1:] or [MPoly()]


def _zderiv(p: XPoly) -> XPoly:
    return [c.diff("z") for c in p]


def _tderiv(p: XPoly) -> XPoly:
    return [c.diff("t") for c in p]


def eval_xpoly(p: XPoly, z, t, x):
    acc = p[-1].evaluate(z=z, t=t)
    for c in reversed(p[:-1]):
        acc = acc * x + c.evaluate(z=z, t=t)
    return acc


@dataclass(frozen=True)
class CriticalSystem:
    """P_gamma and the partial derivatives needed around its critical point."""

    gamma: int
    p: tuple
    p_x: tuple
    p_xx: tuple
    p_z: tuple
    p_xz: tuple
    p_t: tuple

    @classmethod
    def build(cls, gamma: int, is_poly: MPoly | None = None) -> CriticalSystem:
        p = p_polynomial(gamma, is_poly)
        p_x = _xderiv(p)
        return cls(
            gamma,
            tuple(p),
            tuple(p_x),
            tuple(_xderiv(p_x)),
            tuple(_zderiv(p)),
            tuple(_zderiv(p_x)),
            tuple(_tderiv(p)),
        )

    def residuals(self, z, t, x):
        return eval_xpoly(list(self.p), z, t, x), eval_xpoly(list(self.p_x), z, t, x)

    def jacobian(self, z, t, x):
        """d(Phi, Phi_X)/d(z, X)."""
        return (
            (eval_xpoly(list(self.p_z), z, t, x), eval_xpoly(list(self.p_x), z, t, x)),
            (eval_xpoly(list(self.p_xz), z, t, x), eval_xpoly(list(self.p_xx), z, t, x)),
        )


@lru_cache(maxsize=8)
def critical_system(gamma: int) -> CriticalSystem:
    return CriticalSystem.build(gamma)


@dataclass(frozen=True)
class SingularPoint:
    z: mpmath.mpf
    X: mpmath.mpf
    s: mpmath.mpf
    residual: tuple = ()
    phi_z: mpmath.mpf = None
    phi_xx: mpmath.mpf = None
    resultant_ratio: mpmath.mpf = None


def _solve2(j, rhs):
    (a, b), (c, d) = j
    det = a * d - b * c
    if det == 0:
        raise ConvergenceFailure("singular Jacobian in Newton step")
    return (d * rhs[0] - b * rhs[1]) / det, (a * rhs[1] - c * rhs[0]) / det


def newton_critical(system: CriticalSystem, t, z0, x0, max_iter: int = 200):
    """Newton iteration for Phi = Phi_X = 0 at fixed t."""
    z, x = bigfloat(z0), bigfloat(x0)
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps - 5))
    for _ in range(max_iter):
        f = system.residuals(z, t, x)
        dz, dx = _solve2(system.jacobian(z, t, x), f)
        # damp steps that would leave the positive quadrant
        lam = mpmath.mpf(1)
        while z - lam * dz <= 0 and lam > mpmath.mpf(2) ** -30:
            lam /= 2
        z, x = z - lam * dz, x - lam * dx
        if abs(dz) <= tol * abs(z) and abs(dx) <= tol * max(1, abs(x)):
            return z, x
    raise ConvergenceFailure(f"Newton did not converge (|dz|={mpmath.nstr(abs(dz), 5)})")


def seed_from_series(gamma: int, order: int = SEED_ORDER) -> tuple[mpmath.mpf, mpmath.mpf]:
    """(z0, X0): coefficient ratio of H_gamma(z, 1) and the truncated series at z0."""
    coeffs = h_series(gamma, order + 1, t=1).ints()
    z0 = mpmath.mpf(coeffs[order]) / coeffs[order + 1]
    x0 = mpmath.polyval(list(reversed(coeffs)), z0)
    return z0, x0


def _resultant_ratio(system: CriticalSystem, z, t):
    p = [c.evaluate(z=z, t=t) for c in system.p]
    q = [c.evaluate(z=z, t=t) for c in system.p_x]
    res = sylvester_resultant(p, q)
    scale = mpmath.norm(p) ** (len(q) - 1) * mpmath.norm(q) ** (len(p) - 1)
    return abs(res) / scale


def _certify(system: CriticalSystem, z, x, s, check_resultant: bool) -> SingularPoint:
    t = mpmath.exp(s)
    f = system.residuals(z, t, x)
    phi_z = eval_xpoly(list(system.p_z), z, t, x)
    phi_xx = eval_xpoly(list(system.p_xx), z, t, x)
    tiny = mpmath.mpf(10) ** (-(mpmath.mp.dps // 3))
    if abs(phi_z) < tiny or abs(phi_xx) < tiny:
        raise DegenerateCritical(f"Phi_z={mpmath.nstr(phi_z, 5)}, Phi_XX={mpmath.nstr(phi_xx, 5)}")
    ratio = _resultant_ratio(system, z, t) if check_resultant else None
    return SingularPoint(z, x, s, tuple(abs(v) for v in f), phi_z, phi_xx, ratio)


@lru_cache(maxsize=256)
def _rho_cached(gamma: int, s: Fraction, digits: int, check_resultant: bool) -> SingularPoint:
    system = critical_system(gamma)
    with working_precision(digits):
        z, x = seed_from_series(gamma)
        z, x = newton_critical(system, mpmath.mpf(1), z, x)
        if s != 0:
            steps = max(1, int(abs(s) / CONTINUATION_STEP) + (abs(s) % CONTINUATION_STEP != 0))
            for k in range(1, steps + 1):
                sk = bigfloat(s) * k / steps
                z, x = newton_critical(system, mpmath.exp(sk), z, x)
        return _certify(system, z, x, bigfloat(s), check_resultant)


def rho(gamma: int, s=0, digits: int | None = None, check_resultant: bool = True) -> SingularPoint:
    """Dominant singularity of H_gamma(z, e^s), continued from s = 0."""
    s = Fraction(s).limit_denominator(10**12) if not isinstance(s, Fraction) else s
    if abs(s) > Fraction(1, 10):
        raise ValueError("|s| must not exceed 0.1")
    digits = default_precision() if digits is None else digits
    return _rho_cached(gamma, s, digits, check_resultant)


def rho_jet(gamma: int, order: int = 2, digits: int | None = None) -> tuple[Jet, Jet]:
    """Taylor coefficients of (rho_gamma(s), pi_gamma(s)) at s = 0.

    At each order k the unknown coefficients enter the equations linearly
    through the Jacobian at s = 0, so they are read off by one linear solve.
    """
    digits = default_precision() if digits is None else digits
    base = rho(gamma, 0, digits, check_resultant=False)
    system = critical_system(gamma)
    with working_precision(digits):
        z = [base.z] + [mpmath.mpf(0)] * order
        x = [base.X] + [mpmath.mpf(0)] * order
        jac = system.jacobian(base.z, mpmath.mpf(1), base.X)
        t = Jet.exp_s(order)
        for k in range(1, order + 1):
            f0, f1 = system.residuals(Jet(z), t, Jet(x))
            dz, dx = _solve2(jac, (f0.c[k], f1.c[k]))
            z[k], x[k] = -dz, -dx
        return Jet(z), Jet(x)


# ---------------------------------------------------------------------------
# structures
# ---------------------------------------------------------------------------


def structure_polynomials(tau: int) -> tuple[MPoly, MPoly, MPoly]:
    """(A, B, N) with psi_tau = A / B and B = N^2; N is the numerator of u z^2 - z + 1."""
    lead = Z ** (2 * tau)
    d = lead - Z ** 2 + 1
    num = lead + (1 - Z) * d
    return lead * d, num * num, num


def _coeff_list(p: MPoly) -> list[int]:
    return [p.coeff(z=k) for k in range(p.degree("z") + 1)]


def _psi_equation(tau: int, r):
    a, b, _ = structure_polynomials(tau)
    ca, cb = _coeff_list(a), _coeff_list(b)
    n = max(len(ca), len(cb))
    ca += [0] * (n - len(ca))
    cb += [0] * (n - len(cb))
    return [x - r * y for x, y in zip(ca, cb)]


def _roots(coeffs):
    """All complex roots of a polynomial given constant term first."""
    hi = list(reversed(coeffs))
    while hi and hi[0] == 0:
        hi.pop(0)
    return mpmath.polyroots(hi, maxsteps=400, extraprec=4 * mpmath.mp.prec)


def _newton_real(coeffs, z):
    hi = list(reversed(coeffs))
    dhi = [c * (len(hi) - 1 - k) for k, c in enumerate(hi[:-1])]
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps - 5))
    for _ in range(100):
        step = mpmath.polyval(hi, z) / mpmath.polyval(dhi, z)
        z -= step
        if abs(step) <= tol * abs(z):
            return z
    raise ConvergenceFailure("Newton did not converge for psi(z) = rho")


@dataclass(frozen=True)
class ThetaReport:
    theta: mpmath.mpf
    pole_modulus: mpmath.mpf
    next_modulus: mpmath.mpf
    residual: mpmath.mpf


@lru_cache(maxsize=256)
def _theta0_cached(tau: int, gamma: int, digits: int) -> ThetaReport:
    r = rho(gamma, 0, digits).z
    with working_precision(digits):
        eq = _psi_equation(tau, r)
        roots = sorted(_roots(eq), key=abs)
        smallest = roots[0]
        tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
        if abs(smallest.imag) > tol or smallest.real <= 0:
            raise DominanceViolation(f"minimal-modulus solution {smallest} is not positive real")
        theta = _newton_real(eq, smallest.real)
        next_mod = abs(roots[1]) if len(roots) > 1 else mpmath.inf
        if next_mod - theta <= tol:
            raise DominanceViolation("minimal-modulus solution is not unique")
        _, _, num = structure_polynomials(tau)
        poles = _roots(_coeff_list(num))
        pole_mod = min(abs(p) for p in poles)
        if pole_mod <= theta:
            raise DominanceViolation(f"pole of modulus {mpmath.nstr(pole_mod, 10)} is not beyond theta")
        a, b, _ = structure_polynomials(tau)
        residual = abs(a.evaluate(z=theta) / b.evaluate(z=theta) - r)
        return ThetaReport(theta, pole_mod, next_mod, residual)


def theta(tau: int, gamma: int, s=0, digits: int | None = None) -> mpmath.mpf:
    """Dominant singularity of G_{tau,gamma}(z, e^s)."""
    if not 1 <= tau <= 10:
        raise ValueError("tau must lie in 1..10")
    digits = default_precision() if digits is None else digits
    base = _theta0_cached(tau, gamma, digits)
    if s == 0:
        return base.theta
    r = rho(gamma, s, digits, check_resultant=False).z
    with working_precision(digits):
        return _newton_real(_psi_equation(tau, r), base.theta)


def theta_report(tau: int, gamma: int, digits: int | None = None) -> ThetaReport:
    digits = default_precision() if digits is None else digits
    return _theta0_cached(tau, gamma, digits)


def theta_jet(tau: int, gamma: int, order: int = 2, digits: int | None = None) -> Jet:
    """Taylor coefficients of theta_{tau,gamma}(s) at 0 from A(theta) - rho(s) B(theta) = 0."""
    digits = default_precision() if digits is None else digits
    r, _ = rho_jet(gamma, order, digits)
    th0 = theta(tau, gamma, 0, digits)
    a, b, _ = structure_polynomials(tau)
    with working_precision(digits):
        q_z = a.diff("z").evaluate(z=th0) - r.c[0] * b.diff("z").evaluate(z=th0)
        th = [th0] + [mpmath.mpf(0)] * order
        for k in range(1, order + 1):
            jet = Jet(th)
            val = a.evaluate(z=jet) - r * b.evaluate(z=jet)
            th[k] = -val.c[k] / q_z
        return Jet(th)


@dataclass(frozen=True)
class CltReport:
    tau: int
    gamma: int
    rho0: mpmath.mpf
    theta0: mpmath.mpf
    mu: mpmath.mpf
    sigma2: mpmath.mpf
    mu_fd: mpmath.mpf
    sigma2_fd: mpmath.mpf
    diagnostics: dict = field(default_factory=dict)

    def row(self) -> dict:
        return {
            "tau": self.tau,
            "gamma": self.gamma,
            "mu": self.mu,
            "sigma2": self.sigma2,
            "theta0": self.theta0,
            "rho0": self.rho0,
        }


def _moments(th0, d1, d2):
    ratio = d1 / th0
    return -ratio, ratio ** 2 - d2 / th0


def finite_difference_moments(tau: int, gamma: int, digits: int | None = None, h=FD_STEP):
    """(mu, sigma^2) from central differences of theta(s) with one Richardson level."""
    digits = default_precision() if digits is None else digits
    h = Fraction(h)
    vals = {k: theta(tau, gamma, k * h / 2, digits) for k in (-2, -1, 0, 1, 2)}
    with working_precision(digits):
        hh = bigfloat(h)
        th0 = vals[0]
        d1_h = (vals[2] - vals[-2]) / (2 * hh)
        d1_half = (vals[1] - vals[-1]) / hh
        d2_h = (vals[2] - 2 * th0 + vals[-2]) / hh ** 2
        d2_half = (vals[1] - 2 * th0 + vals[-1]) / (hh / 2) ** 2
        d1 = (4 * d1_half - d1_h) / 3
        d2 = (4 * d2_half - d2_h) / 3
        return _moments(th0, d1, d2)


def clt_params(tau: int, gamma: int, digits: int | None = None) -> CltReport:
    if not 1 <= tau <= 6:
        raise ValueError("tau must lie in 1..6")
    digits = default_precision() if digits is None else digits
    point = rho(gamma, 0, digits)
    report = theta_report(tau, gamma, digits)
    jet = theta_jet(tau, gamma, 2, digits)
    with working_precision(digits):
        mu, sigma2 = _moments(jet.c[0], jet.c[1], 2 * jet.c[2])
        mu_fd, sigma2_fd = finite_difference_moments(tau, gamma, digits)
        gap = max(abs(mu - mu_fd), abs(sigma2 - sigma2_fd))
        if gap > DISAGREEMENT_LIMIT:
            raise MethodDisagreement(f"implicit and finite-difference moments differ by {mpmath.nstr(gap, 5)}")
        diagnostics = {
            "phi_residual": max(point.residual),
            "phi_z": point.phi_z,
            "phi_xx": point.phi_xx,
            "resultant_ratio": point.resultant_ratio,
            "psi_residual": report.residual,
            "pole_modulus": report.pole_modulus,
            "method_gap": gap,
            "methods_agree": gap <= AGREEMENT_TOL,
            "theta_positive": 0 < report.theta < 1,
        }
        return CltReport(tau, gamma, point.z, report.theta, mu, sigma2, mu_fd, sigma2_fd, diagnostics)


# ---------------------------------------------------------------------------
# finite-n comparisons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistributionReport:
    tau: int
    gamma: int
    n: int
    exact: list
    gaussian: list
    mean: Fraction
    variance: Fraction
    tv_distance: float
    mu: float
    sigma2: float


def gaussian_compare(tau: int, gamma: int, n: int, digits: int | None = None) -> DistributionReport:
    """Exact genus law at size n against the normal N(mu n, sigma^2 n) binned to unit cells."""
    digits = default_precision() if digits is None else digits
    probs = genus_distribution(tau, gamma, n)
    clt = clt_params(tau, gamma, digits)
    mean = sum(g * p for g, p in enumerate(probs))
    variance = sum(g * g * p for g, p in enumerate(probs)) - mean ** 2
    with working_precision(digits):
        m, sd = clt.mu * n, mpmath.sqrt(clt.sigma2 * n)
        gauss = [
            mpmath.ncdf((g + mpmath.mpf(0.5) - m) / sd) - mpmath.ncdf((g - mpmath.mpf(0.5) - m) / sd)
            for g in range(len(probs))
        ]
        outside = 1 - mpmath.fsum(gauss)
        tv = (mpmath.fsum(abs(bigfloat(p) - q) for p, q in zip(probs, gauss)) + outside) / 2
    return DistributionReport(tau, gamma, n, probs, gauss, mean, variance, float(tv), float(clt.mu), float(clt.sigma2))


def coefficient_ratio(tau: int, gamma: int, n: int) -> Fraction:
    """[z^(n+1)] G / [z^n] G at t = 1."""
    c = g_series(tau, gamma, n + 1, t=1).ints()
    return Fraction(c[n + 1], c[n])


def subexponential_profile(tau: int, gamma: int, sizes, digits: int | None = None) -> dict[int, mpmath.mpf]:
    """n^(3/2) theta^n [z^n] G(z, 1) for each n in ``sizes``."""
    sizes = list(sizes)
    c = g_series(tau, gamma, max(sizes), t=1).ints()
    th = theta(tau, gamma, 0, digits)
    with working_precision(digits):
        return {n: mpmath.mpf(n) ** 1.5 * th ** n * c[n] for n in sizes}
