"""Exact polynomial and truncated power series arithmetic.

``MPoly`` is a sparse polynomial in the markers z, t, e with Python integer
coefficients.  ``GenSeries`` is a power series in z truncated at z^order whose
coefficients are ``MPoly`` values free of z.  Numeric work (critical points,
resultant certificates) goes through mpmath at a configurable decimal precision.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import mpmath

from .errors import (
    CompositionDivergence,
    InversionOfNonUnit,
    NonUnitDenominator,
    ZeroLeadingCoefficient,
)

VARS = ("z", "t", "e")
_VAR_INDEX = {name: k for k, name in enumerate(VARS)}

Exponent = tuple[int, int, int]

DEFAULT_PRECISION = 60
MIN_ASYMPTOTIC_PRECISION = 30


def _var_index(name: str) -> int:
    try:
        return _VAR_INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARS}") from None


class MPoly:
    """Sparse multivariate polynomial over the integers in z, t, e.

    Instances are immutable; every operation returns a new polynomial in
    canonical form (no zero coefficients stored).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean: dict[Exponent, int] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != 3 or min(exp) < 0:
                    raise ValueError(f"bad exponent vector {exp!r}")
                if c:
                    clean[tuple(exp)] = int(c)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int]) -> MPoly:
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> MPoly:
        return cls._raw({(0, 0, 0): int(c)} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> MPoly:
        exp = [0, 0, 0]
        exp[_var_index(name)] = power
        return cls._raw({tuple(exp): 1})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int], var: str = "z") -> MPoly:
        """Build sum(coeffs[k] * var**k)."""
        k = _var_index(var)
        terms = {}
        for d, c in enumerate(coeffs):
            if c:
                exp = [0, 0, 0]
                exp[k] = d
                terms[tuple(exp)] = int(c)
        return cls._raw(terms)

    # -- inspection --------------------------------------------------------

    def terms(self) -> list[tuple[Exponent, int]]:
        """Terms sorted by exponent vector (z, t, e)."""
        return sorted(self._terms.items())

    def coeff(self, z: int = 0, t: int = 0, e: int = 0) -> int:
        return self._terms.get((z, t, e), 0)

    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        k = _var_index(var)
        return max((exp[k] for exp in self._terms), default=-1)

    def valuation(self, var: str) -> int:
        """Lowest power of ``var`` present; -1 for the zero polynomial."""
        k = _var_index(var)
        return min((exp[k] for exp in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0, 0) in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0, 0, 0), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.terms())

    # -- arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> MPoly | None:
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(other)
        return None

    def __add__(self, other) -> MPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._raw({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other) -> MPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> MPoly:
        if isinstance(other, int):
            if not other:
                return MPoly()
            return MPoly._raw({exp: c * other for exp, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, int] = {}
        for (a1, b1, c1), x in self._terms.items():
            for (a2, b2, c2), y in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                out[key] = out.get(key, 0) + x * y
        return MPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def diff(self, var: str) -> MPoly:
        k = _var_index(var)
        out = {}
        for exp, c in self._terms.items():
            if exp[k]:
                new = list(exp)
                new[k] -= 1
                out[tuple(new)] = c * exp[k]
        return MPoly._raw(out)

    def split(self, var: str = "z") -> dict[int, MPoly]:
        """Group terms by the power of ``var``; values are free of ``var``."""
        k = _var_index(var)
        groups: dict[int, dict[Exponent, int]] = {}
        for exp, c in self._terms.items():
            new = list(exp)
            new[k] = 0
            groups.setdefault(exp[k], {})[tuple(new)] = c
        return {d: MPoly._raw(g) for d, g in groups.items()}

    def specialize(self, **values: int) -> MPoly:
        """Substitute integer values for some variables, keeping exactness."""
        idx = {_var_index(name): int(v) for name, v in values.items()}
        out: dict[Exponent, int] = {}
        for exp, c in self._terms.items():
            new = list(exp)
            for k, v in idx.items():
                c *= v ** exp[k]
                new[k] = 0
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return MPoly._raw({k: v for k, v in out.items() if v})

    def evaluate(self, z=0, t=0, e=0):
        """Evaluate at ring elements (ints, Fractions, mpf, or any type with + and *).

        Variables not passed default to 0.
        """
        vals = (z, t, e)
        cache: dict[tuple[int, int], object] = {}

        def power(k: int, d: int):
            key = (k, d)
            if key not in cache:
                v = vals[k]
                r = v
                for _ in range(d - 1):
                    r = r * v
                cache[key] = r
            return cache[key]

        total = 0
        for exp, c in self._terms.items():
            term = c
            for k, d in enumerate(exp):
                if d:
                    term = power(k, d) * term
            total = term + total
        return total

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.terms():
            factors = []
            for name, d in zip(VARS, exp):
                if d == 1:
                    factors.append(name)
                elif d:
                    factors.append(f"{name}^{d}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_arith(a: MPoly, b: MPoly | int, op: str) -> MPoly:
    """Dispatch ``add``, ``mul`` or ``pow`` (b is then a non-negative int)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown op {op!r}")


Z = MPoly.var("z")
T = MPoly.var("t")
E = MPoly.var("e")
ONE = MPoly.const(1)


# ---------------------------------------------------------------------------
# truncated power series in z
# ---------------------------------------------------------------------------


def _int_convolve(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j in range(min(len(b), order + 1 - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out


class GenSeries:
    """Power series in z modulo z^(order+1) with coefficients in Z[t, e]."""

    __slots__ = ("order", "_c")

    def __init__(self, coeffs: Iterable[MPoly | int], order: int | None = None):
        cs = [c if isinstance(c, MPoly) else MPoly.const(c) for c in coeffs]
        for c in cs:
            if c.degree("z") > 0:
                raise ValueError("series coefficients must not contain z")
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = cs[: order + 1]
        cs.extend(MPoly() for _ in range(order + 1 - len(cs)))
        self.order = order
        self._c = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list[MPoly], order: int) -> GenSeries:
        obj = cls.__new__(cls)
        obj.order = order
        obj._c = tuple(coeffs)
        return obj

    @classmethod
    def from_ints(cls, values: Sequence[int], order: int | None = None) -> GenSeries:
        return cls([MPoly.const(v) for v in values], order)

    @classmethod
    def from_mpoly(cls, p: MPoly, order: int) -> GenSeries:
        """Read z as the series variable of a polynomial in z, t, e."""
        parts = p.split("z")
        return cls._raw([parts.get(k, MPoly()) for k in range(order + 1)], order)

    @classmethod
    def one(cls, order: int) -> GenSeries:
        return cls.from_ints([1], order)

    @classmethod
    def z(cls, order: int) -> GenSeries:
        return cls.from_ints([0, 1], order)

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[MPoly, ...]:
        return self._c

    def __getitem__(self, n: int) -> MPoly:
        return self._c[n]

    def __len__(self) -> int:
        return self.order + 1

    def is_scalar(self) -> bool:
        """True when no coefficient involves t or e."""
        return all(c.is_constant() for c in self._c)

    def ints(self) -> list[int]:
        """Coefficients as integers; only valid for scalar series."""
        if not self.is_scalar():
            raise ValueError("series has t/e-dependent coefficients")
        return [c.constant_term() for c in self._c]

    def valuation(self) -> int:
        for k, c in enumerate(self._c):
            if c:
                return k
        return self.order + 1

    def truncate(self, order: int) -> GenSeries:
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return GenSeries._raw(list(self._c[: order + 1]), order)

    def specialize(self, **values: int) -> GenSeries:
        return GenSeries._raw([c.specialize(**values) for c in self._c], self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenSeries):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.order, self._c))

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})*z^{k}" for k, c in enumerate(self._c) if c)
        return f"GenSeries({shown or '0'}, order={self.order})"

    # -- arithmetic ------------------------------------------------------------

    def _lift(self, other) -> GenSeries | None:
        if isinstance(other, GenSeries):
            return other
        if isinstance(other, (int, MPoly)):
            p = other if isinstance(other, MPoly) else MPoly.const(other)
            return GenSeries.from_mpoly(p, self.order)
        return None

    def __add__(self, other) -> GenSeries:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return GenSeries._raw([self._c[k] + other._c[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> GenSeries:
        return GenSeries._raw([-c for c in self._c], self.order)

    def __sub__(self, other) -> GenSeries:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> GenSeries:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> GenSeries:
        if isinstance(other, int):
            return GenSeries._raw([c * other for c in self._c], self.order)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        if self.is_scalar() and other.is_scalar():
            prod = _int_convolve(self.ints(), other.ints(), n)
            return GenSeries._raw([MPoly.const(v) for v in prod], n)
        return GenSeries._raw(_mul_poly_coeffs(self._c, other._c, n), n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GenSeries:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = GenSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> GenSeries:
        if self._c[0] != 1:
            raise InversionOfNonUnit(f"constant term is {self._c[0]}, expected 1")
        n = self.order
        if self.is_scalar():
            a = self.ints()
            b = [1] + [0] * n
            for m in range(1, n + 1):
                acc = 0
                for k in range(1, m + 1):
                    if a[k]:
                        acc += a[k] * b[m - k]
                b[m] = -acc
            return GenSeries.from_ints(b, n)
        out = [ONE]
        for m in range(1, n + 1):
            acc: dict[Exponent, int] = {}
            for k in range(1, m + 1):
                _accumulate_product(acc, self._c[k], out[m - k])
            out.append(MPoly._raw({key: -v for key, v in acc.items() if v}))
        return GenSeries._raw(out, n)

    def __truediv__(self, other) -> GenSeries:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def compose(self, inner: GenSeries) -> GenSeries:
        return series_compose(self, inner)


def _accumulate_product(acc: dict[Exponent, int], p: MPoly, q: MPoly) -> None:
    if not p or not q:
        return
    qt = q._terms.items()
    for (_, t1, e1), x in p._terms.items():
        for (_, t2, e2), y in qt:
            key = (0, t1 + t2, e1 + e2)
            acc[key] = acc.get(key, 0) + x * y


def _mul_poly_coeffs(a: Sequence[MPoly], b: Sequence[MPoly], order: int) -> list[MPoly]:
    out = []
    for m in range(order + 1):
        acc: dict[Exponent, int] = {}
        for i in range(m + 1):
            _accumulate_product(acc, a[i], b[m - i])
        out.append(MPoly._raw({k: v for k, v in acc.items() if v}))
    return out


def series_arith(a: GenSeries, b: GenSeries | None, op: str) -> GenSeries:
    """Dispatch ``add``, ``mul`` or ``invert`` (``b`` ignored for invert)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        return a.invert()
    raise ValueError(f"unknown op {op!r}")


def series_compose(outer: GenSeries | MPoly, inner: GenSeries, var: str = "z") -> GenSeries:
    """Substitute ``inner`` for the series variable of ``outer``.

    ``outer`` is either a series or a polynomial read as univariate in ``var``
    with coefficients in the remaining markers.
    """
    if inner[0]:
        raise CompositionDivergence("inner series has a nonzero constant term")
    v = inner.valuation()
    if isinstance(outer, MPoly):
        parts = outer.split(var)
        if var != "z" and any(p.degree("z") > 0 for p in parts.values()):
            raise ValueError("outer coefficients must be free of z")
        top = max(parts, default=0)
        outer_coeffs = [parts.get(k, MPoly()) for k in range(top + 1)]
        order = inner.order
    else:
        outer_coeffs = list(outer.coeffs)
        order = min(inner.order, (outer.order + 1) * v - 1) if v <= inner.order else inner.order
    # terms w^k with k*v > order vanish
    kmax = min(len(outer_coeffs) - 1, order // v if v <= order else 0)
    outer_coeffs = outer_coeffs[: kmax + 1]
    inner = inner.truncate(order)

    if inner.is_scalar():
        w = inner.ints()
        acc: list[dict[Exponent, int]] = [dict() for _ in range(order + 1)]
        power = [1] + [0] * order
        for k, ck in enumerate(outer_coeffs):
            if k:
                power = _int_convolve(power, w, order)
            if not ck:
                continue
            items = ck._terms.items()
            for m, pm in enumerate(power):
                if pm:
                    slot = acc[m]
                    for key, c in items:
                        slot[key] = slot.get(key, 0) + c * pm
        return GenSeries._raw([MPoly._raw({k: x for k, x in d.items() if x}) for d in acc], order)

    result = GenSeries.from_mpoly(outer_coeffs[-1], order) if outer_coeffs else GenSeries([], order)
    for ck in reversed(outer_coeffs[:-1]):
        result = result * inner + ck
    return result


def rational_expand(num: MPoly, den: MPoly, order: int) -> GenSeries:
    """Expand num/den as a power series in z to z^order.

    The z-free part of ``den`` must be the integer 1 or -1.
    """
    d = GenSeries.from_mpoly(den, order)
    unit = d[0]
    if unit == 1:
        sign = 1
    elif unit == -1:
        sign = -1
    else:
        raise NonUnitDenominator(f"denominator has z-free part {unit}, expected +-1")
    return GenSeries.from_mpoly(num, order) * (d * sign).invert() * sign


# ---------------------------------------------------------------------------
# numeric kernel
# ---------------------------------------------------------------------------


def default_precision() -> int:
    """Decimal digits for mpmath work; ``GAMMAFILT_PRECISION`` overrides."""
    raw = os.environ.get("GAMMAFILT_PRECISION")
    if raw:
        digits = int(raw)
        if digits < MIN_ASYMPTOTIC_PRECISION:
            raise ValueError(f"precision must be at least {MIN_ASYMPTOTIC_PRECISION} digits")
        return digits
    return DEFAULT_PRECISION


@contextmanager
def working_precision(digits: int | None = None):
    """Run the enclosed block at ``digits`` decimal digits of mpmath precision."""
    digits = default_precision() if digits is None else digits
    with mpmath.workdps(digits):
        yield digits


def bigfloat(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def determinant(matrix: Sequence[Sequence]) -> object:
    """Determinant by Gaussian elimination with partial pivoting.

    Exact for int/Fraction entries, numeric for mpf entries.
    """
    n = len(matrix)
    exact = all(isinstance(x, (int, Fraction)) for row in matrix for x in row)
    a = [[Fraction(x) if exact else x for x in row] for row in matrix]
    det = Fraction(1) if exact else mpmath.mpf(1)
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            return Fraction(0) if exact else mpmath.mpf(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return det


def sylvester_matrix(p: Sequence, q: Sequence) -> list[list]:
    """Sylvester matrix of two coefficient lists given constant term first."""
    m, n = len(p) - 1, len(q) - 1
    hi_p, hi_q = list(reversed(p)), list(reversed(q))
    size = m + n
    rows = []
    for k in range(n):
        rows.append([0] * k + hi_p + [0] * (size - m - 1 - k))
    for k in range(m):
        rows.append([0] * k + hi_q + [0] * (size - n - 1 - k))
    return rows


def sylvester_resultant(p: Sequence, q: Sequence):
    """Resultant of p and q (coefficients listed constant term first).

    Follows Res(p, q) = lc(p)^deg q * lc(q)^deg p * prod(a_i - b_j).
    """
    if not p or not q or p[-1] == 0 or q[-1] == 0:
        raise ZeroLeadingCoefficient("leading coefficients must be nonzero")
    if len(p) == 1 or len(q) == 1:
        # 0 x 0 determinant conventions
        return (p[-1] ** (len(q) - 1)) * (q[-1] ** (len(p) - 1))
    return determinant(sylvester_matrix(p, q))
