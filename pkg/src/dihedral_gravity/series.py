"""Generating series: Poincare polynomials, compositional inversion, Euler checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .polygon import _subpolygons, _dissection_ids


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ``coeffs[i]`` multiplies ``t^i``; trailing zeros trimmed."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def constant(cls, a: int) -> "IntPolynomial":
        return cls((a,))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return IntPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * x for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                num = str(c) if (mon == "" or abs(c) != 1) else ("-" if c < 0 else "")
                terms.append(f"{num}{mon}")
        return " + ".join(terms).replace("+ -", "- ")


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))


@dataclass(frozen=True)
class BivariateSeries:
    """Truncated series in x with coefficients in Z[t]: ``coeffs[m]`` multiplies ``x^m``."""

    order: int
    coeffs: tuple[IntPolynomial, ...]

    def __post_init__(self):
        c = list(self.coeffs)[: self.order + 1]
        c += [ZERO] * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls, order: int) -> "BivariateSeries":
        return cls(order, (ZERO, ONE))

    def __getitem__(self, m: int) -> IntPolynomial:
        return self.coeffs[m] if m <= self.order else ZERO

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        order = min(self.order, other.order)
        return BivariateSeries(order, tuple(self[m] + other[m] for m in range(order + 1)))

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        order = min(self.order, other.order)
        out = [ZERO] * (order + 1)
        for i in range(order + 1):
            if self[i].is_zero():
                continue
            for j in range(order + 1 - i):
                if not other[j].is_zero():
                    out[i + j] = out[i + j] + self[i] * other[j]
        return BivariateSeries(order, tuple(out))

    def compose(self, inner: "BivariateSeries") -> "BivariateSeries":
        """``self(inner(x, t), t)``; needs ``inner`` without constant term."""
        if not inner[0].is_zero():
            raise ValueError("inner series must vanish at x = 0")
        order = min(self.order, inner.order)
        acc = BivariateSeries(order, (self[0],))
        power = BivariateSeries(order, (ONE,))
        for m in range(1, order + 1):
            power = power * inner
            if not self[m].is_zero():
                acc = acc + BivariateSeries(order, tuple(self[m] * c for c in power.coeffs))
        return acc

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return all(self[m] == other[m] for m in range(order + 1))


@lru_cache(maxsize=None)
def poincare_moduli(n: int) -> IntPolynomial:
    """Coefficients of ``prod_{j=2}^{n-2} (1 + j x)``: the Betti numbers of M_{0,n}."""
    if n < 3:
        raise ValueError(f"M_0,n needs n >= 3, got {n}")
    p = ONE
    for j in range(2, n - 1):
        p = p * IntPolynomial((1, j))
    return p


def _a(n: int) -> IntPolynomial:
    b = poincare_moduli(n).coeffs
    top = n - 3
    out = [0] * (top + 1)
    for k, bk in enumerate(b):
        out[top - k] = (-1) ** k * bk
    return IntPolynomial(tuple(out))


def moduli_series(order: int = 12) -> BivariateSeries:
    """``x - sum_{n >= 3} a_n(t) x^{n-1}`` truncated at ``x^order``."""
    if order < 2:
        raise ValueError("order must be at least 2")
    coeffs = [ZERO, ONE] + [-_a(m + 1) for m in range(2, order + 1)]
    return BivariateSeries(order, tuple(coeffs))


def compositional_inverse(f: BivariateSeries) -> BivariateSeries:
    """g with ``f(g) = x``, solved one order at a time, then checked both ways."""
    if not f[0].is_zero() or f[1] != ONE:
        raise ValueError("series must have the form x + O(x^2)")
    order = f.order
    g = [ZERO, ONE] + [ZERO] * (order - 1)
    for m in range(2, order + 1):
        # x^m coefficient of f(g) with g_m still unknown is g_m + (known part)
        trial = f.compose(BivariateSeries(m, tuple(g[: m + 1])))
        g[m] = -trial[m]
    inv = BivariateSeries(order, tuple(g))
    ident = BivariateSeries.x(order)
    if f.compose(inv) != ident or inv.compose(f) != ident:  # pragma: no cover
        raise ArithmeticError("compositional inverse failed its post-check")
    return inv


@lru_cache(maxsize=None)
def _brown_series(order: int) -> BivariateSeries:
    return compositional_inverse(moduli_series(order))


def brown_betti_series(n: int, order: int | None = None) -> list[int]:
    """Betti numbers of Brown's moduli space read off the inverse series."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    order = max(order or 12, n - 1)
    c = _brown_series(order)[n - 1]
    top = n - 3
    out = [(-1) ** k * c.coeff(top - k) for k in range(top + 1)]
    if any(b < 0 for b in out):
        raise ArithmeticError(f"negative Betti number extracted for n = {n}: {out}")
    return out


@lru_cache(maxsize=None)
def _region_size_profiles(n: int, p: int) -> Counter:
    """Multiset of region sizes for each p-chord dissection, with multiplicities."""
    out: Counter = Counter()
    for ids in _dissection_ids(n, p):
        out[tuple(sorted(reg.size for reg in _subpolygons(n, ids)))] += 1
    return out


def euler_betti(n: int) -> list[int]:
    """Alternating sum of Kunneth counts over all dissections."""
    out = []
    for k in range(n - 2):
        total = 0
        for p in range(k + 1):
            for sizes, mult in _region_size_profiles(n, p).items():
                poly = ONE
                for s in sizes:
                    poly = poly * poincare_moduli(s)
                total += (-1) ** p * mult * poly.coeff(k - p)
        out.append(total)
    return out


@dataclass
class EulerReport:
    n: int
    euler: list[int]
    series: list[int]

    @property
    def ok(self) -> bool:
        return self.euler == self.series


def euler_check(n: int) -> EulerReport:
    return EulerReport(n, euler_betti(n), brown_betti_series(n))


def cayley_count(n: int, k: int) -> int:
    """Number of k-chord dissections of an n-gon."""
    if n < 3 or not 0 <= k <= n - 3:
        raise ValueError(f"no {k}-chord dissections of an {n}-gon")
    num = comb(n - 3, k) * comb(n + k - 1, k)
    q, r = divmod(num, k + 1)
    assert r == 0
    return q


def kunneth_dim(sizes, total: int, dims=None) -> int:
    """``sum over multidegrees of prod dims(size)[k_i]``, defaulting to Betti numbers."""
    poly = ONE
    for s in sizes:
        poly = poly * (IntPolynomial(tuple(dims(s))) if dims else poincare_moduli(s))
    return poly.coeff(total)


def euler_characteristic(coeffs) -> int:
    return sum((-1) ** k * c for k, c in enumerate(coeffs))


__all__ = [
    "IntPolynomial",
    "BivariateSeries",
    "poincare_moduli",
    "moduli_series",
    "compositional_inverse",
    "brown_betti_series",
    "euler_betti",
    "euler_check",
    "EulerReport",
    "cayley_count",
    "kunneth_dim",
    "euler_characteristic",
]
