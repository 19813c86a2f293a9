"""Local zeta series, product forms, and cyclotomic-limit zeta functions.

The local zeta function of a variety over F_q is exp(sum_m |V_{q^m}|
u^m / m) with u = q^{-s}.  When the counts come from a polynomial
N(Y) = sum a_k Y^k the series equals the rational product
prod_k (1 - q^k u)^{-a_k}; both sides are computed here as exact
truncated power series with rational coefficients, and their agreement
order by order is the finite, checkable content of that equivalence
(coefficient agreement is the right proxy by uniqueness of Dirichlet
coefficients).

Sending the prime to 1 degenerates each factor (1 - p^{l(k-s)})/(p - 1)
to l(s - k); the surviving finite product prod_k (l(s-k))^{-a_k} is the
zeta function of the scheme over the degree-l extension of the
one-element field.  It is stored symbolically, as the factor data
k -> a_k: the poles and their multiplicities are the content.  Only the
two analytic checks (the p -> 1 limit and the Euler-product identity)
use floating point, with reported errors.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .counting import CountPoly


class PoleProximityError(ValueError):
    """The sample point sits (numerically) on a pole of the zeta factors."""


class HalfPlaneError(ValueError):
    """The sample point lies outside the convergence half-plane."""


def normalize_extension_degree(ell: int) -> int:
    """Apply the degree-zero convention: the zeroth extension is the
    first.  Flags the remap with a warning so reports can surface it."""
    if ell == 0:
        warnings.warn(
            "extension degree 0 remapped to 1 (degree-zero convention)",
            stacklevel=3,
        )
        return 1
    if ell < 0:
        raise ValueError("extension degree must be >= 0")
    return ell


@dataclass(frozen=True)
class LocalZetaSeries:
    """Truncated power series of a local zeta function in u = q^{-s}.

    Coefficients are exact rationals; c_0 = 1 always (the series is the
    exponential of a series without constant term).
    """

    q: int
    truncation: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.truncation + 1:
            raise ValueError("coefficient list must have truncation + 1 entries")
        if self.coeffs[0] != 1:
            raise ValueError("constant coefficient must be 1")

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k]


def local_zeta_from_counts(counts, q: int, truncation: int) -> LocalZetaSeries:
    """Exponential of the truncated log-series sum_m count_m u^m / m.

    ``counts`` maps m -> |V_{q^m}| (dict, or iterable of (m, count));
    every m in 1..truncation must be present.
    """
    table = dict(counts if isinstance(counts, dict) else list(counts))
    missing = [m for m in range(1, truncation + 1) if m not in table]
    if missing:
        raise ValueError(f"missing counts for m = {missing}")
    log = [Fraction(0)] + [
        Fraction(table[m], m) for m in range(1, truncation + 1)
    ]
    coeffs = [Fraction(1)] + [Fraction(0)] * truncation
    for k in range(1, truncation + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += j * log[j] * coeffs[k - j]
        coeffs[k] = acc / k
    return LocalZetaSeries(q, truncation, tuple(coeffs))


def product_form_series(poly: CountPoly, q: int, truncation: int) -> LocalZetaSeries:
    """Expansion of prod_k (1 - q^k u)^{-a_k} to the given order, where
    the a_k are the coefficients of the counting polynomial."""
    coeffs = [Fraction(1)] + [Fraction(0)] * truncation
    for k, a in enumerate(poly.coeffs):
        if a == 0:
            continue
        factor = _geometric_factor(q**k, a, truncation)
        coeffs = _mul_series(coeffs, factor, truncation)
    return LocalZetaSeries(q, truncation, tuple(coeffs))


def _geometric_factor(base: int, exponent: int, truncation: int) -> list[Fraction]:
    """(1 - base*u)^(-exponent) as a truncated series."""
    out = [Fraction(0)] * (truncation + 1)
    if exponent > 0:
        for j in range(truncation + 1):
            out[j] = Fraction(math.comb(exponent - 1 + j, j) * base**j)
    else:
        b = -exponent
        for j in range(min(b, truncation) + 1):
            out[j] = Fraction((-1) ** j * math.comb(b, j) * base**j)
    return out


def _mul_series(a, b, truncation: int):
    out = [Fraction(0)] * (truncation + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(truncation + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def equivalence_check(
    counts_or_series, poly: CountPoly, q: int, truncation: int
) -> tuple[bool, int | None]:
    """Compare the zeta series built from counts with the product form of
    a counting polynomial, coefficient by coefficient.

    Returns (True, None) on exact agreement to the truncation order, or
    (False, index of the first differing coefficient).
    """
    if isinstance(counts_or_series, LocalZetaSeries):
        series = counts_or_series
        if series.truncation < truncation:
            raise ValueError("series truncated below the comparison order")
    else:
        series = local_zeta_from_counts(counts_or_series, q, truncation)
    product = product_form_series(poly, q, truncation)
    for k in range(truncation + 1):
        if series.coefficient(k) != product.coefficient(k):
            return False, k
    return True, None


@dataclass(frozen=True)
class ZetaF1:
    """The zeta function prod_k (l(s - k))^{-a_k} over the degree-l
    extension of the one-element field, stored as its factor data."""

    ell: int
    factors: tuple[tuple[int, int], ...]  # (k, a_k), a_k != 0, sorted by k

    @classmethod
    def from_dict(cls, ell: int, factors: dict[int, int]) -> "ZetaF1":
        return cls(
            ell, tuple(sorted((k, a) for k, a in factors.items() if a != 0))
        )

    def factor_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def pole_exponent_sum(self) -> int:
        """Total pole order: denominator exponents minus numerator ones."""
        return sum(a for _, a in self.factors)

    def evaluate(self, s: complex) -> complex:
        value = complex(1)
        for k, a in self.factors:
            base = self.ell * (s - k)
            if base == 0:
                raise ZeroDivisionError(f"evaluation at the pole s = {k}")
            value *= base ** (-a)
        return value

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for k, a in self.factors:
            inner = f"{self.ell}(s - {k})" if k else f"{self.ell}s"
            if self.ell == 1:
                inner = f"s - {k}" if k else "s"
            parts.append(f"({inner})^{-a}")
        return " * ".join(parts)


def f1ell_zeta(poly: CountPoly, ell: int) -> ZetaF1:
    """Read the factor exponents straight off the counting polynomial."""
    ell = normalize_extension_degree(ell)
    return ZetaF1.from_dict(ell, {k: a for k, a in enumerate(poly.coeffs)})


def limit_relative_error(
    poly: CountPoly, ell: int, s: complex, h: float
) -> float:
    """Evaluate prod_k ((1 - p^{l(k-s)})/(p-1))^{-a_k} at p = 1 + h and
    return its relative distance from the limit zeta value at s.

    The distance must shrink (generically linearly) as h does; the caller
    checks that by sampling h and h/10.
    """
    ell = normalize_extension_degree(ell)
    if not 0 < h <= 1e-4:
        raise ValueError("step must lie in (0, 1e-4]")
    s = complex(s)
    zeta = ZetaF1.from_dict(ell, dict(enumerate(poly.coeffs)))
    for k, _ in zeta.factors:
        if abs(s - k) < 1e-3:
            raise PoleProximityError(f"s = {s} is too close to the pole at {k}")
    log1p = math.log1p(h)
    numeric = complex(1)
    for k, a in zeta.factors:
        power = cmath.exp(ell * (k - s) * log1p)
        factor = (1 - power) / h
        numeric *= factor ** (-a)
    reference = zeta.evaluate(s)
    return abs(numeric / reference - 1)


def primes_up_to(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(2, bound + 1) if sieve[i]]


@dataclass(frozen=True)
class EulerProductComparison:
    """Outcome of the Euler-product identity check at one (s, P).

    ``deviation`` compares the truncated prime product of local zeta
    values against the true product of Riemann zeta factors (high
    precision reference); it shrinks as the prime bound grows.
    ``truncation_deviation`` compares against the same factors truncated
    at the same prime bound, which is a pure rearrangement and therefore
    agrees to rounding.
    """

    prime_bound: int
    deviation: float
    truncation_deviation: float


def euler_product_comparison(
    poly: CountPoly, ell: int, s: complex, prime_bound: int
) -> EulerProductComparison:
    """Compare prod_{p <= P} zeta_{X|F_{p^l}}(s) with prod_k
    zeta(l(s-k))^{a_k} inside the convergence half-plane."""
    ell = normalize_extension_degree(ell)
    s = complex(s)
    margin = poly.degree + 1 / ell + 1
    if s.real <= margin:
        raise HalfPlaneError(
            f"Re(s) = {s.real} is not beyond the guard line {margin}"
        )
    primes = primes_up_to(prime_bound)
    lhs = complex(1)
    for p in primes:
        for k, a in enumerate(poly.coeffs):
            if a:
                lhs *= (1 - p ** (ell * (k - s))) ** (-a)
    rhs_truncated = complex(1)
    for k, a in enumerate(poly.coeffs):
        if not a:
            continue
        zeta_trunc = complex(1)
        for p in primes:
            zeta_trunc *= (1 - p ** (ell * (k - s))) ** (-1)
        rhs_truncated *= zeta_trunc**a
    rhs_reference = complex(1)
    with mpmath.workdps(30):
        for k, a in enumerate(poly.coeffs):
            if a:
                value = mpmath.zeta(ell * (s - k))
                rhs_reference *= complex(value) ** a
    return EulerProductComparison(
        prime_bound,
        abs(lhs / rhs_reference - 1),
        abs(lhs / rhs_truncated - 1),
    )
