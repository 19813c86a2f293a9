"""Exact small finite fields and exhaustive point counting.

This is the brute-force oracle behind every counting claim in the
package: systems of integer polynomial equations are counted over
F_{p^n} by evaluating them at every point of the affine box.  No
elimination, no clever algebra; the oracle's value is its independence
from the formulas it is used to check.

The inner loop is provided by a compiled extension when available, with
a pure-Python fallback selected at import time (set F1LAB_PURE_PYTHON=1
to force the fallback).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import _countpure

if os.environ.get("F1LAB_PURE_PYTHON"):
    _kernel = _countpure
else:
    try:
        from . import _countcore as _kernel  # type: ignore[no-redef]
    except ImportError:
        _kernel = _countpure

DEFAULT_BUDGET = 10**8


def active_backend() -> str:
    """Name of the counting backend in use: 'compiled' or 'pure-python'."""
    return "pure-python" if _kernel is _countpure else "compiled"


class BudgetError(RuntimeError):
    """Enumeration would exceed the evaluation budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"enumeration needs {required} evaluations, budget is {budget}"
        )
        self.required = required
        self.budget = budget


def is_prime(p: int) -> bool:
    """Trial-division primality; fields here are always tiny."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_mulmod(a, b, modulus, p):
    n = len(modulus) - 1
    conv = [0] * max(len(a) + len(b) - 1, 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] = (conv[i + j] + ai * bj) % p
    for k in range(len(conv) - 1, n - 1, -1):
        c = conv[k]
        if c:
            conv[k] = 0
            for j in range(n):
                conv[k - n + j] = (conv[k - n + j] - c * modulus[j]) % p
    out = conv[:n]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_powmod(base, e, modulus, p):
    result = [1]
    b = list(base)
    while e:
        if e & 1:
            result = _poly_mulmod(result, b, modulus, p)
        b = _poly_mulmod(b, b, modulus, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while any(b):
        # reduce a mod b
        while len(a) >= len(b) and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            shift = len(a) - len(b)
            lead = a[-1] * pow(b[-1], p - 2, p) % p
            for i, coeff in enumerate(b):
                a[i + shift] = (a[i + shift] - lead * coeff) % p
            while len(a) > 1 and a[-1] == 0:
                a.pop()
        a, b = b, a
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(modulus, p) -> bool:
    """Rabin's test: x^(p^n) == x mod f and gcd(x^(p^(n/r)) - x, f) = 1
    for every prime divisor r of n."""
    n = len(modulus) - 1
    if n == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p**n, modulus, p)
    diff = [(a - b) % p for a, b in zip(xq + [0] * 2, x + [0] * len(xq))]
    while len(diff) > 1 and diff[-1] == 0:
        diff.pop()
    if any(diff):
        return False
    for r in _prime_divisors(n):
        xr = _poly_powmod(x, p ** (n // r), modulus, p)
        d = [(a - b) % p for a, b in zip(xr + [0] * 2, x + [0] * len(xr))]
        while len(d) > 1 and d[-1] == 0:
            d.pop()
        g = _poly_gcd(list(modulus), d, p)
        if len(g) > 1:
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """F_{p^n} presented by a monic irreducible modulus (little-endian
    coefficients, length n+1).  Elements are encoded as integers in
    [0, p^n), base-p digits being the residue coefficients."""

    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.p**self.n

    def ops(self) -> _countpure.FieldOps:
        return _countpure.FieldOps(self.p, self.n, self.modulus)

    def __str__(self) -> str:
        return f"F_{self.p}^{self.n}" if self.n > 1 else f"F_{self.p}"


def make_field(p: int, n: int) -> FieldSpec:
    """Deterministic field: the lexicographically smallest monic
    irreducible modulus of degree n over F_p (for n = 1 the convention is
    the modulus x, i.e. plain mod-p arithmetic)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if n == 1:
        return FieldSpec(p, 1, (0, 1))
    # candidates ordered by the coefficient vector (c_{n-1}, ..., c_0)
    for encoded in range(p**n):
        digits = []
        value = encoded
        for _ in range(n):
            digits.append(value % p)
            value //= p
        candidate = tuple(digits) + (1,)
        if _is_irreducible(candidate, p):
            return FieldSpec(p, n, candidate)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class IntPolySystem:
    """A system of integer polynomial equations in normal form P = 0.

    Each equation is a tuple of terms (coefficient, exponent tuple), with
    exponent tuples aligned to the declared variables.
    """

    variables: tuple[str, ...]
    equations: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]

    def __post_init__(self):
        width = len(self.variables)
        for eq in self.equations:
            for _, exps in eq:
                if len(exps) != width:
                    raise ValueError("exponent tuple width mismatch")

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @classmethod
    def from_dicts(cls, variables, equations) -> "IntPolySystem":
        """Build from sparse dicts {exponent tuple: coefficient}."""
        eqs = []
        for eq in equations:
            terms = tuple(
                (coeff, tuple(exps))
                for exps, coeff in sorted(eq.items(), reverse=True)
                if coeff
            )
            eqs.append(terms)
        return cls(tuple(variables), tuple(eqs))

    def max_degree(self) -> int:
        return max(
            (sum(exps) for eq in self.equations for _, exps in eq), default=0
        )


def count_points(
    system: IntPolySystem,
    field: FieldSpec,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> int:
    """Exact number of solutions of the system in field^num_vars, by
    exhaustive evaluation over the whole affine box.

    The enumeration space is partitioned on the leading variable; the
    per-part counts are summed in a fixed order, so worker count never
    changes the result.
    """
    required = field.size**system.num_vars
    if required > budget:
        raise BudgetError(required, budget)
    args = (field.p, field.n, field.modulus, system.num_vars, system.equations)
    if system.num_vars == 0 or workers <= 1 or field.size < 2:
        return _kernel.count_solutions(*args)
    q = field.size
    chunks = min(workers, q)
    bounds = [(i * q) // chunks for i in range(chunks)] + [q]
    spans = [(bounds[i], bounds[i + 1]) for i in range(chunks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(
            pool.map(lambda span: _kernel.count_solutions(*args, span[0], span[1]), spans)
        )
    return sum(parts)


def count_tower(
    system: IntPolySystem,
    p: int,
    degrees,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> list[tuple[int, int]]:
    """Counts over F_{p^d} for each requested degree d, as (q, count)."""
    out = []
    for d in degrees:
        field = make_field(p, d)
        out.append((field.size, count_points(system, field, budget, workers)))
    return out


def square_roots(field: FieldSpec, value: int) -> list[int]:
    """All square roots of an encoded element, by exhaustion."""
    ops = field.ops()
    return [x for x in range(field.size) if ops.mul(x, x) == value]


def embed_scalar(field: FieldSpec, c: int) -> int:
    """Encoded image of an integer in the field (the residue c mod p)."""
    return c % field.p
