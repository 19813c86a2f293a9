"""Pure-Python point-counting kernel.

Fallback used when the compiled core is unavailable (or forced via the
F1LAB_PURE_PYTHON environment variable).  Field elements are integers in
[0, p^n) encoding polynomial residues base p; small fields get full
add/mul tables, larger ones reduce digit vectors on the fly.
"""

from __future__ import annotations

from itertools import product

TABLE_LIMIT = 1024


def _digits(value: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(value % p)
        value //= p
    return out


def _undigits(digits, p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


def _mul_digits(a, b, p, modulus):
    n = len(modulus) - 1
    conv = [0] * (2 * n - 1 if n > 1 else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] = (conv[i + j] + ai * bj) % p
    # reduce by the monic modulus
    for k in range(len(conv) - 1, n - 1, -1):
        c = conv[k]
        if c:
            conv[k] = 0
            for j in range(n):
                conv[k - n + j] = (conv[k - n + j] - c * modulus[j]) % p
    return conv[:n]


class FieldOps:
    """Arithmetic on encoded elements of F_{p^n} with the given monic
    modulus (little-endian coefficient tuple of length n+1)."""

    def __init__(self, p: int, n: int, modulus):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self.tabled = self.q <= TABLE_LIMIT
        if self.tabled:
            q = self.q
            digits = [_digits(v, p, n) for v in range(q)]
            self.add_table = [
                [
                    _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                    for b in range(q)
                ]
                for a in range(q)
            ]
            self.mul_table = [
                [
                    _undigits(_mul_digits(digits[a], digits[b], p, self.modulus), p)
                    for b in range(q)
                ]
                for a in range(q)
            ]

    def add(self, a: int, b: int) -> int:
        if self.tabled:
            return self.add_table[a][b]
        da = _digits(a, self.p, self.n)
        db = _digits(b, self.p, self.n)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def mul(self, a: int, b: int) -> int:
        if self.tabled:
            return self.mul_table[a][b]
        da = _digits(a, self.p, self.n)
        db = _digits(b, self.p, self.n)
        return _undigits(_mul_digits(da, db, self.p, self.modulus), self.p)

    def pow(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def scalar(self, c: int) -> int:
        """Embed an integer as the constant residue c mod p."""
        return c % self.p


def count_solutions(
    p: int,
    n: int,
    modulus,
    nvars: int,
    equations,
    lo: int = 0,
    hi: int | None = None,
) -> int:
    """Number of simultaneous zeros of the equations over F_{p^n}, with
    the first variable restricted to encoded values in [lo, hi).

    ``equations`` is a sequence of equations, each a sequence of terms
    (integer coefficient, exponent tuple of length nvars).
    """
    ops = FieldOps(p, n, modulus)
    q = ops.q
    if hi is None:
        hi = q
    if nvars == 0:
        point_ok = all(
            _eval_equation(ops, eq, ()) == 0 for eq in equations
        )
        return 1 if point_ok else 0

    compiled = []
    exponents = set()
    for eq in equations:
        terms = []
        for coeff, exps in eq:
            scalar = ops.scalar(coeff)
            vexps = tuple((v, e) for v, e in enumerate(exps) if e)
            exponents.update(e for _, e in vexps)
            terms.append((scalar, vexps))
        compiled.append(terms)

    pow_tables = None
    if ops.tabled:
        pow_tables = {e: [ops.pow(v, e) for v in range(q)] for e in exponents}

    ranges = [range(lo, hi)] + [range(q)] * (nvars - 1)
    count = 0
    if not compiled:
        for _ in product(*ranges):
            count += 1
        return count
    mul = ops.mul
    add = ops.add
    for point in product(*ranges):
        ok = True
        for terms in compiled:
            acc = 0
            for scalar, vexps in terms:
                t = scalar
                if pow_tables is not None:
                    for v, e in vexps:
                        t = mul(t, pow_tables[e][point[v]])
                else:
                    for v, e in vexps:
                        t = mul(t, ops.pow(point[v], e))
                acc = add(acc, t)
            if acc:
                ok = False
                break
        if ok:
            count += 1
    return count


def _eval_equation(ops: FieldOps, eq, point) -> int:
    acc = 0
    for coeff, exps in eq:
        t = ops.scalar(coeff)
        for v, e in enumerate(exps):
            if e:
                t = ops.mul(t, ops.pow(point[v], e))
        acc = ops.add(acc, t)
    return acc
