"""Exact arithmetic in cyclotomic extensions of the one-element field.

The degree-l extension F_{1^l} is the cyclic group of l-th roots of unity
together with an absorbing zero; it has multiplication but no addition.
This module implements its elements, the ambient closure (all roots of
unity), monomials of the polynomial monoid F_{1^l}[X_1, ..., X_m], the
prime ideals of that monoid, and the finite Zariski posets of the affine
and projective spectra.

Primes of the free pointed monoid are generated by subsets of the
variables, and a unit coefficient never changes the ideal a monomial
generates, so a prime is stored intensionally as the subset of variables
it is generated by.  The spectra are then finite posets under inclusion,
independent of l; :func:`topology_homeomorphic` is the executable witness
for that independence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd


@dataclass(frozen=True, slots=True)
class CycElt:
    """An element of F_{1^l}: zero, or a root of unity given by its exponent.

    ``exp is None`` encodes the absorbing zero; otherwise ``exp`` is reduced
    into ``[0, order)`` and the element is the exp-th power of a fixed
    primitive l-th root of unity.
    """

    order: int
    exp: int | None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"group order must be >= 1, got {self.order}")
        if self.exp is not None and not 0 <= self.exp < self.order:
            raise ValueError(f"exponent {self.exp} not reduced mod {self.order}")

    @classmethod
    def zero(cls, order: int) -> "CycElt":
        return cls(order, None)

    @classmethod
    def root(cls, order: int, exp: int) -> "CycElt":
        return cls(order, exp % order)

    @classmethod
    def one(cls, order: int) -> "CycElt":
        return cls(order, 0)

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    def __mul__(self, other: "CycElt") -> "CycElt":
        if self.order != other.order:
            raise ValueError("elements of different extensions cannot be multiplied")
        if self.exp is None or other.exp is None:
            return CycElt(self.order, None)
        return CycElt(self.order, (self.exp + other.exp) % self.order)

    def __pow__(self, n: int) -> "CycElt":
        if n < 0:
            return self.inverse() ** (-n)
        if self.exp is None:
            # 0**0 is the empty product by monoid convention.
            return CycElt(self.order, 0) if n == 0 else self
        return CycElt(self.order, (self.exp * n) % self.order)

    def inverse(self) -> "CycElt":
        if self.exp is None:
            raise ZeroDivisionError("zero has no inverse")
        return CycElt(self.order, (-self.exp) % self.order)

    @property
    def sort_key(self) -> tuple:
        # zero sorts before every root; roots by exponent
        return (0,) if self.exp is None else (1, self.exp)

    def __str__(self) -> str:
        if self.exp is None:
            return "0"
        if self.exp == 0:
            return "1"
        return f"w^{self.exp}"

    def __repr__(self) -> str:
        return f"CycElt({self.order}, {self.exp})"


@lru_cache(maxsize=None)
def cyclic_elements(order: int) -> tuple[CycElt, ...]:
    """All l+1 elements of F_{1^l}, in enumeration order: 0 < 1 < w < w^2 < ..."""
    return (CycElt.zero(order),) + tuple(CycElt.root(order, k) for k in range(order))


@dataclass(frozen=True, slots=True)
class ClosureElt:
    """A point of the closure of F_1: zero or a rotation by a rational turn.

    ``turn`` is the angle as a fraction of a full turn, reduced into [0, 1);
    ``None`` is the absorbing zero.  F_{1^l} embeds by k -> k/l.
    """

    turn: Fraction | None

    def __post_init__(self):
        if self.turn is not None and not 0 <= self.turn < 1:
            raise ValueError(f"turn {self.turn} not reduced mod 1")

    @classmethod
    def zero(cls) -> "ClosureElt":
        return cls(None)

    @classmethod
    def rot(cls, turn) -> "ClosureElt":
        return cls(Fraction(turn) % 1)

    @classmethod
    def from_cyc(cls, x: CycElt) -> "ClosureElt":
        if x.is_zero:
            return cls(None)
        return cls(Fraction(x.exp, x.order) % 1)

    @property
    def is_zero(self) -> bool:
        return self.turn is None

    def __mul__(self, other: "ClosureElt") -> "ClosureElt":
        if self.turn is None or other.turn is None:
            return ClosureElt(None)
        return ClosureElt((self.turn + other.turn) % 1)

    def __pow__(self, n: int) -> "ClosureElt":
        if self.turn is None:
            return ClosureElt(Fraction(0)) if n == 0 else self
        return ClosureElt((self.turn * n) % 1)

    def root_order(self) -> int:
        """The least n >= 1 with self**n == 1 (undefined for zero)."""
        if self.turn is None:
            raise ValueError("zero is not a root of unity")
        return self.turn.denominator if self.turn else 1

    def __str__(self) -> str:
        if self.turn is None:
            return "0"
        return "1" if self.turn == 0 else f"e({self.turn})"


def roots_of_unity(n: int) -> tuple[ClosureElt, ...]:
    """The subgroup of n-th roots of unity inside the closure."""
    return tuple(ClosureElt.rot(Fraction(k, n)) for k in range(n))


@dataclass(frozen=True, slots=True)
class Monomial:
    """An element mu * X_1^a_1 ... X_m^a_m of F_{1^l}[X_1, ..., X_m].

    The absorbing zero is normalised to zero coefficient with all-zero
    exponents, so equality is structural.
    """

    coeff: CycElt
    exps: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exps):
            raise ValueError("negative exponent")
        if self.coeff.is_zero and any(self.exps):
            raise ValueError("zero monomial must carry all-zero exponents")

    @classmethod
    def zero(cls, num_vars: int, order: int) -> "Monomial":
        return cls(CycElt.zero(order), (0,) * num_vars)

    @classmethod
    def one(cls, num_vars: int, order: int) -> "Monomial":
        return cls(CycElt.one(order), (0,) * num_vars)

    @classmethod
    def scalar(cls, mu: CycElt, num_vars: int) -> "Monomial":
        return cls(mu, (0,) * num_vars)

    @classmethod
    def variable(cls, i: int, num_vars: int, order: int) -> "Monomial":
        """The monomial X_i (1-based index)."""
        if not 1 <= i <= num_vars:
            raise ValueError(f"variable index {i} out of range 1..{num_vars}")
        exps = tuple(1 if j == i - 1 else 0 for j in range(num_vars))
        return cls(CycElt.one(order), exps)

    @property
    def order(self) -> int:
        return self.coeff.order

    @property
    def num_vars(self) -> int:
        return len(self.exps)

    @property
    def is_zero(self) -> bool:
        return self.coeff.is_zero

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if len(self.exps) != len(other.exps):
            raise ValueError("monomials in different polynomial monoids")
        coeff = self.coeff * other.coeff
        if coeff.is_zero:
            return Monomial.zero(len(self.exps), coeff.order)
        return Monomial(coeff, tuple(a + b for a, b in zip(self.exps, other.exps)))

    @property
    def sort_key(self) -> tuple:
        if self.coeff.is_zero:
            return (0,)
        return (1, self.degree, self.exps, self.coeff.exp)

    def __str__(self) -> str:
        if self.coeff.is_zero:
            return "0"
        parts = [] if self.coeff.exp == 0 else [str(self.coeff)]
        for i, e in enumerate(self.exps):
            if e == 1:
                parts.append(f"X{i + 1}")
            elif e > 1:
                parts.append(f"X{i + 1}^{e}")
        return "*".join(parts) if parts else "1"


def monomial_universe(num_vars: int, order: int, bound: int) -> tuple[Monomial, ...]:
    """All monomials of degree <= bound, zero first, then by (degree, exps, coeff)."""
    monos = [Monomial.zero(num_vars, order)]
    for exps in _exponent_vectors(num_vars, bound):
        for k in range(order):
            monos.append(Monomial(CycElt.root(order, k), exps))
    return tuple(sorted(monos, key=lambda m: m.sort_key))


def _exponent_vectors(num_vars: int, bound: int):
    if num_vars == 0:
        yield ()
        return
    for total in range(bound + 1):
        for head in range(total + 1):
            for rest in _exponent_vectors_of_total(num_vars - 1, total - head):
                yield (head,) + rest


def _exponent_vectors_of_total(num_vars: int, total: int):
    if num_vars == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for rest in _exponent_vectors_of_total(num_vars - 1, total - head):
            yield (head,) + rest


@dataclass(frozen=True, slots=True)
class MonoidPrime:
    """A prime ideal of F_{1^l}[X_1, ..., X_m]: the ideal generated by a
    subset of the variables (always containing zero)."""

    num_vars: int
    variables: frozenset[int]

    def __post_init__(self):
        if not all(1 <= v <= self.num_vars for v in self.variables):
            raise ValueError("variable index out of range")

    def contains(self, mono: Monomial) -> bool:
        if mono.is_zero:
            return True
        return any(mono.exps[v - 1] > 0 for v in self.variables)

    @property
    def is_maximal(self) -> bool:
        return len(self.variables) == self.num_vars

    @property
    def is_proj_closed(self) -> bool:
        """Closed in the projective spectrum: next to maximal, i.e. the
        complement of a single variable."""
        return len(self.variables) == self.num_vars - 1

    def le(self, other: "MonoidPrime") -> bool:
        return self.variables <= other.variables

    def label(self) -> tuple[int, ...]:
        return tuple(sorted(self.variables))

    def __str__(self) -> str:
        if not self.variables:
            return "(0)"
        return "(" + ",".join(f"X{v}" for v in sorted(self.variables)) + ")"


def spec_points(num_vars: int, order: int) -> list[MonoidPrime]:
    """All primes of the affine spectrum of F_{1^l}[X_1..X_m]: the 2^m
    variable subsets, ordered by (size, label).  Independent of l."""
    if num_vars < 0:
        raise ValueError("number of variables must be >= 0")
    if order < 1:
        raise ValueError("extension degree must be >= 1")
    primes = []
    for size in range(num_vars + 1):
        for combo in combinations(range(1, num_vars + 1), size):
            primes.append(MonoidPrime(num_vars, frozenset(combo)))
    return primes


def proj_points(num_vars: int, order: int) -> list[MonoidPrime]:
    """All primes of the projective spectrum on m+1 = num_vars variables:
    every variable subset except the irrelevant full one."""
    if num_vars < 1:
        raise ValueError("projective spectrum needs at least one variable")
    if order < 1:
        raise ValueError("extension degree must be >= 1")
    return [p for p in spec_points(num_vars, order) if not p.is_maximal]


def poset_relation(primes: list[MonoidPrime]) -> frozenset[tuple[int, int]]:
    """Index pairs (i, j) with primes[i] <= primes[j] under inclusion."""
    return frozenset(
        (i, j)
        for i, p in enumerate(primes)
        for j, q in enumerate(primes)
        if p.le(q)
    )


def topology_homeomorphic(ell1: int, ell2: int, num_vars: int, proj: bool = False) -> bool:
    """Whether the spectra for two extension degrees agree as labeled posets.

    Always true; this exists as an executable witness that the Zariski
    topology does not see the cyclotomy.
    """
    build = proj_points if proj else spec_points
    a, b = build(num_vars, ell1), build(num_vars, ell2)
    if [p.label() for p in a] != [p.label() for p in b]:
        return False
    return poset_relation(a) == poset_relation(b)


def ideal_members(prime: MonoidPrime, order: int, bound: int) -> set[Monomial]:
    """Degree-bounded slice of the ideal a prime generates."""
    return {
        m
        for m in monomial_universe(prime.num_vars, order, bound)
        if prime.contains(m)
    }


def is_prime_ideal_bounded(prime: MonoidPrime, order: int, bound: int) -> bool:
    """Exhaustively check the prime property on products of degree <= bound:
    a product lies in the ideal iff one of its factors does."""
    universe = monomial_universe(prime.num_vars, order, bound)
    for a, b in product(universe, repeat=2):
        if a.degree + b.degree > bound:
            continue
        inside = prime.contains(a * b)
        if inside != (prime.contains(a) or prime.contains(b)):
            return False
    return True


def powers_fixed_points(power: int, modulus_order: int) -> list[ClosureElt]:
    """Solutions of x**power == x inside mu_N with zero adjoined.

    For power = d + 1 these are exactly mu_gcd(d, N) plus zero, the
    closure-level characterisation of the degree-d extension.
    """
    if power < 0:
        raise ValueError("power must be >= 0")
    fixed = [x for x in roots_of_unity(modulus_order) if x**power == x]
    zero = ClosureElt.zero()
    if zero**power == zero:
        fixed.append(zero)
    return fixed


def subfield_order(power: int, modulus_order: int) -> int:
    """Order of the root-of-unity subgroup fixed by x -> x**power in mu_N."""
    if power == 0:
        return 1
    return gcd(power - 1, modulus_order)
