"""Congruences on the polynomial monoid F_{1^l}[X_1, ..., X_m].

A congruence is an equivalence relation stable under multiplication; it
is the monoid-side replacement for quotienting by an ideal, and strictly
more expressive: equations X ~ mu with mu invertible have no ideal
counterpart.  Key constructions:

* the congruence generated by a set of monomial pairs, computed as a
  degree-truncated closure (single-step rewrites u = w*a ~ w*b followed
  by transitive closure, which union-find gives for free);
* the Rees congruence of a prime ideal (ideal collapsed to one class,
  singletons elsewhere);
* evaluation congruences: kernel pairs of the morphisms sending each
  variable to an element of F_{1^l}.  These are exactly the maximal
  congruences and they biject with the affine frame.

Working degree-truncated is a design decision, not an approximation the
caller has to trust blindly: every closure carries a saturation flag
(stability of its classes when the bound grows by two) and evaluation
congruences are certified against their closed-form kernel partitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .f1core import CycElt, Monomial, MonoidPrime, cyclic_elements, monomial_universe
from .frames import FramePoint, enumerate_affine, normalize_projective


class UnsaturatedCongruenceError(ValueError):
    """Raised when an operation needs a closure that is stable in the
    degree bound but the supplied one is not."""


@dataclass(frozen=True)
class CongruenceSpec:
    """Generating data of a congruence: monomial pairs over an ambient
    polynomial monoid (m variables, extension degree l)."""

    num_vars: int
    ell: int
    generators: tuple[tuple[Monomial, Monomial], ...]

    def __post_init__(self):
        for a, b in self.generators:
            if a.num_vars != self.num_vars or b.num_vars != self.num_vars:
                raise ValueError("generator outside the ambient monoid")
            if a.order != self.ell or b.order != self.ell:
                raise ValueError("generator coefficient of wrong order")

    @property
    def max_degree(self) -> int:
        return max(
            (max(a.degree, b.degree) for a, b in self.generators), default=0
        )

    @classmethod
    def rees(cls, prime: MonoidPrime, ell: int) -> "CongruenceSpec":
        """Generators X_i ~ 0 for the variables of a prime ideal."""
        zero = Monomial.zero(prime.num_vars, ell)
        gens = tuple(
            (Monomial.variable(v, prime.num_vars, ell), zero)
            for v in sorted(prime.variables)
        )
        return cls(prime.num_vars, ell, gens)

    @classmethod
    def evaluation(cls, values: tuple[CycElt, ...]) -> "CongruenceSpec":
        """Generators X_i ~ mu_i for an evaluation point."""
        num_vars = len(values)
        ell = values[0].order if values else 1
        gens = tuple(
            (
                Monomial.variable(i + 1, num_vars, ell),
                Monomial.scalar(mu, num_vars)
                if not mu.is_zero
                else Monomial.zero(num_vars, ell),
            )
            for i, mu in enumerate(values)
        )
        return cls(num_vars, ell, gens)


class TruncatedCongruence:
    """A congruence restricted to the monomials of degree <= bound.

    Backed by union-find over the finite universe.  ``saturated`` records
    whether rebuilding with bound + 2 leaves the classes on this universe
    unchanged.
    """

    def __init__(self, num_vars: int, ell: int, bound: int, saturated: bool = True):
        self.num_vars = num_vars
        self.ell = ell
        self.bound = bound
        self.saturated = saturated
        self.universe = monomial_universe(num_vars, ell, bound)
        self._index = {m: i for i, m in enumerate(self.universe)}
        self._parent = list(range(len(self.universe)))

    def _find(self, i: int) -> int:
        parent = self._parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def _union(self, a: Monomial, b: Monomial) -> None:
        ra, rb = self._find(self._index[a]), self._find(self._index[b])
        if ra != rb:
            self._parent[max(ra, rb)] = min(ra, rb)

    def together(self, a: Monomial, b: Monomial) -> bool:
        if a not in self._index or b not in self._index:
            raise ValueError("monomial outside the truncated universe")
        return self._find(self._index[a]) == self._find(self._index[b])

    def class_of(self, a: Monomial) -> frozenset[Monomial]:
        root = self._find(self._index[a])
        return frozenset(
            m for i, m in enumerate(self.universe) if self._find(i) == root
        )

    def classes(self) -> list[frozenset[Monomial]]:
        buckets: dict[int, set[Monomial]] = {}
        for i, m in enumerate(self.universe):
            buckets.setdefault(self._find(i), set()).add(m)
        return sorted(
            (frozenset(c) for c in buckets.values()),
            key=lambda c: min(m.sort_key for m in c),
        )

    def partition_up_to(self, degree: int) -> frozenset[frozenset[Monomial]]:
        """Classes restricted to monomials of degree <= degree, nonempty parts."""
        parts = []
        for cls in self.classes():
            cut = frozenset(m for m in cls if m.degree <= degree)
            if cut:
                parts.append(cut)
        return frozenset(parts)

    def refines(self, other: "TruncatedCongruence") -> bool:
        """Every class of self is contained in a class of other (on the
        common universe)."""
        for cls in self.classes():
            members = [m for m in cls if m in other._index]
            if not members:
                continue
            first = members[0]
            if not all(other.together(first, m) for m in members[1:]):
                return False
        return True


def _closure(spec: CongruenceSpec, bound: int) -> TruncatedCongruence:
    cong = TruncatedCongruence(spec.num_vars, spec.ell, bound, saturated=True)
    for a, b in spec.generators:
        gen_gap = max(a.degree, b.degree)
        for w in cong.universe:
            if w.degree + gen_gap > bound:
                continue
            wa, wb = w * a, w * b
            if wa.degree <= bound and wb.degree <= bound:
                cong._union(wa, wb)
    return cong


def generate_congruence(spec: CongruenceSpec, bound: int) -> TruncatedCongruence:
    """Smallest congruence containing the generator pairs, truncated at the
    degree bound; the result's ``saturated`` flag reports stability of the
    classes under raising the bound by two."""
    if bound < spec.max_degree:
        raise ValueError(
            f"bound {bound} below maximal generator degree {spec.max_degree}"
        )
    cong = _closure(spec, bound)
    wider = _closure(spec, bound + 2)
    cong.saturated = cong.partition_up_to(bound) == wider.partition_up_to(bound)
    return cong


def rees_congruence(prime: MonoidPrime, ell: int, bound: int) -> TruncatedCongruence:
    """The congruence collapsing a prime ideal to the class of zero and
    leaving every other monomial in a singleton class.  Prime, because the
    ambient monoid is integral."""
    cong = TruncatedCongruence(prime.num_vars, ell, bound, saturated=True)
    zero = Monomial.zero(prime.num_vars, ell)
    for m in cong.universe:
        if prime.contains(m):
            cong._union(zero, m)
    return cong


@dataclass(frozen=True)
class EvalCongruence:
    """Kernel pair of the evaluation morphism X_i -> values[i].

    These are the maximal congruences; the values vector is literally an
    affine frame point, which is the promised bijection.
    """

    values: tuple[CycElt, ...]

    @property
    def num_vars(self) -> int:
        return len(self.values)

    @property
    def ell(self) -> int:
        return self.values[0].order if self.values else 1

    def evaluate(self, mono: Monomial) -> CycElt:
        if mono.is_zero:
            return CycElt.zero(self.ell)
        acc = mono.coeff
        for value, exp in zip(self.values, mono.exps):
            if exp:
                acc = acc * value**exp
        return acc

    def spec(self) -> CongruenceSpec:
        return CongruenceSpec.evaluation(self.values)

    def kernel_congruence(self, bound: int) -> TruncatedCongruence:
        """Exact fibers of the evaluation map on the truncated universe."""
        cong = TruncatedCongruence(self.num_vars, self.ell, bound, saturated=True)
        fibers: dict[CycElt, Monomial] = {}
        for m in cong.universe:
            value = self.evaluate(m)
            if value in fibers:
                cong._union(fibers[value], m)
            else:
                fibers[value] = m
        return cong


def maximal_congruences(num_vars: int, ell: int) -> list[EvalCongruence]:
    """All (l+1)^m evaluation congruences, in the enumeration order of the
    affine frame they biject with."""
    if num_vars < 0:
        raise ValueError("number of variables must be >= 0")
    if ell < 1:
        raise ValueError("extension degree must be >= 1")
    return [EvalCongruence(point) for point in enumerate_affine(num_vars, ell)]


@dataclass(frozen=True)
class PrimalityResult:
    is_prime: bool
    witness: tuple[Monomial, Monomial, Monomial] | None
    bound: int

    def __bool__(self) -> bool:
        return self.is_prime


def is_prime_congruence(cong: TruncatedCongruence) -> PrimalityResult:
    """Search the truncated quotient for a violation of the cancellation
    property: (a*b ~ a*c) without (b ~ c) and without (a ~ 0).

    Returns the violating triple as a certificate when one exists.  The
    verdict is relative to the degree bound, which is reported back.
    """
    if not cong.saturated:
        raise UnsaturatedCongruenceError(
            "primality needs a saturated closure; raise the degree bound"
        )
    universe = cong.universe
    bound = cong.bound
    zero = Monomial.zero(cong.num_vars, cong.ell)
    cancellable = [a for a in universe if not cong.together(a, zero)]
    for b, c in product(universe, repeat=2):
        if b.sort_key >= c.sort_key or cong.together(b, c):
            continue
        top = bound - max(b.degree, c.degree)
        for a in cancellable:
            if a.degree > top:
                continue
            if cong.together(a * b, a * c):
                return PrimalityResult(False, (a, b, c), bound)
    return PrimalityResult(True, None, bound)


@dataclass(frozen=True)
class SpecCTopology:
    """The congruence spectrum of a finite family: its prime members as
    points, and the closed-set lattice generated by the basic sets
    D(a, b) = {points containing the pair (a, b)}."""

    num_vars: int
    ell: int
    bound: int
    points: tuple[TruncatedCongruence, ...]
    closed_sets: tuple[frozenset[int], ...]

    def basic_closed(self, a: Monomial, b: Monomial) -> frozenset[int]:
        return frozenset(
            i for i, p in enumerate(self.points) if p.together(a, b)
        )


def spec_c(
    num_vars: int,
    ell: int,
    family,
    bound: int,
) -> SpecCTopology:
    """Build the congruence-spectrum topology of a family of congruences.

    Family members may be CongruenceSpec, TruncatedCongruence or
    EvalCongruence values; generated members must saturate at the bound.
    """
    congruences = []
    unsaturated = []
    for member in family:
        if isinstance(member, CongruenceSpec):
            cong = generate_congruence(member, bound)
        elif isinstance(member, EvalCongruence):
            cong = member.kernel_congruence(bound)
        else:
            cong = member
        if not cong.saturated:
            unsaturated.append(member)
        congruences.append(cong)
    if unsaturated:
        raise UnsaturatedCongruenceError(
            f"{len(unsaturated)} family member(s) do not saturate at bound {bound}"
        )
    points = tuple(c for c in congruences if is_prime_congruence(c))
    universe = monomial_universe(num_vars, ell, bound)
    generators: set[frozenset[int]] = set()
    for a, b in product(universe, repeat=2):
        if a.sort_key < b.sort_key:
            generators.add(
                frozenset(i for i, p in enumerate(points) if p.together(a, b))
            )
    full = frozenset(range(len(points)))
    closed = generators | {frozenset(), full}
    while True:
        fresh = set()
        pool = list(closed)
        for i, x in enumerate(pool):
            for y in pool[i + 1 :]:
                for candidate in (x | y, x & y):
                    if candidate not in closed:
                        fresh.add(candidate)
        if not fresh:
            break
        closed |= fresh
    ordered = tuple(sorted(closed, key=lambda s: (len(s), sorted(s))))
    return SpecCTopology(num_vars, ell, bound, points, ordered)


def irrelevant_congruence_spec(num_vars: int, ell: int) -> CongruenceSpec:
    """The congruence generated by X_1 ~ 0, ..., X_m ~ 0; its quotient
    forgets every variable, and the projective construction omits it."""
    zero = Monomial.zero(num_vars, ell)
    gens = tuple(
        (Monomial.variable(i, num_vars, ell), zero)
        for i in range(1, num_vars + 1)
    )
    return CongruenceSpec(num_vars, ell, gens)


def proj_c_closed_points(num_vars: int, ell: int) -> list[FramePoint]:
    """Closed points of the projective congruence spectrum: evaluation
    congruences other than the irrelevant all-zero one, taken modulo a
    global root-of-unity scaling.  They form the projective frame of
    dimension m - 1."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    seen = set()
    points = []
    for cong in maximal_congruences(num_vars, ell):
        if all(v.is_zero for v in cong.values):
            continue
        rep = normalize_projective(cong.values)
        if rep not in seen:
            seen.add(rep)
            points.append(rep)
    return sorted(points, key=lambda pt: tuple(c.sort_key for c in pt))
