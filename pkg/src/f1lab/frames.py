"""Affine and projective frames over F_{1^l} and their symmetries.

An affine frame of dimension d is the set of all d-tuples over F_{1^l};
a projective frame is the nonzero (d+1)-tuples modulo a global root-of-
unity factor.  Frames model the rational points of the corresponding
spaces: morphisms from the one-point spectrum of F_{1^l} correspond
bijectively to frame points, which is why the affine frame has (l+1)^d
elements while the Zariski topology only ever shows one closed point.

Projective points are kept in a canonical form: the first nonzero
coordinate is scaled to 1.  Two tuples are proportional iff they
normalise identically, so class equality is structural and enumeration
order is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .f1core import ClosureElt, CycElt, cyclic_elements

FramePoint = tuple[CycElt, ...]


def _point_key(point: FramePoint) -> tuple:
    return tuple(c.sort_key for c in point)


def enumerate_affine(dim: int, ell: int) -> list[FramePoint]:
    """All (l+1)^d points of the affine frame, lexicographically ordered
    with 0 < 1 < w < ... < w^(l-1)."""
    if dim < 0:
        raise ValueError("affine dimension must be >= 0")
    if ell < 1:
        raise ValueError("extension degree must be >= 1")
    return list(product(cyclic_elements(ell), repeat=dim))


def normalize_projective(coords: FramePoint) -> FramePoint:
    """Canonical representative of a proportionality class: scale so the
    first nonzero coordinate becomes 1."""
    for c in coords:
        if not c.is_zero:
            inv = c.inverse()
            return tuple(x * inv for x in coords)
    raise ValueError("the all-zero tuple has no projective class")


def enumerate_projective(dim: int, ell: int) -> list[FramePoint]:
    """All sum_{i=0..d} (l+1)^i classes of the projective frame, as
    normalized (d+1)-tuples in lexicographic order; dim = -1 is empty."""
    if dim < -1:
        raise ValueError("projective dimension must be >= -1")
    if ell < 1:
        raise ValueError("extension degree must be >= 1")
    if dim == -1:
        return []
    elements = cyclic_elements(ell)
    zero, one = elements[0], elements[1]
    points: list[FramePoint] = []
    # Normal forms are zero-prefix + 1 + free suffix; tuples with a later
    # first nonzero coordinate sort lexicographically earlier.
    for lead in range(dim, -1, -1):
        prefix = (zero,) * lead + (one,)
        for suffix in product(elements, repeat=dim - lead):
            points.append(prefix + suffix)
    return points


def subframe(
    dim: int,
    ell: int,
    fixed,
    projective: bool = False,
) -> list[FramePoint]:
    """Points of the frame whose listed coordinates (1-based) are pinned to
    the given values; the rest vary.  For projective frames the pinning is
    applied to homogeneous tuples and proportionality afterwards."""
    pins: dict[int, CycElt] = {}
    items = fixed.items() if hasattr(fixed, "items") else fixed
    width = dim + 1 if projective else dim
    for index, value in items:
        if not 1 <= index <= width:
            raise ValueError(f"coordinate {index} out of range 1..{width}")
        if index in pins:
            raise ValueError(f"coordinate {index} fixed twice")
        pins[index] = value
    matches = lambda pt: all(pt[i - 1] == v for i, v in pins.items())
    if not projective:
        return [pt for pt in enumerate_affine(dim, ell) if matches(pt)]
    seen = set()
    points = []
    for pt in product(cyclic_elements(ell), repeat=dim + 1):
        if not matches(pt) or all(c.is_zero for c in pt):
            continue
        rep = normalize_projective(pt)
        if rep not in seen:
            seen.add(rep)
            points.append(rep)
    return sorted(points, key=_point_key)


def support_size(point: FramePoint) -> int:
    return sum(1 for c in point if not c.is_zero)


def orbit_decomposition(
    dim: int, ell: int, projective: bool = False
) -> list[tuple[int, list[FramePoint]]]:
    """Partition of the frame by number of nonzero entries.  Each part is a
    single orbit of the frame's automorphism group."""
    points = (
        enumerate_projective(dim, ell) if projective else enumerate_affine(dim, ell)
    )
    parts: dict[int, list[FramePoint]] = {}
    for pt in points:
        parts.setdefault(support_size(pt), []).append(pt)
    return sorted(parts.items())


@dataclass(frozen=True)
class FrameAutomorphism:
    """A coordinate permutation combined with per-coordinate root scalings.

    Acts by (g.x)_i = scalings[i] * x[perm[i]].  For projective frames the
    scaling vector is a coset representative modulo the global scalings:
    it is normalised so the first entry is 1, and the action normalises
    the image point.
    """

    perm: tuple[int, ...]
    scalings: tuple[CycElt, ...]
    projective: bool = False

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation of the coordinates")
        if len(self.scalings) != len(self.perm):
            raise ValueError("one scaling per coordinate required")
        if any(s.is_zero for s in self.scalings):
            raise ValueError("scalings must be invertible")
        if self.projective and self.scalings[0].exp != 0:
            raise ValueError("projective representative must scale coordinate 1 by 1")

    @classmethod
    def identity(cls, width: int, ell: int, projective: bool = False):
        return cls(
            tuple(range(width)), (CycElt.one(ell),) * width, projective
        )

    def __call__(self, point: FramePoint) -> FramePoint:
        image = tuple(
            s * point[j] for s, j in zip(self.scalings, self.perm)
        )
        return normalize_projective(image) if self.projective else image

    def compose(self, other: "FrameAutomorphism") -> "FrameAutomorphism":
        """self after other."""
        perm = tuple(other.perm[j] for j in self.perm)
        scalings = tuple(
            s * other.scalings[j] for s, j in zip(self.scalings, self.perm)
        )
        return _normalize_aut(perm, scalings, self.projective)

    def inverse(self) -> "FrameAutomorphism":
        width = len(self.perm)
        inv_perm = [0] * width
        for i, j in enumerate(self.perm):
            inv_perm[j] = i
        scalings = tuple(self.scalings[inv_perm[i]].inverse() for i in range(width))
        return _normalize_aut(tuple(inv_perm), scalings, self.projective)


def _normalize_aut(perm, scalings, projective) -> FrameAutomorphism:
    if projective:
        shift = scalings[0].inverse()
        scalings = tuple(shift * s for s in scalings)
    return FrameAutomorphism(perm, scalings, projective)


@dataclass(frozen=True)
class FrameGroup:
    """The full symmetry group of a frame, with its order, a generating
    set, and on-demand enumeration of all elements."""

    dim: int
    ell: int
    projective: bool
    order: int
    generators: tuple[FrameAutomorphism, ...]

    def elements(self):
        width = self.dim + 1 if self.projective else self.dim
        roots = cyclic_elements(self.ell)[1:]
        free = width - 1 if self.projective else width
        for perm in _permutations(width):
            for scale_tail in product(roots, repeat=free):
                scalings = (
                    (roots[0],) + scale_tail if self.projective else scale_tail
                )
                yield FrameAutomorphism(perm, scalings, self.projective)


def _permutations(width: int):
    from itertools import permutations

    return permutations(range(width))


def automorphism_group(dim: int, ell: int, projective: bool = False) -> FrameGroup:
    """Wreath-type symmetry group of a frame: all coordinate permutations
    with independent nonzero scalings, modulo global scalings in the
    projective case.  Orders are l^d * d! and l^d * (d+1)!."""
    if projective:
        if dim < 0:
            raise ValueError("projective dimension must be >= 0")
        width = dim + 1
    else:
        if dim < 1:
            raise ValueError("affine dimension must be >= 1")
        width = dim
    if ell < 1:
        raise ValueError("extension degree must be >= 1")
    one = CycElt.one(ell)
    gens = []
    base = [one] * width
    if ell > 1:
        # scale the last coordinate: stays a valid projective representative
        scaled = base.copy()
        scaled[width - 1] = CycElt.root(ell, 1)
        if not (projective and width == 1):
            gens.append(
                FrameAutomorphism(tuple(range(width)), tuple(scaled), projective)
            )
    if width >= 2:
        swap = list(range(width))
        swap[0], swap[1] = swap[1], swap[0]
        gens.append(FrameAutomorphism(tuple(swap), tuple(base), projective))
        if width >= 3:
            cycle = tuple(range(1, width)) + (0,)
            gens.append(FrameAutomorphism(cycle, tuple(base), projective))
    order = ell**dim
    for k in range(2, width + 1):
        order *= k
    return FrameGroup(dim, ell, projective, order, tuple(gens))


def points_per_closed_point(kind: str, dim: int, ell: int) -> Fraction:
    """Exact ratio of frame points (morphism-style rational points) to
    closed points of the underlying spectrum.

    Affine spectra have a single closed point, projective ones have
    dim + 1, so the ratio is (l+1)^m / 1 or (sum (l+1)^i) / (m+1); it is
    strictly increasing in l for fixed positive dimension.
    """
    if ell < 1:
        raise ValueError("extension degree must be >= 1")
    if kind == "affine":
        return Fraction((ell + 1) ** dim)
    if kind == "projective":
        total = sum((ell + 1) ** i for i in range(dim + 1))
        return Fraction(total, dim + 1)
    raise ValueError(f"unknown frame kind {kind!r}")


def frobenius(x, n: int):
    """The power map x -> x**n, applied coordinate-wise on frame points.

    Degree-d extension elements inside the closure are exactly the fixed
    points of the power map with n = d + 1; the geometric variant on frame
    points is the same map with that exponent.
    """
    if n < 0:
        raise ValueError("power must be >= 0")
    if isinstance(x, (CycElt, ClosureElt)):
        return x**n
    if isinstance(x, tuple):
        return tuple(frobenius(c, n) for c in x)
    raise TypeError(f"cannot apply power map to {type(x).__name__}")
