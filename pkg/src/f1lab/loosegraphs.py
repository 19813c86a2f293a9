"""Loose trees and their classes and zeta functions.

A loose graph allows edges with fewer than two endpoints.  For a loose
tree the class in the polynomial Grothendieck fragment has a closed
form, determined by four statistics of the degree sequence: the set of
degrees above one, their multiplicities n_i, the excess I = sum n_i - 1,
and the number E of degree-one vertices.  The class is

    sum_i n_i * L^(d_i)  -  I * L  +  I  +  E

and the matching zeta function over the degree-l extension is the
product of (l(s - d_i))^(-n_i) with prefactor (l(s-1))^I / (ls)^(E+I).
The two formulas are consistent by construction: the zeta factor data is
exactly the coefficient data of the class polynomial.

Conventions (normalised before the statistics are read off):

* a single edge with at most one endpoint is the affine line, with
  D empty, I = -1, E = 1 by stipulation;
* an isolated vertex is a point, class 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counting import CountPoly
from .zeta import ZetaF1, normalize_extension_degree


class NotALooseTreeError(ValueError):
    pass


@dataclass(frozen=True)
class LooseGraph:
    """Vertices plus edges with 0, 1 or 2 endpoints (tuples of that
    length).  Degree counts incident edge ends."""

    vertices: tuple
    edges: tuple[tuple, ...]

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        for edge in self.edges:
            if len(edge) > 2:
                raise ValueError(f"edge {edge!r} has more than two endpoints")
            for endpoint in edge:
                if endpoint not in vset:
                    raise ValueError(f"dangling endpoint {endpoint!r}")

    @classmethod
    def build(cls, vertices, edges) -> "LooseGraph":
        return cls(tuple(vertices), tuple(tuple(e) for e in edges))

    def degree(self, v) -> int:
        return sum(1 for edge in self.edges for endpoint in edge if endpoint == v)


def affine_space_star(dim: int) -> LooseGraph:
    """One vertex with dim loose edges: the loose graph of affine
    dim-space (dim >= 2; dim = 1 is the single loose edge)."""
    return LooseGraph.build(["c"], [("c",)] * dim)


def loose_line() -> LooseGraph:
    """A single edge with no endpoints: the affine line convention."""
    return LooseGraph.build([], [()])


def path_graph(n: int) -> LooseGraph:
    verts = list(range(n))
    return LooseGraph.build(verts, [(i, i + 1) for i in range(n - 1)])


@dataclass(frozen=True)
class TreeStats:
    """Degree statistics of a loose tree.

    degrees: the distinct vertex degrees above 1, ascending.
    multiplicities: how many vertices carry each of those degrees.
    excess: sum of the multiplicities minus one (or -1 when there are
        none).
    leaves: number of vertices of degree exactly 1; ends of loose edges
        are not vertices and do not count.
    convention: '' normally, 'line' for the single-loose-edge case,
        'point' for the isolated vertex.
    """

    degrees: tuple[int, ...]
    multiplicities: tuple[int, ...]
    excess: int
    leaves: int
    convention: str = ""


def tree_stats(graph: LooseGraph) -> TreeStats:
    """Validate that the graph is a loose tree and read off its degree
    statistics, applying the stipulated conventions."""
    _check_loose_tree(graph)
    if len(graph.edges) == 1 and not graph.vertices and len(graph.edges[0]) == 0:
        return TreeStats((), (), -1, 1, convention="line")
    if len(graph.vertices) == 1 and not graph.edges:
        return TreeStats((), (), -1, 0, convention="point")
    by_degree: dict[int, int] = {}
    leaves = 0
    for v in graph.vertices:
        d = graph.degree(v)
        if d == 1:
            leaves += 1
        elif d > 1:
            by_degree[d] = by_degree.get(d, 0) + 1
    degrees = tuple(sorted(by_degree))
    multiplicities = tuple(by_degree[d] for d in degrees)
    return TreeStats(degrees, multiplicities, sum(multiplicities) - 1, leaves)


def _check_loose_tree(graph: LooseGraph) -> None:
    full_edges = [e for e in graph.edges if len(e) == 2]
    floating = [e for e in graph.edges if len(e) == 0]
    if floating and not (
        len(graph.edges) == 1 and not graph.vertices
    ):
        raise NotALooseTreeError("an edge with no endpoints must stand alone")
    if not graph.vertices:
        if full_edges or len(graph.edges) > 1:
            raise NotALooseTreeError("edges without any vertices")
        return
    for u, v in full_edges:
        if u == v:
            raise NotALooseTreeError(f"self-loop at {u!r}")
    # connected and acyclic on the vertex-supported skeleton
    if len(full_edges) != len(graph.vertices) - 1:
        raise NotALooseTreeError(
            "skeleton edge count does not match a tree on these vertices"
        )
    adjacency: dict = {v: set() for v in graph.vertices}
    for u, v in full_edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    seen = set()
    stack = [graph.vertices[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adjacency[v] - seen)
    if len(seen) != len(graph.vertices):
        raise NotALooseTreeError("skeleton is disconnected")


def tree_class(graph: LooseGraph) -> CountPoly:
    """Class of a loose tree: sum_i n_i L^(d_i) - I*L + I + E."""
    stats = tree_stats(graph)
    return class_from_stats(stats)


def class_from_stats(stats: TreeStats) -> CountPoly:
    if stats.convention == "point":
        return CountPoly.point()
    poly = CountPoly.from_coeffs([stats.excess + stats.leaves, -stats.excess])
    for d, n in zip(stats.degrees, stats.multiplicities):
        poly = poly + CountPoly.from_coeffs([0] * d + [n])
    return poly


def tree_zeta(graph: LooseGraph, ell: int) -> ZetaF1:
    """Zeta function of a loose tree over the degree-l extension:
    (l(s-1))^I / (ls)^(E+I) times prod_i (l(s - d_i))^(-n_i), with
    exponents at coinciding k merged additively."""
    ell = normalize_extension_degree(ell)
    stats = tree_stats(graph)
    if stats.convention == "point":
        return ZetaF1.from_dict(ell, {0: 1})
    factors: dict[int, int] = {}
    factors[0] = stats.leaves + stats.excess
    factors[1] = factors.get(1, 0) - stats.excess
    for d, n in zip(stats.degrees, stats.multiplicities):
        factors[d] = factors.get(d, 0) + n
    return ZetaF1.from_dict(ell, factors)
