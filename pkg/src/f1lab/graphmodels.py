"""Directed graphs, Cayley cycles, covers and lexicographic products.

The combinatorial model of a projective space over F_{1^l} is the
lexicographic product of a complete graph (one factor per closed point)
with the Cayley graph of the cyclic group mu_l on a single generator: a
directed l-cycle blown up over every vertex.  Undirected graphs are
stored as symmetric directed edge sets so one automorphism engine serves
both; automorphism counting is an exact backtracking search.
"""

from __future__ import annotations

from dataclasses import dataclass


class VertexCapError(ValueError):
    """Automorphism search refused: the graph exceeds the vertex cap."""


@dataclass(frozen=True)
class DiGraph:
    """A finite digraph without duplicate edges; self-loops allowed."""

    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        for u, v in self.edges:
            if u not in vset or v not in vset:
                raise ValueError(f"dangling edge ({u!r}, {v!r})")

    @classmethod
    def directed(cls, vertices, edges) -> "DiGraph":
        return cls(tuple(vertices), frozenset((u, v) for u, v in edges))

    @classmethod
    def undirected(cls, vertices, edges) -> "DiGraph":
        sym = set()
        for u, v in edges:
            sym.add((u, v))
            sym.add((v, u))
        return cls(tuple(vertices), frozenset(sym))

    def out_neighbors(self, v) -> set:
        return {w for (u, w) in self.edges if u == v}

    def in_neighbors(self, v) -> set:
        return {u for (u, w) in self.edges if w == v}

    def is_symmetric(self) -> bool:
        return all((v, u) in self.edges for (u, v) in self.edges)


def complete_graph(n: int) -> DiGraph:
    """The complete graph K_n on vertices 0..n-1 (symmetric edge set)."""
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    edges = [(i, j) for i in range(n) for j in range(n) if i != j]
    return DiGraph.directed(range(n), edges)


def cayley_cycle(n: int) -> DiGraph:
    """Cayley graph of the cyclic group of order n on one generator: the
    directed cycle v -> v+1 (a single loop for n = 1)."""
    if n < 1:
        raise ValueError("cycle length must be >= 1")
    return DiGraph.directed(range(n), [(v, (v + 1) % n) for v in range(n)])


def lex_product(a: DiGraph, b: DiGraph) -> DiGraph:
    """Lexicographic product a[b]: (v, v') -> (w, w') iff v -> w, or v = w
    and v' -> w'.  Directed edge count is |E_a|*|V_b|^2 + |V_a|*|E_b|."""
    vertices = [(v, w) for v in a.vertices for w in b.vertices]
    edges = set()
    for (u, v) in a.edges:
        for x in b.vertices:
            for y in b.vertices:
                edges.add(((u, x), (v, y)))
    for v in a.vertices:
        for (x, y) in b.edges:
            edges.add(((v, x), (v, y)))
    return DiGraph.directed(vertices, edges)


def cyclotomic_blowup(n: int, ell: int) -> DiGraph:
    """K_n blown up by the directed ell-cycle: the combinatorial model of
    projective (n-1)-space over F_{1^l}."""
    return lex_product(complete_graph(n), cayley_cycle(ell))


@dataclass(frozen=True)
class GraphMorphism:
    """A vertex map that sends edges to edges."""

    source: DiGraph
    target: DiGraph
    mapping: tuple

    def __post_init__(self):
        fmap = dict(self.mapping)
        missing = [v for v in self.source.vertices if v not in fmap]
        if missing:
            raise ValueError(f"vertex {missing[0]!r} has no image")
        for w in fmap.values():
            if w not in set(self.target.vertices):
                raise ValueError(f"image vertex {w!r} not in target")
        for (u, v) in self.source.edges:
            if (fmap[u], fmap[v]) not in self.target.edges:
                raise ValueError(f"edge ({u!r}, {v!r}) not preserved")

    @classmethod
    def from_dict(cls, source: DiGraph, target: DiGraph, fmap: dict) -> "GraphMorphism":
        return cls(source, target, tuple(sorted(fmap.items(), key=repr)))

    def as_dict(self) -> dict:
        return dict(self.mapping)

    def __call__(self, v):
        return dict(self.mapping)[v]


def is_cover(morphism: GraphMorphism, fold: int | None = None) -> bool:
    """Whether a morphism is a covering map: surjective, and a local
    bijection on the edges at every source vertex (out- and in-edges
    separately).  With ``fold`` given, additionally requires every vertex
    fiber to have exactly that size."""
    fmap = morphism.as_dict()
    src, dst = morphism.source, morphism.target
    if set(fmap.values()) != set(dst.vertices):
        return False
    if fold is not None:
        fibers: dict = {}
        for v in src.vertices:
            fibers[fmap[v]] = fibers.get(fmap[v], 0) + 1
        if any(size != fold for size in fibers.values()):
            return False
    for v in src.vertices:
        image = fmap[v]
        out_image = [fmap[w] for w in src.out_neighbors(v)]
        if len(set(out_image)) != len(out_image):
            return False
        if set(out_image) != dst.out_neighbors(image):
            return False
        in_image = [fmap[u] for u in src.in_neighbors(v)]
        if len(set(in_image)) != len(in_image):
            return False
        if set(in_image) != dst.in_neighbors(image):
            return False
    return True


def automorphism_count(graph: DiGraph, cap: int = 12) -> int:
    """Exact number of digraph automorphisms, by backtracking over
    degree-compatible assignments with incremental adjacency checks."""
    n = len(graph.vertices)
    if n > cap:
        raise VertexCapError(f"{n} vertices exceed the cap of {cap}")
    if n == 0:
        return 1
    index = {v: i for i, v in enumerate(graph.vertices)}
    out = [0] * n
    inc = [0] * n
    for (u, v) in graph.edges:
        out[index[u]] |= 1 << index[v]
        inc[index[v]] |= 1 << index[u]
    signature = [(out[i].bit_count(), inc[i].bit_count()) for i in range(n)]

    # Assign vertices in a connectivity-friendly order so adjacency
    # constraints bite as early as possible.
    order: list[int] = []
    placed = set()
    while len(order) < n:
        frontier = [
            i
            for i in range(n)
            if i not in placed
            and any((out[j] >> i) & 1 or (inc[j] >> i) & 1 for j in order)
        ]
        nxt = frontier[0] if frontier else next(i for i in range(n) if i not in placed)
        order.append(nxt)
        placed.add(nxt)

    assignment = [-1] * n
    used = [False] * n
    count = 0

    def extend(depth: int) -> None:
        nonlocal count
        if depth == n:
            count += 1
            return
        v = order[depth]
        for w in range(n):
            if used[w] or signature[w] != signature[v]:
                continue
            ok = ((out[v] >> v) & 1) == ((out[w] >> w) & 1)
            if ok:
                for u in order[:depth]:
                    fu = assignment[u]
                    if ((out[v] >> u) & 1) != ((out[w] >> fu) & 1) or (
                        (inc[v] >> u) & 1
                    ) != ((inc[w] >> fu) & 1):
                        ok = False
                        break
            if ok:
                assignment[v] = w
                used[w] = True
                extend(depth + 1)
                used[w] = False
                assignment[v] = -1

    extend(0)
    return count
