"""
The signature graph of a linear 3-uniform hypergraph.

Its vertices are ordered pairs `(u, v)` of distinct vertices of the hypergraph. Two pairs `(u1, v1)` and `(u2, v2)` are
adjacent when some vertex `w` lies on two hyperedges `{u1, u2, w}` and `{v1, v2, w}`: `w` causes the edge, the two
hyperedges are its T(e), and their colors its label. Every cherry (two hyperedges meeting in one vertex) causes exactly
four edges, so the number of edges is known exactly from the degrees.

Only pairs touched by an edge are materialized.

Basic usage: ``G = build_signature_graph(H)``
"""
from __future__ import annotations


from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple
import logging
import random


import networkx as nx


from .default_config import CLAIM24_EXHAUSTIVE_K, CLAIM24_SAMPLES
from .helpers import ceil_fraction, InconsistencyError
from .hypergraphs import Augmentation, validate


logger = logging.getLogger(__name__)


class SigVertex(NamedTuple):
    """
    An ordered pair of distinct hypergraph vertices.
    """

    first: int
    second: int

    def swapped(self) -> SigVertex:
        return SigVertex(self.second, self.first)


class SigEdge(NamedTuple):
    """
    An edge of the signature graph, stored with `a < b`.

    `t` holds the indices of the hyperedges `{a.first, b.first, cause}` and `{a.second, b.second, cause}`, in that
    order; `colors` is the sorted pair of their (distinct) colors.
    """

    a: SigVertex
    b: SigVertex
    cause: int
    t: tuple
    colors: tuple

    def other(self, x) -> SigVertex:
        return self.b if x == self.a else self.a


class SignatureGraph:
    """
    Signature graph of a hypergraph, or a subgraph of it.

    :param base: The hypergraph.
    :type base: ColoredHypergraph
    :param edges: The edges, kept sorted.
    :type edges: Iterable[SigEdge]
    """

    def __init__(self, base, edges):
        self.base = base
        self.edges = tuple(sorted(set(edges)))
        adjacency = defaultdict(list)
        for index, edge in enumerate(self.edges):
            adjacency[edge.a].append(index)
            adjacency[edge.b].append(index)
        self.adjacency = {x: tuple(indices) for x, indices in sorted(adjacency.items())}
        self.vertices = tuple(self.adjacency)
        self._edge_set = frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, item) -> bool:
        if isinstance(item, SigEdge):
            return item in self._edge_set
        return item in self.adjacency

    def __str__(self) -> str:
        return repr(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__} with {len(self.vertices)} vertices and {len(self.edges)} edges"

    def degree(self, x) -> int:
        return len(self.adjacency.get(x, ()))

    def incident(self, x) -> list:
        """
        Edges incident to `x`, in sorted order.

        :rtype: list[SigEdge]
        """
        return [self.edges[index] for index in self.adjacency.get(x, ())]

    def neighbors(self, x) -> list:
        """
        Couples `(y, edge)` for every edge incident to `x`.

        :rtype: list[tuple[SigVertex, SigEdge]]
        """
        return [(edge.other(x), edge) for edge in self.incident(x)]

    def induced(self, vertices) -> SignatureGraph:
        """
        Subgraph induced by a set of vertices. Vertices left without edges disappear.
        """
        keep = set(vertices)
        return type(self)(self.base, (e for e in self.edges if e.a in keep and e.b in keep))

    def to_networkx(self) -> nx.Graph:
        """
        The graph on signature vertices, each edge carrying its `SigEdge` under `sig`. Signature edges never share both
        endpoints, so the graph is simple.

        :rtype: networkx.Graph
        """
        graph = nx.Graph()
        graph.add_edges_from((edge.a, edge.b, {"sig": edge}) for edge in self.edges)
        return graph

    def average_degree(self) -> Fraction:
        if not self.vertices:
            return Fraction(0)
        return Fraction(2 * len(self.edges), len(self.vertices))


def _cherry_edges(H, w, e, f) -> list:
    """
    The four signature edges caused by `w` on the cherry made of hyperedges `e` and `f`.
    """
    u1, u2 = (v for v in H.edges[e].vertices if v != w)
    v1, v2 = (v for v in H.edges[f].vertices if v != w)
    colors = tuple(sorted((H.edges[e].color, H.edges[f].color)))
    rtn = []
    for first, second, t in (((u1, u2), (v1, v2), (e, f)), ((v1, v2), (u1, u2), (f, e))):
        (p1, p2), (q1, q2) = first, second
        for a, b in (((p1, q1), (p2, q2)), ((p1, q2), (p2, q1))):
            a, b = SigVertex(*a), SigVertex(*b)
            if b < a:
                a, b = b, a
            rtn.append(SigEdge(a, b, w, t, colors))
    return rtn


def build_signature_graph(H) -> SignatureGraph:
    """
    Build the signature graph, iterating over causing vertices and pairs of hyperedges through them.

    :param H: A valid linear 3-uniform hypergraph.
    :type H: ColoredHypergraph
    :rtype: SignatureGraph
    """
    if H.uniformity != 3:
        raise ValueError("Signature graphs are defined for 3-uniform hypergraphs only.")
    report = validate(H)
    if not report.linear:
        raise ValueError(f"Hypergraph is not linear: {report.violations[0].message}.")
    edges = []
    for w, incident in enumerate(H.incidence):
        for e, f in combinations(incident, 2):
            edges.extend(_cherry_edges(H, w, e, f))
    G = SignatureGraph(H, edges)
    if len(G.edges) != len(edges):
        raise InconsistencyError("Two cherries caused the same signature edge on a linear hypergraph.")
    logger.debug("%r built from %r", G, H)
    return G


def exact_edge_count(H) -> int:
    """
    Number of signature edges, `4 * sum over v of C(deg(v), 2)`.

    :rtype: int
    """
    d = H.degrees()
    return int(4 * (d * (d - 1) // 2).sum())


def claim22_lower_bound(n, k, gamma) -> int:
    """
    `ceil(12 * gamma^2 * n * k^2)`, the lower bound on the number of signature edges when each of the `k` colors holds
    at least `gamma * n` edges.

    :param n: Number of vertices.
    :type n: int
    :param k: Number of colors.
    :type k: int
    :param gamma: Matching density, with `gamma * k >= 1`.
    :type gamma: Fraction
    :rtype: int
    """
    gamma = Fraction(gamma)
    if gamma * k < 1:
        raise ValueError(f"The bound needs `gamma * k >= 1`, got {gamma * k}.")
    return ceil_fraction(12 * gamma**2 * n * k**2)


@dataclass(frozen=True)
class Claim22Chain:
    """
    Every finite quantity of the edge counting argument, for one hypergraph.
    """

    m: int
    degree_sum: int
    degree_square_sum: int
    cauchy_schwarz: Fraction
    chain_bound: Fraction
    exact: int


def claim22_chain(H) -> Claim22Chain:
    """
    Evaluate the counting chain: `sum d(v) = 3m`, `sum d(v)^2 >= 9m^2/n`, `|E(G)| >= 12m^2/n` (when `m >= n`), and
    the exact count.

    :rtype: Claim22Chain
    """
    d = H.degrees()
    m = len(H.edges)
    return Claim22Chain(
        m=m,
        degree_sum=int(d.sum()),
        degree_square_sum=int((d * d).sum()),
        cauchy_schwarz=Fraction(9 * m * m, H.n),
        chain_bound=Fraction(12 * m * m, H.n),
        exact=exact_edge_count(H),
    )


def color_incident_edges(G, x, C) -> list:
    """
    Edges incident to `x` whose label meets the color set `C`. There are at most `4 |C|` of them.

    :param G: A signature graph.
    :type G: SignatureGraph
    :param x: One of its vertices.
    :type x: SigVertex
    :param C: A set of colors.
    :type C: Iterable[int]
    :rtype: list[SigEdge]
    """
    C = set(C)
    rtn = [edge for edge in G.incident(x) if C.intersection(edge.colors)]
    if len(rtn) > 4 * len(C):
        raise InconsistencyError(f"{x} has {len(rtn)} edges meeting {sorted(C)}, above {4 * len(C)}.")
    return rtn


def claim24_max_ratio(G, seed=0, samples=CLAIM24_SAMPLES) -> Fraction:
    """
    Largest `|E(x, C)| / (4 |C|)` over non-empty color sets: every set when `k` is small, `samples` random couples
    `(x, C)` otherwise.

    :param G: A signature graph.
    :type G: SignatureGraph
    :param seed: Seed of the sampling.
    :type seed: int, default 0.
    :param samples: Number of samples for large `k`.
    :type samples: int, default 10000.
    :rtype: Fraction
    """
    k = G.base.k
    best = Fraction(0)
    if not G.vertices:
        return best
    if k <= CLAIM24_EXHAUSTIVE_K:
        sets = [set(C) for size in range(1, k + 1) for C in combinations(range(k), size)]
        for x in G.vertices:
            for C in sets:
                best = max(best, Fraction(len(color_incident_edges(G, x, C)), 4 * len(C)))
        return best
    rng = random.Random(seed)
    for _ in range(samples):
        x = G.vertices[rng.randrange(len(G.vertices))]
        C = set(rng.sample(range(k), rng.randint(1, k)))
        best = max(best, Fraction(len(color_incident_edges(G, x, C)), 4 * len(C)))
    return best


def subgraph_augmentation(G, J) -> Augmentation:
    """
    The multiset union of T(e) over the edges `e` of `J`, copies retained.

    :param G: A signature graph.
    :type G: SignatureGraph
    :param J: Edges of `G`.
    :type J: Iterable[SigEdge]
    :rtype: Augmentation
    """
    counts = Counter()
    for edge in J:
        if edge not in G:
            raise ValueError(f"{edge} is not an edge of {G!r}.")
        counts.update(edge.t)
    return Augmentation(G.base, counts)


def is_rainbow(G, J) -> bool:
    """
    True iff the hyperedges contributed by `J` all have different colors.

    :param G: A signature graph.
    :type G: SignatureGraph
    :param J: Edges of `G`.
    :type J: Iterable[SigEdge]
    :rtype: bool
    """
    colors = []
    for edge in J:
        if edge not in G:
            raise ValueError(f"{edge} is not an edge of {G!r}.")
        colors.extend(G.base.edges[index].color for index in edge.t)
    return len(colors) == len(set(colors))


def swap_image(edge) -> SigEdge:
    """
    Image of an edge under `(u, v) -> (v, u)`; it exchanges the two hyperedges of T(e).
    """
    a, b = edge.a.swapped(), edge.b.swapped()
    if b < a:
        a, b = b, a
    return SigEdge(a, b, edge.cause, (edge.t[1], edge.t[0]), edge.colors)

