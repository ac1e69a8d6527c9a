"""
Witnesses are certificates that a hypergraph is not even-colored: an even edge subset with an odd number of edges of
some color. They are searched for in the signature graph.

The search peels the signature graph down to a minimum degree, then grows a rainbow tree level by level from a root:
no color may repeat along a root path. An edge that would close a cycle with disjoint colors, or more generally any
non-tree edge whose tree cycle covers some color an odd number of times, gives a cycle whose hyperedges form an even
augmentation with an odd color. Reduced mod 2, that is the certificate. Certificates are always re-checked; not
finding one proves nothing (the GF(2) oracle is the complete procedure).

The two-query warm-up lives here too: on a union of color matchings, every vertex gets the parity vector of the colors
along a path from a source, and a mismatch yields an odd cycle.

Basic usage: ``result = find_violation(H, WitnessConfig(seed=3))``
"""
from __future__ import annotations


from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import NamedTuple, Optional, Union
import logging
import math
import random


import networkx as nx


from .default_config import DEFAULT_GROWTH_FACTOR, DEFAULT_ROOT_ATTEMPTS, DEFAULT_SEED, DEFAULT_WORKERS
from .helpers import InconsistencyError, parity, unit_vector
from .hypergraphs import (
    Augmentation,
    color_multiplicities,
    color_multiplicity,
    is_even,
    mod2_reduce,
)
from .signatures import build_signature_graph, subgraph_augmentation


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WitnessConfig:
    """
    Knobs of the witness search.

    :param degree_threshold: Minimum degree kept by peeling. None means `max(1, floor(average degree / 2))`.
    :type degree_threshold: int, default None.
    :param growth_factor: A level must be at least that many times larger than the previous one to keep growing.
    :type growth_factor: Fraction, default 2.
    :param root_attempts: How many roots to try.
    :type root_attempts: int, default 16.
    :param seed: Seed of the root order.
    :type seed: int, default 0.
    :param workers: Number of threads trying roots concurrently. The result does not depend on it.
    :type workers: int, default 1.
    """

    degree_threshold: Optional[int] = None
    growth_factor: Fraction = Fraction(DEFAULT_GROWTH_FACTOR)
    root_attempts: int = DEFAULT_ROOT_ATTEMPTS
    seed: int = DEFAULT_SEED
    workers: int = DEFAULT_WORKERS

    def __post_init__(self):
        object.__setattr__(self, "growth_factor", Fraction(self.growth_factor))
        if self.degree_threshold is not None and self.degree_threshold < 1:
            raise ValueError(f"`degree_threshold` must be positive, got {self.degree_threshold}.")
        if self.growth_factor < 1:
            raise ValueError(f"`growth_factor` must be at least 1, got {self.growth_factor}.")
        if self.root_attempts < 1:
            raise ValueError(f"`root_attempts` must be positive, got {self.root_attempts}.")
        if self.workers < 1:
            raise ValueError(f"`workers` must be positive, got {self.workers}.")


class Contradiction(NamedTuple):
    """
    An edge `edge` of the signature graph between two tree vertices `w` and `w_prime` that closes an odd cycle.
    """

    w: object
    w_prime: object
    edge: object


class RainbowTree:
    """
    A tree in the signature graph in which no color repeats along a root path.

    :param root: The root.
    :type root: SigVertex
    """

    def __init__(self, root):
        self.root = root
        self.levels = [(root,)]
        self.parent = {}
        self.depth = {root: 0}
        self.path_colors = {root: frozenset()}
        self.hyperedge_parity = {root: 0}
        self.contradiction = None

    def __contains__(self, x) -> bool:
        return x in self.depth

    def __len__(self) -> int:
        return len(self.depth)

    def __str__(self) -> str:
        return repr(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__} rooted at {self.root} with levels {[len(level) for level in self.levels]}"

    def add_level(self, parents) -> None:
        """
        Add the next level.

        :param parents: New vertex to its `(parent, edge)`.
        :type parents: dict
        """
        depth = len(self.levels)
        for y, (x, edge) in sorted(parents.items()):
            colors = self.path_colors[x] | set(edge.colors)
            if len(colors) != len(self.path_colors[x]) + 2:
                raise InconsistencyError(f"Path to {y} is not rainbow.")
            self.parent[y] = (x, edge)
            self.depth[y] = depth
            self.path_colors[y] = colors
            self.hyperedge_parity[y] = self.hyperedge_parity[x] ^ (1 << edge.t[0]) ^ (1 << edge.t[1])
        self.levels.append(tuple(sorted(parents)))

    def path(self, x) -> list:
        """
        Edges from the root to `x`.

        :rtype: list[SigEdge]
        """
        rtn = []
        while x != self.root:
            x, edge = self.parent[x]
            rtn.append(edge)
        return rtn[::-1]

    def lca(self, x, y):
        """
        Least common ancestor, by walking parents after equalizing depths.
        """
        while self.depth[x] > self.depth[y]:
            x = self.parent[x][0]
        while self.depth[y] > self.depth[x]:
            y = self.parent[y][0]
        while x != y:
            x, y = self.parent[x][0], self.parent[y][0]
        return x

    def cycle(self, x, y, edge) -> list:
        """
        The cycle made of the tree paths from the least common ancestor of `x` and `y` and the edge `(x, y)`.

        :rtype: list[SigEdge]
        """
        z = self.lca(x, y)
        cut = self.depth[z]
        return self.path(x)[cut:] + [edge] + self.path(y)[cut:][::-1]


@dataclass(frozen=True)
class Certificate:
    """
    An edge subset of a hypergraph, claimed even and holding an odd number of edges of `odd_color`.

    `provenance` holds the signature graph cycle it comes from, when there is one. Use :func:`validate_certificate`
    to check the claim.
    """

    hyperedge_subset: Augmentation
    odd_color: int
    provenance: tuple = ()

    @property
    def edges(self) -> list:
        return self.hyperedge_subset.support()


@dataclass(frozen=True)
class NotFound:
    """
    No certificate came out of the search. This is a result, not a proof that none exists.
    """

    roots_tried: int
    depth_max: int
    reason: str


@dataclass(frozen=True)
class TwoQueryResult:
    """
    Signatures of the reachable vertices, or an odd cycle when they are inconsistent.
    """

    signatures: dict
    distinct: int
    inconsistency: Optional[Certificate] = None

    @property
    def consistent(self) -> bool:
        return self.inconsistency is None


@dataclass(frozen=True)
class DensityReport:
    """
    Quantities the contradiction argument compares, for one hypergraph.
    """

    sig_vertices: int
    sig_edges: int
    average_degree: Fraction
    log_n: float
    density_ratio: float
    default_threshold: int


def default_degree_threshold(G) -> int:
    return max(1, math.floor(G.average_degree() / 2))


def min_degree_subgraph(G, d):
    """
    Peel vertices of degree below `d` until none is left: the `d`-core of the signature graph.

    :param G: A signature graph.
    :type G: SignatureGraph
    :param d: Minimum degree.
    :type d: int
    :return: The subgraph, possibly empty, with minimum degree at least `d`.
    :rtype: SignatureGraph
    """
    if d < 1:
        raise ValueError(f"`d` must be positive, got {d}.")
    rtn = G.induced(nx.k_core(G.to_networkx(), k=d).nodes)
    logger.debug("Peeling at %d: %r", d, rtn)
    return rtn


def grow_rainbow_tree(G, r, cfg=None) -> tuple:
    """
    Grow a rainbow tree from `r`, level by level.

    From each vertex `x` of the last level, the edges whose colors avoid the colors of the path to `x` lead to the
    next level; each new vertex takes the smallest such `x` as parent. Growth stops when a level is not
    `growth_factor` times larger than the previous one (the smaller level is still added), when no edge leads out, or
    as soon as such an edge leads back into the tree, which is recorded as the tree's contradiction.

    :param G: A signature graph.
    :type G: SignatureGraph
    :param r: The root, a vertex of `G`.
    :type r: SigVertex
    :param cfg: Search configuration.
    :type cfg: WitnessConfig, default WitnessConfig().
    :return: The tree and why it stopped: `isolated`, `exhausted`, `growth` or `contradiction`.
    :rtype: tuple[RainbowTree, str]
    """
    cfg = cfg or WitnessConfig()
    if r not in G:
        raise ValueError(f"{r} is not a vertex of {G!r}.")
    tree = RainbowTree(r)
    while True:
        current = tree.levels[-1]
        candidates = {}
        for x in current:
            used = tree.path_colors[x]
            for y, edge in G.neighbors(x):
                if used.intersection(edge.colors):
                    continue
                if y in tree:
                    tree.contradiction = Contradiction(x, y, edge)
                    logger.debug("Edge %s leads back into the tree.", edge)
                    return tree, "contradiction"
                if y not in candidates or (x, edge) < candidates[y]:
                    candidates[y] = (x, edge)
        if not candidates:
            return tree, "isolated" if len(tree.levels) == 1 else "exhausted"
        tree.add_level(candidates)
        if len(candidates) < cfg.growth_factor * len(current):
            return tree, "growth"


def _odd_colors(H, mask) -> list:
    return [color for color, color_mask in enumerate(H.color_masks) if parity(color_mask & mask)]


def detect_contradiction(G, tree) -> Optional[Contradiction]:
    """
    Look for an edge between tree vertices that closes a cycle with an odd color.

    In that order: the contradiction met while growing, an edge from the last level to the previous one (then to any
    level no deeper) whose colors avoid the path of its deeper end, and any non-tree edge whose tree cycle holds some
    color an odd number of times.

    :param G: The signature graph the tree was grown in.
    :type G: SignatureGraph
    :param tree: A stopped tree.
    :type tree: RainbowTree
    :rtype: Contradiction or None
    """
    if tree.contradiction is not None:
        return tree.contradiction
    if len(tree.levels) < 2:
        return None

    order = list(tree.levels[-1]) + [x for level in tree.levels[:-1] for x in level]
    for x in order:
        for y, edge in G.neighbors(x):
            if y in tree and tree.depth[y] <= tree.depth[x] and not tree.path_colors[x].intersection(edge.colors):
                return Contradiction(x, y, edge)

    for level in tree.levels:
        for x in level:
            for y, edge in G.neighbors(x):
                if edge.a != x or y not in tree:
                    continue
                mask = tree.hyperedge_parity[x] ^ tree.hyperedge_parity[y] ^ (1 << edge.t[0]) ^ (1 << edge.t[1])
                if _odd_colors(G.base, mask):
                    return Contradiction(x, y, edge)
    return None


def validate_certificate(H, cert) -> bool:
    """
    True iff the certificate's edges have all degrees even and an odd number of edges of its color.

    :param H: The hypergraph the certificate is about.
    :type H: ColoredHypergraph
    :param cert: The certificate.
    :type cert: Certificate
    :rtype: bool
    """
    dangling = [index for index in cert.hyperedge_subset.multiplicity if index >= len(H.edges)]
    if dangling:
        raise ValueError(f"Certificate refers to edges {dangling} missing from {H!r}.")
    if not 0 <= cert.odd_color < H.k:
        return False
    subset = Augmentation(H, cert.hyperedge_subset.multiplicity)
    return is_even(subset) and bool(color_multiplicity(subset, cert.odd_color) & 1)


def extract_certificate(G, tree, w, w_prime, e) -> Certificate:
    """
    Turn a contradiction into a certificate.

    The cycle through the least common ancestor of `w` and `w_prime` is an even subgraph, so its hyperedges form an
    even augmentation; reduced mod 2, some color is left odd. The colors of `e` are preferred.

    :param G: The signature graph.
    :type G: SignatureGraph
    :param tree: The tree `w` and `w_prime` belong to.
    :type tree: RainbowTree
    :param w: An endpoint of `e`.
    :type w: SigVertex
    :param w_prime: The other endpoint of `e`.
    :type w_prime: SigVertex
    :param e: The closing edge.
    :type e: SigEdge
    :rtype: Certificate
    """
    cycle = tree.cycle(w, w_prime, e)
    reduced = mod2_reduce(subgraph_augmentation(G, cycle))
    if not is_even(reduced):
        raise InconsistencyError("A cycle of the signature graph gave an augmentation that is not even.")
    odd = [color for color, count in enumerate(color_multiplicities(reduced)) if count & 1]
    if not odd:
        raise InconsistencyError("The closing cycle has no odd color.")
    preferred = [color for color in e.colors if color in odd]
    cert = Certificate(reduced, preferred[0] if preferred else odd[0], tuple(cycle))
    if not validate_certificate(G.base, cert):
        raise InconsistencyError("Extracted certificate does not validate.")
    return cert


def _try_root(G, cfg, r) -> tuple:
    tree, reason = grow_rainbow_tree(G, r, cfg)
    found = detect_contradiction(G, tree)
    depth = len(tree.levels) - 1
    if found is None:
        logger.debug("Root %s: %s at depth %d, nothing found.", r, reason, depth)
        return None, depth
    return extract_certificate(G, tree, *found), depth


def find_violation(H, cfg=None) -> Union[Certificate, NotFound]:
    """
    Search a certificate: signature graph, peeling, then rainbow trees from seed-ordered roots.

    Roots are ranked by a seeded shuffle; the certificate of the best-ranked successful root is returned, whatever
    the number of workers.

    :param H: A valid linear hypergraph.
    :type H: ColoredHypergraph
    :param cfg: Search configuration.
    :type cfg: WitnessConfig, default WitnessConfig().
    :rtype: Certificate or NotFound
    """
    cfg = cfg or WitnessConfig()
    if not H.edges:
        return NotFound(0, 0, "empty")
    G = build_signature_graph(H)
    if not G.edges:
        return NotFound(0, 0, "no-cherries")
    d = cfg.degree_threshold or default_degree_threshold(G)
    peeled = min_degree_subgraph(G, d)
    if not peeled.vertices:
        return NotFound(0, 0, "peeled-empty")

    roots = list(peeled.vertices)
    random.Random(cfg.seed).shuffle(roots)
    roots = roots[: cfg.root_attempts]
    attempt = partial(_try_root, peeled, cfg)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(attempt, roots))
    else:
        results = []
        for r in roots:
            results.append(attempt(r))
            if results[-1][0] is not None:
                break

    depth_max = 0
    for rank, (cert, depth) in enumerate(results):
        depth_max = max(depth_max, depth)
        if cert is not None:
            logger.info("Certificate from root %d of %d, color %d.", rank + 1, len(roots), cert.odd_color)
            return cert
    return NotFound(len(results), depth_max, "not-found")


def two_query_signatures(graph, s) -> TwoQueryResult:
    """
    Signatures of the vertices reachable from `s` in a union of color matchings.

    The signature of `v` is the parity, color by color, of the edges of a path from `s` to `v`. It does not depend on
    the path iff every cycle holds an even number of edges of each color; the first non-tree edge showing otherwise
    gives an odd cycle.

    :param graph: A 2-uniform colored hypergraph.
    :type graph: ColoredHypergraph
    :param s: The source vertex.
    :type s: int
    :rtype: TwoQueryResult
    """
    if graph.uniformity != 2:
        raise ValueError("Signatures are computed on 2-uniform graphs.")
    if not 0 <= s < graph.n:
        raise ValueError(f"Vertex `{s}` is out of range [0, {graph.n}).")
    k = graph.k
    signatures = {s: 0}
    parent = {s: None}
    depth = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for index in graph.incidence[u]:
            edge = graph.edges[index]
            v = edge.vertices[1] if edge.vertices[0] == u else edge.vertices[0]
            expected = signatures[u] ^ unit_vector(edge.color, k)
            if v not in signatures:
                signatures[v] = expected
                parent[v] = (u, index)
                depth[v] = depth[u] + 1
                queue.append(v)
            elif signatures[v] != expected:
                cycle = _tree_cycle(parent, depth, u, v, index)
                subset = Augmentation.from_indices(graph, cycle)
                odd = [color for color, count in enumerate(color_multiplicities(subset)) if count & 1]
                return TwoQueryResult(signatures, len(set(signatures.values())), Certificate(subset, odd[0]))
    return TwoQueryResult(signatures, len(set(signatures.values())))


def _tree_cycle(parent, depth, u, v, index) -> list:
    left, right = [], []
    while depth[u] > depth[v]:
        u, e = parent[u]
        left.append(e)
    while depth[v] > depth[u]:
        v, e = parent[v]
        right.append(e)
    while u != v:
        u, e = parent[u]
        left.append(e)
        v, e = parent[v]
        right.append(e)
    return left + [index] + right[::-1]


def density_report(H) -> DensityReport:
    """
    Average signature degree against `log2 n`, and `k^2 / (n log2 n)`, the ratio a large enough constant must exceed
    for a certificate to be forced.

    :rtype: DensityReport
    """
    G = build_signature_graph(H)
    log_n = math.log2(H.n) if H.n > 1 else 0.0
    ratio = H.k**2 / (H.n * log_n) if log_n else 0.0
    return DensityReport(
        sig_vertices=len(G.vertices),
        sig_edges=len(G.edges),
        average_degree=G.average_degree(),
        log_n=log_n,
        density_ratio=ratio,
        default_threshold=default_degree_threshold(G),
    )
