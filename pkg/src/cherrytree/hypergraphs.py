"""
Hypergraphs are the building block of every other part of Cherrytree.

A ColoredHypergraph holds a linear 3-uniform hypergraph whose edges are split into color classes (the matchings of a
strong LDC), and an Augmentation is a multiset of its edges. The functions of this module are the exact primitives the
rest of the package reasons with: degrees, evenness, color multiplicities, and parity reduction.

Colors and vertices are 0-indexed. The same density parameter is called `delta` everywhere, including where the
literature calls it gamma.

Basic usage: ``H = ColoredHypergraph(6, 4, [((0, 1, 2), 0), ((0, 3, 4), 1)]); report = validate(H)``
"""
from __future__ import annotations


from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, NamedTuple
import logging


import numpy as np


from .helpers import ceil_fraction, format_fraction, indices_from_mask


logger = logging.getLogger(__name__)

PROTECTED_ATTRS = ["n", "k", "edges", "uniformity", "base", "multiplicity"]


class _Frozen:
    """
    Values that cannot be modified once built.
    """

    def __setattr__(self, key, value):
        if key in PROTECTED_ATTRS and hasattr(self, key):
            raise AttributeError(f"Cannot modify `{key}`.")
        else:
            return super().__setattr__(key, value)

    def __delattr__(self, item):
        if item in PROTECTED_ATTRS:
            raise AttributeError(f"Cannot delete `{item}`.")
        else:
            return super().__delattr__(item)


@dataclass(frozen=True, order=True)
class HyperEdge:
    """
    A hyperedge and the index of the matching it comes from.

    Vertices are stored sorted, so that two edges on the same vertices compare equal. Nothing else is enforced here:
    out-of-range vertices or repeated vertices are reported by :func:`validate`.

    :param vertices: The vertices of the edge.
    :type vertices: Iterable[int]
    :param color: The color of the edge.
    :type color: int
    """

    vertices: tuple
    color: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(int(v) for v in self.vertices)))
        object.__setattr__(self, "color", int(self.color))

    def __contains__(self, vertex) -> bool:
        return vertex in self.vertices

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return f"{{{', '.join(str(v) for v in self.vertices)}}}c{self.color}"


class ColoredHypergraph(_Frozen):
    """
    An edge-colored uniform hypergraph on vertices `0..n-1` with colors `0..k-1`.

    Edge order is kept as given: edge indices are how certificates, witnesses and augmentations refer to edges.

    :param n: Number of vertices.
    :type n: int
    :param k: Number of colors.
    :type k: int
    :param edges: The edges, either HyperEdge or `(vertices, color)` couples.
    :type edges: Iterable, default empty.
    :param uniformity: Size of every edge, 3 for recovery hypergraphs, 2 for the two-query graphs.
    :type uniformity: int, default 3.
    """

    def __init__(self, n, k, edges=(), uniformity=3):
        if int(n) < 1:
            raise ValueError(f"`n` must be positive, got {n}.")
        if int(k) < 1:
            raise ValueError(f"`k` must be positive, got {k}.")
        if int(uniformity) not in (2, 3):
            raise ValueError(f"Only 2- and 3-uniform hypergraphs are supported, got {uniformity}.")
        self.n = int(n)
        self.k = int(k)
        self.uniformity = int(uniformity)
        self.edges = tuple(edge if isinstance(edge, HyperEdge) else HyperEdge(*edge) for edge in edges)

    @classmethod
    def from_matchings(cls, n, matchings, uniformity=3) -> ColoredHypergraph:
        """
        Union of matchings, the color of an edge being the index of its matching. Edges are sorted.

        :param n: Number of vertices.
        :type n: int
        :param matchings: One list of vertex tuples per color.
        :type matchings: list[list[tuple]]
        :return: The hypergraph.
        :rtype: ColoredHypergraph
        """
        edges = sorted(HyperEdge(vertices, color) for color, matching in enumerate(matchings) for vertices in matching)
        return cls(n, len(matchings), edges, uniformity=uniformity)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __getitem__(self, index) -> HyperEdge:
        return self.edges[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredHypergraph):
            return NotImplemented
        return (self.n, self.k, self.uniformity, self.edges) == (other.n, other.k, other.uniformity, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.uniformity, self.edges))

    def __str__(self) -> str:
        return repr(self)

    def __repr__(self) -> str:
        plural = "s" if len(self.edges) != 1 else ""
        return f"{type(self).__name__} n={self.n} k={self.k} with {len(self.edges)} edge{plural}"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple:
        """
        For each vertex, the indices of the edges containing it. Out-of-range vertices are skipped.

        :return: One tuple of edge indices per vertex.
        :rtype: tuple[tuple[int]]
        """
        rtn = [[] for _ in range(self.n)]
        for index, edge in enumerate(self.edges):
            for vertex in set(edge.vertices):
                if 0 <= vertex < self.n:
                    rtn[vertex].append(index)
        return tuple(tuple(r) for r in rtn)

    @cached_property
    def color_classes(self) -> tuple:
        """
        For each color, the indices of its edges. Out-of-range colors are skipped.

        :rtype: tuple[tuple[int]]
        """
        rtn = [[] for _ in range(self.k)]
        for index, edge in enumerate(self.edges):
            if 0 <= edge.color < self.k:
                rtn[edge.color].append(index)
        return tuple(tuple(r) for r in rtn)

    @cached_property
    def color_masks(self) -> tuple:
        """
        For each color, its indicator vector over edge positions, as a bit mask (bit `j` is edge `j`).
        """
        rtn = []
        for indices in self.color_classes:
            mask = 0
            for index in indices:
                mask |= 1 << index
            rtn.append(mask)
        return tuple(rtn)

    @cached_property
    def edge_lookup(self) -> dict:
        """
        Vertex tuple to the index of its first occurrence.
        """
        rtn = {}
        for index, edge in enumerate(self.edges):
            rtn.setdefault(edge.vertices, index)
        return rtn

    def degrees(self) -> np.ndarray:
        """
        Plain vertex degrees.

        :rtype: numpy.ndarray
        """
        return np.fromiter((len(indices) for indices in self.incidence), dtype=np.int64, count=self.n)

    def matchings(self) -> list:
        """
        Vertex tuples of each color class.

        :rtype: list[list[tuple]]
        """
        return [[self.edges[index].vertices for index in indices] for indices in self.color_classes]

    def canonical(self) -> ColoredHypergraph:
        """
        Same hypergraph, edges sorted lexicographically. This is the order used by the exporters.
        """
        return type(self)(self.n, self.k, sorted(self.edges), uniformity=self.uniformity)


class Augmentation(_Frozen):
    """
    A multiset of the edges of a hypergraph.

    Multiplicities are full counts; use :func:`mod2_reduce` to get the parity view. Edges with multiplicity 0 are not
    stored.

    :param base: The hypergraph the edges come from.
    :type base: ColoredHypergraph
    :param multiplicity: Edge index to count.
    :type multiplicity: Mapping[int, int], default None.
    """

    def __init__(self, base, multiplicity=None):
        clean = {}
        for index, count in dict(multiplicity or {}).items():
            index, count = int(index), int(count)
            if not 0 <= index < len(base):
                raise ValueError(f"Edge `{index}` does not exist in {base!r}.")
            if count < 0:
                raise ValueError(f"Multiplicity of edge `{index}` must be non-negative, got {count}.")
            if count:
                clean[index] = count
        self.base = base
        self.multiplicity = MappingProxyType(dict(sorted(clean.items())))

    @classmethod
    def from_indices(cls, base, indices: Iterable[int]) -> Augmentation:
        """
        Each occurrence of an index adds one to its multiplicity.
        """
        return cls(base, Counter(indices))

    @classmethod
    def from_mask(cls, base, mask: int) -> Augmentation:
        """
        The 0/1 augmentation whose support is the set bits of `mask`.
        """
        return cls(base, {index: 1 for index in indices_from_mask(mask)})

    def __add__(self, other) -> Augmentation:
        if not isinstance(other, Augmentation):
            return NotImplemented
        if other.base is not self.base and other.base != self.base:
            raise ValueError("Cannot add augmentations of different hypergraphs.")
        total = Counter(self.multiplicity)
        total.update(other.multiplicity)
        return Augmentation(self.base, total)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Augmentation):
            return NotImplemented
        return self.base == other.base and dict(self.multiplicity) == dict(other.multiplicity)

    def __hash__(self) -> int:
        return hash((self.base, tuple(self.multiplicity.items())))

    def __str__(self) -> str:
        return repr(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__} of {self.base!r}: {dict(self.multiplicity)}"

    def support(self) -> list:
        return list(self.multiplicity)

    def total(self) -> int:
        return sum(self.multiplicity.values())

    def parity_mask(self) -> int:
        """
        Bit mask of the edges with odd multiplicity.
        """
        mask = 0
        for index, count in self.multiplicity.items():
            if count & 1:
                mask |= 1 << index
        return mask


class Finding(NamedTuple):
    """
    One problem found by :func:`validate`.
    """

    kind: str
    message: str
    edges: tuple


@dataclass(frozen=True)
class ValidationReport:
    """
    Result of :func:`validate`. `violations` is empty iff both `linear` and `matchings_ok` hold.
    """

    linear: bool
    matchings_ok: bool
    min_matching_size: int
    achieved_delta: Fraction
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.linear and self.matchings_ok


# Kinds of findings breaking linearity (structure of edges) or the matching condition (colors)
LINEARITY_KINDS = ["arity", "vertex-range", "repeated-vertex", "linearity"]
MATCHING_KINDS = ["color-range", "matching", "matching-size"]


def degrees(augmentation) -> np.ndarray:
    """
    Multiplicity-weighted degree of every vertex.

    :param augmentation: An Augmentation.
    :type augmentation: Augmentation
    :return: One degree per vertex.
    :rtype: numpy.ndarray
    """
    base = augmentation.base
    rtn = np.zeros(base.n, dtype=np.int64)
    for index, count in augmentation.multiplicity.items():
        for vertex in set(base.edges[index].vertices):
            if 0 <= vertex < base.n:
                rtn[vertex] += count
    return rtn


def degree(augmentation, v) -> int:
    """
    Multiplicity-weighted degree of a vertex.

    :param augmentation: An Augmentation.
    :type augmentation: Augmentation
    :param v: A vertex of the base hypergraph.
    :type v: int
    :return: The degree.
    :rtype: int
    """
    base = augmentation.base
    if not 0 <= v < base.n:
        raise ValueError(f"Vertex `{v}` is out of range [0, {base.n}).")
    return sum(augmentation.multiplicity.get(index, 0) for index in base.incidence[v])


def is_even(augmentation) -> bool:
    """
    True iff every vertex has even degree.
    """
    return not np.any(degrees(augmentation) & 1)


def color_multiplicity(augmentation, i) -> int:
    """
    Total multiplicity of the edges of color `i`.

    :param augmentation: An Augmentation.
    :type augmentation: Augmentation
    :param i: A color.
    :type i: int
    :rtype: int
    """
    base = augmentation.base
    if not 0 <= i < base.k:
        raise ValueError(f"Color `{i}` is out of range [0, {base.k}).")
    return sum(count for index, count in augmentation.multiplicity.items() if base.edges[index].color == i)


def color_multiplicities(augmentation) -> list:
    rtn = [0] * augmentation.base.k
    for index, count in augmentation.multiplicity.items():
        color = augmentation.base.edges[index].color
        if 0 <= color < len(rtn):
            rtn[color] += count
    return rtn


def mod2_reduce(augmentation) -> Augmentation:
    """
    Replace every multiplicity by its parity. Evenness and the parity of every color multiplicity are unchanged.

    :rtype: Augmentation
    """
    return Augmentation.from_mask(augmentation.base, augmentation.parity_mask())


def validate(H, delta=None) -> ValidationReport:
    """
    Check linearity and the matching condition of a candidate hypergraph.

    Malformed edges are reported, never raised. With `delta`, every color class must also hold at least
    `ceil(delta * n)` edges.

    :param H: Any candidate hypergraph.
    :type H: ColoredHypergraph
    :param delta: Facultative, minimum matching density.
    :type delta: Fraction, default None.
    :return: The report.
    :rtype: ValidationReport
    """
    findings = []

    for index, edge in enumerate(H.edges):
        if len(edge.vertices) != H.uniformity:
            findings.append(Finding("arity", f"edge {index} has {len(edge.vertices)} vertices", (index,)))
        out = [v for v in edge.vertices if not 0 <= v < H.n]
        if out:
            findings.append(Finding("vertex-range", f"edge {index} has vertices {out} outside [0, {H.n})", (index,)))
        if len(set(edge.vertices)) != len(edge.vertices):
            findings.append(Finding("repeated-vertex", f"edge {index} repeats a vertex", (index,)))
        if not 0 <= edge.color < H.k:
            findings.append(Finding("color-range", f"edge {index} has color {edge.color} outside [0, {H.k})", (index,)))

    # Pair occupancy: two edges share a pair of vertices iff they meet in at least 2 vertices
    occupancy = defaultdict(list)
    for index, edge in enumerate(H.edges):
        for pair in combinations(sorted(set(edge.vertices)), 2):
            occupancy[pair].append(index)
    conflicts = set()
    for indices in occupancy.values():
        conflicts.update(combinations(indices, 2))
    for a, b in sorted(conflicts):
        shared = sorted(set(H.edges[a].vertices) & set(H.edges[b].vertices))
        what = "are identical" if H.edges[a].vertices == H.edges[b].vertices else f"share vertices {shared}"
        findings.append(Finding("linearity", f"edges {a} and {b} {what}", (a, b)))

    by_color = defaultdict(list)
    for index, edge in enumerate(H.edges):
        for vertex in set(edge.vertices):
            by_color[(vertex, edge.color)].append(index)
    overlaps = defaultdict(set)
    for (vertex, _), indices in by_color.items():
        for pair in combinations(indices, 2):
            overlaps[pair].add(vertex)
    for a, b in sorted(overlaps):
        findings.append(
            Finding(
                "matching",
                f"edges {a} and {b} both have color {H.edges[a].color} and meet at {sorted(overlaps[(a, b)])}",
                (a, b),
            )
        )

    sizes = [len(indices) for indices in H.color_classes]
    min_size = min(sizes)
    if delta is not None:
        need = ceil_fraction(Fraction(delta) * H.n)
        for color, size in enumerate(sizes):
            if size < need:
                findings.append(
                    Finding(
                        "matching-size",
                        f"color {color} has {size} edges, below {need} = ceil({format_fraction(delta)} * {H.n})",
                        H.color_classes[color],
                    )
                )

    linear = not any(f.kind in LINEARITY_KINDS for f in findings)
    matchings_ok = not any(f.kind in MATCHING_KINDS for f in findings)
    if findings:
        logger.debug("%r: %d finding(s), first: %s", H, len(findings), findings[0].message)

    return ValidationReport(
        linear=linear,
        matchings_ok=matchings_ok,
        min_matching_size=min_size,
        achieved_delta=Fraction(min_size, H.n),
        violations=findings,
    )
