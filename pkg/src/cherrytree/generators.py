"""
Generators build the instances everything else is tried on: strong LDCs from the Hadamard code, the hypercube of the
two-query warm-up, a minimal planted violation, and random colored hypergraphs.

Every generator is seeded and deterministic, and checks its output with the matching validator before returning it.
Matching density is reported, never promised.

Basic usage: ``instance = hadamard_strong_ldc(4, GenConfig(seed=7))``
"""
from __future__ import annotations


from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional
import logging
import random


from .codes import LinearCodeSpec, StrongLdcInstance, verify_strong_ldc
from .default_config import (
    DEFAULT_ATTEMPTS,
    DEFAULT_SEED,
    HADAMARD_MAX_K,
    HADAMARD_MIN_K,
    HADAMARD_PARTNER_TRIES,
    HYPERCUBE_MAX_K,
    HYPERCUBE_MIN_K,
    RANDOM_TRIES_PER_EDGE,
)
from .helpers import ceil_fraction, format_fraction, InconsistencyError, InfeasibleError, unit_vector
from .hypergraphs import ColoredHypergraph, validate


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenConfig:
    """
    Seed and retry budget of a generator.

    :param seed: Seed of the generator.
    :type seed: int, default 0.
    :param target_delta: Facultative, density every matching must reach.
    :type target_delta: Fraction, default None.
    :param attempts: How many randomized tries before giving up.
    :type attempts: int, default 64.
    """

    seed: int = DEFAULT_SEED
    target_delta: Optional[Fraction] = None
    attempts: int = DEFAULT_ATTEMPTS

    def __post_init__(self):
        if self.attempts < 1:
            raise ValueError(f"`attempts` must be at least 1, got {self.attempts}.")
        if self.target_delta is not None:
            object.__setattr__(self, "target_delta", Fraction(self.target_delta))


def _greedy_xor_matching(n, target, rng, used_pairs, tries=HADAMARD_PARTNER_TRIES) -> list:
    """
    Greedy matching of triples `{a, b, c}` with `a ^ b ^ c == target`, none of them reusing a pair from `used_pairs`.

    Candidate triples through `a` are the `{a, b, b ^ a ^ target}` with `b` still uncovered. While at most `tries`
    vertices are uncovered, all of them are tried as `b`; otherwise `tries` of them are drawn at random. Pairs are
    stored as integers `x * n + y` with `x < y`, and `used_pairs` is updated with the pairs of the chosen triples.
    """
    free = list(range(n))
    slot = list(range(n))

    def take(v):
        index, last = slot[v], free[-1]
        free[index], slot[last] = last, index
        free.pop()
        slot[v] = -1

    matching = []
    order = list(range(n))
    rng.shuffle(order)
    for a in order:
        if slot[a] < 0:
            continue
        shift = a ^ target
        if len(free) <= tries:
            partners = free[:]
            rng.shuffle(partners)
        else:
            partners = (free[rng.randrange(len(free))] for _ in range(tries))
        for b in partners:
            c = b ^ shift
            if len({a, b, c}) != 3 or slot[b] < 0 or slot[c] < 0:
                continue
            triple = tuple(sorted((a, b, c)))
            keys = [x * n + y for x, y in combinations(triple, 2)]
            if any(key in used_pairs for key in keys):
                continue
            used_pairs.update(keys)
            for v in triple:
                take(v)
            matching.append(triple)
            break
    return sorted(matching)


def hadamard_strong_ldc(k, cfg=None) -> StrongLdcInstance:
    """
    A strong LDC on the Hadamard code of dimension `k`.

    Generator rows are all `2^k` vectors of F2^k, vertex `j` having row `j`. For color `i`, triples are chosen
    greedily among those whose rows XOR to `e_i`, pairwise disjoint, and no pair of positions is ever used by two
    triples (of any color), so that the recovery hypergraph is linear.

    :param k: Message length, `2 <= k <= 20`.
    :type k: int
    :param cfg: Generator configuration.
    :type cfg: GenConfig, default GenConfig().
    :return: A verified instance, with `delta` set to the achieved density.
    :rtype: StrongLdcInstance
    """
    cfg = cfg or GenConfig()
    if not HADAMARD_MIN_K <= k <= HADAMARD_MAX_K:
        raise ValueError(f"`k` must be in [{HADAMARD_MIN_K}, {HADAMARD_MAX_K}], got {k}.")
    n = 1 << k
    code = LinearCodeSpec(k, tuple(range(n)))
    rng = random.Random(cfg.seed)

    for attempt in range(cfg.attempts):
        used_pairs = set()
        matchings = [None] * k
        colors = list(range(k))
        rng.shuffle(colors)
        for color in colors:
            matchings[color] = _greedy_xor_matching(n, unit_vector(color, k), rng, used_pairs)
        smallest = min(len(m) for m in matchings)
        achieved = Fraction(smallest, n)
        if smallest == 0:
            logger.debug("Attempt %d: an empty matching, retrying.", attempt)
            continue
        if cfg.target_delta is not None and achieved < cfg.target_delta:
            logger.debug("Attempt %d: density %s below target, retrying.", attempt, format_fraction(achieved))
            continue
        instance = StrongLdcInstance(code, matchings, achieved)
        verdict = verify_strong_ldc(instance)
        if not verdict.ok:
            raise InconsistencyError(f"Generated Hadamard instance does not verify: {verdict.structure.violations}")
        logger.info("Hadamard k=%d: density %s after %d attempt(s).", k, format_fraction(achieved), attempt + 1)
        return instance

    raise InfeasibleError(f"No Hadamard instance with k={k} found in {cfg.attempts} attempt(s).")


def hypercube_two_query_instance(k) -> ColoredHypergraph:
    """
    The hypercube of dimension `k`, each edge colored by the coordinate it flips.

    :param k: Dimension, `1 <= k <= 20`.
    :type k: int
    :return: A 2-uniform hypergraph on `2^k` vertices, each color a perfect matching.
    :rtype: ColoredHypergraph
    """
    if not HYPERCUBE_MIN_K <= k <= HYPERCUBE_MAX_K:
        raise ValueError(f"`k` must be in [{HYPERCUBE_MIN_K}, {HYPERCUBE_MAX_K}], got {k}.")
    n = 1 << k
    matchings = []
    for color in range(k):
        flip = unit_vector(color, k)
        matchings.append([(v, v | flip) for v in range(n) if not v & flip])
    return ColoredHypergraph.from_matchings(n, matchings, uniformity=2)


def planted_violation_instance() -> ColoredHypergraph:
    """
    Four edges, each pair meeting in one distinct vertex, each of its own color: every vertex has degree 2, so the
    whole edge set is even while every color appears once.

    :rtype: ColoredHypergraph
    """
    return ColoredHypergraph(6, 4, [((0, 1, 2), 0), ((0, 3, 4), 1), ((1, 3, 5), 2), ((2, 4, 5), 3)])


def random_colored_hypergraph(n, k, delta, cfg=None) -> ColoredHypergraph:
    """
    A random linear hypergraph with `ceil(delta * n)` edges of each of the `k` colors.

    Edges are sampled among the vertices not yet covered by their color, and rejected when they would reuse a pair.
    The even-coloring condition is not enforced.

    :param n: Number of vertices.
    :type n: int
    :param k: Number of colors.
    :type k: int
    :param delta: Matching density.
    :type delta: Fraction
    :param cfg: Generator configuration.
    :type cfg: GenConfig, default GenConfig().
    :rtype: ColoredHypergraph
    """
    cfg = cfg or GenConfig()
    delta = Fraction(delta)
    size = ceil_fraction(delta * n)
    if n < 1 or k < 1:
        raise InfeasibleError(f"`n` and `k` must be positive, got n={n}, k={k}.")
    if 3 * size > n:
        raise InfeasibleError(f"A matching of {size} triples needs {3 * size} vertices, only {n} available.")
    rng = random.Random(cfg.seed)

    for attempt in range(cfg.attempts):
        used_pairs = set()
        matchings = []
        for _ in range(k):
            covered = set()
            matching = []
            tries = 0
            while len(matching) < size and tries < RANDOM_TRIES_PER_EDGE * size:
                tries += 1
                free = [v for v in range(n) if v not in covered]
                triple = tuple(sorted(rng.sample(free, 3)))
                pairs = list(combinations(triple, 2))
                if any(pair in used_pairs for pair in pairs):
                    continue
                used_pairs.update(pairs)
                covered.update(triple)
                matching.append(triple)
            if len(matching) < size:
                break
            matchings.append(matching)
        if len(matchings) < k:
            logger.debug("Attempt %d: ran out of tries, retrying.", attempt)
            continue
        H = ColoredHypergraph.from_matchings(n, matchings)
        report = validate(H, delta=delta)
        if not report.ok:
            raise InconsistencyError(f"Generated hypergraph does not validate: {report.violations[0].message}")
        return H

    raise InfeasibleError(
        f"No hypergraph with n={n}, k={k}, delta={format_fraction(delta)} in {cfg.attempts} attempt(s)."
    )
