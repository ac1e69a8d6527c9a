"""
Codes are the objects Cherrytree is about: strong 3-query locally decodable codes.

Only linear codes are handled. Codeword bit `j` of a message `x` in {±1}^k is `(-1)^<g_j, b(x)>`, where `g_j` is the
`j`-th generator row and `b` maps +1 to 0 and -1 to 1. A triple then decodes `x_i` for every message iff its three
generator rows XOR to the unit vector `e_i`, which is what the algebraic verification checks; the exhaustive
verification tries every message instead, and both must agree.

Basic usage: ``verdict = verify_strong_ldc(instance); H = recovery_hypergraph(instance)``
"""
from __future__ import annotations


from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional
import logging
import random


from deepdiff import DeepDiff
import numpy as np


from .default_config import EXHAUSTIVE_CHUNK, EXHAUSTIVE_LIMIT
from .gf2 import BitMatrix, solve
from .helpers import bits_to_signs, InconsistencyError, mask_from_indices, signs_to_bits, unit_vector
from .hypergraphs import ColoredHypergraph, validate, ValidationReport


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearCodeSpec:
    """
    A linear code {±1}^k -> {±1}^n given by its generator rows.

    :param k: Message length.
    :type k: int
    :param rows: One generator row per codeword position, as a `k`-bit integer (most significant bit first).
    :type rows: tuple[int]
    """

    k: int
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(row) for row in self.rows))
        if self.k < 1:
            raise ValueError(f"`k` must be positive, got {self.k}.")
        if not self.rows:
            raise ValueError("A code needs at least one codeword position.")
        for j, row in enumerate(self.rows):
            if row < 0 or row >> self.k:
                raise ValueError(f"Row {j} does not fit in {self.k} bits.")

    @property
    def n(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class StrongLdcInstance:
    """
    A linear code with one matching of decoding triples per message index.

    :param code: The code.
    :type code: LinearCodeSpec
    :param matchings: `k` lists of sorted vertex triples.
    :type matchings: tuple[tuple[tuple[int]]]
    :param delta: Claimed matching density.
    :type delta: Fraction
    """

    code: LinearCodeSpec
    matchings: tuple
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(
            self,
            "matchings",
            tuple(tuple(sorted(tuple(sorted(int(v) for v in triple)) for triple in m)) for m in self.matchings),
        )
        object.__setattr__(self, "delta", Fraction(self.delta))
        if len(self.matchings) != self.code.k:
            raise ValueError(f"Expected {self.code.k} matchings, got {len(self.matchings)}.")

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def n(self) -> int:
        return self.code.n


class TripleFailure(NamedTuple):
    """
    A triple that does not decode its color. `message` is a failing message, when found by enumeration.
    """

    color: int
    triple: tuple
    message: Optional[tuple] = None


@dataclass(frozen=True)
class LdcVerdict:
    """
    Result of :func:`verify_strong_ldc`.

    `exhaustive_ok` is None when enumeration was skipped (`k` above the limit). `degenerate` flags instances with an
    empty matching, which pass the structural conditions vacuously.
    """

    structure: ValidationReport
    algebraic_ok: bool
    exhaustive_ok: Optional[bool]
    degenerate: bool
    failures: list = field(default_factory=list)

    @property
    def structural_ok(self) -> bool:
        return self.structure.ok

    @property
    def ok(self) -> bool:
        return self.structural_ok and self.algebraic_ok and self.exhaustive_ok is not False


def encode(code, x) -> tuple:
    """
    Encode a message.

    :param code: The code.
    :type code: LinearCodeSpec
    :param x: A ±1 vector of length `k`.
    :type x: Sequence[int]
    :return: A ±1 vector of length `n`.
    :rtype: tuple[int]
    """
    if len(x) != code.k:
        raise ValueError(f"Message must have length {code.k}, got {len(x)}.")
    b = signs_to_bits(x)
    return tuple(-1 if bin(row & b).count("1") & 1 else 1 for row in code.rows)


def encode_all(code, messages) -> np.ndarray:
    """
    Encode many messages at once.

    :param code: The code.
    :type code: LinearCodeSpec
    :param messages: Messages as `k`-bit integers (the image of `b`).
    :type messages: numpy.ndarray
    :return: An array of shape `(len(messages), n)` with ±1 entries.
    :rtype: numpy.ndarray
    """
    messages = np.asarray(messages, dtype=np.int64)
    rows = np.asarray(code.rows, dtype=np.int64)
    masked = messages[:, None] & rows[None, :]
    odd = np.zeros(masked.shape, dtype=np.int64)
    for shift in range(code.k):
        odd ^= (masked >> shift) & 1
    return (1 - 2 * odd).astype(np.int8)


def verify_triple_linear(code, triple, i) -> bool:
    """
    True iff the triple decodes `x_i` for every message, i.e. its rows XOR to `e_i`.

    :param code: The code.
    :type code: LinearCodeSpec
    :param triple: Three codeword positions.
    :type triple: tuple[int]
    :param i: The message index (color).
    :type i: int
    :rtype: bool
    """
    a, b, c = triple
    return code.rows[a] ^ code.rows[b] ^ code.rows[c] == unit_vector(i, code.k)


def _exhaustive_failures(inst) -> list:
    """
    Decode every triple on the encoding of every message, in chunks of messages.
    """
    k = inst.k
    failing = {}
    for start in range(0, 1 << k, EXHAUSTIVE_CHUNK):
        messages = np.arange(start, min(start + EXHAUSTIVE_CHUNK, 1 << k), dtype=np.int64)
        words = encode_all(inst.code, messages)
        for color, matching in enumerate(inst.matchings):
            if not matching:
                continue
            expected = 1 - 2 * ((messages >> (k - 1 - color)) & 1)
            triples = np.asarray(matching, dtype=np.int64)
            products = words[:, triples[:, 0]] * words[:, triples[:, 1]] * words[:, triples[:, 2]]
            bad = products != expected[:, None]
            for t in np.flatnonzero(bad.any(axis=0)).tolist():
                key = (color, matching[t])
                if key not in failing:
                    first = int(messages[np.flatnonzero(bad[:, t])[0]])
                    failing[key] = bits_to_signs(first, k)
    return [TripleFailure(color, triple, message) for (color, triple), message in sorted(failing.items())]


def verify_strong_ldc(inst, exhaustive_limit=EXHAUSTIVE_LIMIT) -> LdcVerdict:
    """
    Check every condition of a strong 3-query LDC.

    Structure (disjoint triples in each matching, triples of different matchings meeting in at most one position,
    at least `ceil(delta * n)` triples per matching) is checked on the union of the matchings. Decoding is checked
    algebraically on every triple and, when `k <= exhaustive_limit`, on every message; the two must agree.

    :param inst: The instance.
    :type inst: StrongLdcInstance
    :param exhaustive_limit: Largest `k` for which all `2^k` messages are tried.
    :type exhaustive_limit: int, default 12.
    :rtype: LdcVerdict
    """
    union = ColoredHypergraph(inst.n, inst.k, [(t, i) for i, m in enumerate(inst.matchings) for t in m])
    structure = validate(union, delta=inst.delta)
    degenerate = any(not m for m in inst.matchings)
    if degenerate:
        logger.info("Degenerate instance: some matching is empty.")

    in_range = all(0 <= v < inst.n and len(set(t)) == 3 for m in inst.matchings for t in m for v in t)
    if not in_range:
        # Decoding is meaningless on malformed triples, the structural report already lists them
        return LdcVerdict(structure, False, None if inst.k > exhaustive_limit else False, degenerate, [])

    algebraic = [
        TripleFailure(color, triple)
        for color, matching in enumerate(inst.matchings)
        for triple in matching
        if not verify_triple_linear(inst.code, triple, color)
    ]

    if inst.k > exhaustive_limit:
        return LdcVerdict(structure, not algebraic, None, degenerate, algebraic)

    exhaustive = _exhaustive_failures(inst)
    diff = DeepDiff(
        sorted((f.color, f.triple) for f in algebraic),
        sorted((f.color, f.triple) for f in exhaustive),
    )
    if diff:
        raise InconsistencyError(f"Algebraic and exhaustive decoding checks disagree: {diff}")
    return LdcVerdict(structure, not algebraic, not exhaustive, degenerate, exhaustive)


def recovery_hypergraph(inst) -> ColoredHypergraph:
    """
    The union of the matchings, each triple colored by its matching.

    :param inst: A structurally valid instance.
    :type inst: StrongLdcInstance
    :rtype: ColoredHypergraph
    """
    H = ColoredHypergraph.from_matchings(inst.n, inst.matchings)
    report = validate(H)
    if not report.ok:
        raise ValueError(f"Instance is not structurally valid: {report.violations[0].message}.")
    return H


def pick_triple(inst, i, rng_seed) -> tuple:
    """
    The triple of matching `i` that :func:`local_decode` queries with that seed.
    """
    if not 0 <= i < inst.k:
        raise ValueError(f"Color `{i}` is out of range [0, {inst.k}).")
    if not inst.matchings[i]:
        raise ValueError(f"Matching {i} is empty, nothing to decode with.")
    return random.Random(rng_seed).choice(inst.matchings[i])


def local_decode(inst, i, word, rng_seed) -> int:
    """
    Decode `x_i` from three queries to a possibly corrupted word.

    :param inst: The instance.
    :type inst: StrongLdcInstance
    :param i: Message index.
    :type i: int
    :param word: A ±1 vector of length `n`.
    :type word: Sequence[int]
    :param rng_seed: Seed choosing the triple.
    :type rng_seed: int
    :return: The product of the three queried bits.
    :rtype: int
    """
    if len(word) != inst.n:
        raise ValueError(f"Word must have length {inst.n}, got {len(word)}.")
    a, b, c = pick_triple(inst, i, rng_seed)
    return word[a] * word[b] * word[c]


def code_from_hypergraph(H) -> Optional[LinearCodeSpec]:
    """
    Build a linear code for which every edge of `H` decodes its color.

    This is the converse of :func:`recovery_hypergraph`: it solves `g_a ^ g_b ^ g_c = e_col` for every edge
    `{a, b, c}`, which has a solution iff every even subgraph holds an even number of edges of each color. Positions
    left free get a zero row.

    :param H: A valid hypergraph.
    :type H: ColoredHypergraph
    :return: The code, or None if `H` is not even-colored.
    :rtype: LinearCodeSpec or None
    """
    # One equation per edge, over one unknown row per vertex
    system = BitMatrix(len(H.edges), H.n, [mask_from_indices(set(edge.vertices)) for edge in H.edges])
    rows = solve(system, [unit_vector(edge.color, H.k) for edge in H.edges])
    if rows is None:
        return None
    return LinearCodeSpec(H.k, tuple(rows))


def instance_from_hypergraph(H) -> Optional[StrongLdcInstance]:
    """
    The strong LDC instance of an even-colored hypergraph, at its achieved density.

    :rtype: StrongLdcInstance or None
    """
    code = code_from_hypergraph(H)
    if code is None:
        return None
    return StrongLdcInstance(code, H.matchings(), validate(H).achieved_delta)
