from fractions import Fraction
from itertools import combinations
import io
import random


import pytest


from cherrytree.codes import verify_strong_ldc, verify_triple_linear
from cherrytree.exporters import CHEGExporter, SLDCExporter
from cherrytree.generators import (
    GenConfig,
    _greedy_xor_matching,
    hadamard_strong_ldc,
    hypercube_two_query_instance,
    planted_violation_instance,
    random_colored_hypergraph,
)
from cherrytree.gf2 import check_condition_ii
from cherrytree.helpers import InfeasibleError
from cherrytree.hypergraphs import validate


def test_gen_config():
    assert GenConfig().seed == 0
    assert GenConfig(target_delta="1/8").target_delta == Fraction(1, 8)
    with pytest.raises(ValueError):
        GenConfig(attempts=0)


def test_hadamard_k3():
    for seed in range(20):
        instance = hadamard_strong_ldc(3, GenConfig(seed=seed))
        assert instance.n == 8
        assert [len(m) for m in instance.matchings] == [1, 1, 1]
        assert instance.delta == Fraction(1, 8)
        assert instance.code.rows == tuple(range(8))


@pytest.mark.parametrize("k", [3, 4, 5, 6, 8, 12])
def test_hadamard_verifies(k):
    instance = hadamard_strong_ldc(k, GenConfig(seed=k))
    assert verify_strong_ldc(instance).ok
    assert instance.delta >= Fraction(1, 2**k)
    for color, matching in enumerate(instance.matchings):
        assert all(verify_triple_linear(instance.code, triple, color) for triple in matching)


def test_hadamard_k2_infeasible():
    # Both colors can only use the complement of one vertex, and the two complements share a pair
    with pytest.raises(InfeasibleError):
        hadamard_strong_ldc(2, GenConfig(attempts=4))


@pytest.mark.parametrize("k", [1, 21])
def test_hadamard_out_of_range(k):
    with pytest.raises(ValueError):
        hadamard_strong_ldc(k)


def test_hadamard_target_delta():
    with pytest.raises(InfeasibleError):
        hadamard_strong_ldc(3, GenConfig(target_delta=Fraction(1, 2), attempts=3))


def test_hadamard_deterministic():
    texts = []
    for _ in range(2):
        buf = io.StringIO()
        SLDCExporter(buf)(hadamard_strong_ldc(5, GenConfig(seed=42)))
        texts.append(buf.getvalue())
    assert texts[0] == texts[1]


@pytest.mark.parametrize("tries", [1, 4, 64])
def test_greedy_xor_matching(tries):
    n, target = 1 << 10, 0b100
    used = set()
    matching = _greedy_xor_matching(n, target, random.Random(3), used, tries=tries)
    assert matching
    assert all(a ^ b ^ c == target for a, b, c in matching)
    covered = [v for triple in matching for v in triple]
    assert len(covered) == len(set(covered))
    keys = {x * n + y for triple in matching for x, y in combinations(triple, 2)}
    assert keys == used
    other = _greedy_xor_matching(n, 0b1, random.Random(4), used, tries=tries)
    other_keys = {x * n + y for triple in other for x, y in combinations(triple, 2)}
    assert not keys & other_keys


def test_hadamard_large_k():
    instance = hadamard_strong_ldc(14, GenConfig(seed=1, attempts=1))
    assert instance.n == 2**14
    assert all(matching for matching in instance.matchings)
    assert verify_strong_ldc(instance).algebraic_ok


@pytest.mark.parametrize("k", [1, 2, 3, 10])
def test_hypercube(k):
    graph = hypercube_two_query_instance(k)
    assert graph.n == 2**k
    assert graph.uniformity == 2
    assert [len(indices) for indices in graph.color_classes] == [2 ** (k - 1)] * k
    assert validate(graph).ok
    assert all(d == k for d in graph.degrees().tolist())


def test_hypercube_square():
    graph = hypercube_two_query_instance(2)
    assert sorted((edge.vertices, edge.color) for edge in graph) == [
        ((0, 1), 1),
        ((0, 2), 0),
        ((1, 3), 0),
        ((2, 3), 1),
    ]


def test_planted():
    H = planted_violation_instance()
    report = validate(H)
    assert report.ok
    assert not check_condition_ii(H).holds
    assert H.degrees().tolist() == [2] * 6


def test_random_colored_hypergraph():
    H = random_colored_hypergraph(30, 2, Fraction(1, 10), GenConfig(seed=1))
    report = validate(H, delta=Fraction(1, 10))
    assert report.ok
    assert all(len(indices) >= 3 for indices in H.color_classes)


def test_random_empty():
    H = random_colored_hypergraph(10, 3, Fraction(0))
    assert H.m == 0
    assert validate(H).ok


def test_random_deterministic():
    texts = []
    for _ in range(2):
        buf = io.StringIO()
        CHEGExporter(buf)(random_colored_hypergraph(40, 5, Fraction(1, 10), GenConfig(seed=9)))
        texts.append(buf.getvalue())
    assert texts[0] == texts[1]
    other = io.StringIO()
    CHEGExporter(other)(random_colored_hypergraph(40, 5, Fraction(1, 10), GenConfig(seed=10)))
    assert other.getvalue() != texts[0]


@pytest.mark.parametrize("n, k, delta", [(8, 2, Fraction(1, 2)), (5, 1, Fraction(1))])
def test_random_infeasible(n, k, delta):
    with pytest.raises(InfeasibleError):
        random_colored_hypergraph(n, k, delta)
