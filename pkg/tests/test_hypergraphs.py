from fractions import Fraction


from hypothesis import given, settings, strategies as st
import pytest


from cherrytree.generators import planted_violation_instance
from cherrytree.hypergraphs import (
    Augmentation,
    color_multiplicities,
    color_multiplicity,
    ColoredHypergraph,
    degree,
    degrees,
    HyperEdge,
    is_even,
    mod2_reduce,
    validate,
)


@pytest.fixture
def planted():
    return planted_violation_instance()


@pytest.fixture
def hadamard3():
    return ColoredHypergraph(8, 3, [((0, 1, 5), 0), ((3, 6, 7), 1), ((2, 4, 7), 2)])


def test_hyperedge_sorted():
    edge = HyperEdge((5, 1, 3), 2)
    assert edge.vertices == (1, 3, 5)
    assert edge == HyperEdge([3, 5, 1], 2)
    assert 3 in edge
    assert str(edge) == "{1, 3, 5}c2"


def test_hypergraph_correct(planted):
    assert planted.n == 6
    assert planted.k == 4
    assert planted.m == 4
    assert len(planted) == 4
    assert planted[1] == HyperEdge((0, 3, 4), 1)
    assert planted.incidence[0] == (0, 1)
    assert planted.color_classes == ((0,), (1,), (2,), (3,))
    assert list(planted.degrees()) == [2] * 6
    assert repr(planted) == "ColoredHypergraph n=6 k=4 with 4 edges"


@pytest.mark.parametrize("attr", ["n", "k", "edges", "uniformity"])
def test_hypergraph_immutable_set(planted, attr):
    with pytest.raises(AttributeError):
        planted.__setattr__(attr, "dumb")


@pytest.mark.parametrize("attr", ["n", "k", "edges", "uniformity"])
def test_hypergraph_immutable_del(planted, attr):
    with pytest.raises(AttributeError):
        planted.__delattr__(attr)


@pytest.mark.parametrize("attr", ["base", "multiplicity"])
def test_augmentation_immutable(planted, attr):
    A = Augmentation.from_indices(planted, [0])
    with pytest.raises(AttributeError):
        A.__setattr__(attr, "dumb")
    with pytest.raises(AttributeError):
        A.__delattr__(attr)


@pytest.mark.parametrize("n, k, uniformity", [(0, 1, 3), (3, 0, 3), (3, 1, 4)])
def test_hypergraph_invalid(n, k, uniformity):
    with pytest.raises(ValueError):
        ColoredHypergraph(n, k, uniformity=uniformity)


def test_from_matchings_and_canonical():
    H = ColoredHypergraph.from_matchings(8, [[(5, 1, 0)], [(3, 6, 7)], [(2, 4, 7)]])
    assert [edge.color for edge in H] == [0, 2, 1]
    assert H.canonical() == H
    shuffled = ColoredHypergraph(8, 3, list(reversed(H.edges)))
    assert shuffled != H
    assert shuffled.canonical() == H
    assert H.matchings() == [[(0, 1, 5)], [(3, 6, 7)], [(2, 4, 7)]]


def test_validate_single_edge():
    report = validate(ColoredHypergraph(3, 1, [((0, 1, 2), 0)]))
    assert report.ok
    assert report.linear and report.matchings_ok
    assert report.achieved_delta == Fraction(1, 3)
    assert report.violations == []


def test_validate_hadamard(hadamard3):
    report = validate(hadamard3)
    assert report.ok
    assert report.min_matching_size == 1
    assert report.achieved_delta == Fraction(1, 8)


def test_validate_planted(planted):
    report = validate(planted)
    assert report.ok
    assert report.achieved_delta == Fraction(1, 6)


@pytest.mark.parametrize("colors", [(0, 0), (0, 1)])
def test_validate_linearity(colors):
    H = ColoredHypergraph(4, 2, [((0, 1, 2), colors[0]), ((0, 1, 3), colors[1])])
    report = validate(H)
    assert not report.linear
    assert ("linearity", (0, 1)) in [(f.kind, f.edges) for f in report.violations]


def test_validate_duplicate_triple():
    H = ColoredHypergraph(3, 2, [((0, 1, 2), 0), ((0, 1, 2), 1)])
    report = validate(H)
    assert not report.linear
    assert "identical" in report.violations[0].message


def test_validate_matching():
    H = ColoredHypergraph(5, 1, [((0, 1, 2), 0), ((2, 3, 4), 0)])
    report = validate(H)
    assert report.linear
    assert not report.matchings_ok
    assert [(f.kind, f.edges) for f in report.violations] == [("matching", (0, 1))]


@pytest.mark.parametrize(
    "edges, kind",
    [
        ([((0, 1, 7), 0)], "vertex-range"),
        ([((0, 1, 1), 0)], "repeated-vertex"),
        ([((0, 1), 0)], "arity"),
        ([((0, 1, 2), 3)], "color-range"),
    ],
)
def test_validate_malformed(edges, kind):
    report = validate(ColoredHypergraph(3, 1, edges))
    assert not report.ok
    assert kind in [f.kind for f in report.violations]


def test_validate_delta(planted):
    report = validate(planted, delta=Fraction(1, 3))
    assert report.linear
    assert not report.matchings_ok
    assert [f.kind for f in report.violations] == ["matching-size"] * 4
    assert validate(planted, delta=Fraction(1, 6)).ok


def test_validate_symmetric():
    a = validate(ColoredHypergraph(4, 2, [((0, 1, 2), 0), ((1, 2, 3), 1)]))
    b = validate(ColoredHypergraph(4, 2, [((1, 2, 3), 1), ((0, 1, 2), 0)]))
    assert a.linear == b.linear is False


def test_degree(planted):
    assert degree(Augmentation(planted), 0) == 0
    assert degree(Augmentation(planted, {0: 2}), 0) == 2
    assert degree(Augmentation(planted, {0: 1, 1: 3}), 0) == 4
    with pytest.raises(ValueError):
        degree(Augmentation(planted), 6)


def test_is_even(planted):
    assert is_even(Augmentation(planted))
    assert not is_even(Augmentation(planted, {0: 1}))
    assert is_even(Augmentation(planted, {0: 2}))
    assert is_even(Augmentation.from_indices(planted, range(4)))


def test_color_multiplicity(planted):
    assert color_multiplicities(Augmentation(planted)) == [0, 0, 0, 0]
    assert color_multiplicity(Augmentation(planted, {2: 3}), 2) == 3
    full = Augmentation.from_indices(planted, range(4))
    assert [color_multiplicity(full, i) for i in range(4)] == [1, 1, 1, 1]
    with pytest.raises(ValueError):
        color_multiplicity(full, 4)


def test_mod2_reduce(planted):
    A = Augmentation(planted, {0: 3, 1: 2, 2: 1, 3: 0})
    reduced = mod2_reduce(A)
    assert dict(reduced.multiplicity) == {0: 1, 2: 1}
    assert dict(mod2_reduce(Augmentation(planted, {1: 2})).multiplicity) == {}


def test_augmentation(planted):
    A = Augmentation.from_indices(planted, [0, 0, 2])
    assert dict(A.multiplicity) == {0: 2, 2: 1}
    assert A.support() == [0, 2]
    assert A.total() == 3
    assert A.parity_mask() == 0b100
    assert dict((A + Augmentation.from_mask(planted, 0b11)).multiplicity) == {0: 3, 1: 1, 2: 1}
    with pytest.raises(ValueError):
        Augmentation(planted, {4: 1})
    with pytest.raises(ValueError):
        Augmentation(planted, {0: -1})


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4))
def test_mod2_reduce_preserves_parities(counts):
    H = planted_violation_instance()
    A = Augmentation(H, dict(enumerate(counts)))
    reduced = mod2_reduce(A)
    assert is_even(A) == is_even(reduced)
    assert [c & 1 for c in color_multiplicities(A)] == color_multiplicities(reduced)
    assert int(degrees(A).sum()) == 3 * A.total()
