from fractions import Fraction
import io


import pytest


from cherrytree.codes import recovery_hypergraph, StrongLdcInstance
from cherrytree.exporters import CertificateExporter, CHEGExporter, SLDCExporter
from cherrytree.generators import (
    GenConfig,
    hadamard_strong_ldc,
    hypercube_two_query_instance,
    random_colored_hypergraph,
)
from cherrytree.helpers import FormatError
from cherrytree.hypergraphs import ColoredHypergraph
from cherrytree.parsers import CertificateParser, CHEGParser, load_hypergraph, read_certificate, read_file, SLDCParser


@pytest.fixture
def planted():
    return read_file("./tests/inputs/planted.cheg")


def test_cheg_parser(planted):
    assert isinstance(planted, ColoredHypergraph)
    assert (planted.n, planted.k, planted.m, planted.uniformity) == (6, 4, 4, 3)
    assert [(edge.vertices, edge.color) for edge in planted] == [
        ((0, 1, 2), 0),
        ((0, 3, 4), 1),
        ((1, 3, 5), 2),
        ((2, 4, 5), 3),
    ]


def test_cheg_parser_graph():
    triangle = read_file("./tests/inputs/triangle.cheg")
    assert triangle.uniformity == 2
    assert [edge.vertices for edge in triangle] == [(0, 1), (1, 2), (0, 2)]


def test_cheg_parser_empty():
    empty = read_file("./tests/inputs/empty.cheg")
    assert (empty.n, empty.k, empty.m) == (6, 4, 0)


def test_cheg_parser_bad():
    with pytest.raises(FormatError, match="Line 3"):
        read_file("./tests/inputs/bad.cheg")


@pytest.mark.parametrize(
    "content",
    [
        "",
        "cheg 2\nn 3\nk 1\n",
        "cheg 1\nk 1\nn 3\n",
        "cheg 1\nn 3\nk 1\nq 4\n",
        "cheg 1\nn 3\nk 1\ne 0 1 2\n",
        "cheg 1\nn 3\nk 1\ne 0 1 -2 0\n",
        "cheg 1\nn 3\nk 1\nf 0 1 2 0\n",
        "cheg 1\nn 0\nk 1\n",
    ],
)
def test_cheg_parser_malformed(content):
    with pytest.raises(FormatError):
        CHEGParser()(content)


def test_cheg_parser_keeps_invalid_edges():
    # Range errors are reported by validation, not by the parser
    H = CHEGParser()("cheg 1\nn 3\nk 1\ne 0 1 7 3\n")
    assert H.edges[0].vertices == (0, 1, 7)


def test_sldc_parser():
    instance = read_file("./tests/inputs/hadamard3.sldc")
    assert isinstance(instance, StrongLdcInstance)
    assert (instance.k, instance.n, instance.delta) == (3, 8, Fraction(1, 8))
    assert instance.code.rows == tuple(range(8))
    assert [len(matching) for matching in instance.matchings] == [1, 1, 1]


@pytest.mark.parametrize(
    "content",
    [
        "sldc 1\nk 1\nn 2\ndelta 1/2\ng 0\n",
        "sldc 1\nk 1\nn 1\ndelta half\ng 1\n",
        "sldc 1\nk 2\nn 1\ndelta 0\ng 1\n",
        "sldc 1\nk 2\nn 1\ndelta 0\ng 2a\n",
        "sldc 1\nk 1\nn 3\ndelta 0\ng 1\ng 1\ng 1\nm 1 0 1 2\n",
    ],
)
def test_sldc_parser_malformed(content):
    with pytest.raises(FormatError):
        SLDCParser()(content)


def test_load_hypergraph():
    H = load_hypergraph("./tests/inputs/hadamard3.sldc")
    assert H == recovery_hypergraph(read_file("./tests/inputs/hadamard3.sldc"))
    assert load_hypergraph("./tests/inputs/planted.cheg").m == 4


def test_read_file_extension(tmp_path):
    path = tmp_path / "planted.txt"
    path.write_text("cheg 1\nn 3\nk 1\n")
    with pytest.raises(FormatError):
        read_file(str(path))


def test_certificate_parser():
    assert CertificateParser()("violation color=2\nedges 0 1 2 3\n") == ("violation", 2, [0, 1, 2, 3])
    assert CertificateParser()(io.StringIO("# from a search\ncertificate color=0\nedges\n")) == ("certificate", 0, [])
    with pytest.raises(FormatError):
        CertificateParser()("violation color=x\nedges 0\n")
    with pytest.raises(FormatError):
        CertificateParser()("violation color=1\n")


def test_cheg_round_trip():
    for H in [
        random_colored_hypergraph(30, 4, Fraction(1, 10), GenConfig(seed=4)).canonical(),
        hypercube_two_query_instance(3).canonical(),
    ]:
        text = CHEGExporter(io.StringIO())(H)
        assert CHEGParser()(text) == H


def test_sldc_round_trip():
    instance = hadamard_strong_ldc(4, GenConfig(seed=4))
    text = SLDCExporter(io.StringIO())(instance)
    parsed = SLDCParser()(text)
    assert SLDCExporter(io.StringIO())(parsed) == text
    assert recovery_hypergraph(parsed) == recovery_hypergraph(instance)


def test_certificate_round_trip():
    text = CertificateExporter(io.StringIO())(("certificate", 3, [1, 4, 9]))
    assert CertificateParser()(text) == ("certificate", 3, [1, 4, 9])


def test_read_certificate(tmp_path):
    exporter = CertificateExporter(str(tmp_path / "saved.cert"))
    exporter(("violation", 0, [0, 1, 2, 3]))
    assert read_certificate(exporter.filename) == ("violation", 0, [0, 1, 2, 3])
