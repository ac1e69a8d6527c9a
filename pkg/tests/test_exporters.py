import io
import logging


import pytest


from cherrytree.exporters import CertificateExporter, CHEGExporter, SLDCExporter
from cherrytree.generators import planted_violation_instance
from cherrytree.parsers import read_file


PLANTED = "cheg 1\nn 6\nk 4\ne 0 1 2 0\ne 0 3 4 1\ne 1 3 5 2\ne 2 4 5 3\n"


@pytest.fixture
def planted():
    return planted_violation_instance()


def test_exporter_buffer(planted):
    buf = io.StringIO()
    assert CHEGExporter(buf)(planted) == PLANTED
    assert buf.getvalue() == PLANTED


def test_exporter_print(planted, capsys):
    CHEGExporter()(planted)
    assert capsys.readouterr().out == PLANTED


def test_exporter_file(planted, tmp_path, caplog):
    with caplog.at_level(logging.WARNING, logger="cherrytree"):
        exporter = CHEGExporter(str(tmp_path / "planted"))
    assert exporter.filename.endswith("planted.cheg")
    assert ".cheg will automatically be added" in caplog.text
    exporter(planted)
    assert (tmp_path / "planted.cheg").read_text() == PLANTED


def test_exporter_file_extension(tmp_path, caplog):
    with caplog.at_level(logging.WARNING, logger="cherrytree"):
        exporter = SLDCExporter(tmp_path / "hadamard3.sldc")
    assert caplog.text == ""
    exporter(read_file("./tests/inputs/hadamard3.sldc"))
    with open("./tests/inputs/hadamard3.sldc") as file:
        assert (tmp_path / "hadamard3.sldc").read_text() == file.read()


def test_exporter_unsupported():
    with pytest.raises(TypeError):
        CHEGExporter(42)


def test_cheg_sorted(planted):
    shuffled = type(planted)(planted.n, planted.k, list(reversed(planted.edges)))
    assert CHEGExporter(io.StringIO())(shuffled) == PLANTED


def test_cheg_graph():
    graph = read_file("./tests/inputs/triangle.cheg")
    assert CHEGExporter(io.StringIO())(graph) == "cheg 1\nn 3\nk 3\nq 2\ne 0 1 0\ne 0 2 2\ne 1 2 1\n"


def test_certificate_exporter():
    assert CertificateExporter(io.StringIO())(("violation", 0, [0, 1, 2, 3])) == "violation color=0\nedges 0 1 2 3\n"
    with pytest.raises(ValueError):
        CertificateExporter(io.StringIO())(("proof", 0, []))
