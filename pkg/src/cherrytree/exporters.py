"""
Exporters write Cherrytree objects in their text formats (see :mod:`cherrytree.parsers`).

An Exporter is built on a destination, a file name, a text buffer or nothing (the text is then printed), and called on
the object to export. The whole text is built before anything is written, so a failing export leaves no partial file.

Basic usage: ``exporter = CHEGExporter("planted.cheg"); exporter(H)``
"""
from __future__ import annotations


from abc import ABC, abstractmethod
import io
import logging
import os


from .default_config import CHEG_MAGIC, CHEG_VERSION, SLDC_MAGIC, SLDC_VERSION
from .helpers import format_fraction, int_to_bits


logger = logging.getLogger(__name__)


class Exporter(ABC):
    """
    Abstraction for every Exporter.

    :param file_or_buf: File or buffer where to export. If None, the text is printed instead.
    :type file_or_buf: str or io.StringIO, default None.
    """

    EXT = ""

    def __init__(self, file_or_buf=None):
        self.filename = None
        self.buf = None

        if file_or_buf is not None:
            if isinstance(file_or_buf, (str, os.PathLike)):
                file_or_buf = os.fspath(file_or_buf)
                _, ext = os.path.splitext(file_or_buf)
                if self.EXT and ext != self.EXT:
                    file_or_buf += self.EXT
                    logger.warning(
                        "%s will automatically be added at the end of the file name: %s.", self.EXT, file_or_buf
                    )
                self.filename = file_or_buf
            elif isinstance(file_or_buf, io.TextIOBase):
                self.buf = file_or_buf
            else:
                raise TypeError(f"Not supported: {type(file_or_buf)}.")

    def __str__(self) -> str:
        return repr(self)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.filename or self.buf or 'stdout'})"

    @abstractmethod
    def render(self, value) -> str:
        """
        The text of `value`, ending with a newline.
        """
        raise NotImplementedError

    def __call__(self, value) -> str:
        text = self.render(value)
        if self.filename:
            with open(self.filename, "w") as file:
                file.write(text)
        elif self.buf is not None:
            self.buf.write(text)
        else:
            print(text, end="")
        return text


class CHEGExporter(Exporter):
    """
    Exporter of a :class:`ColoredHypergraph` to `.cheg`, edges sorted lexicographically.

    :param file_or_buf: File or buffer where to export. If None, it will print instead.
    :type file_or_buf: str or io.StringIO, default None.
    """

    EXT = ".cheg"

    def render(self, value) -> str:
        lines = [f"{CHEG_MAGIC} {CHEG_VERSION}", f"n {value.n}", f"k {value.k}"]
        if value.uniformity != 3:
            lines.append(f"q {value.uniformity}")
        for edge in sorted(value.edges):
            lines.append(f"e {' '.join(str(v) for v in edge.vertices)} {edge.color}")
        return "\n".join(lines) + "\n"


class SLDCExporter(Exporter):
    """
    Exporter of a :class:`StrongLdcInstance` to `.sldc`.

    :param file_or_buf: File or buffer where to export. If None, it will print instead.
    :type file_or_buf: str or io.StringIO, default None.
    """

    EXT = ".sldc"

    def render(self, value) -> str:
        lines = [
            f"{SLDC_MAGIC} {SLDC_VERSION}",
            f"k {value.k}",
            f"n {value.n}",
            f"delta {format_fraction(value.delta)}",
        ]
        lines += [f"g {int_to_bits(row, value.k)}" for row in value.code.rows]
        for color, matching in enumerate(value.matchings):
            lines += [f"m {color} {' '.join(str(v) for v in triple)}" for triple in matching]
        return "\n".join(lines) + "\n"


class CertificateExporter(Exporter):
    """
    Exporter of an odd-colored even edge subset, as printed by the `oracle` and `witness` commands.

    Called on `(kind, color, edge indices)`, kind being `violation` (GF(2) oracle) or `certificate` (witness search).

    :param file_or_buf: File or buffer where to export. If None, it will print instead.
    :type file_or_buf: str or io.StringIO, default None.
    """

    EXT = ".cert"

    def render(self, value) -> str:
        kind, color, edges = value
        if kind not in ("violation", "certificate"):
            raise ValueError(f"`kind` can be either `violation` or `certificate`, got `{kind}`.")
        return f"{kind} color={color}\nedges {' '.join(str(index) for index in edges)}\n"
