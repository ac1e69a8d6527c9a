"""
Parsers read the text formats of Cherrytree back into objects.

Every Parser implements the dunder ``__call__``, taking a parameter ``data_in``: the content to parse, either as a
string or as a File object. Lines starting with ``#`` and blank lines are ignored anywhere. Malformed content raises a
:class:`FormatError` naming the line.

- ``.cheg`` (colored hypergraph): ``cheg 1``, ``n <n>``, ``k <k>``, optionally ``q 2`` or ``q 3``, then one
  ``e <vertices...> <color>`` line per edge.
- ``.sldc`` (strong LDC): ``sldc 1``, ``k <k>``, ``n <n>``, ``delta <p>/<q>``, ``n`` lines ``g <k-bit row>``, then one
  ``m <i> <j1> <j2> <j3>`` line per triple of matching ``i``.
- certificates: ``violation color=<i>`` or ``certificate color=<i>``, then ``edges <indices...>``.

Basic usage: ``parser = CHEGParser(); H = parser(content)``
"""
from __future__ import annotations


from abc import ABC, abstractmethod
import logging
import os.path
import re


from .codes import LinearCodeSpec, recovery_hypergraph, StrongLdcInstance
from .default_config import CHEG_MAGIC, CHEG_VERSION, SLDC_MAGIC, SLDC_VERSION
from .helpers import bits_to_int, FormatError, parse_fraction
from .hypergraphs import ColoredHypergraph


logger = logging.getLogger(__name__)

REGEX_CERTIFICATE = re.compile(r"^(violation|certificate) color=(\d+)$")


class Parser(ABC):
    """
    Abstraction for every Parser.
    """

    def __str__(self) -> str:
        return repr(self)

    def __repr__(self) -> str:
        return self.__class__.__name__

    @staticmethod
    def lines(data_in) -> list:
        """
        Meaningful lines of the input, as couples `(line number, fields)`.

        :param data_in: The data source.
        :type data_in: str or File.
        :rtype: list[tuple[int, list[str]]]
        """
        if not isinstance(data_in, str):
            data_in = data_in.read()
        rtn = []
        for number, line in enumerate(data_in.splitlines(), start=1):
            line = line.strip()
            if line and not line.startswith("#"):
                rtn.append((number, line.split()))
        return rtn

    @staticmethod
    def integers(number, fields, count=None) -> list:
        if count is not None and len(fields) != count:
            raise FormatError(f"Line {number}: expected {count} value(s), got {len(fields)}.")
        try:
            values = [int(field) for field in fields]
        except ValueError:
            raise FormatError(f"Line {number}: `{' '.join(fields)}` are not all integers.")
        if any(value < 0 for value in values):
            raise FormatError(f"Line {number}: negative value.")
        return values

    @classmethod
    def header(cls, lines, keys) -> dict:
        """
        Read the `key value` lines at the top of the input, in order.
        """
        rtn = {}
        for key in keys:
            if not lines:
                raise FormatError(f"Missing `{key}` line.")
            number, fields = lines.pop(0)
            if fields[0] != key or len(fields) != 2:
                raise FormatError(f"Line {number}: expected `{key} <value>`, got `{' '.join(fields)}`.")
            rtn[key] = (number, fields[1])
        return rtn

    @abstractmethod
    def __call__(self, data_in):
        raise NotImplementedError


class CHEGParser(Parser):
    """
    `.cheg` to :class:`ColoredHypergraph`. Edges keep their file order.

    :param data_in: The data source.
    :type data_in: str or File.
    """

    def __call__(self, data_in) -> ColoredHypergraph:
        lines = self.lines(data_in)
        header = self.header(lines, [CHEG_MAGIC, "n", "k"])
        number, version = header[CHEG_MAGIC]
        if version != str(CHEG_VERSION):
            raise FormatError(f"Line {number}: unsupported version `{version}`.")
        n = self.integers(header["n"][0], [header["n"][1]])[0]
        k = self.integers(header["k"][0], [header["k"][1]])[0]

        uniformity = 3
        if lines and lines[0][1][0] == "q":
            number, fields = lines.pop(0)
            (uniformity,) = self.integers(number, fields[1:], 1)
            if uniformity not in (2, 3):
                raise FormatError(f"Line {number}: uniformity must be 2 or 3, got {uniformity}.")

        edges = []
        for number, fields in lines:
            if fields[0] != "e":
                raise FormatError(f"Line {number}: expected an `e` line, got `{fields[0]}`.")
            values = self.integers(number, fields[1:], uniformity + 1)
            edges.append((tuple(values[:-1]), values[-1]))

        try:
            return ColoredHypergraph(n, k, edges, uniformity=uniformity)
        except ValueError as error:
            raise FormatError(f"Invalid hypergraph: {error}")


class SLDCParser(Parser):
    """
    `.sldc` to :class:`StrongLdcInstance`.

    :param data_in: The data source.
    :type data_in: str or File.
    """

    def __call__(self, data_in) -> StrongLdcInstance:
        lines = self.lines(data_in)
        header = self.header(lines, [SLDC_MAGIC, "k", "n", "delta"])
        number, version = header[SLDC_MAGIC]
        if version != str(SLDC_VERSION):
            raise FormatError(f"Line {number}: unsupported version `{version}`.")
        k = self.integers(header["k"][0], [header["k"][1]])[0]
        n = self.integers(header["n"][0], [header["n"][1]])[0]
        number, text = header["delta"]
        try:
            delta = parse_fraction(text)
        except ValueError as error:
            raise FormatError(f"Line {number}: {error}")

        rows = []
        for _ in range(n):
            if not lines:
                raise FormatError(f"Expected {n} generator rows, got {len(rows)}.")
            number, fields = lines.pop(0)
            if fields[0] != "g" or len(fields) != 2 or len(fields[1]) != k:
                raise FormatError(f"Line {number}: expected `g` and a {k}-bit row.")
            try:
                rows.append(bits_to_int(fields[1]))
            except ValueError as error:
                raise FormatError(f"Line {number}: {error}")

        matchings = [[] for _ in range(k)]
        for number, fields in lines:
            if fields[0] != "m":
                raise FormatError(f"Line {number}: expected an `m` line, got `{fields[0]}`.")
            color, *triple = self.integers(number, fields[1:], 4)
            if color >= k:
                raise FormatError(f"Line {number}: matching `{color}` is out of range [0, {k}).")
            matchings[color].append(triple)

        try:
            return StrongLdcInstance(LinearCodeSpec(k, tuple(rows)), matchings, delta)
        except ValueError as error:
            raise FormatError(f"Invalid instance: {error}")


class CertificateParser(Parser):
    """
    Certificate lines to `(kind, color, edge indices)`.

    :param data_in: The data source.
    :type data_in: str or File.
    """

    def __call__(self, data_in) -> tuple:
        lines = self.lines(data_in)
        if len(lines) < 2:
            raise FormatError("A certificate needs a color line and an `edges` line.")
        (number, fields), (edges_number, edges) = lines[:2]
        match = REGEX_CERTIFICATE.match(" ".join(fields))
        if not match:
            raise FormatError(f"Line {number}: expected `violation color=<i>` or `certificate color=<i>`.")
        if edges[0] != "edges":
            raise FormatError(f"Line {edges_number}: expected an `edges` line.")
        return match.group(1), int(match.group(2)), self.integers(edges_number, edges[1:])


EXTENSION_TO_PARSER = {
    ".cheg": CHEGParser,
    ".sldc": SLDCParser,
}


def read_file(path):
    """
    Parse a file, choosing the parser from its extension.

    :param path: Path to a `.cheg` or `.sldc` file.
    :type path: str
    :return: The parsed object.
    :rtype: ColoredHypergraph or StrongLdcInstance
    """
    _, ext = os.path.splitext(path)
    if ext not in EXTENSION_TO_PARSER:
        raise FormatError(f"`{ext}` is not a supported extension, expected one of {list(EXTENSION_TO_PARSER)}.")
    with open(path) as file:
        rtn = EXTENSION_TO_PARSER[ext]()(file)
    logger.debug("Read %s from %s", type(rtn).__name__, path)
    return rtn


def load_hypergraph(path) -> ColoredHypergraph:
    """
    A hypergraph from either format; an instance becomes its recovery hypergraph.

    :rtype: ColoredHypergraph
    """
    rtn = read_file(path)
    if isinstance(rtn, StrongLdcInstance):
        return recovery_hypergraph(rtn)
    return rtn


def read_certificate(path) -> tuple:
    """
    A certificate saved by the `oracle` or `witness` commands.

    :param path: Path to a `.cert` file.
    :type path: str
    :return: `(kind, color, edge indices)`.
    :rtype: tuple[str, int, list[int]]
    """
    with open(path) as file:
        return CertificateParser()(file)
