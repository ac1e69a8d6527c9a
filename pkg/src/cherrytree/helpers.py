"""
Multiple helpers and utils.

Bit vectors of F2^k are plain Python integers, written most significant bit first: coordinate ``i`` (0-indexed) of a
``k``-bit vector is the bit ``k - 1 - i``. The string ``"100"`` is thus ``e_0`` for ``k = 3``, and reading an integer
vertex id of the Hadamard code as a bit string gives its generator row directly.
"""

from __future__ import annotations


from fractions import Fraction
from typing import Iterable, Union
import math
import re


REGEX_FRACTION = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*$")
REGEX_BITS = re.compile(r"^[01]+$")


class FormatError(ValueError):
    """
    A `.cheg` or `.sldc` input could not be read.
    """


class SizeError(ValueError):
    """
    An input is too large for a brute-force procedure.
    """


class InfeasibleError(ValueError):
    """
    A generator cannot satisfy its parameters, either by construction or within its retry budget.
    """


class InconsistencyError(AssertionError):
    """
    Internal bookkeeping contradicts a proven property. Always a bug, never a property of the input.
    """


def parse_fraction(text) -> Fraction:
    """
    Parse a non-negative rational written either `p/q` or `p`.

    :param text: The text to parse, or a number.
    :type text: str, int or Fraction
    :return: The parsed rational.
    :rtype: Fraction
    """
    if isinstance(text, (int, Fraction)):
        value = Fraction(text)
    else:
        match = REGEX_FRACTION.match(str(text))
        if not match:
            raise ValueError(f"`{text}` is not a fraction of the form `p/q`.")
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValueError(f"`{text}` has a zero denominator.")
        value = Fraction(int(numerator), int(denominator or 1))
    if value < 0:
        raise ValueError(f"`{text}` must be non-negative.")
    return value


def format_fraction(value: Union[Fraction, int]) -> str:
    """
    Always `p/q`, even for integers, so that outputs stay easy to parse.
    """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def ceil_fraction(value: Union[Fraction, int]) -> int:
    return math.ceil(Fraction(value))


def unit_vector(i: int, k: int) -> int:
    """
    The `i`-th unit vector of F2^k.

    :param i: Coordinate, in [0, k).
    :type i: int
    :param k: Dimension.
    :type k: int
    :return: The unit vector as an integer.
    :rtype: int
    """
    if not 0 <= i < k:
        raise ValueError(f"Coordinate `{i}` is out of range for dimension {k}.")
    return 1 << (k - 1 - i)


def bits_to_int(bits: str) -> int:
    if not REGEX_BITS.match(bits):
        raise ValueError(f"`{bits}` is not a bit string.")
    return int(bits, 2)


def int_to_bits(value: int, k: int) -> str:
    return format(value, f"0{k}b") if k else ""


def parity(value: int) -> int:
    """
    Parity of the number of set bits.
    """
    return bin(value).count("1") & 1


def popcount(value: int) -> int:
    return bin(value).count("1")


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def indices_from_mask(mask: int) -> list:
    """
    Positions of the set bits, in increasing order.

    :param mask: A bit mask.
    :type mask: int
    :return: Sorted positions.
    :rtype: list[int]
    """
    rtn = []
    position = 0
    while mask:
        if mask & 1:
            rtn.append(position)
        mask >>= 1
        position += 1
    return rtn


def signs_to_bits(signs) -> int:
    """
    Map a ±1 vector to F2^k, with +1 ↦ 0 and -1 ↦ 1.
    """
    k = len(signs)
    value = 0
    for i, sign in enumerate(signs):
        if sign == -1:
            value |= 1 << (k - 1 - i)
        elif sign != 1:
            raise ValueError(f"Entry `{sign}` is not ±1.")
    return value


def bits_to_signs(value: int, k: int) -> tuple:
    return tuple(-1 if (value >> (k - 1 - i)) & 1 else 1 for i in range(k))
