"""mcadd: mcadd/codes/__init__.py"""

import functools

from .. import util
from .binary import BinaryCode
from .brgc import BrgcCode
from .common import FAMILIES, Code, CodeSpec, Interval, parity
from .hybrid import HybridCode
from .unary import UnaryDownCode, UnaryUpCode, first_index, last_index, map_unary


@functools.lru_cache(maxsize=None)
def choose_code(spec):
    """Chooses the code implementation for the specification given.
    ``spec`` is either a ``CodeSpec`` or a string like ``hybrid:5:3``.
    Instances are immutable and cached per specification.
    If no code can be determined, a ``UsageError`` is raised."""
    if isinstance(spec, str):
        spec = CodeSpec.parse(spec)
    for c in (BinaryCode, UnaryUpCode, UnaryDownCode, BrgcCode, HybridCode):
        if c.family == spec.family:
            return c(spec)
    raise util.UsageError(f"No code could be generated for this specification: {spec}")


def encode(spec, i):
    return choose_code(spec).encode(i)


def decode(spec, w):
    return choose_code(spec).decode(w)


def is_codeword(spec, w):
    return choose_code(spec).is_codeword(w)


def extended_codeword(spec, interval):
    return choose_code(spec).extended_codeword(interval)


def extended_decode(spec, w):
    return choose_code(spec).extended_decode(w)


def value_range(spec, x):
    return choose_code(spec).value_range(x)


def redundancy(spec):
    return choose_code(spec).redundancy()


def rate(spec):
    return choose_code(spec).rate()


def format_word(spec, w, meta="M"):
    return choose_code(spec).format_word(w, meta)


def parse_word(spec, text):
    return choose_code(spec).parse_word(text)


__all__ = [
    "FAMILIES",
    "BinaryCode",
    "BrgcCode",
    "Code",
    "CodeSpec",
    "HybridCode",
    "Interval",
    "UnaryDownCode",
    "UnaryUpCode",
    "choose_code",
    "decode",
    "encode",
    "extended_codeword",
    "extended_decode",
    "first_index",
    "format_word",
    "is_codeword",
    "last_index",
    "map_unary",
    "parity",
    "parse_word",
    "rate",
    "redundancy",
    "value_range",
]
