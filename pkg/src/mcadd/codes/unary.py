"""mcadd: mcadd/codes/unary.py
Unary thermometer codes and the mapping of arbitrary stable words onto
their codewords.
"""

from ..kleene import BitWord
from .. import util
from .common import Code


def first_index(x, bit):
    """Smallest 1-based position holding ``bit``, ``len(x) + 1`` if none."""
    for position, b in enumerate(x.bits(), 1):
        if b == bit:
            return position
    return len(x) + 1


def last_index(x, bit):
    """Largest 1-based position holding ``bit``, 0 if none."""
    result = 0
    for position, b in enumerate(x.bits(), 1):
        if b == bit:
            result = position
    return result


def map_unary(k, pi, x):
    """Maps the stable k-bit word ``x`` to a codeword of the up flavor
    (``pi`` = 0) or the down flavor (``pi`` = 1). Which boundary of ``x``
    is kept depends on the trit at position ceil(k/2)."""
    if len(x) != k:
        raise util.WidthError(f"map_unary({k}) takes {k} bits, got {len(x)} ({x})")
    middle = x.bits()[(k + 1) // 2 - 1]
    if pi == 0:
        ones = first_index(x, 0) - 1 if middle == 0 else last_index(x, 1)
        return BitWord.from_bits([1] * ones + [0] * (k - ones))
    zeros = last_index(x, 0) if middle == 0 else first_index(x, 1) - 1
    return BitWord.from_bits([0] * zeros + [1] * (k - zeros))


class UnaryCode(Code):
    """Thermometer code; ``pi`` selects the flavor."""

    pi = None

    def _encode(self, i):
        bits = [1] * i + [0] * (self.n - i)
        return BitWord.from_bits(b ^ self.pi for b in bits)

    def _decode(self, w):
        bits = [b ^ self.pi for b in w.bits()]
        i = first_index(BitWord.from_bits(bits), 0) - 1
        if any(bits[i:]):
            return None
        return i

    def _extended_decode(self, w):
        return self._decode(map_unary(self.n, self.pi, w))


class UnaryUpCode(UnaryCode):
    """Encodes i as 1^i 0^(n-i)."""

    family = "unary-up"
    pi = 0


class UnaryDownCode(UnaryCode):
    """Encodes i as 0^i 1^(n-i)."""

    family = "unary-down"
    pi = 1
