"""mcadd: mcadd/codes/brgc.py
Binary reflected Gray code.
"""

from ..kleene import BitWord
from .common import Code


class BrgcCode(Code):
    """The reflected Gray code: the (n-1)-bit code prefixed with 0,
    followed by its mirror image prefixed with 1. Consecutive codewords
    differ in exactly one bit."""

    family = "brgc"

    def _encode(self, i):
        return BitWord.from_int(i ^ i >> 1, self.n)

    def _decode(self, w):
        # bit i of the value is the parity of the first i code bits
        value = acc = 0
        for bit in w.bits():
            acc ^= bit
            value = value << 1 | acc
        return value
