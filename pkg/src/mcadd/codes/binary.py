"""mcadd: mcadd/codes/binary.py"""

from ..kleene import BitWord
from .common import Code


class BinaryCode(Code):
    """Standard base-2 representation, most significant bit first."""

    family = "binary"

    def _encode(self, i):
        return BitWord.from_int(i, self.n)

    def _decode(self, w):
        return w.to_int()
