"""mcadd: mcadd/codes/hybrid.py
Hybrid code: a Gray-coded count of completed unary columns followed by a
thermometer part whose flavor alternates with the Gray part's parity.
"""

from .brgc import BrgcCode
from .common import Code, CodeSpec, parity
from .unary import UnaryDownCode, UnaryUpCode, map_unary


class HybridCode(Code):
    """Value i is written as BRGC(i // (k+1)) followed by the unary code of
    i mod (k+1), up flavor when the BRGC part has even parity and down
    flavor otherwise."""

    family = "hybrid"

    def __init__(self, spec):
        super().__init__(spec)
        self.brgc = BrgcCode(CodeSpec.brgc(self.n))
        self.unary = (
            UnaryUpCode(CodeSpec.unary_up(self.k)),
            UnaryDownCode(CodeSpec.unary_down(self.k)),
        )

    def split(self, w):
        """Returns the BRGC part and the unary part of ``w``."""
        return w[: self.n], w[self.n :]

    def _encode(self, i):
        x_g = self.brgc.encode(i // (self.k + 1))
        return x_g + self.unary[parity(x_g)].encode(i % (self.k + 1))

    def _decode(self, w):
        x_g, x_u = self.split(w)
        u = self.unary[parity(x_g)]._decode(x_u)
        if u is None:
            return None
        return self.brgc._decode(x_g) * (self.k + 1) + u

    def _extended_decode(self, w):
        x_g, x_u = self.split(w)
        return self._decode(x_g + map_unary(self.k, parity(x_g), x_u))

    def format_word(self, w, meta="M"):
        x_g, x_u = self.split(w)
        return f"{x_g.to_string(meta)} {x_u.to_string(meta)}"
