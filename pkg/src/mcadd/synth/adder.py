"""mcadd: mcadd/synth/adder.py
Addition of hybrid codewords as a circuit, the Boolean specification of
addition for every code family and its metastable closure.

The hybrid pipeline per operand: BRGC part to binary (its last bit is the
parity pi), unary part repaired by the map circuit under pi, then unary to
binary. The unary values are added modulo k+1 and the wrap-around carry
enters the binary adder of the BRGC parts, whose carry-out is the
overflow. Both sums are translated back, the unary one under the parity
of the new BRGC part. On overflow the sum port carries the truncated
result, which is the encoding of (a + b) mod M.
"""

from ..codes import CodeSpec, choose_code
from ..kleene import MAX_META, BitWord, TritWord, resolve
from ..netlist import ZERO, NetlistBuilder
from ..rich_logger import logger
from .. import util
from .prefix import adder_nodes, modular_adder_nodes, ripple_nodes
from .translate import (
    bin_to_brgc_nodes,
    bin_to_un_nodes,
    brgc_to_bin_nodes,
    map_circuit_nodes,
    un_to_bin_nodes,
)


ADDERS = ("prefix", "ripple")


def build_add_nodes(b, xs, ys, n, k):
    xb = brgc_to_bin_nodes(b, xs[:n])
    yb = brgc_to_bin_nodes(b, ys[:n])
    xa = un_to_bin_nodes(b, xb[-1], map_circuit_nodes(b, xb[-1], xs[n:]))
    ya = un_to_bin_nodes(b, yb[-1], map_circuit_nodes(b, yb[-1], ys[n:]))
    unary_sum, carry = modular_adder_nodes(b, xa, ya, k + 1)
    binary_sum, ovf = adder_nodes(b, xb, yb, carry)
    unary = bin_to_un_nodes(b, binary_sum[-1], unary_sum, k)
    return bin_to_brgc_nodes(b, binary_sum) + unary, ovf


def build_add(n, k):
    """Adder for hybrid(n, k) codewords: inputs x1..x(n+k), y1..y(n+k),
    outputs s1..s(n+k) and ovf."""
    spec = CodeSpec.hybrid(n, k)
    b = NetlistBuilder(f"add_{n}_{k}")
    xs = b.inputs("x", spec.word_length)
    ys = b.inputs("y", spec.word_length)
    sums, ovf = build_add_nodes(b, xs, ys, n, k)
    c = b.build(sums + [ovf])
    logger.debug("Synthesized %r with %s", c, c.stats())
    return c


def adder_circuit(spec, adder="prefix"):
    """Addition netlist for ``spec``: ``build_add`` for hybrid codes, a
    prefix or ripple adder without carry-in for binary codes."""
    spec = choose_code(spec).spec
    if adder not in ADDERS:
        raise util.UsageError(f"unknown adder {adder!r}, expected one of {', '.join(ADDERS)}")
    if spec.family == "hybrid" and adder == "prefix":
        return build_add(spec.n, spec.k)
    if spec.family != "binary":
        raise util.UnsupportedError(f"no {adder} adder circuit for {spec}")
    b = NetlistBuilder(f"{adder}_add_{spec.n}")
    xs = b.inputs("x", spec.n)
    ys = b.inputs("y", spec.n)
    nodes = adder_nodes if adder == "prefix" else ripple_nodes
    sums, cout = nodes(b, xs, ys, ZERO)
    return b.build(sums + [cout])


class _Addition:
    """Integer-level addition for one code with cached decoding."""

    def __init__(self, code):
        self.code = code
        self.width = code.word_length
        try:
            code.extended_decode(code.encode(0))
            self.decoder = code.extended_decode
        except util.UnsupportedError:
            # binary and BRGC decoding is already total
            self.decoder = code.decode
        self._values = {}
        self._words = {}

    def value(self, r):
        if r not in self._values:
            self._values[r] = self.decoder(BitWord.from_int(r, self.width))
        return self._values[r]

    def word(self, i):
        if i not in self._words:
            self._words[i] = self.code.encode(i).to_int()
        return self._words[i]

    def __call__(self, x, y):
        """Sum word with the overflow bit appended, as an integer."""
        total = self.value(x) + self.value(y)
        m = self.code.domain_size
        return self.word(total % m) << 1 | (total >= m)


_ADDITIONS = {}


def _addition(spec):
    code = choose_code(spec)
    if code.spec not in _ADDITIONS:
        _ADDITIONS[code.spec] = _Addition(code)
    return _ADDITIONS[code.spec]


def addition_function(spec):
    """Boolean addition for ``spec`` on the concatenation x y of two
    stable words, returning the sum word followed by the overflow bit.
    Non-codewords are decoded with the family's extended decoder."""
    addition = _addition(spec)
    width = addition.width

    def f(word):
        value = word.to_int()
        out = addition(value >> width, value & ((1 << width) - 1))
        return BitWord.from_int(out, width + 1)

    return f


def mc_add_oracle(spec, x, y, max_meta=MAX_META):
    """Metastable closure of addition: the superposition of the sums over
    all resolutions of ``x`` and ``y``. Returns (sum word, overflow trit)."""
    addition = _addition(spec)
    code = addition.code
    for w in (x, y):
        code._check_width(w)
    if x.meta_count + y.meta_count > max_meta:
        raise util.BudgetExceededError(
            f"resolving {x.meta_count + y.meta_count} metastable trits", max_meta
        )
    first = None
    meta = 0
    xs = [r.to_int() for r in resolve(x, max_meta)]
    for r in resolve(y, max_meta):
        b = r.to_int()
        for a in xs:
            out = addition(a, b)
            if first is None:
                first = out
            meta |= first ^ out
    result = TritWord.from_mask(meta, first, addition.width + 1)
    return result[:-1], result[-1]
