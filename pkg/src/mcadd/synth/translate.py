"""mcadd: mcadd/synth/translate.py
Translators between BRGC, binary and unary thermometer representations,
and the circuit mapping arbitrary unary parts onto codewords.
"""

from ..netlist import ONE, ZERO, NetlistBuilder
from .. import util
from .prefix import LEFT_TO_RIGHT, RIGHT_TO_LEFT, ppc_nodes


def unary_width(k):
    """Bits of the binary form of values 0..k, ceil(log2(k+1))."""
    return k.bit_length()


def brgc_to_bin_nodes(b, xs):
    # binary bit i is the parity of the first i code bits
    return ppc_nodes(b, "XOR", xs)


def bin_to_brgc_nodes(b, xs):
    return [xs[0]] + [b.xor(prev, cur) for prev, cur in zip(xs, xs[1:])]


def _unary_to_binary(b, xs):
    """Up-flavor thermometer word of 2^l - 1 bits to l binary bits."""
    if len(xs) == 1:
        return [xs[0]]
    middle = len(xs) // 2
    low = _unary_to_binary(b, xs[:middle])
    high = _unary_to_binary(b, xs[middle + 1 :])
    return [xs[middle]] + [b.mux(lo, hi, xs[middle]) for lo, hi in zip(low, high)]


def _binary_to_unary(b, bits):
    """l binary bits to an up-flavor thermometer word of 2^l - 1 bits."""
    if len(bits) == 1:
        return [bits[0]]
    y = _binary_to_unary(b, bits[1:])
    half = len(y) + 1
    low = y + [ZERO] * half
    high = [ONE] * half + y
    return [b.mux(lo, hi, bits[0]) for lo, hi in zip(low, high)]


def un_to_bin_nodes(b, pi, xs):
    k = len(xs)
    # padding keeps an up-flavor word once pi is XORed away
    padded = [b.xor(pi, x) for x in xs] + [ZERO] * ((1 << unary_width(k)) - 1 - k)
    return _unary_to_binary(b, padded)


def bin_to_un_nodes(b, pi, bits, k):
    unary = _binary_to_unary(b, bits)[:k]
    return [b.xor(pi, u) for u in unary]


def map_circuit_nodes(b, pi, xs):
    """Four prefix networks in parallel; per output bit a 4:1 multiplexer
    on (pi, x at position ceil(k/2)) selects the case."""
    middle = xs[(len(xs) + 1) // 2 - 1]
    up_low = ppc_nodes(b, "AND", xs, LEFT_TO_RIGHT)
    up_high = ppc_nodes(b, "OR", xs, RIGHT_TO_LEFT)
    down_low = ppc_nodes(b, "AND", xs, RIGHT_TO_LEFT)
    down_high = ppc_nodes(b, "OR", xs, LEFT_TO_RIGHT)
    return [
        b.mux(b.mux(c00, c01, middle), b.mux(c10, c11, middle), pi)
        for c00, c01, c10, c11 in zip(up_low, up_high, down_low, down_high)
    ]


def _check(name, value):
    if value < 1:
        raise util.UsageError(f"{name} needs a width >= 1, got {value}")


def brgc_to_bin(n):
    """BRGC word to the binary word of the same value."""
    _check("brgc_to_bin", n)
    b = NetlistBuilder(f"brgc_to_bin_{n}")
    return b.build(brgc_to_bin_nodes(b, b.inputs("g", n)))


def bin_to_brgc(n):
    """Binary word to the BRGC word of the same value; one XOR layer."""
    _check("bin_to_brgc", n)
    b = NetlistBuilder(f"bin_to_brgc_{n}")
    return b.build(bin_to_brgc_nodes(b, b.inputs("b", n)))


def un_to_bin(k):
    """Inputs (pi, x1..xk): unary codeword of flavor pi to ceil(log2(k+1))
    binary bits. Non-codewords give unspecified stable outputs."""
    _check("un_to_bin", k)
    b = NetlistBuilder(f"un_to_bin_{k}")
    pi = b.input("pi")
    return b.build(un_to_bin_nodes(b, pi, b.inputs("x", k)))


def bin_to_un(k):
    """Inputs (pi, b1..bl): value <= k to the k-bit unary codeword of
    flavor pi."""
    _check("bin_to_un", k)
    b = NetlistBuilder(f"bin_to_un_{k}")
    pi = b.input("pi")
    return b.build(bin_to_un_nodes(b, pi, b.inputs("b", unary_width(k)), k))


def map_circuit(k):
    """Inputs (pi, x1..xk): circuit form of ``codes.map_unary``."""
    _check("map_circuit", k)
    b = NetlistBuilder(f"map_{k}")
    pi = b.input("pi")
    return b.build(map_circuit_nodes(b, pi, b.inputs("x", k)))
