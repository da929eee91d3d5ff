import itertools
import math

import pytest

from mcadd import codes, netlist, synth, util
from mcadd.codes import CodeSpec, choose_code, map_unary
from mcadd.kleene import BitWord, Trit, TritWord, closure_eval, information_leq, make_word
from mcadd.netlist import CircuitStats, NetlistBuilder
from mcadd.synth import TruthTable
from mcadd.synth.prefix import modular_adder_nodes


W = TritWord.parse
STABLE_ADDERS = [(3, 1), (3, 2), (4, 3), (5, 3)]


def bits(n):
    return [BitWord.from_int(r, n) for r in range(2**n)]


def ternary_words(width):
    return [make_word(t) for t in itertools.product(Trit, repeat=width)]


@pytest.mark.parametrize(
    "op, n, direction, x, expected",
    [
        ("XOR", 4, synth.LEFT_TO_RIGHT, "0111", "0101"),
        ("AND", 5, synth.LEFT_TO_RIGHT, "11111", "11111"),
        ("AND", 4, synth.LEFT_TO_RIGHT, "1101", "1100"),
        ("OR", 3, synth.RIGHT_TO_LEFT, "001", "111"),
        ("OR", 4, synth.RIGHT_TO_LEFT, "0100", "1100"),
    ],
)
def test_ppc(op, n, direction, x, expected):
    assert synth.ppc(op, n, direction).eval(W(x)) == W(expected)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 9])
def test_ppc_computes_all_prefixes(n):
    c = synth.ppc("XOR", n)
    for x in bits(n):
        expected = list(itertools.accumulate(x.bits(), lambda a, b: a ^ b))
        assert c.eval(x) == BitWord.from_bits(expected)


def test_ppc_rejects_bad_parameters():
    with pytest.raises(util.UsageError):
        synth.ppc("NAND", 4)
    with pytest.raises(util.UsageError):
        synth.ppc("AND", 4, "upwards")
    with pytest.raises(util.UsageError):
        synth.ppc("AND", 0)


@pytest.mark.parametrize(
    "c, expected",
    [
        (synth.brgc_to_bin(8), CircuitStats(55, 12)),
        (synth.ppc("XOR", 8), CircuitStats(55, 12)),
        (synth.ppc("AND", 8), CircuitStats(11, 4)),
        (synth.bin_to_brgc(8), CircuitStats(35, 3)),
        (synth.un_to_bin(1), CircuitStats(5, 3)),
    ],
)
def test_frozen_stats(c, expected):
    assert c.stats() == expected


@pytest.mark.parametrize("n", [1, 2, 3, 8])
def test_prefix_depth_is_logarithmic(n):
    stats = synth.brgc_to_bin(n).stats()
    assert stats.size <= 5 * 2 * n
    assert stats.depth <= 3 * 2 * max(1, math.ceil(math.log2(n)))


@pytest.mark.parametrize("n, depth", [(4, 6), (8, 12), (16, 18), (32, 24)])
def test_frozen_prefix_depths(n, depth):
    # three gate levels per XOR, 2*log2(n) - 2 operator levels
    assert synth.brgc_to_bin(n).stats().depth == depth
    assert synth.ppc("XOR", n).stats().depth == depth


@pytest.mark.parametrize("n", range(1, 8))
def test_brgc_translators(n):
    to_bin = synth.brgc_to_bin(n)
    to_brgc = synth.bin_to_brgc(n)
    brgc = choose_code(CodeSpec.brgc(n))
    for i in range(2**n):
        assert to_bin.eval(brgc.encode(i)) == BitWord.from_int(i, n)
        assert to_brgc.eval(BitWord.from_int(i, n)) == brgc.encode(i)


@pytest.mark.parametrize(
    "c, x, expected",
    [
        (synth.brgc_to_bin(4), "0111", "0101"),
        (synth.brgc_to_bin(4), "1000", "1111"),
        (synth.brgc_to_bin(4), "0000", "0000"),
        (synth.bin_to_brgc(4), "0101", "0111"),
        (synth.un_to_bin(4), "0 1110", "011"),
        (synth.un_to_bin(4), "1 0001", "011"),
        (synth.un_to_bin(4), "0 0000", "000"),
        (synth.bin_to_un(4), "1 011", "0001"),
        (synth.bin_to_un(4), "0 000", "0000"),
        (synth.map_circuit(4), "0 0110", "1110"),
        (synth.map_circuit(3), "1 100", "000"),
    ],
)
def test_translator_examples(c, x, expected):
    assert c.eval(W(x)) == W(expected)


@pytest.mark.parametrize("k", range(1, 17))
def test_unary_translators(k):
    to_bin = synth.un_to_bin(k)
    to_un = synth.bin_to_un(k)
    width = synth.unary_width(k)
    assert width == math.ceil(math.log2(k + 1))
    for pi, spec in ((0, CodeSpec.unary_up(k)), (1, CodeSpec.unary_down(k))):
        code = choose_code(spec)
        for i in range(k + 1):
            b = BitWord.from_int(i, width)
            pi_word = BitWord.from_bits([pi])
            assert to_bin.eval(pi_word + code.encode(i)) == b
            assert to_un.eval(pi_word + b) == code.encode(i)


@pytest.mark.parametrize("k", range(1, 9))
def test_map_circuit_matches_map_unary(k):
    c = synth.map_circuit(k)
    for pi in (0, 1):
        for x in bits(k):
            assert c.eval(BitWord.from_bits([pi]) + x) == map_unary(k, pi, x)


@pytest.mark.parametrize("adder", [synth.prefix_adder, synth.ripple_adder])
@pytest.mark.parametrize("w", [1, 3, 4])
def test_binary_adders(adder, w):
    c = adder(w)
    for a, b, cin in itertools.product(range(2**w), range(2**w), (0, 1)):
        x = BitWord.from_int(a, w) + BitWord.from_int(b, w) + BitWord.from_bits([cin])
        t = a + b + cin
        # sum bits first, carry-out last
        assert c.eval(x) == BitWord.from_int(t % 2**w, w) + BitWord.from_bits([t >> w])


def test_prefix_adder_examples():
    c = synth.prefix_adder(4)
    assert c.eval(W("0101 0011 0")) == W("1000 0")
    assert c.eval(W("1111 0000 1")) == W("0000 1")


@pytest.mark.parametrize("w", [4, 8, 16, 32])
def test_prefix_adder_depth_is_logarithmic(w):
    depth = synth.prefix_adder(w).stats().depth
    assert depth <= 6 + 4 * math.ceil(math.log2(w + 1))
    assert depth < synth.ripple_adder(w).stats().depth


@pytest.mark.parametrize("modulus, w", [(3, 2), (5, 3), (6, 3), (7, 3), (4, 2)])
def test_modular_adder(modulus, w):
    b = NetlistBuilder()
    xs, ys = b.inputs("a", w), b.inputs("b", w)
    sums, carry = modular_adder_nodes(b, xs, ys, modulus)
    c = b.build(sums + [carry])
    for x, y in itertools.product(range(modulus), repeat=2):
        out = c.eval(BitWord.from_int(x, w) + BitWord.from_int(y, w))
        t = x + y
        assert out == BitWord.from_int(t % modulus, w) + BitWord.from_bits([t >= modulus])


@pytest.mark.parametrize("n, k", STABLE_ADDERS)
def test_build_add_on_codewords(n, k):
    spec = CodeSpec.hybrid(n, k)
    code = choose_code(spec)
    c = synth.build_add(n, k)
    assert c.input_width == 2 * (n + k)
    assert c.output_width == n + k + 1
    m = code.domain_size
    pairs = list(itertools.product(range(m), repeat=2))
    outputs = c.simulate([code.encode(i) + code.encode(j) for i, j in pairs])
    for (i, j), out in zip(pairs, outputs):
        s, ovf = out[:-1], out[-1]
        assert code.decode(s) == (i + j) % m
        assert ovf is (Trit.ONE if i + j >= m else Trit.ZERO)


@pytest.mark.parametrize("n, k", STABLE_ADDERS)
def test_build_add_matches_addition_function(n, k):
    spec = CodeSpec.hybrid(n, k)
    c = synth.build_add(n, k)
    width = 2 * (n + k)
    expected = TruthTable.from_function(width, n + k + 1, synth.addition_function(spec))
    assert TruthTable.from_netlist(c).rows == expected.rows


def test_build_add_repairs_non_codewords():
    spec = CodeSpec.hybrid(5, 3)
    x = W("01110 100")
    y = codes.encode(spec, 21)
    out = synth.build_add(5, 3).eval(x + y)
    assert out == codes.encode(spec, 68) + W("0")
    assert synth.mc_add_oracle(spec, x, y) == (codes.encode(spec, 68), Trit.ZERO)


def test_build_add_zero_is_neutral():
    spec = CodeSpec.hybrid(3, 2)
    code = choose_code(spec)
    c = synth.build_add(3, 2)
    for x in bits(5):
        out = c.eval(x + code.encode(0))
        assert code.decode(out[:-1]) == code.extended_decode(x)
        assert out[-1] is Trit.ZERO


@pytest.mark.parametrize("n, k", [(1, 1), (4, 1), (8, 1), (4, 3), (16, 3)])
def test_build_add_sizes_are_linear(n, k):
    stats = synth.build_add(n, k).stats()
    assert stats.size <= 80 * (n + k)


@pytest.mark.parametrize("k", [1, 3])
def test_build_add_growth(k):
    ns = [4, 8, 16, 32]
    stats = [synth.build_add(n, k).stats() for n in ns]
    sizes = [s.size for s in stats]
    # least-squares line through (n, size)
    mean_n = sum(ns) / len(ns)
    mean_s = sum(sizes) / len(sizes)
    slope = sum((n - mean_n) * (s - mean_s) for n, s in zip(ns, sizes)) / sum(
        (n - mean_n) ** 2 for n in ns
    )
    for n, s in zip(ns, sizes):
        assert abs(s - (mean_s + slope * (n - mean_n))) < 0.1 * s


def modular_adder(k):
    b = NetlistBuilder()
    w = synth.unary_width(k)
    sums, carry = modular_adder_nodes(b, b.inputs("a", w), b.inputs("b", w), k + 1)
    return b.build(sums + [carry])


@pytest.mark.parametrize("k", [1, 3])
@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_build_add_depth_is_stage_sum(n, k):
    stages = [
        synth.brgc_to_bin(n),
        synth.map_circuit(k),
        synth.un_to_bin(k),
        modular_adder(k),
        synth.prefix_adder(n),
        synth.bin_to_un(k),
        synth.bin_to_brgc(n),
    ]
    depths = [c.stats().depth for c in stages]
    assert max(depths) <= synth.build_add(n, k).stats().depth <= sum(depths)


@pytest.mark.parametrize(
    "x, y, s, ovf",
    [
        ("00101 1M0", "01101 011", "01000 00M", Trit.ZERO),
        ("01M10 M00", "00111 011", "11001 MM1", Trit.ZERO),
        ("00101 100", "01101 011", "01000 001", Trit.ZERO),
    ],
)
def test_mc_add_oracle(x, y, s, ovf):
    assert synth.mc_add_oracle(CodeSpec.hybrid(5, 3), W(x), W(y)) == (W(s), ovf)


def test_mc_add_oracle_on_stable_codewords():
    spec = CodeSpec.hybrid(5, 3)
    s, ovf = synth.mc_add_oracle(spec, codes.encode(spec, 25), codes.encode(spec, 37))
    assert s == codes.encode(spec, 62)
    assert ovf is Trit.ZERO


def test_mc_add_oracle_errors():
    spec = CodeSpec.hybrid(5, 3)
    with pytest.raises(util.WidthError):
        synth.mc_add_oracle(spec, W("0101"), W("01101 011"))
    with pytest.raises(util.BudgetExceededError):
        synth.mc_add_oracle(spec, W("MMMMM 000"), W("MMMMM 000"), max_meta=8)


@pytest.mark.parametrize("n, k", [(3, 2), (4, 3), (5, 3)])
def test_interval_addition_contract(n, k):
    spec = CodeSpec.hybrid(n, k)
    code = choose_code(spec)
    m = code.domain_size
    r = math.ceil(k / 2)
    for lo_x, lo_y in itertools.product(range(m), repeat=2):
        for p_x, p_y in itertools.product(range(r + 1), repeat=2):
            if p_x + p_y > k:
                continue
            hi_x, hi_y = lo_x + p_x, lo_y + p_y
            if hi_x + hi_y >= m:
                continue
            x = code.extended_codeword((lo_x, hi_x))
            y = code.extended_codeword((lo_y, hi_y))
            s, ovf = synth.mc_add_oracle(spec, x, y)
            assert ovf is Trit.ZERO
            # the sum is the extended codeword of the sum interval
            assert s == code.extended_codeword((lo_x + lo_y, hi_x + hi_y))


def test_adder_circuit():
    assert synth.adder_circuit("hybrid:3:1").name == "add_3_1"
    c = synth.adder_circuit(CodeSpec.binary(8), "ripple")
    assert c.input_width == 16 and c.output_width == 9
    with pytest.raises(util.UnsupportedError):
        synth.adder_circuit(CodeSpec.brgc(4))
    with pytest.raises(util.UnsupportedError):
        synth.adder_circuit(CodeSpec.hybrid(3, 1), "ripple")
    with pytest.raises(util.UsageError):
        synth.adder_circuit(CodeSpec.binary(4), "carry-save")


@pytest.mark.parametrize(
    "spec", [CodeSpec.binary(3), CodeSpec.brgc(3), CodeSpec.unary_up(3), CodeSpec.hybrid(2, 1)]
)
def test_addition_function(spec):
    code = choose_code(spec)
    f = synth.addition_function(spec)
    m = code.domain_size
    for i, j in itertools.product(range(m), repeat=2):
        out = f(code.encode(i) + code.encode(j))
        assert code.decode(out[:-1]) == (i + j) % m
        assert out[-1] is Trit.from_bit(i + j >= m)


def test_truth_tables():
    assert synth.mux_table().input_names == ("a", "b", "s")
    assert TruthTable.from_netlist(netlist.naive_mux()).rows == synth.mux_table().rows
    assert synth.xor_table(3).minterms(0) == [1, 2, 4, 7]
    assert synth.xor_table(2)(W("10")) == W("1")
    with pytest.raises(util.UsageError):
        TruthTable(2, 1, [0])
    with pytest.raises(util.BudgetExceededError):
        TruthTable.from_function(17, 1, lambda w: W("0"))


@pytest.mark.parametrize(
    "table, expected",
    [
        (synth.xor_table(2), ["01", "10"]),
        (TruthTable(2, 1, [0, 0, 0, 0]), []),
        (TruthTable(2, 1, [1, 1, 1, 1]), ["--"]),
        (synth.mux_table(), ["-11", "1-0", "11-"]),
    ],
)
def test_prime_implicants(table, expected):
    assert [str(c) for c in synth.prime_implicants(table)] == expected


def test_prime_implicant_literals():
    cubes = synth.prime_implicants(synth.mux_table())
    assert cubes[1].literals == ((1, 1), (3, 0))
    assert synth.Cube.from_mask(3, 0b101, 0b100) == cubes[1]


def test_prime_implicant_budgets():
    with pytest.raises(util.BudgetExceededError):
        synth.prime_implicants(synth.xor_table(4), max_implicants=4)
    with pytest.raises(util.BudgetExceededError):
        synth.prime_implicants(synth.xor_table(5), max_inputs=4)
    with pytest.raises(util.UsageError):
        synth.prime_implicants(synth.xor_table(2), output=1)


def test_mc_transform_of_mux():
    c = synth.mc_transform(synth.mux_table())
    assert c.inputs == ("a", "b", "s")
    assert c.eval(W("11M")) == W("1")
    assert c.eval(W("01M")) == W("M")
    assert netlist.mc_check(c, synth.mux_table(), 3).passed


@pytest.mark.parametrize(
    "f",
    [synth.mux_table(), synth.xor_table(2), synth.xor_table(3), synth.xor_table(4)]
    + [TruthTable.from_netlist(synth.un_to_bin(k)) for k in range(1, 5)],
)
def test_mc_transform_is_exact(f):
    c = synth.mc_transform(f)
    assert netlist.mc_check(c, f, f.width).passed


def test_mc_transform_of_hybrid_adder():
    spec = CodeSpec.hybrid(3, 1)
    c = synth.mc_transform(synth.build_add(3, 1))
    assert netlist.mc_check(c, synth.addition_function(spec), 8).passed
    x, y = W("001 M"), W("010 1")
    s, ovf = synth.mc_add_oracle(spec, x, y)
    assert c.eval(x + y) == s + make_word([ovf])


def test_mc_transform_on_stable_inputs():
    f = TruthTable.from_netlist(synth.bin_to_un(3))
    c = synth.mc_transform(f)
    for x in bits(3):
        assert c.eval(x) == f(x)


def test_mc_transform_budget():
    with pytest.raises(util.BudgetExceededError):
        synth.mc_transform(synth.xor_table(4), max_implicants=7)


def weakened(x, i):
    trits = list(x)
    trits[i] = Trit.META
    return make_word(trits)


@pytest.mark.parametrize(
    "c",
    [synth.build_add(3, 1), synth.map_circuit(4), synth.un_to_bin(4), netlist.naive_mux()],
    ids=lambda c: c.name,
)
def test_circuits_never_beat_the_closure(c):
    table = TruthTable.from_netlist(c)
    words = ternary_words(c.input_width)
    for x, y in zip(words, c.simulate(words)):
        # wherever the closure is M, the circuit is M as well
        assert information_leq(closure_eval(table, x), y)


@pytest.mark.parametrize(
    "c",
    [
        synth.ppc("XOR", 5),
        synth.ppc("AND", 5),
        synth.ppc("OR", 5, synth.RIGHT_TO_LEFT),
        synth.brgc_to_bin(5),
        synth.bin_to_brgc(5),
        synth.un_to_bin(4),
        synth.bin_to_un(4),
        synth.map_circuit(5),
        synth.prefix_adder(2),
        synth.ripple_adder(3),
        synth.build_add(3, 1),
        synth.mc_transform(synth.mux_table()),
    ],
    ids=lambda c: c.name,
)
def test_evaluation_is_monotone(c):
    words = ternary_words(c.input_width)
    outputs = dict(zip(words, c.simulate(words)))
    for x, y in outputs.items():
        for i, trit in enumerate(x):
            if trit is not Trit.META:
                assert information_leq(y, outputs[weakened(x, i)])
