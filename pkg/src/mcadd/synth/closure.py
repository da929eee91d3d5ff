"""mcadd: mcadd/synth/closure.py
Exact metastable-closure synthesis. Every output bit becomes the OR of
the AND terms of all its prime implicants:

- if the stable inputs fully match some prime implicant, that term is 1;
- if the closure is 0, every resolution misses every implicant, so each
  term sees a stable 0 literal and evaluates to 0;
- if the closure is M, the resolutions that make the output 1 each lie in
  some prime implicant, and the cube spanned by x is covered by none of
  them completely, so some term is M and none is 1.

The resulting circuit equals the closure on every ternary input; its size
is exponential in the worst case.
"""

import collections
import dataclasses

from ..kleene import BitWord
from ..netlist import NetlistBuilder
from ..rich_logger import logger
from .. import util


MAX_INPUTS = 16
MAX_IMPLICANTS = 10000


@dataclasses.dataclass(frozen=True)
class Cube:
    """Partial assignment of input positions (1-based) to bits."""

    width: int
    literals: tuple

    def __post_init__(self):
        for position, bit in self.literals:
            if not 1 <= position <= self.width or bit not in (0, 1):
                raise util.UsageError(f"invalid literal x{position}={bit}")

    @classmethod
    def from_mask(cls, width, mask, value):
        literals = tuple(
            (position, value >> (width - position) & 1)
            for position in range(1, width + 1)
            if mask >> (width - position) & 1
        )
        return cls(width, literals)

    @property
    def pattern(self):
        """Text form such as ``1-0``: position i shows its bit or '-'."""
        chars = ["-"] * self.width
        for position, bit in self.literals:
            chars[position - 1] = str(bit)
        return "".join(chars)

    def __str__(self):
        return self.pattern


class TruthTable:
    """Boolean function on ``width`` inputs with ``output_width`` outputs.
    Row r holds the outputs (first output most significant) on the input
    whose binary value is r."""

    def __init__(self, width, output_width, rows, input_names=None, name="table"):
        rows = tuple(rows)
        if len(rows) != 1 << width:
            raise util.UsageError(f"{1 << width} rows expected, got {len(rows)}")
        self.width = width
        self.output_width = output_width
        self.rows = rows
        self.name = name
        if input_names is None:
            input_names = [f"x{i}" for i in range(1, width + 1)]
        self.input_names = tuple(input_names)

    def __repr__(self):
        return f"(TruthTable) {self.name}: {self.width} -> {self.output_width}"

    def __call__(self, word):
        return BitWord.from_int(self.rows[word.to_int()], self.output_width)

    @classmethod
    def from_function(cls, width, output_width, f, max_inputs=MAX_INPUTS, **kwargs):
        _check_width(width, max_inputs)
        rows = [f(BitWord.from_int(r, width)).to_int() for r in range(1 << width)]
        return cls(width, output_width, rows, **kwargs)

    @classmethod
    def from_netlist(cls, c, max_inputs=MAX_INPUTS):
        """Boolean restriction of a netlist, by bit-parallel simulation."""
        _check_width(c.input_width, max_inputs)
        count = 1 << c.input_width
        rows = [0] * count
        for j, column in enumerate(c.boolean_columns()):
            shift = c.output_width - 1 - j
            bits = format(column, f"0{count}b")[::-1]
            for r, char in enumerate(bits):
                if char == "1":
                    rows[r] |= 1 << shift
        return cls(c.input_width, c.output_width, rows, c.inputs, c.name)

    def minterms(self, output):
        shift = self.output_width - 1 - output
        return [r for r, row in enumerate(self.rows) if row >> shift & 1]


def _check_width(width, max_inputs):
    if width > max_inputs:
        raise util.BudgetExceededError(f"truth table over {width} inputs", max_inputs)


def mux_table():
    """MUX(a, b, s): a if s is 0, b if s is 1."""
    return TruthTable.from_function(
        3,
        1,
        lambda w: BitWord.from_bits([w.bits()[1] if w.bits()[2] else w.bits()[0]]),
        input_names=("a", "b", "s"),
        name="mux",
    )


def xor_table(n):
    """Parity of n inputs."""
    return TruthTable.from_function(
        n, 1, lambda w: BitWord.from_bits([sum(w.bits()) % 2]), name=f"xor{n}"
    )


def prime_implicants(
    table, output=0, max_inputs=MAX_INPUTS, max_implicants=MAX_IMPLICANTS
):
    """All prime implicants of one output bit, by merging cubes that
    differ in a single literal until nothing merges, sorted by pattern."""
    _check_width(table.width, max_inputs)
    if not 0 <= output < table.output_width:
        raise util.UsageError(f"output {output} outside 0..{table.output_width - 1}")
    full = (1 << table.width) - 1
    # cubes are (mask of fixed positions, value on them)
    cubes = {(full, r) for r in table.minterms(output)}
    primes = set()
    while cubes:
        if len(cubes) > max_implicants:
            raise util.BudgetExceededError(
                f"prime implicant enumeration reached {len(cubes)} cubes", max_implicants
            )
        by_mask = collections.defaultdict(set)
        for mask, value in cubes:
            by_mask[mask].add(value)
        merged = set()
        used = set()
        for mask, values in by_mask.items():
            bits = [1 << i for i in range(table.width) if mask >> i & 1]
            for value in values:
                for bit in bits:
                    if not value & bit and value | bit in values:
                        merged.add((mask & ~bit, value))
                        used.add((mask, value))
                        used.add((mask, value | bit))
        primes |= cubes - used
        cubes = merged
    result = sorted(
        (Cube.from_mask(table.width, mask, value) for mask, value in primes),
        key=lambda cube: cube.pattern,
    )
    logger.debug("%r output %d: %d prime implicants", table, output, len(result))
    return result


def mc_transform(f, max_inputs=MAX_INPUTS, max_implicants=MAX_IMPLICANTS):
    """Netlist computing the metastable closure of ``f`` (a ``TruthTable``
    or a ``Netlist`` taken as its Boolean restriction) on all inputs."""
    table = f if isinstance(f, TruthTable) else TruthTable.from_netlist(f, max_inputs)
    b = NetlistBuilder(f"mc_{table.name}")
    xs = [b.input(name) for name in table.input_names]
    negated = {}

    def literal(position, bit):
        node = xs[position - 1]
        if bit:
            return node
        if node not in negated:
            negated[node] = b.not_(node)
        return negated[node]

    outputs = []
    total = 0
    for output in range(table.output_width):
        cubes = prime_implicants(table, output, max_inputs, max_implicants)
        total += len(cubes)
        if total > max_implicants:
            raise util.BudgetExceededError(
                f"closure synthesis needs {total} implicants", max_implicants
            )
        terms = [b.and_all(literal(p, bit) for p, bit in cube.literals) for cube in cubes]
        outputs.append(b.or_all(terms))
    return b.build(outputs)


__all__ = [
    "MAX_IMPLICANTS",
    "MAX_INPUTS",
    "Cube",
    "TruthTable",
    "mc_transform",
    "mux_table",
    "prime_implicants",
    "xor_table",
]
