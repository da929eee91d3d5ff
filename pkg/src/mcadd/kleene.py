"""mcadd: mcadd/kleene.py
Kleene three-valued logic: trits, words, basic gates, superposition,
resolution and the metastable closure of Boolean functions.
"""

import enum
import functools
import itertools

from .util import BudgetExceededError, DomainError, ParseError, UsageError, WidthError


MAX_META = 20


class Trit(enum.Enum):
    """One of the stable values 0 and 1 or the metastable value M."""

    ZERO = "0"
    ONE = "1"
    META = "M"

    def __str__(self):
        return self.value

    @property
    def is_stable(self):
        return self is not Trit.META

    @classmethod
    def from_char(cls, char):
        """Parse one trit; 'X' is accepted as an alias for 'M'."""
        if char in ("X", "x", "m"):
            return cls.META
        try:
            return cls(char)
        except ValueError:
            raise ParseError(f"invalid trit {char!r}") from None

    @classmethod
    def from_bit(cls, bit):
        return cls.ONE if bit else cls.ZERO


class Gate(enum.Enum):
    """Basic gate kinds of a circuit."""

    AND = "AND"
    OR = "OR"
    NOT = "NOT"

    @property
    def arity(self):
        return 1 if self is Gate.NOT else 2


def _and(a, b):
    if Trit.ZERO in (a, b):
        return Trit.ZERO
    if a is Trit.ONE and b is Trit.ONE:
        return Trit.ONE
    return Trit.META


def _or(a, b):
    if Trit.ONE in (a, b):
        return Trit.ONE
    if a is Trit.ZERO and b is Trit.ZERO:
        return Trit.ZERO
    return Trit.META


_NOT = {Trit.ZERO: Trit.ONE, Trit.ONE: Trit.ZERO, Trit.META: Trit.META}

_TABLES = {
    Gate.AND: {(a, b): _and(a, b) for a in Trit for b in Trit},
    Gate.OR: {(a, b): _or(a, b) for a in Trit for b in Trit},
    Gate.NOT: {(a,): _NOT[a] for a in Trit},
}


def gate_eval(kind, inputs):
    """Kleene semantics of a basic gate: the output is stable iff the
    stable inputs already determine it."""
    kind = Gate(kind)
    inputs = tuple(inputs)
    if len(inputs) != kind.arity:
        raise UsageError(
            f"{kind.value} takes {kind.arity} input(s), got {len(inputs)}"
        )
    return _TABLES[kind][inputs]


@functools.total_ordering
class TritWord:
    """Fixed-length sequence of trits. Position 1 is the leftmost trit and
    the most significant bit for positional codes. Python indexing via
    ``[]`` stays 0-based; ``at()`` takes 1-based positions."""

    __slots__ = ("_trits",)

    def __init__(self, trits=()):
        trits = tuple(trits)
        for trit in trits:
            if not isinstance(trit, Trit):
                raise TypeError(f"not a trit: {trit!r}")
        self._trits = trits

    @classmethod
    def parse(cls, text):
        """Parse a word, ignoring whitespace."""
        word = make_word(Trit.from_char(c) for c in text if not c.isspace())
        if not isinstance(word, cls):
            raise DomainError(f"word {word} is not stable")
        return word

    @classmethod
    def from_int(cls, value, width):
        """Binary representation of ``value`` on ``width`` bits, MSB first."""
        if not 0 <= value < 1 << width:
            raise DomainError(f"{value} doesn't fit into {width} bit(s)")
        return BitWord(Trit.from_bit(value >> (width - 1 - i) & 1) for i in range(width))

    @classmethod
    def from_bits(cls, bits):
        return BitWord(Trit.from_bit(b) for b in bits)

    @classmethod
    def from_mask(cls, meta, value, width):
        """Word of ``width`` trits that is M where ``meta`` has a one bit
        and follows ``value`` elsewhere, MSB first."""
        trits = []
        for shift in range(width - 1, -1, -1):
            if meta >> shift & 1:
                trits.append(Trit.META)
            else:
                trits.append(Trit.from_bit(value >> shift & 1))
        return make_word(trits)

    @property
    def trits(self):
        return self._trits

    def __len__(self):
        return len(self._trits)

    def __iter__(self):
        return iter(self._trits)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return make_word(self._trits[index])
        return self._trits[index]

    def at(self, position):
        """Trit at 1-based ``position``."""
        if not 1 <= position <= len(self):
            raise UsageError(f"position {position} outside 1..{len(self)}")
        return self._trits[position - 1]

    def __eq__(self, other):
        if not isinstance(other, TritWord):
            return NotImplemented
        return self._trits == other._trits

    def __lt__(self, other):
        if not isinstance(other, TritWord):
            return NotImplemented
        # '0' < '1' < 'M' character-wise
        return str(self) < str(other)

    def __hash__(self):
        return hash(self._trits)

    def __add__(self, other):
        if not isinstance(other, TritWord):
            return NotImplemented
        return make_word(self._trits + other._trits)

    def __str__(self):
        return "".join(t.value for t in self._trits)

    def __repr__(self):
        return f"{type(self).__name__}('{self}')"

    def to_string(self, meta="M"):
        return "".join(meta if t is Trit.META else t.value for t in self._trits)

    @property
    def meta_count(self):
        return sum(1 for t in self._trits if t is Trit.META)

    @property
    def is_stable(self):
        return Trit.META not in self._trits

    def bits(self):
        """Tuple of 0/1 integers; the word must be stable."""
        if not self.is_stable:
            raise DomainError(f"word {self} is not stable")
        return tuple(1 if t is Trit.ONE else 0 for t in self._trits)

    def to_int(self):
        value = 0
        for bit in self.bits():
            value = value << 1 | bit
        return value

    def complement(self):
        return make_word(_NOT[t] for t in self._trits)


class BitWord(TritWord):
    """A word without metastable trits."""

    __slots__ = ()

    def __init__(self, trits=()):
        super().__init__(trits)
        if Trit.META in self._trits:
            raise DomainError(f"word {self} is not stable")


def make_word(trits):
    """Word from trits; stable words come back as ``BitWord``."""
    trits = tuple(trits)
    if Trit.META in trits:
        return TritWord(trits)
    return BitWord(trits)


def _check_widths(x, y):
    if len(x) != len(y):
        raise WidthError(f"length mismatch: {len(x)} vs {len(y)}")


def superpose(x, y):
    """Position-wise merge: equal trits pass, unequal trits become M."""
    _check_widths(x, y)
    return make_word(a if a is b else Trit.META for a, b in zip(x, y))


def superpose_all(xs):
    xs = list(xs)
    if not xs:
        raise UsageError("superposition of an empty set of words")
    return functools.reduce(superpose, xs)


def resolve(x, max_meta=MAX_META):
    """All stable words agreeing with ``x`` on its stable positions, in
    lexicographic order."""
    positions = [i for i, t in enumerate(x) if t is Trit.META]
    if len(positions) > max_meta:
        raise BudgetExceededError(
            f"resolving {len(positions)} metastable trits of {x}", max_meta
        )
    trits = list(x)
    words = []
    for choice in itertools.product((Trit.ZERO, Trit.ONE), repeat=len(positions)):
        for position, trit in zip(positions, choice):
            trits[position] = trit
        words.append(BitWord(trits))
    return words


def closure_eval(f, x, max_meta=MAX_META):
    """Metastable closure of the Boolean function ``f`` at ``x``: the
    superposition of ``f`` over every resolution of ``x``."""
    return superpose_all(f(y) for y in resolve(x, max_meta))


def hamming_distance(x, y):
    _check_widths(x, y)
    return sum(1 for a, b in zip(x.bits(), y.bits()) if a != b)


def information_leq(x, y):
    """True iff ``y`` is ``x`` with some trits replaced by M."""
    _check_widths(x, y)
    return all(a is b or b is Trit.META for a, b in zip(x, y))
