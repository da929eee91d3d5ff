"""mcadd: mcadd/codes/common.py
Common functionality among code families.
"""

import dataclasses
import fractions
import math

from ..kleene import MAX_META, TritWord, resolve, superpose_all
from .. import util


FAMILIES = ("binary", "unary-up", "unary-down", "brgc", "hybrid")


@dataclasses.dataclass(frozen=True)
class Interval:
    """Closed integer interval <lo, hi>."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo:
            raise util.DomainError(f"invalid interval <{self.lo},{self.hi}>")

    @property
    def imprecision(self):
        return self.hi - self.lo

    @property
    def size(self):
        return self.hi - self.lo + 1

    def __contains__(self, value):
        return self.lo <= value <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __str__(self):
        return f"<{self.lo},{self.hi}>"

    def intersect(self, other):
        """Intersection with ``other`` or ``None`` if they are disjoint."""
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)


@dataclasses.dataclass(frozen=True)
class CodeSpec:
    """Selects a code family and its parameters."""

    family: str
    n: int
    k: int = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise util.UsageError(
                f"unknown code family {self.family!r}, expected one of {', '.join(FAMILIES)}"
            )
        if self.n < 1:
            raise util.UsageError(f"{self.family} needs n >= 1, got {self.n}")
        if self.family == "hybrid":
            if self.k is None or self.k < 1:
                raise util.UsageError("hybrid needs k >= 1")
            if self.n < self.k:
                raise util.UsageError(f"hybrid needs n >= k, got n={self.n} k={self.k}")
        elif self.k is not None:
            raise util.UsageError(f"{self.family} takes no k")

    @classmethod
    def binary(cls, n):
        return cls("binary", n)

    @classmethod
    def unary_up(cls, n):
        return cls("unary-up", n)

    @classmethod
    def unary_down(cls, n):
        return cls("unary-down", n)

    @classmethod
    def brgc(cls, n):
        return cls("brgc", n)

    @classmethod
    def hybrid(cls, n, k):
        return cls("hybrid", n, k)

    @classmethod
    def parse(cls, text):
        """Parses ``family:n`` or ``hybrid:n:k``."""
        family, *numbers = text.strip().split(":")
        try:
            numbers = [int(x) for x in numbers]
        except ValueError:
            raise util.ParseError(f"invalid code specification {text!r}") from None
        if len(numbers) not in (1, 2):
            raise util.ParseError(f"invalid code specification {text!r}")
        return cls(family, *numbers)

    @property
    def word_length(self):
        if self.family == "hybrid":
            return self.n + self.k
        return self.n

    @property
    def domain_size(self):
        if self.family in ("unary-up", "unary-down"):
            return self.n + 1
        if self.family == "hybrid":
            return 2**self.n * (self.k + 1)
        return 2**self.n

    def __str__(self):
        if self.k is None:
            return f"{self.family}({self.n})"
        return f"{self.family}({self.n},{self.k})"


def parity(w):
    """Number of ones in the stable word ``w`` modulo 2."""
    return sum(w.bits()) % 2


class Code:
    """Generic structure of a code: an injective map from [M] to stable
    words of a fixed length."""

    family = None

    def __init__(self, spec):
        self.spec = spec
        self.n = spec.n
        self.k = spec.k
        self.word_length = spec.word_length
        self.domain_size = spec.domain_size

    def __repr__(self):
        return f"({type(self).__name__}) {self.spec}"

    def encode(self, i):
        """Codeword of the integer ``i``."""
        if not 0 <= i < self.domain_size:
            raise util.DomainError(
                f"{i} outside the domain [0, {self.domain_size}) of {self.spec}"
            )
        return self._encode(i)

    def decode(self, w):
        """Integer encoded by the codeword ``w``."""
        self._check_width(w)
        value = self._decode(w) if w.is_stable else None
        if value is None:
            raise util.NotACodewordError(f"{w} is not a codeword of {self.spec}")
        return value

    def is_codeword(self, w):
        if len(w) != self.word_length or not w.is_stable:
            return False
        return self._decode(w) is not None

    def extended_codeword(self, interval):
        """Superposition of the codewords of all values in ``interval``."""
        if not isinstance(interval, Interval):
            interval = Interval(*interval)
        if interval.hi >= self.domain_size:
            raise util.DomainError(
                f"interval {interval} outside the domain [0, {self.domain_size}) of {self.spec}"
            )
        return superpose_all(self._encode(i) for i in interval)

    def extended_decode(self, w):
        """Total decoder on all stable words of the word length, agreeing
        with ``decode`` on codewords."""
        self._check_width(w)
        if not w.is_stable:
            raise util.DomainError(f"word {w} is not stable")
        return self._extended_decode(w)

    def value_range(self, x, max_meta=MAX_META):
        """Values whose codewords lie in the resolution of ``x``."""
        self._check_width(x)
        values = (self._decode(w) for w in resolve(x, max_meta))
        return sorted(v for v in values if v is not None)

    def redundancy(self):
        """Word length over log2 of the domain size; exact when the
        logarithm is integral."""
        m = self.domain_size
        if m & (m - 1) == 0:
            return fractions.Fraction(self.word_length, m.bit_length() - 1)
        return self.word_length / math.log2(m)

    def rate(self):
        redundancy = self.redundancy()
        if isinstance(redundancy, fractions.Fraction):
            return 1 / redundancy
        return 1.0 / redundancy

    def format_word(self, w, meta="M"):
        return w.to_string(meta)

    def parse_word(self, text):
        """Parses a ternary word of this code's length."""
        w = TritWord.parse(text)
        self._check_width(w)
        return w

    def _check_width(self, w):
        if len(w) != self.word_length:
            raise util.WidthError(
                f"{self.spec} words have length {self.word_length}, got {len(w)} ({w})"
            )

    # The following methods are implemented by the subclasses.

    def _encode(self, i):
        """Should return the codeword of ``i`` as a ``BitWord``. ``i`` is
        already checked to lie in the domain."""
        raise NotImplementedError()

    def _decode(self, w):
        """Should return the value encoded by the stable word ``w`` of
        correct length, or ``None`` if ``w`` is no codeword."""
        raise NotImplementedError()

    def _extended_decode(self, w):
        """Should return the value the recoverable extension assigns to
        the stable word ``w``. Families without one keep this default."""
        raise util.UnsupportedError(f"no recoverable extension defined for {self.spec}")
