"""mcadd: mcadd/verify.py
Brute-force oracles for precision preservation and recoverability of
codes, the minimum M-count, the rate bound and an exhaustive search for
codes meeting it.

Words are handled as integers internally: bit ``n - position`` holds the
trit at 1-based ``position``, and an extended codeword is a pair
(metastable mask, stable value).
"""

import concurrent.futures
import dataclasses
import enum
import math

from . import codes, util
from .codes import Interval
from .kleene import MAX_META, BitWord, hamming_distance, superpose_all
from .rich_logger import logger


MAX_CANDIDATES = 10**8


class Property(enum.Enum):
    PRESERVING = "preserving"
    RECOVERABLE = "recoverable"


@dataclasses.dataclass(frozen=True)
class PropertyReport:
    """Outcome of a property check. ``witness`` is an (Interval, BitWord)
    pair whenever ``holds`` is false. ``extension_holds`` tells whether the
    family's own extended decoder satisfies recoverability, ``None`` if
    the family has none or it wasn't checked."""

    property: Property
    k: int
    holds: bool
    witness: tuple = None
    extension_holds: bool = None


class TableCode:
    """Ad-hoc injective code given by the list of its codewords."""

    def __init__(self, words):
        words = tuple(words)
        if not words:
            raise util.UsageError("a code needs at least one codeword")
        if len({len(w) for w in words}) != 1:
            raise util.WidthError("codewords of different lengths")
        if not all(w.is_stable for w in words):
            raise util.DomainError("codewords must be stable")
        if len(set(words)) != len(words):
            raise util.UsageError("codewords must be distinct")
        self.words = words
        self.word_length = len(words[0])
        self.domain_size = len(words)
        self._index = {w: i for i, w in enumerate(words)}

    def __repr__(self):
        return f"(TableCode) {' '.join(str(w) for w in self.words)}"

    def encode(self, i):
        if not 0 <= i < self.domain_size:
            raise util.DomainError(f"{i} outside the domain [0, {self.domain_size})")
        return self.words[i]

    def decode(self, w):
        try:
            return self._index[w]
        except KeyError:
            raise util.NotACodewordError(f"{w} is not a codeword") from None

    def is_codeword(self, w):
        return w in self._index

    def extended_codeword(self, interval):
        if not isinstance(interval, Interval):
            interval = Interval(*interval)
        return superpose_all(self.encode(i) for i in interval)

    def format_word(self, w, meta="M"):
        return w.to_string(meta)


def _as_code(spec):
    if isinstance(spec, (codes.Code, TableCode)):
        return spec
    return codes.choose_code(spec)


def _int_words(code):
    return [code.encode(i).to_int() for i in range(code.domain_size)]


def _scan(words, k):
    """Extended codewords of all intervals with imprecision <= ``k``,
    ordered by (lo, hi)."""
    for lo in range(len(words)):
        meta = 0
        for hi in range(lo, min(lo + k, len(words) - 1) + 1):
            meta |= words[lo] ^ words[hi]
            yield lo, hi, meta, words[lo] & ~meta


def _resolutions(meta, value, max_meta):
    """Stable words matching (meta, value), in increasing order."""
    bits = [1 << i for i in range(meta.bit_length()) if meta >> i & 1]
    if len(bits) > max_meta:
        raise util.BudgetExceededError(
            f"resolving {len(bits)} metastable trits", max_meta
        )
    for choice in range(1 << len(bits)):
        word = value
        for j, bit in enumerate(bits):
            if choice >> j & 1:
                word |= bit
        yield word


def check_preserving(spec, k, max_meta=MAX_META):
    """Checks that resolving any extended codeword of imprecision <= ``k``
    reveals no codeword from outside its interval."""
    code = _as_code(spec)
    words = _int_words(code)
    index = {w: i for i, w in enumerate(words)}
    logger.debug("Checking %r for %d-preservation", code, k)
    for lo, hi, meta, value in _scan(words, k):
        for r in _resolutions(meta, value, max_meta):
            v = index.get(r)
            if v is not None and not lo <= v <= hi:
                witness = (Interval(lo, hi), BitWord.from_int(r, code.word_length))
                return PropertyReport(Property.PRESERVING, k, False, witness)
    return PropertyReport(Property.PRESERVING, k, True)


def _first_conflict(words, k, max_meta):
    """Intersects, per stable word, all intervals whose extended codeword
    resolves to it. Returns the (lo, hi, word) at which an intersection
    first becomes empty, or ``None``."""
    constraints = {}
    last = len(words) - 1
    for lo, hi, meta, value in _scan(words, k):
        for r in _resolutions(meta, value, max_meta):
            r_lo, r_hi = constraints.get(r, (0, last))
            r_lo, r_hi = max(r_lo, lo), min(r_hi, hi)
            if r_lo > r_hi:
                return lo, hi, r
            constraints[r] = (r_lo, r_hi)
    return None


def _extension_holds(code, k, words, max_meta):
    try:
        code.extended_decode(code.encode(0))
    except (util.UnsupportedError, AttributeError):
        return None
    for lo, hi, meta, value in _scan(words, k):
        for r in _resolutions(meta, value, max_meta):
            w = BitWord.from_int(r, code.word_length)
            if not lo <= code.extended_decode(w) <= hi:
                logger.debug("Extended decoder maps %s outside <%d,%d>", w, lo, hi)
                return False
    return True


def check_recoverable(spec, k, max_meta=MAX_META):
    """Decides whether some total extension of the decoder maps every
    resolution of every extended codeword of imprecision <= ``k`` back into
    its interval. Each stable word is constrained independently and
    integer intervals are closed under intersection, so this holds iff no
    word's constraint intersection is empty."""
    code = _as_code(spec)
    words = _int_words(code)
    logger.debug("Checking %r for %d-recoverability", code, k)
    conflict = _first_conflict(words, k, max_meta)
    if conflict is not None:
        lo, hi, r = conflict
        witness = (Interval(lo, hi), BitWord.from_int(r, code.word_length))
        return PropertyReport(Property.RECOVERABLE, k, False, witness)
    extension = _extension_holds(code, k, words, max_meta)
    return PropertyReport(Property.RECOVERABLE, k, True, extension_holds=extension)


def witness_violates(spec, report, max_meta=MAX_META):
    """Re-checks the witness of a failed report against the definition."""
    code = _as_code(spec)
    interval, w = report.witness
    words = _int_words(code)
    r = w.to_int()
    meta = 0
    for i in interval:
        meta |= words[interval.lo] ^ words[i]
    if r not in _resolutions(meta, words[interval.lo] & ~meta, max_meta):
        return False
    if report.property is Property.PRESERVING:
        return code.is_codeword(w) and code.decode(w) not in interval
    lo, hi = 0, len(words) - 1
    for j_lo, j_hi, j_meta, j_value in _scan(words, report.k):
        if r in _resolutions(j_meta, j_value, max_meta):
            lo, hi = max(lo, j_lo), min(hi, j_hi)
    return lo > hi


def check_m_count(spec, k):
    """True iff every extended codeword of imprecision p <= ``k`` has at
    least p metastable trits."""
    code = _as_code(spec)
    for lo, hi, meta, _ in _scan(_int_words(code), k):
        if bin(meta).count("1") < hi - lo:
            logger.debug("<%d,%d> of %r has too few M's", lo, hi, code)
            return False
    return True


def check_gray(spec, cyclic=False):
    """True iff consecutive codewords differ in exactly one bit."""
    code = _as_code(spec)
    words = [code.encode(i) for i in range(code.domain_size)]
    pairs = list(zip(words, words[1:]))
    if cyclic:
        pairs.append((words[-1], words[0]))
    return all(hamming_distance(a, b) == 1 for a, b in pairs)


def max_domain(n, k):
    """Largest domain of a k-recoverable code with n-bit words."""
    if not 0 <= k <= n:
        raise util.UsageError(f"need 0 <= k <= n, got n={n} k={k}")
    return 2 ** (n - k) * (k + 1)


class _Search:
    """Backtracking over injective maps [M] -> B^n. A partial map is cut as
    soon as the intervals it fixes leave some word with an empty
    constraint intersection; more values only add constraints."""

    def __init__(self, n, k, m, budget):
        self.n = n
        self.k = k
        self.m = m
        self.budget = budget
        self.words = []
        self.used = set()
        self.constraints = {}
        self.trail = []
        self.evaluated = 0

    def assign(self, word):
        """Appends ``word`` as the next codeword; returns False on a conflict."""
        v = len(self.words)
        self.words.append(word)
        self.used.add(word)
        meta = 0
        for lo in range(v, max(v - self.k, 0) - 1, -1):
            meta |= self.words[lo] ^ word
            for r in _resolutions(meta, word & ~meta, self.n):
                old = self.constraints.get(r)
                r_lo, r_hi = old or (0, self.m - 1)
                r_lo, r_hi = max(r_lo, lo), min(r_hi, v)
                if r_lo > r_hi:
                    return False
                if (r_lo, r_hi) != old:
                    self.trail.append((r, old))
                    self.constraints[r] = (r_lo, r_hi)
        return True

    def unassign(self, mark):
        while len(self.trail) > mark:
            r, old = self.trail.pop()
            if old is None:
                del self.constraints[r]
            else:
                self.constraints[r] = old
        self.used.discard(self.words.pop())

    def extend(self):
        if len(self.words) == self.m:
            return True
        for word in range(1 << self.n):
            if word in self.used:
                continue
            self.evaluated += 1
            if self.evaluated > self.budget:
                raise util.BudgetExceededError(
                    "bound search candidate evaluations", self.budget
                )
            mark = len(self.trail)
            if self.assign(word) and self.extend():
                return True
            self.unassign(mark)
        return False


def _search_branch(n, k, m, budget, first):
    """Searches all maps with gamma(0) = ``first``; module level so that
    it can be sent to worker processes."""
    search = _Search(n, k, m, budget)
    search.evaluated = 1
    found = search.assign(first) and search.extend()
    return (list(search.words) if found else None), search.evaluated


def find_recoverable_code(
    n, k, m, budget=MAX_CANDIDATES, fast=False, jobs=1, progress=None
):
    """First (in lexicographic order of the word sequence) ``k``-recoverable
    code with ``m`` codewords of ``n`` bits, or ``None``. With ``fast`` the
    first codeword is fixed to all zeros: XOR-translating every codeword
    by a constant preserves superposition and resolution. ``progress`` is
    called with (branches done, branches total)."""
    if m < 1:
        raise util.UsageError(f"need at least one codeword, got {m}")
    if m > 2**n:
        return None
    firsts = [0] if fast else list(range(2**n))
    candidates = math.perm(2**n, m) // (2**n // len(firsts))
    if candidates > budget:
        raise util.BudgetExceededError(
            f"{candidates} candidate maps for n={n} m={m}", budget
        )
    logger.debug(
        "Searching %d-bit %d-recoverable codes with %d values (%d branches)",
        n,
        k,
        m,
        len(firsts),
    )
    args = [(n, k, m, budget, first) for first in firsts]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_search_branch, *a) for a in args]
            results = []
            for done, future in enumerate(futures, 1):
                results.append(future.result())
                if progress:
                    progress(done, len(futures))
    else:
        results = []
        for done, a in enumerate(args, 1):
            results.append(_search_branch(*a))
            if progress:
                progress(done, len(args))
            if results[-1][0] is not None:
                break
    logger.debug("Evaluated %d candidates", sum(e for _, e in results))
    for words, _ in results:
        if words is not None:
            return TableCode(BitWord.from_int(w, n) for w in words)
    return None


def exhaustive_bound_search(
    n, k, m, budget=MAX_CANDIDATES, fast=False, jobs=1, progress=None
):
    """True iff no injective code [m] -> B^n is ``k``-recoverable."""
    return find_recoverable_code(n, k, m, budget, fast, jobs, progress) is None
