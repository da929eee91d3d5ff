import math

import pytest

from mcadd import util, verify
from mcadd.codes import CodeSpec, Interval
from mcadd.kleene import TritWord, hamming_distance
from mcadd.verify import Property, TableCode


W = TritWord.parse
HYBRIDS = [(3, 1), (3, 2), (4, 3), (4, 4), (5, 3)]


@pytest.mark.parametrize("n", range(4, 9))
def test_binary_is_neither_preserving_nor_recoverable(n):
    spec = CodeSpec.binary(n)
    assert not verify.check_preserving(spec, 1).holds
    assert not verify.check_recoverable(spec, 1).holds


@pytest.mark.parametrize("n", range(4, 9))
def test_brgc_is_exactly_one_preserving_and_recoverable(n):
    spec = CodeSpec.brgc(n)
    assert verify.check_preserving(spec, 1).holds
    assert verify.check_recoverable(spec, 1).holds
    assert not verify.check_preserving(spec, 2).holds
    assert not verify.check_recoverable(spec, 2).holds


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("spec", [CodeSpec.unary_up, CodeSpec.unary_down])
def test_unary_codes_are_fully_preserving_and_recoverable(spec, n):
    report = verify.check_recoverable(spec(n), n)
    assert verify.check_preserving(spec(n), n).holds
    assert report.holds
    assert report.extension_holds


@pytest.mark.parametrize("n, k", HYBRIDS)
def test_hybrid_properties(n, k):
    spec = CodeSpec.hybrid(n, k)
    assert verify.check_preserving(spec, k).holds
    report = verify.check_recoverable(spec, math.ceil(k / 2))
    assert report.holds
    assert report.property is Property.RECOVERABLE
    assert report.extension_holds


def test_hybrid_4_3_is_two_recoverable():
    assert verify.check_recoverable(CodeSpec.hybrid(4, 3), 2).holds


def test_preserving_witness():
    report = verify.check_preserving(CodeSpec.brgc(4), 2)
    assert not report.holds
    # 0000 * 0001 * 0011 = 00MM also resolves to 0010, the codeword of 3
    assert report.witness == (Interval(0, 2), W("0010"))
    assert verify.witness_violates(CodeSpec.brgc(4), report)


@pytest.mark.parametrize("spec", [CodeSpec.brgc(4), CodeSpec.binary(4), CodeSpec.hybrid(3, 2)])
def test_recoverable_witness_violates_definition(spec):
    k = 2 if spec.family != "hybrid" else 3
    report = verify.check_recoverable(spec, k)
    assert not report.holds
    interval, _ = report.witness
    assert interval.imprecision <= k
    assert verify.witness_violates(spec, report)


def test_extension_not_checked_without_extended_decoder():
    report = verify.check_recoverable(CodeSpec.brgc(4), 1)
    assert report.holds
    assert report.extension_holds is None


def test_recoverable_implies_preserving():
    for n in range(1, 6):
        for k in range(0, n + 1):
            for spec in (CodeSpec.brgc(n), CodeSpec.unary_up(n)):
                if verify.check_recoverable(spec, k).holds:
                    assert verify.check_preserving(spec, k).holds


def test_m_count():
    assert verify.check_m_count(CodeSpec.unary_up(6), 6)
    assert verify.check_m_count(CodeSpec.hybrid(4, 4), 4)
    assert verify.check_m_count(CodeSpec.binary(3), 1)
    # 000 * 001 * 010 * 011 = 0MM has two M's for imprecision 3
    assert not verify.check_m_count(CodeSpec.binary(3), 3)


def test_table_code():
    code = TableCode([W("100"), W("010"), W("001")])
    assert code.extended_codeword(Interval(0, 2)) == W("MMM")
    assert code.decode(W("010")) == 1
    assert verify.check_m_count(code, 2)
    with pytest.raises(util.NotACodewordError):
        code.decode(W("111"))
    with pytest.raises(util.UsageError):
        TableCode([W("10"), W("10")])
    with pytest.raises(util.WidthError):
        TableCode([W("10"), W("100")])


@pytest.mark.parametrize(
    "spec, expected",
    [
        (CodeSpec.brgc(5), True),
        (CodeSpec.hybrid(4, 3), True),
        (CodeSpec.unary_down(5), True),
        (CodeSpec.binary(3), False),
    ],
)
def test_gray(spec, expected):
    assert verify.check_gray(spec) is expected


def test_brgc_is_cyclic_gray():
    assert verify.check_gray(CodeSpec.brgc(4), cyclic=True)
    assert not verify.check_gray(CodeSpec.unary_up(4), cyclic=True)


@pytest.mark.parametrize("n", range(1, 11))
def test_brgc_is_cyclic_gray_for_all_widths(n):
    assert verify.check_gray(CodeSpec.brgc(n), cyclic=True)


@pytest.mark.parametrize("n", range(1, 9))
def test_hybrid_is_gray(n):
    for k in range(1, min(4, n) + 1):
        assert verify.check_gray(CodeSpec.hybrid(n, k))


@pytest.mark.parametrize("n, k, expected", [(4, 1, 16), (3, 2, 6), (5, 0, 32)])
def test_max_domain(n, k, expected):
    assert verify.max_domain(n, k) == expected


def test_max_domain_rejects_k_above_n():
    with pytest.raises(util.UsageError):
        verify.max_domain(2, 3)


@pytest.mark.parametrize("n", range(1, 17))
def test_hybrid_meets_the_bound(n):
    for k in range(1, n + 1):
        assert CodeSpec.hybrid(n, k).domain_size == verify.max_domain(n + k, k)


def test_bound_search_confirms_bound():
    assert verify.exhaustive_bound_search(3, 2, 7)


@pytest.mark.parametrize("fast", [False, True])
def test_bound_search_finds_code_at_bound(fast):
    code = verify.find_recoverable_code(3, 2, 6, fast=fast)
    assert code is not None
    assert code.domain_size == 6
    assert code.word_length == 3
    assert verify.check_recoverable(code, 2).holds
    assert not verify.exhaustive_bound_search(3, 2, 6, fast=fast)


def test_bound_search_two_bit_gray_code():
    code = verify.find_recoverable_code(2, 1, 4)
    assert code is not None
    words = list(code.words)
    assert all(hamming_distance(a, b) == 1 for a, b in zip(words, words[1:]))


def test_bound_search_in_worker_processes():
    progress = []
    code = verify.find_recoverable_code(
        2, 1, 4, jobs=2, progress=lambda done, total: progress.append((done, total))
    )
    assert code is not None
    assert progress[-1] == (4, 4)


def test_bound_search_budget():
    with pytest.raises(util.BudgetExceededError) as e:
        verify.find_recoverable_code(3, 2, 7, budget=100)
    assert e.value.limit == 100


def test_resolution_budget():
    with pytest.raises(util.BudgetExceededError):
        verify.check_preserving(CodeSpec.unary_up(8), 8, max_meta=3)


def test_more_words_than_fit():
    assert verify.find_recoverable_code(2, 0, 5) is None
