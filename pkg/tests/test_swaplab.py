"""Slices, midsection statistics, the swap scan, and the parameter chain."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langlab.advice import leq_advice
from langlab.corpus import LANGUAGES, CorpusLanguage, is_l2, l2_members
from langlab.guards import CostGuardError
from langlab.swaplab import (
    Slice,
    SliceStats,
    SwapParams,
    SwapWitness,
    build_slice,
    ceil_log2,
    choose_params,
    density_condition,
    l2_bound_check,
    slice_stats,
    swap_scan,
)
from langlab.words import TrackedWord, Word

L2 = LANGUAGES["L2"]


def is_even_palindrome(w):
    return (
        len(w) >= 2
        and len(w) % 2 == 0
        and all(a in (0, 1) for a in w.letters)
        and w.letters == w.letters[::-1]
    )


EVEN_PALINDROMES = CorpusLanguage("even_pal", frozenset({0, 1}), is_even_palindrome, None)


def brute_counts(members, j):
    # independent recount of every (i, u) pair by nested loops
    counts = {}
    for w in members:
        n = len(w)
        for i in range(n - j + 1):
            key = (i, w.letters[i : i + j])
            counts[key] = counts.get(key, 0) + 1
    return counts


# -- slices ---------------------------------------------------------------------


def test_l2_slice_sizes():
    assert len(build_slice(L2, 8)) == 4
    assert len(build_slice(L2, 10)) == 0
    for n in (4, 8, 16, 24, 32):
        assert len(build_slice(L2, n)) == 2 ** (n // 4)


def test_brute_force_slice_of_palindromes():
    s = build_slice(EVEN_PALINDROMES, 4)
    assert [w.letters for w in s.members] == [
        (0, 0, 0, 0),
        (0, 1, 1, 0),
        (1, 0, 0, 1),
        (1, 1, 1, 1),
    ]


def test_brute_force_slice_cost_guard():
    big = CorpusLanguage("big", frozenset(range(10)), lambda w: True, None)
    with pytest.raises(CostGuardError):
        build_slice(big, 8)
    assert len(build_slice(EVEN_PALINDROMES, 4, scan_limit=1, force=True)) == 4


def test_slice_validation():
    with pytest.raises(ValueError):
        Slice(3, (Word.of(1, 2),))


def test_tracked_slice_members_carry_the_advice():
    s = build_slice(L2, 8, advice=leq_advice())
    assert len(s) == 4
    for w in s.members:
        tracked = TrackedWord.from_fused(w)
        assert tracked.bottom == leq_advice()(8)
        assert is_l2(tracked.top)


# -- statistics -----------------------------------------------------------------


def test_l2_stats_match_brute_recount_at_8():
    s = build_slice(L2, 8)
    for j in (1, 2):
        stats = slice_stats(s, j)
        assert {(i, u.letters): c for (i, u), c in stats.counts.items()} == brute_counts(
            s.members, j
        )


def test_l2_stats_shared_midsection():
    # the nestings of 11 and 12 share letters 4..5 = (3, 15)
    stats = slice_stats(build_slice(L2, 8), 2)
    assert stats.count(3, Word.of(3, 15)) == 2


def test_l2_stats_offset_zero_is_all_distinct():
    # the first two letters are the choice word itself, unique per member
    stats = slice_stats(build_slice(L2, 8), 2)
    for (i, _), c in stats.counts.items():
        if i == 0:
            assert c == 1


def test_partition_identity_on_l2_slices():
    for n in (4, 8, 12):
        s = build_slice(L2, n)
        for j in range(1, n + 1):
            assert slice_stats(s, j).partition_ok()


@settings(max_examples=60)
@given(
    st.integers(2, 6),
    st.sets(st.tuples(st.sampled_from((0, 1, 2)), st.sampled_from((0, 1, 2))), min_size=1),
    st.data(),
)
def test_partition_identity_on_arbitrary_slices(n, seeds, data):
    members = sorted({Word((a, b) * (n // 2) + (a,) * (n % 2)) for a, b in seeds})
    s = Slice(n, tuple(members))
    j = data.draw(st.integers(1, n))
    stats = slice_stats(s, j)
    assert stats.partition_ok()
    assert stats.size == len(members)


def test_stats_rejects_bad_j():
    s = build_slice(L2, 8)
    with pytest.raises(ValueError):
        slice_stats(s, 0)
    with pytest.raises(ValueError):
        slice_stats(s, 9)


# -- the pinning bound ------------------------------------------------------------


def test_bound_check_is_tight_at_8_2():
    report = l2_bound_check(8, 2)
    assert report.ok and report.bound == 2 and report.max_count == 2


def test_bound_check_16_4():
    report = l2_bound_check(16, 4)
    assert report.ok and report.bound == 4 and report.max_count <= 4


def test_bound_check_8_1():
    report = l2_bound_check(8, 1)
    assert report.ok and report.bound == 2 and report.max_count <= 2


def test_bound_check_against_independent_recount():
    for n in (8, 16):
        members = l2_members(n)
        for j in range(1, n // 4 + 1):
            counts = brute_counts(members, j)
            report = l2_bound_check(n, j)
            assert report.max_count == max(counts.values())
            assert all(c <= 2 ** (n // 4 - (j + 1) // 2) for c in counts.values())
            assert report.ok


def test_bound_check_rejects_bad_arguments():
    with pytest.raises(ValueError):
        l2_bound_check(10, 1)
    with pytest.raises(ValueError):
        l2_bound_check(8, 3)


# -- the swap scan ----------------------------------------------------------------


def test_palindrome_swap_witness_found():
    s = build_slice(EVEN_PALINDROMES, 4)
    witnesses = swap_scan(is_even_palindrome, s, (1, 4))
    target = [
        w
        for w in witnesses
        if (w.x, w.y, w.i, w.j) == (Word.of(0, 1, 1, 0), Word.of(1, 0, 0, 1), 1, 2)
    ]
    assert len(target) == 1
    assert target[0].swapped_x == Word.of(0, 0, 0, 0)
    assert target[0].swapped_y == Word.of(1, 1, 1, 1)
    assert not target[0].i_zero


def test_swap_witnesses_replay():
    s = build_slice(EVEN_PALINDROMES, 6)
    for w in swap_scan(is_even_palindrome, s, (1, 6)):
        assert is_even_palindrome(w.swapped_x) and is_even_palindrome(w.swapped_y)
        assert w.x[w.i : w.i + w.j] != w.y[w.i : w.i + w.j]


def test_swap_symmetry():
    s = build_slice(EVEN_PALINDROMES, 4)
    witnesses = swap_scan(is_even_palindrome, s, (1, 4))
    keys = {(w.x, w.y, w.i, w.j) for w in witnesses}
    assert {(y, x, i, j) for (x, y, i, j) in keys} == keys


def test_no_swap_on_l2_slices():
    for n in (8, 16):
        s = build_slice(L2, n)
        assert swap_scan(is_l2, s, (1, n // 4)) == []


def test_equal_midsections_yield_no_witness():
    s = Slice(2, (Word.of(0, 1), Word.of(0, 2)))
    assert swap_scan(lambda w: True, s, (1, 1), i_range=(0, 0)) == []


def test_swap_scan_respects_i_range_and_is_ordered():
    s = build_slice(EVEN_PALINDROMES, 4)
    witnesses = swap_scan(is_even_palindrome, s, (1, 4), i_range=(1, 2))
    assert witnesses
    assert all(1 <= w.i <= 2 for w in witnesses)
    keys = [(w.x, w.y, w.i, w.j) for w in witnesses]
    assert keys == sorted(keys, key=lambda k: (k[0], k[1], k[2], k[3]))


def test_swap_scan_cost_guard():
    s = build_slice(EVEN_PALINDROMES, 4)
    with pytest.raises(CostGuardError):
        swap_scan(is_even_palindrome, s, (1, 4), call_limit=10)
    assert swap_scan(is_even_palindrome, s, (1, 4), call_limit=10, force=True)


def test_swapping_never_touches_the_advice_track():
    h = leq_advice()
    s = build_slice(L2, 8, advice=h)
    for w in swap_scan(lambda w: True, s, (1, 2)):
        assert TrackedWord.from_fused(w.swapped_x).bottom == h(8)
        assert TrackedWord.from_fused(w.swapped_y).bottom == h(8)


def test_swap_witness_validation():
    with pytest.raises(ValueError):
        SwapWitness(
            i=0,
            j=1,
            x=Word.of(0, 1),
            y=Word.of(0, 2),
            swapped_x=Word.of(9, 1),
            swapped_y=Word.of(0, 2),
        )
    with pytest.raises(ValueError):
        SwapWitness(
            i=0,
            j=1,
            x=Word.of(0, 1),
            y=Word.of(0, 2),
            swapped_x=Word.of(0, 1),
            swapped_y=Word.of(0, 2),
        )


# -- the parameter chain ------------------------------------------------------------


def test_ceil_log2():
    assert [ceil_log2(v) for v in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    with pytest.raises(ValueError):
        ceil_log2(0)


def test_choose_params_m1():
    p = choose_params(1)
    assert (p.n, p.k, p.j0) == (288, 72, 36)
    assert p.k == 2 * p.j0


def test_growth_inequality_at_the_boundary():
    # independent big-integer evaluation on both sides of the crossover
    assert 2 ** (288 // 4) > (2 * 1 * 288 * 288) ** 4
    assert 2 ** (272 // 4) <= (2 * 1 * 272 * 272) ** 4


@pytest.mark.parametrize("m", range(1, 11))
def test_params_invariants_replay(m):
    p = choose_params(m)
    # reconstructing the value re-runs every validation check
    assert SwapParams(m=p.m, n=p.n, k=p.k, j0=p.j0) == p
    assert 2 ** (p.j0 // 2) >= 2 * m * p.n * p.n


@pytest.mark.parametrize(
    "kwargs",
    [
        {"m": 0, "n": 288, "k": 72, "j0": 36},
        {"m": 1, "n": 280, "k": 70, "j0": 36},
        {"m": 1, "n": 272, "k": 68, "j0": 36},
        {"m": 1, "n": 288, "k": 71, "j0": 36},
        {"m": 1, "n": 288, "k": 72, "j0": 34},
        {"m": 37, "n": 288, "k": 72, "j0": 36},
    ],
)
def test_invalid_params_are_rejected(kwargs):
    with pytest.raises(ValueError):
        SwapParams(**kwargs)


def _stats(n, j, size, counts):
    return SliceStats(n=n, j=j, size=size, counts=counts)


def test_density_condition_concentrated_slice_fails():
    p = choose_params(1)
    stats = _stats(p.n, p.j0, 100, {(0, Word.of(1) * p.j0): 100})
    assert not density_condition(stats, p)


def test_density_condition_scattered_slice_passes():
    p = choose_params(1)
    denominator = p.m * (p.k - p.j0 + 1) * (p.n - p.j0 + 1)
    size = denominator + 1
    counts = {(i, Word.of(1) * p.j0): 1 for i in range(p.n - p.j0 + 1)}
    assert density_condition(_stats(p.n, p.j0, size, counts), p)


def test_density_condition_requires_matching_j():
    p = choose_params(1)
    with pytest.raises(ValueError):
        density_condition(_stats(p.n, p.j0 - 2, 10, {}), p)


@pytest.mark.parametrize("m", range(1, 11))
def test_coarse_threshold_implies_the_fine_one(m):
    # |S|/(k m n) never exceeds |S|/(m (k - j0 + 1)(n - j0 + 1)) as rationals
    p = choose_params(m)
    size = 2 ** (p.n // 4)
    coarse = Fraction(size, p.k * p.m * p.n)
    fine = Fraction(size, p.m * (p.k - p.j0 + 1) * (p.n - p.j0 + 1))
    assert coarse <= fine
