"""Slices of a language at one length, midsection occurrence statistics,
the swap scan, and the exact integer parameter chain that feeds it.

A slice is any set of equal-length words (optionally fused with one advice
word).  For a slice S, ``counts[i, u]`` is the number of members whose
length-j factor starting after position i equals u; offsets are 0-based,
and the scan flags offset-0 results so runs that require a positive offset
can drop them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .guards import check_budget
from .words import Word, zip_tracks
from . import corpus


def ceil_log2(v: int) -> int:
    """Smallest e with 2^e >= v, via bit length (exact for any size)."""
    if v < 1:
        raise ValueError("ceil_log2 needs v >= 1")
    return (v - 1).bit_length()


@dataclass(frozen=True)
class Slice:
    """All recorded members of some language at one fixed length."""

    n: int
    members: tuple[Word, ...]
    origin: str = ""

    def __post_init__(self) -> None:
        canon = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", canon)
        for w in canon:
            if len(w) != self.n:
                raise ValueError(f"slice member {w!r} does not have length {self.n}")

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SliceStats:
    """Occurrence counts of every midsection of one length across a slice."""

    n: int
    j: int
    size: int
    counts: dict[tuple[int, Word], int]

    def count(self, i: int, u: Word) -> int:
        return self.counts.get((i, u), 0)

    def max_entry(self) -> Optional[tuple[int, Word, int]]:
        """The largest count, ties broken towards the smallest (i, u)."""
        if not self.counts:
            return None
        (i, u), c = min(self.counts.items(), key=lambda kv: (-kv[1], kv[0][0], kv[0][1]))
        return i, u, c

    def partition_ok(self) -> bool:
        """At every offset the counts must add up to the slice size."""
        for i in range(self.n - self.j + 1):
            if sum(c for (k, _), c in self.counts.items() if k == i) != self.size:
                return False
        return True


def build_slice(
    language,
    n: int,
    advice=None,
    *,
    force: bool = False,
    scan_limit: int = 10_000_000,
) -> Slice:
    """Collect every length-``n`` member of a language, fused with the
    advice word at ``n`` when advice is given.

    Languages with a generator are queried directly; otherwise all words
    over the language's alphabet are filtered through its predicate, which
    trips the cost guard once the alphabet power exceeds ``scan_limit``.
    """
    if n < 1:
        raise ValueError("slices need n >= 1")
    generator = getattr(language, "generator", None)
    if generator is not None:
        members = list(generator(n))
    else:
        alphabet = sorted(language.alphabet)
        check_budget(len(alphabet) ** n, scan_limit, "brute-force slice scan", force=force)
        predicate = language.predicate
        members = [
            Word(t) for t in itertools.product(alphabet, repeat=n) if predicate(Word(t))
        ]
    origin = f"{getattr(language, 'name', 'language')}[n={n}]"
    if advice is not None:
        a = advice(n)
        members = [zip_tracks(x, a).fused() for x in members]
        origin += f"+{getattr(advice, 'name', 'advice')}"
    return Slice(n, tuple(members), origin)


def slice_stats(s: Slice, j: int) -> SliceStats:
    """Count, for every offset i and factor u of length j, how many slice
    members carry u at that offset."""
    if not 1 <= j <= s.n:
        raise ValueError(f"midsection length must be in 1..{s.n}, got {j}")
    counts: dict[tuple[int, Word], int] = {}
    for w in s.members:
        letters = w.letters
        for i in range(s.n - j + 1):
            key = (i, Word(letters[i : i + j]))
            counts[key] = counts.get(key, 0) + 1
    return SliceStats(s.n, j, len(s.members), counts)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of the nesting bound check, with the worst entry listed."""

    n: int
    j: int
    size: int
    bound: int
    max_count: int
    max_at: Optional[tuple[int, Word]]
    ok: bool
    violation: Optional[tuple[int, Word, int]] = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "j": self.j,
            "size": self.size,
            "bound": self.bound,
            "max_count": self.max_count,
            "max": None
            if self.max_at is None
            else {"i": self.max_at[0], "u": self.max_at[1].to_json(), "count": self.max_count},
            "ok": self.ok,
            "violation": None
            if self.violation is None
            else {
                "i": self.violation[0],
                "u": self.violation[1].to_json(),
                "count": self.violation[2],
            },
        }


def l2_bound_check(n: int, j: int, *, force: bool = False) -> BoundReport:
    """Check the pinning bound on nested-palindrome slices.

    Every length-j window overlaps the four blocks so that at least
    ceil(j/2) of the n/4 free choice letters are fixed by its content
    (the worst case straddles a block border with the window centred on
    it), so no occurrence count may exceed 2^(n/4 - ceil(j/2)).
    """
    if n < 4 or n % 4:
        raise ValueError("the nesting slice needs a positive multiple of 4")
    if not 1 <= j <= n // 4:
        raise ValueError(f"j must be in 1..{n // 4}, got {j}")
    s = build_slice(corpus.LANGUAGES["L2"], n, force=force)
    stats = slice_stats(s, j)
    bound = 2 ** (n // 4 - (j + 1) // 2)
    entry = stats.max_entry()
    max_i, max_u, max_count = entry if entry else (None, None, 0)
    violation = None
    for (i, u), c in sorted(stats.counts.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        if c > bound:
            violation = (i, u, c)
            break
    return BoundReport(
        n=n,
        j=j,
        size=stats.size,
        bound=bound,
        max_count=max_count,
        max_at=None if entry is None else (max_i, max_u),
        ok=violation is None,
        violation=violation,
    )


@dataclass(frozen=True)
class SwapParams:
    """The exact integer parameter chain for a swap run at constant ``m``.

    Validation replays every link with exact arithmetic: n is a multiple of
    16, 2^(n/4) beats (2 m n^2)^4, k is the quarter length, j0 is twice one
    more than ceil(log2(m n^2)), k covers two midsections, and
    2^(j0/2) >= 2 m n^2 (which forces every count below |S| / (k m n)).
    """

    m: int
    n: int
    k: int
    j0: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("the swap constant m must be >= 1")
        if self.n < 16 or self.n % 16:
            raise ValueError("n must be a positive multiple of 16")
        if 2 ** (self.n // 4) <= (2 * self.m * self.n * self.n) ** 4:
            raise ValueError("2^(n/4) must exceed (2 m n^2)^4")
        if self.k != self.n // 4:
            raise ValueError("k must equal n/4")
        if self.j0 != 2 * (ceil_log2(self.m * self.n * self.n) + 1):
            raise ValueError("j0 must equal 2 (ceil(log2(m n^2)) + 1)")
        if self.k < 2 * self.j0:
            raise ValueError("k must be at least 2 j0")
        if 2 ** (self.j0 // 2) < 2 * self.m * self.n * self.n:
            raise ValueError("2^(j0/2) must be at least 2 m n^2")

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "j0": self.j0,
            "checks": {
                "n_multiple_of_16": True,
                "growth": True,
                "k_quarter": True,
                "j0_formula": True,
                "k_covers_two_midsections": True,
                "pow_bound": True,
            },
        }


def choose_params(m: int) -> SwapParams:
    """The minimal multiple of 16 whose quarter-exponent beats (2 m n^2)^4,
    searched with exact big integers, packaged with k and j0."""
    if m < 1:
        raise ValueError("the swap constant m must be >= 1")
    n = 16
    while 2 ** (n // 4) <= (2 * m * n * n) ** 4:
        n += 16
    return SwapParams(m=m, n=n, k=n // 4, j0=2 * (ceil_log2(m * n * n) + 1))


def density_condition(stats: SliceStats, params: SwapParams) -> bool:
    """Exact-rational scatteredness test: every midsection count must stay
    strictly below |S| / (m (k - j0 + 1) (n - j0 + 1)).

    Comparisons are cross-multiplied integers, so no strict inequality can
    be blurred by rounding.
    """
    if stats.j != params.j0:
        raise ValueError(
            f"stats were computed with j={stats.j}, but the parameters demand j0={params.j0}"
        )
    denom = params.m * (params.k - params.j0 + 1) * (params.n - params.j0 + 1)
    return all(c * denom < stats.size for c in stats.counts.values())


@dataclass(frozen=True)
class SwapWitness:
    """Two slice members whose distinct midsections swap without leaving
    the language.  Offsets are 0-based; ``i_zero`` marks witnesses whose
    midsection starts at the very front."""

    i: int
    j: int
    x: Word
    y: Word
    swapped_x: Word
    swapped_y: Word
    both_in_language: bool = True

    def __post_init__(self) -> None:
        if len(self.x) != len(self.y):
            raise ValueError("swap witnesses need equal-length words")
        if not (0 <= self.i and self.i + self.j <= len(self.x) and self.j >= 1):
            raise ValueError("inconsistent split offsets")
        x2 = self.x[self.i : self.i + self.j]
        y2 = self.y[self.i : self.i + self.j]
        if x2 == y2:
            raise ValueError("midsections must differ")
        if self.swapped_x != self.x[: self.i] + y2 + self.x[self.i + self.j :]:
            raise ValueError("swapped_x is not the midsection splice")
        if self.swapped_y != self.y[: self.i] + x2 + self.y[self.i + self.j :]:
            raise ValueError("swapped_y is not the midsection splice")

    @property
    def i_zero(self) -> bool:
        return self.i == 0

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "i_zero": self.i_zero,
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "swapped_x": self.swapped_x.to_json(),
            "swapped_y": self.swapped_y.to_json(),
            "both_in_language": self.both_in_language,
        }


def swap_scan(
    member: Callable[[Word], bool],
    s: Slice,
    j_range: tuple[int, int],
    i_range: Optional[tuple[int, int]] = None,
    *,
    force: bool = False,
    call_limit: int = 100_000_000,
) -> list[SwapWitness]:
    """Exhaustively try every midsection swap over ordered member pairs.

    Emits a witness for every (x, y, i, j) with differing midsections whose
    two splices both satisfy the membership oracle, in deterministic order:
    pair order first (members are canonically sorted), then offset, then
    midsection length.  Membership calls are memoized; the projected call
    count is checked against ``call_limit`` before scanning.
    """
    n = s.n
    j_lo, j_hi = j_range
    j_lo, j_hi = max(1, j_lo), min(n, j_hi)
    if j_lo > j_hi:
        return []
    i_lo, i_hi = i_range if i_range is not None else (0, n - j_lo)
    i_lo, i_hi = max(0, i_lo), min(n - j_lo, i_hi)
    size = len(s.members)
    spots = sum(
        max(0, min(j_hi, n - i) - j_lo + 1) for i in range(i_lo, i_hi + 1)
    )
    check_budget(2 * size * (size - 1) * spots, call_limit, "swap scan", force=force)

    cache: dict[tuple[int, ...], bool] = {}

    def in_language(t: tuple[int, ...]) -> bool:
        hit = cache.get(t)
        if hit is None:
            hit = bool(member(Word(t)))
            cache[t] = hit
        return hit

    raws = [w.letters for w in s.members]
    out: list[SwapWitness] = []
    for xi, x in enumerate(raws):
        for yi, y in enumerate(raws):
            if xi == yi:
                continue
            for i in range(i_lo, i_hi + 1):
                for j in range(j_lo, min(j_hi, n - i) + 1):
                    x2 = x[i : i + j]
                    y2 = y[i : i + j]
                    if x2 == y2:
                        continue
                    sx = x[:i] + y2 + x[i + j :]
                    if not in_language(sx):
                        continue
                    sy = y[:i] + x2 + y[i + j :]
                    if not in_language(sy):
                        continue
                    out.append(
                        SwapWitness(
                            i=i,
                            j=j,
                            x=Word(x),
                            y=Word(y),
                            swapped_x=Word(sx),
                            swapped_y=Word(sy),
                        )
                    )
    return out
