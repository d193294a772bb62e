"""Words over natural-number letters, positionwise scaling, and track fusion.

A letter is a plain ``int >= 0``.  Ordinary language letters are >= 1;
letter 0 is the reserved padding/filler letter of advice tracks (it also
doubles as the digit symbol ``0`` of binary alphabets).  Symbolic alphabets
map to numeric letters through :data:`SYMBOL_TABLE`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from math import isqrt
from typing import Iterable, Iterator, Mapping


class WordError(ValueError):
    """A letter or word violates an operation's contract."""


#: Published mapping from conventional symbols to numeric letters: digits map
#: to themselves, ``a``/``b``/``c`` are the first three letters, ``#`` is the
#: palindrome centre marker.
SYMBOL_TABLE: dict[str, int] = {
    "0": 0,
    "1": 1,
    "2": 2,
    "a": 1,
    "b": 2,
    "c": 3,
    "#": 4,
}


@total_ordering
class Word:
    """An immutable finite sequence of natural-number letters.

    Words are value objects: equal exactly when their letters agree,
    hashable, and totally ordered by length first, then lexicographically
    by letter value.  That order is the canonical order of every
    enumeration in this package.
    """

    __slots__ = ("_letters",)

    def __init__(self, letters: Iterable[int] = ()) -> None:
        tup = tuple(letters)
        for a in tup:
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise WordError(f"letters must be ints >= 0, got {a!r}")
        self._letters = tup

    @classmethod
    def of(cls, *letters: int) -> "Word":
        return cls(letters)

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self._letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self._letters[index])
        return self._letters[index]

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self._letters + other._letters)

    def __mul__(self, times: int) -> "Word":
        if not isinstance(times, int) or times < 0:
            raise WordError(f"repeat count must be an int >= 0, got {times!r}")
        return Word(self._letters * times)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._letters == other._letters

    def __lt__(self, other: "Word") -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (len(self._letters), self._letters) < (len(other._letters), other._letters)

    def __hash__(self) -> int:
        return hash(self._letters)

    def __repr__(self) -> str:
        return f"Word.of({', '.join(map(str, self._letters))})"

    def to_json(self) -> list[int]:
        return list(self._letters)

    def text(self) -> str:
        return " ".join(map(str, self._letters))


EMPTY_WORD = Word()


def parse_word(source: str, symtab: Mapping[str, int] = SYMBOL_TABLE) -> Word:
    """Parse a word from comma- or whitespace-separated letter tokens.

    A token is either a decimal letter or a name resolved through the
    symbol table; an empty source yields the empty word.
    """
    tokens = [t for t in re.split(r"[,\s]+", source.strip()) if t]
    letters = []
    for tok in tokens:
        if tok.isdigit():
            letters.append(int(tok))
        elif tok in symtab:
            letters.append(symtab[tok])
        else:
            raise WordError(f"unknown letter token {tok!r}")
    return Word(letters)


def scale(w: Word, c: int) -> Word:
    """Multiply every letter of ``w`` by ``c`` (positionwise scaling).

    Both the factor and every letter must be >= 1: scaling a padding
    letter, or scaling by 0, would land on the reserved letter 0.
    """
    if not isinstance(c, int) or c < 1:
        raise WordError(f"scale factor must be an int >= 1, got {c!r}")
    if any(a < 1 for a in w.letters):
        raise WordError("scale is only defined on words with letters >= 1")
    return Word(c * a for a in w.letters)


def reverse(w: Word) -> Word:
    return Word(reversed(w.letters))


def nest_l2(w: Word) -> Word:
    """Expand a nonempty word over {1, 2} into its four-block nesting.

    The blocks are ``w``, ``reverse(w)`` scaled by 3, ``w`` scaled by 15 and
    ``reverse(w)`` scaled by 5, giving a word of length ``4 * len(w)`` over
    the letters {1, 2, 3, 6, 5, 10, 15, 30}.
    """
    if len(w) == 0:
        raise WordError("nesting needs a nonempty word")
    if any(a not in (1, 2) for a in w.letters):
        raise WordError("nesting is only defined over the letters {1, 2}")
    r = reverse(w)
    return w + scale(r, 3) + scale(w, 15) + scale(r, 5)


def fuse_letter(top: int, bottom: int) -> int:
    """Encode a two-track letter pair as one letter (Cantor pairing)."""
    if top < 0 or bottom < 0:
        raise WordError("track letters must be >= 0")
    s = top + bottom
    return s * (s + 1) // 2 + bottom


def split_letter(code: int) -> tuple[int, int]:
    """Invert :func:`fuse_letter`."""
    if code < 0:
        raise WordError("fused letters are >= 0")
    s = (isqrt(8 * code + 1) - 1) // 2
    bottom = code - s * (s + 1) // 2
    return s - bottom, bottom


@dataclass(frozen=True)
class TrackedWord:
    """Equal-length pair of words fused positionwise: input over advice."""

    top: Word
    bottom: Word

    def __post_init__(self) -> None:
        if len(self.top) != len(self.bottom):
            raise WordError(
                f"track lengths differ: {len(self.top)} vs {len(self.bottom)}"
            )

    def __len__(self) -> int:
        return len(self.top)

    def fused(self) -> Word:
        """The single-track view: one paired letter per position."""
        return Word(
            fuse_letter(t, b) for t, b in zip(self.top.letters, self.bottom.letters)
        )

    @classmethod
    def from_fused(cls, w: Word) -> "TrackedWord":
        pairs = [split_letter(a) for a in w.letters]
        return cls(Word(p[0] for p in pairs), Word(p[1] for p in pairs))


def zip_tracks(x: Word, a: Word) -> TrackedWord:
    return TrackedWord(x, a)


def unzip_tracks(t: TrackedWord) -> tuple[Word, Word]:
    return t.top, t.bottom
