"""Pumping machinery: decomposition extraction from CYK parse trees and
refutation of claimed inclusions ``L(G)`` inside a predicate.

Refutation is a semi-decision: a returned witness is replayed through CYK
and the predicate before it leaves this module, while exhausting the search
without a witness is an honest ``Inconclusive`` outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .grammars import (
    Cfg,
    CnfGrammar,
    cyk_chart,
    cyk_member,
    enumerate_language,
    pumping_constant,
    to_cnf,
)
from .words import Word


@dataclass(frozen=True)
class PumpWitness:
    """A refutation certificate: a member of L(G), its pumping
    decomposition, the pumped variants (all confirmed in L(G)), and the
    first variant on which the predicate fails."""

    z: Word
    u: Word
    v: Word
    w: Word
    x: Word
    y: Word
    pumped: tuple[tuple[int, Word], ...]
    violating: tuple[int, Word]

    def __post_init__(self) -> None:
        if self.u + self.v + self.w + self.x + self.y != self.z:
            raise ValueError("decomposition does not reassemble the pumped word")
        if len(self.v) + len(self.x) == 0:
            raise ValueError("the pumped segments may not both be empty")

    def pump(self, times: int) -> Word:
        return self.u + self.v * times + self.w + self.x * times + self.y

    def to_json(self) -> dict:
        return {
            "z": self.z.to_json(),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "w": self.w.to_json(),
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "pumped": [[i, w.to_json()] for i, w in self.pumped],
            "violating": [self.violating[0], self.violating[1].to_json()],
        }


@dataclass(frozen=True)
class Inconclusive:
    """No refutation found within the search bound; carries how many
    qualifying members were examined."""

    examined: int


RefuteOutcome = Union[PumpWitness, Inconclusive]


def _derivation_path(g: CnfGrammar, chart, z: Word) -> list[tuple[str, int, int]]:
    # Walk the leftmost derivation tree, always descending into the wider
    # child (ties to the left), so the subtree yield at most doubles per
    # upward step along the recorded path.
    left_index = g._left_index  # type: ignore[attr-defined]
    letters = z.letters
    path = []
    node = (g.start, 0, len(letters))
    while True:
        label, i, l = node
        path.append(node)
        if l == 1:
            return path
        found = None
        for s in range(1, l):
            left = chart[(i, s)]
            right = chart[(i + s, l - s)]
            if not left or not right:
                continue
            for b in sorted(left):
                for c, heads in left_index.get(b, ()):
                    if label in heads and c in right:
                        found = (s, b, c)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            raise AssertionError(f"chart admits no production for {node}")
        s, b, c = found
        if l - s > s:
            node = (c, i + s, l - s)
        else:
            node = (b, i, s)


def find_decomposition(g: CnfGrammar, z: Word) -> tuple[Word, Word, Word, Word, Word]:
    """Extract a pumping decomposition z = u v w x y from the parse tree.

    A path of maximal-yield descent must repeat a nonterminal within its
    lowest ``|V| + 1`` nodes; the lowest such repeat is taken, which bounds
    the midsection by the pumping constant and leaves at least one pumped
    letter.  The variants for exponents 0, 2 and 3 are replayed through CYK
    before the decomposition is returned.
    """
    p = pumping_constant(g)
    if len(z) < p:
        raise ValueError(f"word of length {len(z)} is below the pumping constant {p}")
    if not cyk_member(g, z):
        raise ValueError("the word is not in the grammar's language")
    chart = cyk_chart(g, z)
    path = _derivation_path(g, chart, z)
    seen: dict[str, tuple[str, int, int]] = {}
    upper = lower = None
    for node in reversed(path):
        label = node[0]
        if label in seen:
            lower = seen[label]
            upper = node
            break
        seen[label] = node
    if upper is None or lower is None:
        raise AssertionError("no repeated nonterminal on the derivation path")
    _, ui, ul = upper
    _, li, ll = lower
    u = z[:ui]
    v = z[ui:li]
    w = z[li : li + ll]
    x = z[li + ll : ui + ul]
    y = z[ui + ul :]
    if len(v) + len(x) < 1 or len(v) + len(w) + len(x) > p:
        raise AssertionError("extracted decomposition violates the pumping bounds")
    for times in (0, 2, 3):
        if not cyk_member(g, u + v * times + w + x * times + y):
            raise AssertionError(f"pumping with exponent {times} left the language")
    return u, v, w, x, y


def refute_subset(
    g: Cfg,
    predicate: Callable[[Word], bool],
    search_len: int,
    *,
    exponents: tuple[int, ...] = (0, 2, 3, 4),
    budget: int = 2_000_000,
) -> RefuteOutcome:
    """Search for a pumping refutation of "L(g) is contained in the
    predicate".

    Members of L(g) satisfying the predicate, at least as long as the
    pumping constant, are tried in canonical order; each is decomposed and
    pumped until some variant (confirmed in L(g) by CYK) falsifies the
    predicate.  A witness certifies the non-inclusion; running out of
    candidates is inconclusive, never an error.
    """
    cnf = to_cnf(g)
    p = pumping_constant(cnf)
    if search_len < p:
        raise ValueError(f"search_len must reach the pumping constant {p}")
    examined = 0
    for z in enumerate_language(g, search_len, budget=budget):
        if len(z) < p or not predicate(z):
            continue
        examined += 1
        u, v, w, x, y = find_decomposition(cnf, z)
        pumped = []
        violating = None
        for times in exponents:
            candidate = u + v * times + w + x * times + y
            if not cyk_member(cnf, candidate):
                raise AssertionError(f"pumped variant at exponent {times} left the language")
            pumped.append((times, candidate))
            if violating is None and not predicate(candidate):
                violating = (times, candidate)
        if violating is not None:
            return PumpWitness(
                z=z, u=u, v=v, w=w, x=x, y=y, pumped=tuple(pumped), violating=violating
            )
    return Inconclusive(examined=examined)
