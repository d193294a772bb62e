"""Context-free grammars: CNF conversion, CYK membership, bounded
enumeration, and a minimal total-DFA engine.

Grammar text format, one production per line (a head may repeat)::

    S -> W X | '1' S '3' | ()
    W -> 'a' W 'b'      # quoted tokens are terminals, () is the empty word

Unquoted tokens are nonterminals; quoted tokens are terminals given as a
decimal letter or a symbol-table name; the first head is the start symbol;
``#`` outside quotes starts a comment.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .guards import CostGuardError
from .words import SYMBOL_TABLE, Word

Symbol = Union[str, int]  # str = nonterminal, int = terminal letter
Body = tuple[Symbol, ...]
Production = tuple[str, Body]


class GrammarError(ValueError):
    """A grammar, production, or grammar file is malformed."""


class AutomatonError(ValueError):
    """A DFA is not total, or was run on a letter outside its alphabet."""


def _symbol_key(s: Symbol) -> tuple[int, object]:
    return (1, s) if isinstance(s, int) else (0, s)


def _production_key(p: Production) -> tuple:
    head, body = p
    return (head, len(body), tuple(_symbol_key(s) for s in body))


@dataclass(frozen=True)
class Cfg:
    """A context-free grammar over numeric terminal letters.

    Nonterminals are strings, terminals are ints, so the two namespaces are
    disjoint by construction.  Productions are kept deduplicated in a
    canonical order, making equal grammars compare equal.
    """

    nonterminals: frozenset[str]
    terminals: frozenset[int]
    productions: tuple[Production, ...]
    start: str

    def __post_init__(self) -> None:
        canon = tuple(sorted({(h, tuple(b)) for h, b in self.productions}, key=_production_key))
        object.__setattr__(self, "productions", canon)
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        for t in self.terminals:
            if not isinstance(t, int) or t < 0:
                raise GrammarError(f"terminals must be ints >= 0, got {t!r}")
        for head, body in self.productions:
            if head not in self.nonterminals:
                raise GrammarError(f"undeclared head {head!r}")
            for s in body:
                if isinstance(s, str):
                    if s not in self.nonterminals:
                        raise GrammarError(f"undeclared nonterminal {s!r} in body of {head}")
                elif s not in self.terminals:
                    raise GrammarError(f"undeclared terminal {s!r} in body of {head}")

    @classmethod
    def from_rules(cls, start: str, rules: Mapping[str, Sequence[Sequence[Symbol]]]) -> "Cfg":
        """Build a grammar from ``{head: [body, ...]}``, inferring symbol sets."""
        nonterminals = set(rules)
        terminals = set()
        productions = []
        for head, bodies in rules.items():
            for body in bodies:
                body = tuple(body)
                terminals.update(s for s in body if isinstance(s, int))
                productions.append((head, body))
        return cls(frozenset(nonterminals), frozenset(terminals), tuple(productions), start)


_TOKEN_RE = re.compile(r"'[^']*'|\(\)|\||->|[^\s|]+")


def _strip_comment(line: str) -> str:
    out = []
    in_quote = False
    for ch in line:
        if ch == "'":
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            break
        out.append(ch)
    return "".join(out)


def parse_grammar(text: str, symtab: Mapping[str, int] = SYMBOL_TABLE) -> Cfg:
    """Parse the grammar text format; the first head is the start symbol."""
    rules: dict[str, list[Body]] = {}
    start = None
    heads = set()
    for raw in text.splitlines():
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"missing '->' in line {raw!r}")
        head_part, body_part = line.split("->", 1)
        head = head_part.strip()
        if not head or " " in head or head.startswith("'"):
            raise GrammarError(f"bad production head {head_part!r}")
        heads.add(head)
        if start is None:
            start = head
        for alt in body_part.split("|"):
            tokens = alt.split()
            if not tokens:
                raise GrammarError(f"empty alternative in line {raw!r} (use '()' for the empty word)")
            if tokens == ["()"]:
                rules.setdefault(head, []).append(())
                continue
            body: list[Symbol] = []
            for tok in tokens:
                if tok == "()":
                    raise GrammarError("'()' cannot be mixed with other symbols")
                if tok.startswith("'") and tok.endswith("'") and len(tok) >= 3:
                    name = tok[1:-1]
                    if name.isdigit():
                        body.append(int(name))
                    elif name in symtab:
                        body.append(symtab[name])
                    else:
                        raise GrammarError(f"unknown terminal name {name!r}")
                elif tok.startswith("'") or tok.endswith("'"):
                    raise GrammarError(f"unbalanced quotes in token {tok!r}")
                else:
                    body.append(tok)
            rules.setdefault(head, []).append(tuple(body))
    if start is None:
        raise GrammarError("empty grammar text")
    for head, bodies in rules.items():
        for body in bodies:
            for s in body:
                if isinstance(s, str) and s not in heads:
                    raise GrammarError(f"nonterminal {s!r} has no productions")
    return Cfg.from_rules(start, rules)


def grammar_text(g: Cfg) -> str:
    """Serialize a grammar back into the text format (start symbol first)."""
    by_head: dict[str, list[Body]] = defaultdict(list)
    for head, body in g.productions:
        by_head[head].append(body)
    order = [g.start] + sorted(h for h in by_head if h != g.start)
    lines = []
    for head in order:
        if head not in by_head:
            continue
        alts = []
        for body in by_head[head]:
            if not body:
                alts.append("()")
            else:
                alts.append(" ".join(f"'{s}'" if isinstance(s, int) else s for s in body))
        lines.append(f"{head} -> {' | '.join(alts)}")
    return "\n".join(lines) + "\n"


def _fresh_name(base: str, used: set[str]) -> str:
    name = base
    k = 1
    while name in used:
        k += 1
        name = f"{base}{k}"
    used.add(name)
    return name


def _nullable_set(productions: Iterable[Production]) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in productions:
            if head not in nullable and all(isinstance(s, str) and s in nullable for s in body):
                nullable.add(head)
                changed = True
    return nullable


def _generating_set(productions: Iterable[Production]) -> set[str]:
    generating: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in productions:
            if head not in generating and all(
                isinstance(s, int) or s in generating for s in body
            ):
                generating.add(head)
                changed = True
    return generating


def _reachable_set(productions: Iterable[Production], start: str) -> set[str]:
    reachable = {start}
    changed = True
    while changed:
        changed = False
        for head, body in productions:
            if head in reachable:
                for s in body:
                    if isinstance(s, str) and s not in reachable:
                        reachable.add(s)
                        changed = True
    return reachable


@dataclass(frozen=True)
class CnfGrammar:
    """A grammar in Chomsky normal form.

    Productions are split into ``binary`` triples ``(A, B, C)`` and
    ``lexical`` pairs ``(A, a)``.  Whether the empty word belongs to the
    language is carried by the ``empty`` flag (the start symbol then never
    occurs on a right-hand side), so CYK stays uniform for all lengths >= 1.
    """

    nonterminals: frozenset[str]
    terminals: frozenset[int]
    binary: tuple[tuple[str, str, str], ...]
    lexical: tuple[tuple[str, int], ...]
    start: str
    empty: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "binary", tuple(sorted(set(self.binary))))
        object.__setattr__(self, "lexical", tuple(sorted(set(self.lexical))))
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        for a, b, c in self.binary:
            for s in (a, b, c):
                if s not in self.nonterminals:
                    raise GrammarError(f"undeclared nonterminal {s!r}")
            if self.empty and self.start in (b, c):
                raise GrammarError("the start of a grammar deriving the empty word may not occur in a body")
        for a, t in self.lexical:
            if a not in self.nonterminals:
                raise GrammarError(f"undeclared nonterminal {a!r}")
            if not isinstance(t, int) or t not in self.terminals:
                raise GrammarError(f"undeclared terminal {t!r}")
        by_letter: dict[int, set[str]] = defaultdict(set)
        for a, t in self.lexical:
            by_letter[t].add(a)
        left_index: dict[str, tuple[tuple[str, tuple[str, ...]], ...]] = {}
        pair_heads: dict[tuple[str, str], set[str]] = defaultdict(set)
        for a, b, c in self.binary:
            pair_heads[(b, c)].add(a)
        grouped: dict[str, list[tuple[str, tuple[str, ...]]]] = defaultdict(list)
        for (b, c), heads in sorted(pair_heads.items()):
            grouped[b].append((c, tuple(sorted(heads))))
        left_index = {b: tuple(entries) for b, entries in grouped.items()}
        object.__setattr__(self, "_by_letter", {t: frozenset(hs) for t, hs in by_letter.items()})
        object.__setattr__(self, "_left_index", left_index)

    def as_cfg(self) -> Cfg:
        prods: list[Production] = [(a, (b, c)) for a, b, c in self.binary]
        prods += [(a, (t,)) for a, t in self.lexical]
        if self.empty:
            prods.append((self.start, ()))
        return Cfg(self.nonterminals, self.terminals, tuple(prods), self.start)


def pumping_constant(g: CnfGrammar) -> int:
    """2 to the number of nonterminals: every longer member pumps."""
    return 2 ** len(g.nonterminals)


def to_cnf(g: Cfg) -> CnfGrammar:
    """Convert a grammar to Chomsky normal form.

    Stage order: prune useless symbols, split off a fresh start symbol when
    needed, eliminate empty productions, eliminate unit productions, break
    long bodies into binary ones, wrap terminals left inside binary bodies,
    prune again.  An empty language yields a CNF grammar with no
    productions at all.
    """
    used = set(g.nonterminals)
    prods = set(g.productions)
    start = g.start

    generating = _generating_set(prods)
    if start not in generating:
        return CnfGrammar(frozenset({start}), g.terminals, (), (), start, False)
    prods = {
        (h, b)
        for h, b in prods
        if h in generating and all(isinstance(s, int) or s in generating for s in b)
    }
    reachable = _reachable_set(prods, start)
    prods = {(h, b) for h, b in prods if h in reachable}

    nullable = _nullable_set(prods)
    empty = start in nullable
    if empty and any(start in b for _, b in prods):
        s0 = _fresh_name("S0", used)
        prods.add((s0, (start,)))
        start = s0
        nullable.add(s0)

    # empty-production elimination: drop any subset of nullable positions
    expanded: set[Production] = set()
    for head, body in prods:
        options = [
            ((s,), ()) if isinstance(s, str) and s in nullable else ((s,),) for s in body
        ]
        for choice in itertools.product(*options):
            new_body = tuple(s for part in choice for s in part)
            if new_body:
                expanded.add((head, new_body))
    prods = expanded

    # unit-production elimination via unit-pair closure
    unit_edges: dict[str, set[str]] = defaultdict(set)
    for head, body in prods:
        if len(body) == 1 and isinstance(body[0], str):
            unit_edges[head].add(body[0])
    closed: set[Production] = set()
    heads = {h for h, _ in prods} | {start}
    for a in heads:
        seen = {a}
        stack = [a]
        while stack:
            b = stack.pop()
            for c in unit_edges.get(b, ()):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        for b in seen:
            for head, body in prods:
                if head == b and not (len(body) == 1 and isinstance(body[0], str)):
                    closed.add((a, body))
    prods = closed

    # long bodies -> binary chains
    binary_prods: set[Production] = set()
    for head, body in sorted(prods, key=_production_key):
        while len(body) > 2:
            rest = _fresh_name(f"{head}.", used)
            binary_prods.add((head, (body[0], rest)))
            head, body = rest, body[1:]
        binary_prods.add((head, body))
    prods = binary_prods

    # terminals inside binary bodies -> wrapper nonterminals
    wrappers: dict[int, str] = {}
    final: set[Production] = set()
    for head, body in sorted(prods, key=_production_key):
        if len(body) == 2:
            new_body = []
            for s in body:
                if isinstance(s, int):
                    if s not in wrappers:
                        wrappers[s] = _fresh_name(f"T{s}", used)
                        final.add((wrappers[s], (s,)))
                    new_body.append(wrappers[s])
                else:
                    new_body.append(s)
            final.add((head, tuple(new_body)))
        else:
            final.add((head, body))
    prods = final

    reachable = _reachable_set(prods, start)
    prods = {(h, b) for h, b in prods if h in reachable}
    nonterminals = {start} | {h for h, _ in prods} | {
        s for _, b in prods for s in b if isinstance(s, str)
    }
    binary = tuple((h, b[0], b[1]) for h, b in prods if len(b) == 2)
    lexical = tuple((h, b[0]) for h, b in prods if len(b) == 1)
    return CnfGrammar(frozenset(nonterminals), g.terminals, binary, lexical, start, empty)


def cyk_chart(g: CnfGrammar, w: Word) -> dict[tuple[int, int], frozenset[str]]:
    """The CYK table: ``chart[i, l]`` is the set of nonterminals deriving
    the length-``l`` factor of ``w`` starting at 0-based offset ``i``."""
    letters = w.letters
    n = len(letters)
    by_letter = g._by_letter  # type: ignore[attr-defined]
    left_index = g._left_index  # type: ignore[attr-defined]
    chart: dict[tuple[int, int], frozenset[str]] = {}
    for i, a in enumerate(letters):
        chart[(i, 1)] = by_letter.get(a, frozenset())
    for l in range(2, n + 1):
        for i in range(n - l + 1):
            acc: set[str] = set()
            for s in range(1, l):
                left = chart[(i, s)]
                if not left:
                    continue
                right = chart[(i + s, l - s)]
                if not right:
                    continue
                for b in left:
                    for c, heads in left_index.get(b, ()):
                        if c in right:
                            acc.update(heads)
            chart[(i, l)] = frozenset(acc)
    return chart


def cyk_member(g: CnfGrammar, w: Word) -> bool:
    """Decide membership; letters outside the terminal set simply fail."""
    if len(w) == 0:
        return g.empty
    if any(a not in g.terminals for a in w.letters):
        return False
    chart = cyk_chart(g, w)
    return g.start in chart[(0, len(w))]


def _body_words(
    body: Body, length: int, table: Mapping[str, list[set[tuple[int, ...]]]]
) -> set[tuple[int, ...]]:
    # all terminal tuples of exactly `length` derivable from the body,
    # given the per-nonterminal, per-length sets computed so far
    current: dict[int, set[tuple[int, ...]]] = {0: {()}}
    for sym in body:
        nxt: dict[int, set[tuple[int, ...]]] = defaultdict(set)
        if isinstance(sym, int):
            for ln, ws in current.items():
                if ln + 1 <= length:
                    for t in ws:
                        nxt[ln + 1].add(t + (sym,))
        else:
            for ln, ws in current.items():
                for l2 in range(length - ln + 1):
                    sub = table[sym][l2]
                    if not sub:
                        continue
                    for t in ws:
                        for s in sub:
                            nxt[ln + l2].add(t + s)
        current = nxt
        if not current:
            return set()
    return current.get(length, set())


def enumerate_language(g: Cfg, max_len: int, *, budget: int | None = None) -> tuple[Word, ...]:
    """All members of the language up to ``max_len``, in canonical order.

    Runs a bottom-up, length-indexed closure, so it terminates for every
    grammar (cyclic unit chains and empty productions included).  The
    optional ``budget`` caps the number of stored factor words.
    """
    if max_len < 0:
        raise GrammarError("max_len must be >= 0")
    table: dict[str, list[set[tuple[int, ...]]]] = {
        a: [set() for _ in range(max_len + 1)] for a in g.nonterminals
    }
    stored = 0
    for length in range(max_len + 1):
        changed = True
        while changed:
            changed = False
            for head, body in g.productions:
                fresh = _body_words(body, length, table) - table[head][length]
                if fresh:
                    table[head][length] |= fresh
                    stored += len(fresh)
                    changed = True
                    if budget is not None and stored > budget:
                        raise CostGuardError(
                            f"enumeration stored more than {budget} factor words"
                        )
    out = [Word(t) for sets in table[g.start] for t in sets]
    return tuple(sorted(out))


@dataclass(frozen=True)
class Dfa:
    """A deterministic finite automaton with a total transition map."""

    states: frozenset[str]
    alphabet: frozenset[int]
    transitions: Mapping[tuple[str, int], str]
    start: str
    accepting: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", dict(self.transitions))
        if self.start not in self.states:
            raise AutomatonError(f"start state {self.start!r} is not a state")
        if not self.accepting <= self.states:
            raise AutomatonError("accepting states must be states")
        for (q, a), r in self.transitions.items():
            if q not in self.states or r not in self.states or a not in self.alphabet:
                raise AutomatonError(f"bad transition ({q!r}, {a!r}) -> {r!r}")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.transitions:
                    raise AutomatonError(f"transition map is not total: missing ({q!r}, {a!r})")


def dfa_run(m: Dfa, state: str, w: Word) -> str:
    """Fold the transition map over ``w`` starting in ``state``.

    A letter outside the alphabet is an error: totality is part of the
    automaton's contract, so a foreign letter signals a misbuilt machine.
    """
    if state not in m.states:
        raise AutomatonError(f"unknown state {state!r}")
    for a in w.letters:
        if a not in m.alphabet:
            raise AutomatonError(f"letter {a} is outside the automaton's alphabet")
        state = m.transitions[(state, a)]
    return state


def dfa_accepts(m: Dfa, w: Word) -> bool:
    return dfa_run(m, m.start, w) in m.accepting


def dfa_from_json(doc: Mapping) -> Dfa:
    """Load a DFA from ``{states, alphabet, start, accepting, transitions}``
    where transitions is a list of ``[state, letter, state]`` triples."""
    try:
        transitions = {(q, int(a)): r for q, a, r in doc["transitions"]}
        return Dfa(
            states=frozenset(doc["states"]),
            alphabet=frozenset(int(a) for a in doc["alphabet"]),
            transitions=transitions,
            start=doc["start"],
            accepting=frozenset(doc["accepting"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AutomatonError):
            raise
        raise AutomatonError(f"malformed DFA document: {exc}") from exc


def dfa_to_json(m: Dfa) -> dict:
    return {
        "states": sorted(m.states),
        "alphabet": sorted(m.alphabet),
        "start": m.start,
        "accepting": sorted(m.accepting),
        "transitions": [[q, a, r] for (q, a), r in sorted(m.transitions.items())],
    }
