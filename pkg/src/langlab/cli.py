"""Command-line front end: every run prints one JSON report document.

Exit codes: 0 for pass/inconclusive, 1 for fail (a property was violated or
an unexpected counterexample appeared), 2 for usage errors, malformed
inputs, and tripped cost guards.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import acceptance, corpus
from .advice import (
    BUILTIN_ADVISED,
    BUILTIN_ADVICE,
    AdviceError,
    AdvisedLanguage,
    advice_from_json,
    parallel_member,
    serial_member,
)
from .grammars import (
    AutomatonError,
    GrammarError,
    cyk_member,
    dfa_from_json,
    enumerate_language,
    grammar_text,
    parse_grammar,
    to_cnf,
)
from .guards import CostGuardError
from .refuter import Inconclusive, refute_subset
from .swaplab import build_slice, choose_params, l2_bound_check, slice_stats, swap_scan
from .words import SYMBOL_TABLE, Word, WordError, parse_word


class UsageError(ValueError):
    pass


def _load_symtab(path: Optional[str]) -> dict[str, int]:
    if path is None:
        return dict(SYMBOL_TABLE)
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or not all(
        isinstance(k, str) and isinstance(v, int) for k, v in doc.items()
    ):
        raise UsageError("a symbol table file must map names to integer letters")
    return doc


def _load_grammar(path: str, symtab) -> "object":
    with open(path, "r", encoding="utf-8") as fh:
        return parse_grammar(fh.read(), symtab)


def _load_inner(path: str, symtab):
    # .json files hold DFAs, anything else is grammar text
    if path.endswith(".json"):
        with open(path, "r", encoding="utf-8") as fh:
            return dfa_from_json(json.load(fh))
    return _load_grammar(path, symtab)


def _language(name: str) -> corpus.CorpusLanguage:
    if name not in corpus.LANGUAGES:
        raise UsageError(
            f"unknown language {name!r}; available: {', '.join(sorted(corpus.LANGUAGES))}"
        )
    return corpus.LANGUAGES[name]


def _advice_spec(spec: str):
    if spec in BUILTIN_ADVICE:
        return BUILTIN_ADVICE[spec]()
    with open(spec, "r", encoding="utf-8") as fh:
        return advice_from_json(json.load(fh), name=spec)


def cmd_enumerate(args) -> tuple[str, dict]:
    symtab = _load_symtab(args.symtab)
    if args.lang:
        lang = _language(args.lang)
        if args.length is None:
            raise UsageError("--lang enumeration needs --length (exact length)")
        words = lang.generator(args.length)
        payload = {"lang": args.lang, "length": args.length}
        if args.show_grammar:
            if lang.grammar is None:
                raise UsageError(f"language {args.lang} has no grammar")
            payload["grammar"] = grammar_text(lang.grammar)
    else:
        if args.grammar is None or args.max_len is None:
            raise UsageError("grammar enumeration needs --grammar FILE and --max-len N")
        g = _load_grammar(args.grammar, symtab)
        words = enumerate_language(g, args.max_len)
        payload = {"grammar": args.grammar, "max_len": args.max_len}
    payload.update({"count": len(words), "words": [w.to_json() for w in words]})
    return "pass", payload


def cmd_member(args) -> tuple[str, dict]:
    symtab = _load_symtab(args.symtab)
    w = parse_word(args.word, symtab)
    if args.lang:
        lang = _language(args.lang)
        member = bool(lang.predicate(w))
        source = args.lang
    else:
        if args.grammar is None:
            raise UsageError("member needs --lang NAME or --grammar FILE")
        g = _load_grammar(args.grammar, symtab)
        member = cyk_member(to_cnf(g), w)
        source = args.grammar
    return "pass", {"language": source, "word": w.to_json(), "member": member}


def cmd_intersect_check(args) -> tuple[str, dict]:
    report = corpus.intersection_check(args.max_len, force=args.force)
    return ("pass" if report.ok else "fail"), report.to_json()


def cmd_slice_stats(args) -> tuple[str, dict]:
    lang = _language(args.lang)
    advice = _advice_spec(args.advice) if args.advice else None
    s = build_slice(lang, args.n, advice, force=args.force)
    stats = slice_stats(s, args.j)
    entry = stats.max_entry()
    table = [
        {"i": i, "u": u.to_json(), "count": c}
        for (i, u), c in sorted(stats.counts.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    ]
    payload = {
        "origin": s.origin,
        "n": stats.n,
        "j": stats.j,
        "size": stats.size,
        "max": None if entry is None else {"i": entry[0], "u": entry[1].to_json(), "count": entry[2]},
        "table": table,
    }
    return "pass", payload


def cmd_bound_check(args) -> tuple[str, dict]:
    report = l2_bound_check(args.n, args.j, force=args.force)
    return ("pass" if report.ok else "fail"), report.to_json()


def cmd_swap_scan(args) -> tuple[str, dict]:
    lang = _language(args.lang)
    advice = _advice_spec(args.advice) if args.advice else None
    s = build_slice(lang, args.n, advice, force=args.force)
    member = lang.predicate
    if advice is not None:
        # fused slices keep one advice word; the oracle projects it away
        from .words import TrackedWord

        def member(w, _pred=lang.predicate, _advice=advice, _n=args.n):
            tracked = TrackedWord.from_fused(w)
            return tracked.bottom == _advice(_n) and _pred(tracked.top)

    i_range = None
    if args.i_min is not None or args.i_max is not None:
        i_range = (args.i_min or 0, args.i_max if args.i_max is not None else s.n)
    witnesses = swap_scan(
        member, s, (args.j_min, args.j_max), i_range, force=args.force, call_limit=args.limit
    )
    payload = {
        "origin": s.origin,
        "n": s.n,
        "slice_size": len(s),
        "j_range": [args.j_min, args.j_max],
        "count": len(witnesses),
        "witnesses": [w.to_json() for w in witnesses],
    }
    return "pass", payload


def cmd_params(args) -> tuple[str, dict]:
    return "pass", choose_params(args.m).to_json()


def cmd_advice_check(args) -> tuple[str, dict]:
    symtab = _load_symtab(args.symtab)
    mode = "parallel" if args.parallel else "serial"
    if args.advice in BUILTIN_ADVISED:
        lang = BUILTIN_ADVISED[args.advice]()
        if lang.mode != mode:
            raise UsageError(f"builtin {args.advice!r} is a {lang.mode} setup")
    else:
        if args.inner is None:
            raise UsageError("a table advice needs --inner FILE (grammar text or DFA json)")
        inner = _load_inner(args.inner, symtab)
        lang = AdvisedLanguage(mode, inner, _advice_spec(args.advice))
    decide = parallel_member if mode == "parallel" else serial_member
    results = []
    for source in args.word:
        w = parse_word(source, symtab)
        results.append({"word": w.to_json(), "member": decide(lang, w)})
    return "pass", {"mode": mode, "advice": args.advice, "results": results}


def cmd_pump_refute(args) -> tuple[str, dict]:
    symtab = _load_symtab(args.symtab)
    g = _load_grammar(args.grammar, symtab)
    if args.predicate not in corpus.LANGUAGES:
        raise UsageError(
            f"unknown predicate {args.predicate!r}; available: {', '.join(sorted(corpus.LANGUAGES))}"
        )
    predicate = corpus.LANGUAGES[args.predicate].predicate
    outcome = refute_subset(g, predicate, args.max_len)
    if isinstance(outcome, Inconclusive):
        return "inconclusive", {"examined": outcome.examined, "max_len": args.max_len}
    payload = {"witness": outcome.to_json(), "predicate": args.predicate}
    return "pass", payload


def cmd_suite(args) -> tuple[str, dict]:
    results = acceptance.run_all(seed=args.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    verdict = "pass" if all(r.passed for r in results) else "fail"
    return verdict, {"seed": args.seed, "criteria": [r.to_json() for r in results]}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="langlab",
        description="Formal-language lab: nested-palindrome corpus, swap scans, "
        "advised membership, pumping refutations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--symtab", help="JSON file mapping letter names to integers")
        return p

    p = add("enumerate", cmd_enumerate, "list members of a corpus language or grammar")
    p.add_argument("--lang", help="corpus language name")
    p.add_argument("--length", type=int, help="exact length for --lang")
    p.add_argument("--show-grammar", action="store_true", help="include the language's grammar text")
    p.add_argument("--grammar", help="grammar file")
    p.add_argument("--max-len", type=int, help="length bound for --grammar")

    p = add("member", cmd_member, "decide membership of one word")
    p.add_argument("--lang", help="corpus language name")
    p.add_argument("--grammar", help="grammar file (decided through CYK)")
    p.add_argument("--word", required=True, help="comma-separated letters")

    p = add("intersect-check", cmd_intersect_check, "verify the two-grammar intersection identity")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--force", action="store_true", help="override the cost guard")

    p = add("slice-stats", cmd_slice_stats, "midsection occurrence table of a slice")
    p.add_argument("--lang", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--advice", help="builtin advice name or JSON table file")
    p.add_argument("--force", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("bound-check", cmd_bound_check, "nesting-slice midsection bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--force", action="store_true")

    p = add("swap-scan", cmd_swap_scan, "exhaustive midsection swap scan")
    p.add_argument("--lang", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j-min", type=int, required=True)
    p.add_argument("--j-max", type=int, required=True)
    p.add_argument("--i-min", type=int)
    p.add_argument("--i-max", type=int)
    p.add_argument("--advice", help="builtin advice name or JSON table file")
    p.add_argument("--force", action="store_true")
    p.add_argument("--limit", type=int, default=100_000_000, help="membership call budget")

    p = add("params", cmd_params, "exact swap parameter chain for a constant m")
    p.add_argument("--m", type=int, required=True)

    p = add("advice-check", cmd_advice_check, "advised membership verdicts for words")
    p.add_argument("--inner", help="inner language: grammar text or DFA .json")
    p.add_argument("--advice", required=True, help="builtin name or JSON table file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--parallel", action="store_true")
    mode.add_argument("--serial", action="store_true")
    p.add_argument("--word", action="append", required=True, help="repeatable")

    p = add("pump-refute", cmd_pump_refute, "refute a grammar-inside-predicate claim by pumping")
    p.add_argument("--grammar", required=True)
    p.add_argument("--predicate", required=True, help="corpus language name")
    p.add_argument("--max-len", type=int, required=True)

    p = add("suite", cmd_suite, "run the whole acceptance battery")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)

    return parser


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _emit_csv(payload: dict) -> None:
    print("i,u,count")
    for row in payload["table"]:
        u = " ".join(map(str, row["u"]))
        print(f"{row['i']},{u},{row['count']}")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.perf_counter()
    try:
        verdict, payload = args.fn(args)
    except (
        UsageError,
        CostGuardError,
        GrammarError,
        AutomatonError,
        AdviceError,
        WordError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        _emit({"command": args.command, "error": f"{type(exc).__name__}: {exc}"})
        return 2
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    if args.command == "slice-stats" and getattr(args, "format", "json") == "csv":
        _emit_csv(payload)
        return 0
    inputs = {
        k: v
        for k, v in vars(args).items()
        if k not in ("fn", "command") and v is not None and not callable(v)
    }
    _emit(
        {
            "command": args.command,
            "inputs": inputs,
            "verdict": verdict,
            "payload": payload,
            "elapsed_ms": elapsed_ms,
        }
    )
    return 1 if verdict == "fail" else 0


if __name__ == "__main__":
    sys.exit(main())
