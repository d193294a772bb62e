"""Command-line front end: JSON reports, exit codes, file formats."""

import json

from langlab.cli import main
from langlab.grammars import dfa_to_json, Dfa


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_member_of_the_nesting_language(capsys):
    code, doc = run_json(capsys, "member", "--lang", "L2", "--word", "1,2,6,3,15,30,10,5")
    assert code == 0
    assert doc["verdict"] == "pass"
    assert doc["payload"]["member"] is True


def test_member_against_a_grammar_file(capsys, tmp_path):
    path = tmp_path / "pal.cfg"
    path.write_text("S -> '0' S '0' | '1' S '1' | '0' '0' | '1' '1'\n")
    code, doc = run_json(capsys, "member", "--grammar", str(path), "--word", "0,1,1,0")
    assert code == 0 and doc["payload"]["member"] is True
    code, doc = run_json(capsys, "member", "--grammar", str(path), "--word", "0,1,1,1")
    assert code == 0 and doc["payload"]["member"] is False


def test_member_with_symbolic_letters(capsys):
    code, doc = run_json(capsys, "member", "--lang", "L2_dprime", "--word", "a,b,c,c")
    assert code == 0 and doc["payload"]["member"] is True


def test_params_chain(capsys):
    code, doc = run_json(capsys, "params", "--m", "1")
    assert code == 0
    assert {k: doc["payload"][k] for k in ("n", "k", "j0")} == {"n": 288, "k": 72, "j0": 36}
    assert all(doc["payload"]["checks"].values())


def test_intersect_check(capsys):
    code, doc = run_json(capsys, "intersect-check", "--max-len", "8")
    assert code == 0 and doc["verdict"] == "pass"
    counts = {lv["n"]: lv["count"] for lv in doc["payload"]["levels"]}
    assert counts[4] == 2 and counts[8] == 4


def test_intersect_check_guard_is_exit_2(capsys):
    code, doc = run_json(capsys, "intersect-check", "--max-len", "13")
    assert code == 2 and "error" in doc


def test_enumerate_language_by_name(capsys):
    code, doc = run_json(capsys, "enumerate", "--lang", "L2", "--length", "8")
    assert code == 0
    assert doc["payload"]["count"] == 4
    assert [1, 1, 3, 3, 15, 15, 5, 5] in doc["payload"]["words"]


def test_enumerate_shows_grammar_text(capsys):
    code, doc = run_json(capsys, "enumerate", "--lang", "L2_2", "--length", "2", "--show-grammar")
    assert code == 0
    assert "Y ->" in doc["payload"]["grammar"]


def test_enumerate_grammar_file(capsys, tmp_path):
    path = tmp_path / "g.cfg"
    path.write_text("S -> S S | 'a'\n")
    code, doc = run_json(capsys, "enumerate", "--grammar", str(path), "--max-len", "4")
    assert code == 0
    assert doc["payload"]["words"] == [[1], [1, 1], [1, 1, 1], [1, 1, 1, 1]]


def test_slice_stats_json_and_csv(capsys):
    code, doc = run_json(capsys, "slice-stats", "--lang", "L2", "--n", "8", "--j", "2")
    assert code == 0
    assert doc["payload"]["size"] == 4
    assert doc["payload"]["max"]["count"] == 2
    code, out = run(capsys, "slice-stats", "--lang", "L2", "--n", "8", "--j", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "i,u,count"
    assert "3,3 15,2" in lines


def test_bound_check(capsys):
    code, doc = run_json(capsys, "bound-check", "--n", "8", "--j", "2")
    assert code == 0 and doc["verdict"] == "pass"
    assert doc["payload"]["bound"] == 2 and doc["payload"]["ok"] is True


def test_swap_scan_on_the_nesting_slice(capsys):
    code, doc = run_json(
        capsys, "swap-scan", "--lang", "L2", "--n", "8", "--j-min", "1", "--j-max", "2"
    )
    assert code == 0
    assert doc["payload"]["count"] == 0 and doc["payload"]["witnesses"] == []


def test_swap_scan_on_a_tracked_slice(capsys):
    code, doc = run_json(
        capsys,
        "swap-scan", "--lang", "L2", "--n", "8", "--j-min", "1", "--j-max", "2",
        "--advice", "leq",
    )
    assert code == 0
    assert doc["payload"]["origin"].endswith("+leq")
    assert doc["payload"]["count"] == 0


def test_slice_stats_on_a_tracked_slice(capsys):
    code, doc = run_json(
        capsys,
        "slice-stats", "--lang", "L2", "--n", "8", "--j", "2", "--advice", "leq",
    )
    assert code == 0
    assert doc["payload"]["size"] == 4
    assert doc["payload"]["max"]["count"] == 2


def test_swap_scan_guard(capsys):
    code, doc = run_json(
        capsys,
        "swap-scan", "--lang", "L2", "--n", "8", "--j-min", "1", "--j-max", "2",
        "--limit", "3",
    )
    assert code == 2 and "error" in doc


def test_advice_check_builtin(capsys):
    code, doc = run_json(
        capsys,
        "advice-check", "--advice", "leq-parallel", "--parallel",
        "--word", "0,0,1,1", "--word", "0,1,0,1",
    )
    assert code == 0
    assert [r["member"] for r in doc["payload"]["results"]] == [True, False]


def test_advice_check_serial_with_dfa_file(capsys, tmp_path):
    contains_one = Dfa(
        states=frozenset({"no", "yes"}),
        alphabet=frozenset({0, 1}),
        transitions={("no", 0): "no", ("no", 1): "yes", ("yes", 0): "yes", ("yes", 1): "yes"},
        start="no",
        accepting=frozenset({"yes"}),
    )
    dfa_path = tmp_path / "m.json"
    dfa_path.write_text(json.dumps(dfa_to_json(contains_one)))
    advice_path = tmp_path / "advice.json"
    advice_path.write_text(json.dumps({"2": [0, 0]}))
    code, doc = run_json(
        capsys,
        "advice-check", "--inner", str(dfa_path), "--advice", str(advice_path),
        "--serial", "--word", "0,1", "--word", "0,0",
    )
    assert code == 0
    assert [r["member"] for r in doc["payload"]["results"]] == [True, False]


def test_advice_check_rejects_wrong_mode(capsys):
    code, doc = run_json(
        capsys, "advice-check", "--advice", "leq-parallel", "--serial", "--word", "0,1"
    )
    assert code == 2 and "error" in doc


def test_pump_refute_witness(capsys, tmp_path):
    path = tmp_path / "blocks.cfg"
    path.write_text("S -> '0' S | '0' T\nT -> '1' T | '1'\n")
    code, doc = run_json(
        capsys, "pump-refute", "--grammar", str(path), "--predicate", "L_eq", "--max-len", "20"
    )
    assert code == 0 and doc["verdict"] == "pass"
    witness = doc["payload"]["witness"]
    assert witness["violating"][0] in (0, 2, 3, 4)


def test_pump_refute_inconclusive(capsys, tmp_path):
    path = tmp_path / "ones.cfg"
    path.write_text("S -> '1' S | '1'\n")
    code, doc = run_json(
        capsys, "pump-refute", "--grammar", str(path), "--predicate", "L_eq", "--max-len", "12"
    )
    assert code == 0 and doc["verdict"] == "inconclusive"
    assert doc["payload"]["examined"] == 0


def test_unknown_language_is_exit_2(capsys):
    code, doc = run_json(capsys, "member", "--lang", "nope", "--word", "1")
    assert code == 2 and "unknown language" in doc["error"]


def test_malformed_grammar_file_is_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("S -> 'zzz'\n")
    code, doc = run_json(capsys, "member", "--grammar", str(path), "--word", "1")
    assert code == 2 and "error" in doc


def test_usage_error_is_exit_2(capsys):
    assert main(["member", "--word"]) == 2
    assert main(["no-such-command"]) == 2


def test_reports_are_byte_deterministic(capsys):
    _, first = run(capsys, "params", "--m", "1")
    _, second = run(capsys, "params", "--m", "1")
    assert first == second


def test_suite_runs_green(capsys):
    code, out = run(capsys, "suite")
    doc = json.loads(out)
    assert code == 0
    assert doc["verdict"] == "pass"
    assert len(doc["payload"]["criteria"]) == 11
    assert all(c["passed"] for c in doc["payload"]["criteria"])
