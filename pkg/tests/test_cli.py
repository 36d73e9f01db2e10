import csv
import io
import json

import pytest

from dilemma import classical_rule, loss, optimal_rule, rule_fp
from dilemma.cli import build_parser, run


def run_ok(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    assert code == 0, out.err
    return out.out


def test_exit_codes(capsys):
    assert run([]) == 2
    assert run(["--help"]) == 0
    assert run(["no-such-command"]) == 2
    assert run(["optimal", "--n", "4", "--w", "0.5", "--theta", "0.6"]) == 2
    assert run(["optimal", "--n", "3", "--w", "0.5", "--theta", "abc"]) == 2
    assert run(["optimal", "--n", "3", "--w", "1.5", "--theta", "0.6"]) == 2
    err = capsys.readouterr().err
    assert "error:" in err


def test_optimal_text(capsys):
    out = run_ok(capsys, "optimal", "--n", "3", "--w", "0.5", "--theta", "0.6")
    assert "classes: (3,0) (2,1) (1,2) (1,0)" in out
    assert "antichain (classes): (1,2) (1,0)" in out
    assert "antichain (tables): (2,0,0,1) (1,2,0,0) (1,1,1,0)" in out
    assert "loss=0.39776" in out


def test_optimal_json_round_trip(capsys):
    out = run_ok(capsys, "optimal", "--n", "3", "--w", "0.5", "--theta", "0.6",
                 "--format", "json")
    rec = json.loads(out)
    rule = optimal_rule(3, 0.5, 0.6)
    assert rec["antichain_tables"] == [list(T) for T in rule.antichain]
    assert rec["classes"] == [list(c) for c in rule.positive_classes()]
    ev = loss(rule, 0.5, 0.6)
    assert rec["p_fp"] == ev.p_fp
    assert rec["p_fn"] == ev.p_fn
    assert rec["loss"] == ev.loss


def test_optimal_with_per_voter_thetas(capsys):
    out = run_ok(capsys, "optimal", "--n", "3", "--w", "0.5",
                 "--theta", "0.6,0.7,0.8", "--format", "json")
    rec = json.loads(out)
    assert rec["thetas"] == [0.6, 0.7, 0.8]
    assert rec["antichain_tables"] == [[2, 0, 0, 1], [1, 1, 1, 0]]


def test_rank_default_covers_both_modes(capsys):
    out = run_ok(capsys, "rank", "--n", "3", "--w", "0.5", "--theta", "0.6")
    assert "mode extended" in out and "mode compact" in out
    assert out == run_ok(capsys, "rank", "--n", "3", "--w", "0.5",
                         "--theta", "0.6")


def test_rank_json_round_trip(capsys):
    out = run_ok(capsys, "rank", "--n", "3", "--w", "0.5", "--theta", "0.6",
                 "--mode", "extended", "--k", "4", "--format", "json")
    rec = json.loads(out)
    assert rec["mode"] == "extended"
    assert [r["rank"] for r in rec["rules"]] == [1, 2, 3, 4]
    from dilemma import DecisionRule

    for entry in rec["rules"]:
        rule = DecisionRule.from_antichain(3, [tuple(T) for T in entry["antichain"]])
        ev = loss(rule, 0.5, 0.6)
        assert entry["loss"] == ev.loss
        assert entry["p_fp"] == ev.p_fp
        assert entry["p_fn"] == ev.p_fn


def test_rank_respects_bounds(capsys):
    assert run(["rank", "--n", "7", "--w", "0.5", "--theta", "0.6",
                "--mode", "extended"]) == 2
    assert "force" in capsys.readouterr().err
    out = run_ok(capsys, "rank", "--n", "7", "--w", "0.5", "--theta", "0.7",
                 "--mode", "compact", "--k", "1")
    assert "[pb]" in out


def test_classify_text_frozen_thresholds(capsys):
    out = run_ok(capsys, "classify", "--n", "7", "--w", "0.5")
    for needle in ("(3,4)", "(2,3)", "(1,2)", "(2,5)", "(1,4)", "(1,6)"):
        assert needle in out
    for value in ("0.6658", "0.6628", "0.6478", "0.5449", "0.5326", "0.5141"):
        assert value in out


def test_classify_precision_flag(capsys):
    out = run_ok(capsys, "classify", "--n", "3", "--w", "0.5",
                 "--precision", "6")
    assert "0.647799" in out


def test_classify_csv_and_json(capsys):
    out = run_ok(capsys, "classify", "--n", "3", "--w", "0.5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10
    byclass = {(int(r["rho"]), int(r["alpha"])): r for r in rows}
    assert byclass[(3, 0)]["type"] == "b"
    assert byclass[(0, 1)]["intervals"] == ""
    assert byclass[(1, 2)]["intervals"].startswith("0.5000:0.6478")

    out = run_ok(capsys, "classify", "--n", "3", "--w", "0.5", "--format", "json")
    rec = json.loads(out)
    assert len(rec) == 10
    entry = next(e for e in rec if e["class"] == [1, 2])
    assert entry["type"] == "c"
    (lo, hi), = entry["intervals"]
    assert lo == 0.5 and hi == pytest.approx(0.6477988712610356, abs=1e-9)


def test_decide(capsys):
    out = run_ok(capsys, "decide", "--n", "3", "--w", "0.5", "--theta", "0.6",
                 "--table", "1,1,1,0")
    assert "-> C" in out and "class (1,0)" in out and "type b" in out
    out = run_ok(capsys, "decide", "--n", "3", "--w", "0.5", "--theta", "0.6",
                 "--table", "0,1,1,1", "--format", "json")
    rec = json.loads(out)
    assert rec["verdict"] == "¬C" and rec["good"] is False
    assert rec["class"] == [-1, 0]
    assert run(["decide", "--n", "3", "--w", "0.5", "--theta", "0.6,0.7",
                "--table", "1,1,1,0"]) == 2
    assert run(["decide", "--n", "3", "--w", "0.5", "--theta", "0.6",
                "--table", "1,1,1"]) == 2
    assert run(["decide", "--n", "5", "--w", "0.5", "--theta", "0.6",
                "--table", "1,1,1,0"]) == 2


def test_region_csv(capsys):
    out = run_ok(capsys, "region", "--n", "3", "--grid", "6")
    lines = out.strip().splitlines()
    assert lines[0] == "theta,w,pb_optimal_exact,pb_optimal_sufficient"
    assert len(lines) == 37
    for line in lines[1:]:
        theta, w, exact, sufficient = line.split(",")
        assert 0.5 < float(theta) < 1.0
        assert 0.0 < float(w) < 1.0
        assert exact in "01" and sufficient in "01"
        if sufficient == "1":
            assert exact == "1"


def test_hasse_stdout_and_file(tmp_path, capsys):
    out = run_ok(capsys, "hasse", "--n", "3", "--mode", "quotient")
    assert out.startswith("digraph") and out.count(" -> ") == 12
    target = tmp_path / "graph.dot"
    blank = run_ok(capsys, "hasse", "--n", "3", "--mode", "reduced",
                   "--output", str(target))
    assert blank == ""
    text = target.read_text()
    assert text.count(" -> ") == 10
    alias = run_ok(capsys, "hasse", "--n", "3", "--mode", "optimality_reduced")
    assert alias == text


def test_simulate_json(capsys):
    argv = ("simulate", "--n", "3", "--theta", "0.6", "--state", "PnQ",
            "--trials", "20000", "--seed", "5", "--rule", "pb")
    out = run_ok(capsys, *argv)
    rec = json.loads(out)
    assert rec["rng"] == "pcg64"
    assert rec["spec"]["seed"] == 5
    assert sum(e["count"] for e in rec["tables"]) == 20000
    p = rule_fp(classical_rule("pb", 3), 0.6)
    assert abs(rec["positive"]["rate"] - p) <= 5 * rec["positive"]["stderr"]
    assert out == run_ok(capsys, *argv)


def test_simulate_text(capsys):
    out = run_ok(capsys, "simulate", "--n", "3", "--theta", "0.6", "--state",
                 "PQ", "--trials", "1000", "--seed", "5", "--format", "text")
    assert "rng=pcg64" in out
    assert "(3,0,0,0)" in out


def test_count_text(capsys):
    out = run_ok(capsys, "count", "--n", "3")
    assert "tables=13" in out
    assert "classes=10" in out
    assert "whitney=1,1,3,3,3,1,1" in out
    assert "max_antichain_extended=3" in out
    assert "max_antichain_quotient=2" in out
    assert "upper_sets_extended=36" in out
    assert "upper_sets_quotient=16" in out
    assert "upper_sets_optimality_reduced=12" in out


def test_count_respects_bounds(capsys):
    code = run(["count", "--n", "7"])
    out = capsys.readouterr()
    assert code == 0
    assert "upper_sets_extended" not in out.out
    assert "upper_sets_quotient=256" in out.out
    assert "skipped" in out.err
    forced = run_ok(capsys, "count", "--n", "7", "--force")
    assert "upper_sets_extended=38904" in forced


def test_count_json(capsys):
    rec = json.loads(run_ok(capsys, "count", "--n", "5", "--format", "json"))
    assert rec["tables"] == 34
    assert rec["upper_sets"] == {"extended": 768, "quotient": 64,
                                 "optimality_reduced": 33}
    assert sum(rec["whitney"]) == 34


def test_parser_builds_all_subcommands():
    parser = build_parser()
    text = parser.format_help()
    for name in ("optimal", "rank", "classify", "decide", "region", "hasse",
                 "simulate", "count"):
        assert name in text
