"""Command line interface: schemas, exit codes, and determinism."""

import csv
import io
import json
from fractions import Fraction

import pytest

from votelab import suites
from votelab.cli import main
from votelab.fileio import read_gswf, read_scf
from votelab.rules import ScfRule
from votelab.suites import SuiteReport
from votelab.welfare import gswf_from_scf, majority_g, neutral_tensor

SCHEMA = ("metric", "indices", "mode", "num", "den", "value", "ci95",
          "samples", "seed")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_metrics_exact_json(capsys):
    code, out, err = run(capsys, "metrics", "--scf", "plurality", "--n", "3",
                         "--exact")
    assert code == 0
    rows = json.loads(out)
    assert all(tuple(r) == SCHEMA for r in rows)
    by_key = {(r["metric"], tuple(r["indices"])): r for r in rows}
    assert by_key[("M_i", (0,))]["num"] == "2"
    assert by_key[("M_i", (0,))]["den"] == "81"
    assert by_key[("M_total", ())]["num"] == "2"
    assert by_key[("mab", (0, 1))]["num"] == "4"
    assert by_key[("nab", (1, 2))]["num"] == "0"
    assert by_key[("dist_dictatorship", (0,))]["num"] == "10"
    assert by_key[("range_min", (1,))]["num"] == "7"
    assert by_key[("is_neutral", ())]["num"] == "0"
    assert by_key[("is_anonymous", ())]["num"] == "1"
    assert all(r["mode"] == "exact" for r in rows)


def test_metrics_csv_to_file(capsys, tmp_path):
    out_path = tmp_path / "m.csv"
    code, out, err = run(capsys, "metrics", "--scf", "borda", "--n", "2",
                         "--exact", "--format", "csv", "--out", str(out_path))
    assert code == 0 and out == ""
    rows = list(csv.reader(io.StringIO(out_path.read_text())))
    assert rows[0] == list(SCHEMA)
    assert any(r[0] == "M_total" for r in rows[1:])


def test_metrics_named_rule_with_argument(capsys):
    code, out, _ = run(capsys, "metrics", "--scf", "dictatorship:1", "--n", "2",
                       "--exact")
    assert code == 0
    rows = json.loads(out)
    by_key = {(r["metric"], tuple(r["indices"])): r for r in rows}
    assert by_key[("M_total", ())]["num"] == "0"
    assert by_key[("dist_dictatorship", (1,))]["num"] == "0"


def test_metrics_sampled_deterministic_across_workers(capsys):
    args = ("metrics", "--scf", "plurality", "--n", "5", "--samples", "60000",
            "--seed", "11")
    code1, out1, _ = run(capsys, *args, "--workers", "1")
    code2, out2, _ = run(capsys, *args, "--workers", "8")
    assert code1 == code2 == 0
    assert out1 == out2
    rows = json.loads(out1)
    sampled = [r for r in rows if r["mode"] == "sampled"]
    assert sampled and all(r["samples"] is not None for r in sampled)


def test_metrics_four_alternatives_skips_pair_metrics(capsys):
    code, out, _ = run(capsys, "metrics", "--scf", "borda", "--m", "4",
                       "--n", "2", "--exact")
    assert code == 0
    metrics_seen = {r["metric"] for r in json.loads(out)}
    assert "mab" not in metrics_seen and "nab" not in metrics_seen
    assert "M_total" in metrics_seen


def test_metrics_unknown_rule_exits_2(capsys):
    code, out, err = run(capsys, "metrics", "--scf", "approval", "--n", "3")
    assert code == 2
    assert "error:" in err


def test_metrics_missing_n_exits_2(capsys):
    code, _, err = run(capsys, "metrics", "--scf", "plurality")
    assert code == 2 and "required" in err


def test_metrics_budget_exits_2(capsys):
    code, _, err = run(capsys, "metrics", "--scf", "plurality", "--n", "13",
                       "--exact")
    assert code == 2 and "error:" in err


def test_reduce_json_and_gswf_file(capsys, tmp_path):
    gpath = tmp_path / "plu.gswf"
    code, out, _ = run(capsys, "reduce", "--scf", "plurality", "--n", "3",
                       "--gswf-out", str(gpath))
    assert code == 0
    payload = json.loads(out)
    by_key = {(r["metric"], tuple(r["indices"])): r for r in payload["reports"]}
    assert by_key[("nt", ())]["num"] == "1"
    assert by_key[("nt", ())]["den"] == "18"
    assert by_key[("dist_tr3", ())]["num"] == "19"
    assert by_key[("chain_holds", ())]["num"] == "1"
    assert by_key[("eps1", ())]["num"] == "4"
    assert payload["nearest_member"] == "dictator(0)"
    assert payload["tables"]["01"] == "00010111"
    G = read_gswf(gpath)
    assert G == gswf_from_scf(ScfRule("plurality"), tie_voter=0, n=3)


def test_reduce_csv(capsys):
    code, out, _ = run(capsys, "reduce", "--scf", "borda", "--n", "2",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    metrics_seen = {r[0] for r in rows[1:]}
    assert {"nt", "mab", "nab", "dist_tr3", "chain_holds"} <= metrics_seen


def test_verify_pass_and_json(capsys):
    code, out, err = run(capsys, "verify", "cauchy", "--trials", "3",
                         "--seed", "1")
    assert code == 0
    d = json.loads(out)
    assert d["suite"] == "cauchy" and d["ok"] is True


def test_verify_failure_exits_1(capsys, monkeypatch):
    failing = SuiteReport("cauchy", 5, 3, {"suite": "cauchy", "n": 2,
                                           "scf": {"name": "borda", "m": 3,
                                                   "params": {}}}, 0.1)
    monkeypatch.setattr(suites, "run_suite",
                        lambda name, **kw: failing)
    code, out, err = run(capsys, "verify", "cauchy")
    assert code == 1
    assert "2 of 5" in err
    assert json.loads(out)["ok"] is False


def test_verify_replay_round_trip(capsys, tmp_path):
    ce = {"suite": "shifting", "n": 2, "indices": [0, 1, 4]}
    path = tmp_path / "ce.json"
    path.write_text(json.dumps(ce))
    code, out, _ = run(capsys, "verify", "--replay", str(path))
    assert code == 0
    assert "holds" in out


def test_verify_replay_accepts_suite_report_wrapper(capsys, tmp_path):
    wrapped = {"suite": "shifting", "instances": 1, "passes": 0,
               "counterexample": {"suite": "shifting", "n": 2, "indices": [2]}}
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(wrapped))
    code, out, _ = run(capsys, "verify", "--replay", str(path))
    assert code == 0


def test_verify_replay_malformed_exits_2(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text(json.dumps({"hello": 1}))
    code, _, err = run(capsys, "verify", "--replay", str(path))
    assert code == 2 and "error:" in err


def test_verify_without_suite_exits_2(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2 and "suite" in err


def test_gen_scf_round_trip(capsys, tmp_path):
    path = tmp_path / "r.scf3"
    code, out, _ = run(capsys, "gen", "--scf", "random_table:9", "--n", "3",
                       "--out", str(path))
    assert code == 0
    table = read_scf(path)
    assert table == ScfRule("random_table", seed=9).as_table(3)
    code2, out2, _ = run(capsys, "metrics", "--scf", str(path), "--exact")
    assert code2 == 0
    assert json.loads(out2)


def test_gen_gswf_named(capsys, tmp_path):
    path = tmp_path / "maj.gswf"
    code, _, _ = run(capsys, "gen", "--g", "majority", "--n", "3",
                     "--out", str(path))
    assert code == 0
    assert read_gswf(path) == neutral_tensor(majority_g(3), 3).to_gswf()


def test_gen_requires_exactly_one_source(capsys, tmp_path):
    code, _, err = run(capsys, "gen", "--out", str(tmp_path / "x"))
    assert code == 2
    code2, _, err2 = run(capsys, "gen", "--scf", "plurality", "--g", "majority",
                         "--n", "2", "--out", str(tmp_path / "y"))
    assert code2 == 2


def test_file_n_mismatch_exits_2(capsys, tmp_path):
    path = tmp_path / "t.scf3"
    run(capsys, "gen", "--scf", "plurality", "--n", "2", "--out", str(path))
    code, _, err = run(capsys, "metrics", "--scf", str(path), "--n", "3",
                       "--exact")
    assert code == 2 and "disagrees" in err


def test_mutually_exclusive_modes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["metrics", "--scf", "plurality", "--n", "2", "--exact",
              "--samples", "100"])
    assert exc.value.code == 2
