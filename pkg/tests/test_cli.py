import json

import pytest

from submaxlie.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rank_plain_output(capsys):
    code, out, err = run_cli(capsys, "rank", "--n", "5")
    assert code == 0
    assert out == "rk=9 submax=8\n"
    assert err == ""


def test_rank_json_and_csv(capsys):
    code, out, _ = run_cli(capsys, "rank", "--n", "6", "--format", "json")
    assert code == 0
    assert json.loads(out)["p_rank"] == 12
    code, out, _ = run_cli(capsys, "rank", "--n", "6", "--format", "csv")
    assert out.splitlines() == ["n,rk,submax", "6,12,11"]


def test_tables_md(capsys):
    code, out, _ = run_cli(capsys, "tables", "--n", "6", "--level", "submax",
                           "--format", "md")
    assert code == 0
    assert "| ev-high |" in out and "| ev-low |" in out
    assert "match: True" in out


def test_tables_json_match(capsys):
    code, out, _ = run_cli(capsys, "tables", "--n", "5", "--level", "max",
                           "--format", "json")
    body = json.loads(out)
    assert code == 0
    assert body["match"] is True
    assert [e["name"] for e in body["predicted"]] == ["rad:3"]


def test_enumerate_output(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--n", "2", "--r", "2")
    assert code == 0
    assert "2 commuting sets" in out


def test_fiber_json(capsys):
    code, out, _ = run_cli(capsys, "fiber", "--n", "5", "--p", "5",
                           "--lt", "odd", "--strategy", "search")
    body = json.loads(out)
    assert code == 0
    assert body["count"] == 5
    assert body["matches_family"] is True


def test_fiber_replay_md(capsys):
    code, out, _ = run_cli(capsys, "fiber", "--n", "6", "--lt", "ev-low",
                           "--strategy", "replay", "--format", "md")
    assert code == 0
    assert "solutions: 2" in out


def test_conjugacy_witness(capsys):
    code, out, _ = run_cli(capsys, "conjugacy", "--n", "5", "--r1", "odd",
                           "--r2",
                           '["1-4","1-5","1-6","2-4","2-5","2-6","3-5","3-6"]')
    assert code == 0
    assert out.startswith("witness:")


def test_conjugacy_none(capsys):
    code, out, _ = run_cli(capsys, "conjugacy", "--n", "5", "--r1", "rad:2",
                           "--r2", "rad:4", "--exhaustive")
    assert code == 0
    assert "no conjugating permutation" in out


def test_sample_ok(capsys):
    code, out, _ = run_cli(capsys, "sample", "--kind", "lt-lemma", "--n", "5",
                           "--samples", "10", "--seed", "4")
    assert code == 0
    assert "0 violations" in out


def test_usage_error_exit_2(capsys):
    code, out, err = run_cli(capsys, "tables", "--n", "5", "--level", "max",
                             "--budget", "0")
    assert code == 2
    assert err.startswith("error:")
    code, _, err = run_cli(capsys, "fiber", "--n", "5", "--lt", "ev-low")
    assert code == 2
    assert err.startswith("error:")


def test_budget_refusal_exit_3(capsys):
    code, out, err = run_cli(capsys, "enumerate", "--n", "7", "--r", "14",
                             "--budget", "100")
    assert code == 3
    assert err.startswith("refused:")


def test_bad_subcommand_exit_2(capsys):
    assert main(["bogus"]) == 2


def test_deterministic_json_output(capsys):
    argv = ["sample", "--kind", "dichotomy", "--n", "5", "--samples", "12",
            "--seed", "21", "--format", "json"]
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_subset(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite",
                           "size-equation,ideals", "--n-max", "6")
    assert code == 0
    assert "PASS" in out and "suite passed" in out


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "p-rank",
                           "--n-max", "5", "--format", "json")
    body = json.loads(out)
    assert code == 0
    assert body["passed"] is True


def test_verify_all_to_n_max_6_exits_clean(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "all",
                           "--n-max", "6")
    assert code == 0
    assert out.count("PASS") == 10
    assert "suite passed" in out
