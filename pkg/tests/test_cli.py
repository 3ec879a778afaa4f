import json
import os
import subprocess
import sys

import pytest

from branchsat.cli import main

from conftest import FIXTURES


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run_stdin(args, text):
    return subprocess.run(
        [sys.executable, "-m", "branchsat", *args], input=text, capture_output=True, text=True
    )


def test_solve_unit_from_stdin():
    r = run_stdin(["solve", "-"], "p cnf 1 1\n1 0\n")
    assert r.returncode == 10
    assert r.stdout == "s SATISFIABLE\nv 1 0\n"


def test_solve_unsat_exit_code(tmp_path, capsys):
    p = write(tmp_path, "u.cnf", "p cnf 1 2\n1 0\n-1 0\n")
    assert main(["solve", p]) == 20
    assert capsys.readouterr().out == "s UNSATISFIABLE\n"


def test_model_covers_declared_variables(tmp_path, capsys):
    p = write(tmp_path, "s.cnf", "p cnf 4 1\n2 0\n")
    assert main(["solve", p]) == 10
    assert capsys.readouterr().out == "s SATISFIABLE\nv -1 2 -3 -4 0\n"


def test_input_errors(tmp_path, capsys):
    assert main(["solve", write(tmp_path, "bad.cnf", "p cnf x 1\n")]) == 1
    assert main(["solve", str(tmp_path / "missing.cnf")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--no-such-flag", "x"])
    assert exc.value.code == 1


def test_factor(capsys):
    assert main(["factor", "3", "3"]) == 0
    assert capsys.readouterr().out == "1.259921\n"
    assert main(["factor", "0", "3"]) == 1


def test_stats_file(tmp_path, capsys):
    stats = tmp_path / "stats.json"
    p = os.path.join(FIXTURES, "cases", "Bad-2.cnf")
    assert main(["solve", "--exhaustive-audit", "--stats", str(stats), p]) == 10
    doc = json.loads(stats.read_text())
    assert set(doc) == {
        "verdict", "m", "n", "branching_nodes", "max_depth", "case_tallies", "reductions",
        "audit_violations", "potential_ratio", "elapsed_ms", "trace_hash",
    }
    assert doc["audit_violations"] == 0 and doc["potential_ratio"] <= 1
    assert doc["case_tallies"]["Bad-2"] >= 1


def test_oracle_check_refused_on_large_instance(capsys):
    p = os.path.join(FIXTURES, "bad_n30.cnf")
    assert main(["solve", "--oracle-check", p]) == 10
    captured = capsys.readouterr()
    assert "oracle check refused" in captured.err
    assert captured.out.startswith("s SATISFIABLE")


def test_oracle_check_passes(tmp_path, capsys):
    p = write(tmp_path, "x.cnf", "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n")
    assert main(["solve", "--oracle-check", p]) == 20
    assert "oracle check passed" in capsys.readouterr().err


def test_audit_log_and_trace(capsys):
    p = os.path.join(FIXTURES, "cases", "Good-4.1.1.cnf")
    assert main(["solve", "--audit", "--trace", p]) == 10
    err = capsys.readouterr().err
    assert "c audit depth=0" in err and "case=Good-4.1.1" in err
    assert "c trace R" in err


def test_budget_exit(capsys):
    p = os.path.join(FIXTURES, "bad_n30.cnf")
    assert main(["solve", "--node-budget", "0", p]) == 2


def test_audit_verb(capsys):
    p = os.path.join(FIXTURES, "cases", "Bad-1.cnf")
    assert main(["audit", p]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1].startswith("summary verdict=SAT") and "violations=0" in out[-1]
    assert all(line.endswith("ok") for line in out[:-1])


def test_strict_audit_passes_clean_instance(capsys):
    p = os.path.join(FIXTURES, "cases", "Good-3.4.3.cnf")
    assert main(["solve", "--strict-audit", "--exhaustive-audit", p]) == 10


def test_branch_order(capsys):
    p = os.path.join(FIXTURES, "cases", "Good-2.1.cnf")
    assert main(["solve", "--branch-order", "false-first", p]) == 10


def test_gen_is_reproducible(capsys):
    args = ["gen", "--seed", "7", "--n", "6", "--m", "9", "--widths", "2,3"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert "p cnf 6 9" in first


def test_gen_bad_config():
    assert main(["gen", "--seed", "1", "--n", "0"]) == 1


def test_bench_rows(tmp_path, capsys):
    man = write(tmp_path, "m.txt", "seed=1 mode=uniform n=6 m=20 widths=3\n"
                                   "seed=2 mode=degree3-adversarial n=12 m=0 widths=3\n")
    out = tmp_path / "rows.jsonl"
    assert main(["bench", man, "--exhaustive-audit", "--stats", str(out)]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["instance"] for r in rows] == [
        "seed=1 mode=uniform n=6 m=20 widths=3",
        "seed=2 mode=degree3-adversarial n=12 m=0 widths=3",
    ]
    assert all(r["audit_violations"] == 0 for r in rows)
