from __future__ import annotations

import json
import re

import pytest

from leibniz_cohomology.cli import main
from leibniz_cohomology.lie_core import build_so_n, dump_algebra


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hl_dims_h3(capsys):
    code, out, _ = run(capsys, "hl-dims", "--algebra", "h_n", "--n", "3", "--max-degree", "4",
                       "--coefficients", "adjoint", "--format", "json")
    assert code == 0
    assert json.loads(out)["dims"] == {"0": 0, "1": 1, "2": 1, "3": 1, "4": 1}


def test_hl_dims_degree_zero(capsys):
    code, out, _ = run(capsys, "hl-dims", "--algebra", "h_n", "--n", "3", "--max-degree", "0")
    assert code == 0
    assert "dims [0]" in out


def test_hl_dims_abelian(capsys):
    code, out, _ = run(capsys, "hl-dims", "--algebra", "j_n", "--n", "2", "--max-degree", "1",
                       "--coefficients", "adjoint")
    assert code == 0
    assert "dims [2, 4]" in out


def test_table_and_json_agree(capsys):
    args = ["lie-dims", "--algebra", "h_n", "--n", "3", "--coefficients", "trivial", "--max-degree", "6"]
    _, table, _ = run(capsys, *args)
    _, js, _ = run(capsys, *args, "--format", "json")
    from_table = json.loads(re.search(r"dims (\[.*\])", table).group(1))
    data = json.loads(js)
    assert from_table == [data["dims"][str(k)] for k in range(7)] == [1, 0, 0, 2, 0, 0, 1]


def test_json_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target, threads in ((a, "1"), (b, "4")):
        assert main(["rel-dims", "--format", "json", "--output", str(target), "--threads", threads,
                     "--mode", "modular", "--seed", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_relative_commands(capsys):
    code, out, _ = run(capsys, "hr-dims", "--max-degree", "3")
    assert code == 0 and "dims [2, 0, 0, 1]" in out
    code, out, _ = run(capsys, "les", "--which", "rel")
    assert code == 0 and "exact: yes" in out
    code, out, _ = run(capsys, "les", "--which", "coadjoint", "--format", "json")
    assert code == 0 and all(node["exact"] for node in json.loads(out)["exactness"])


def test_usage_errors_exit_64(capsys):
    for argv in (["hl-dims", "--bogus"], ["frobnicate"], ["hl-dims", "--max-degree", "-1"],
                 ["verify", "connection", "--identity", "nope"]):
        with pytest.raises(SystemExit) as err:
            main(argv)
        assert err.value.code == 64
    capsys.readouterr()
    code, _, err = run(capsys, "hl-dims", "--algebra", "no_such_algebra")
    assert code == 64 and "usage error" in err
    code, _, _ = run(capsys, "hl-dims", "--algebra", "h_n", "--n", "1")
    assert code == 64
    code, _, _ = run(capsys, "hl-dims", "--min-degree", "3", "--max-degree", "1")
    assert code == 64


def test_resource_limit_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("LEIBNIZ_COH_MODULAR_ROWS", "100")
    code, _, err = run(capsys, "hl-dims", "--max-degree", "2")
    assert code == 2
    assert '"rows": 216' in err


def test_algebra_check(capsys, tmp_path):
    good = tmp_path / "so4.json"
    dump_algebra(build_so_n(4), str(good))
    code, out, _ = run(capsys, "algebra", "check", str(good))
    assert code == 0 and "dimension 6" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels": ["a", "b", "c"],
                               "brackets": [{"i": 0, "j": 1, "coeffs": [{"k": 2, "value": "1"}]},
                                            {"i": 0, "j": 2, "coeffs": [{"k": 0, "value": "1"}]}]}))
    code, _, err = run(capsys, "algebra", "check", str(bad))
    assert code == 1 and "JacobiViolation" in err


def test_algebra_file_as_input(capsys, tmp_path):
    path = tmp_path / "so3.json"
    dump_algebra(build_so_n(3), str(path))
    code, out, _ = run(capsys, "lie-dims", "--algebra", str(path), "--coefficients", "trivial")
    assert code == 0 and "dims [1, 0, 0, 1]" in out


def test_catalog_dump(capsys):
    code, out, _ = run(capsys, "catalog", "dump", "--n", "4")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 4 and "gamma*" in data["entries"]


def test_verify_invariants(capsys):
    code, out, _ = run(capsys, "verify", "invariants", "--n", "3", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
    # the stated sign of delta Gamma fails at even n
    code, out, _ = run(capsys, "verify", "invariants", "--n", "4")
    assert code == 1
    assert "FAIL  delta Gamma" in out


def test_verify_connection(capsys):
    code, out, _ = run(capsys, "verify", "connection", "--identity", "one-dim", "--degree", "3",
                       "--cases", "20", "--seed", "7", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["batteries"][0]["passed"] == 20
    code, out, _ = run(capsys, "verify", "connection", "--dim", "3", "--degree", "2", "--cases", "3")
    assert code == 0 and "FAIL" not in out


def test_verify_all_n3(capsys):
    code, out, _ = run(capsys, "verify", "all", "--n", "3")
    assert code == 0
    assert out.strip().endswith("overall: PASS")


def test_algebra_shorthand_sets_n(capsys):
    code, out, _ = run(capsys, "lie-dims", "--algebra", "so_4", "--coefficients", "trivial",
                       "--max-degree", "6", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4
    assert [payload["dims"][str(k)] for k in range(7)] == [1, 0, 0, 2, 0, 0, 1]


def test_verify_full_battery_alias(capsys):
    code, _, _ = run(capsys, "verify", "paper", "--n", "3", "--format", "json")
    assert code == 0
