import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from lcac.cli import main

CORPUS = Path(__file__).parent / "corpus"


def c(name):
    return str(CORPUS / name)


def run_json(capsys, argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize(
    "name", ["vir.lca", "w_ab.lca", "w10.lca", "mab.lca", "sl2.lca", "table_rows.lca", "ext_first.lca", "ext_second.lca", "implicit.lca"]
)
def test_passing_documents_exit_zero(name, capsys):
    assert main(["check", c(name)]) == 0


@pytest.mark.parametrize("name", ["fail_jacobi.lca", "fail_morphism.lca", "fail_cocycle.lca"])
def test_failing_documents_exit_one(name, capsys):
    code, report = run_json(capsys, ["check", c(name)])
    assert code == 1
    bad = [e for e in report if e["status"] == "fail"]
    assert bad and bad[0]["payload"]["witnesses"]


@pytest.mark.parametrize("name", ["bad_paren.lca", "bad_reserved.lca", "bad_reference.lca", "bad_name.lca"])
def test_input_errors_exit_two(name, capsys):
    assert main(["check", c(name)]) == 2
    err = capsys.readouterr().err
    assert name in err


def test_syntax_error_carries_position(capsys):
    main(["check", c("bad_paren.lca")])
    assert "bad_paren.lca:3:17:" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nope.lca")]) == 2


def test_unknown_target_is_input_error(capsys):
    assert main(["classify", c("w10.lca"), "--algebra", "Nope"]) == 2
    assert main(["reduce", c("ext_first.lca"), "--extension", "Nope", "--shift", "B"]) == 2


def test_empty_report_is_empty_list(tmp_path, capsys):
    path = tmp_path / "empty.lca"
    path.write_text("# nothing here\n")
    code, report = run_json(capsys, ["check", str(path)])
    assert code == 0 and report == []


def test_classify_w10(capsys):
    code, (entry,) = run_json(capsys, ["classify", c("w10.lca"), "--algebra", "W", "--degree-bound", "6"])
    assert code == 0
    assert entry["status"] == "solution-space"
    assert entry["payload"]["degree_bound"] == 6
    (family,) = entry["payload"]["families"]
    assert family["actions"]["Y"] == "gamma"


def test_classify_with_bound_parameters(capsys):
    code, (entry,) = run_json(capsys, ["classify", c("w_ab.lca"), "--algebra", "W", "--set", "a=1", "--set", "b=0"])
    assert code == 0 and entry["payload"]["families"]


def test_classify_unbound_parameters_fails(capsys):
    code, (entry,) = run_json(capsys, ["classify", c("w_ab.lca"), "--algebra", "W"])
    assert code == 1 and "bind" in entry["payload"]["error"]


def test_set_rejects_undeclared(capsys):
    assert main(["classify", c("w_ab.lca"), "--algebra", "W", "--set", "zz=1"]) == 2


def test_reduce_first_setting(capsys):
    code, (entry,) = run_json(capsys, ["reduce", c("ext_first.lca"), "--extension", "E", "--shift=-B"])
    assert code == 0
    assert entry["payload"]["g"] == "2*d + 5"
    assert entry["payload"]["sign"] == "-"


def test_reduce_sign_flag(capsys):
    code, (entry,) = run_json(capsys, ["reduce", c("ext_first.lca"), "--extension", "E", "--shift", "B", "--sign", "-"])
    assert code == 0 and entry["payload"]["g"] == "2*d + 5"


def test_reduce_second_setting(capsys):
    code, (entry,) = run_json(capsys, ["reduce", c("ext_second.lca"), "--extension", "E", "--shift", "A"])
    assert code == 0 and entry["payload"]["g"] == "d^2 + 1"


def test_no_reduction_carries_degree_bound(capsys):
    code, report = run_json(capsys, ["check", c("table_rows.lca")])
    assert code == 0
    nored = [e for e in report if e["status"] == "no-reduction"]
    assert len(nored) == 3
    assert all(e["payload"]["degree_bound"] == 12 for e in nored)


def test_degree_bound_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("LCAC_DEGREE_BOUND", "3")
    _, (entry,) = run_json(capsys, ["classify", c("w10.lca"), "--algebra", "W"])
    assert entry["payload"]["degree_bound"] == 3
    _, (entry,) = run_json(capsys, ["classify", c("w10.lca"), "--algebra", "W", "--degree-bound", "5"])
    assert entry["payload"]["degree_bound"] == 5


def test_annihilation_table(capsys):
    code, (entry,) = run_json(capsys, ["annihilation-table", c("vir.lca"), "--max-index", "2"])
    assert code == 0
    assert entry["payload"]["max_index"] == 2
    rows = entry["payload"]["rows"]
    assert len(rows) == 9
    assert "[L_(1), L_(2)] = (-1) L_(2)" in rows
    assert "[L_(2), L_(0)] = (2) L_(1)" in rows


def test_json_is_deterministic(capsys):
    argv = ["check", c("mab.lca"), "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_timings_flag(capsys):
    code, report = run_json(capsys, ["check", c("vir.lca")])
    assert all(e["millis"] == 0 for e in report)
    main(["check", c("table_rows.lca"), "--timings", "--json"])
    report = json.loads(capsys.readouterr().out)
    assert any(e["millis"] > 0 for e in report)


def test_console_script():
    exe = shutil.which("lcac")
    cmd = [exe] if exe else [sys.executable, "-m", "lcac.cli"]
    proc = subprocess.run([*cmd, "check", c("fail_jacobi.lca")], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "BAD" in proc.stdout
