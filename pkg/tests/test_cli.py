import json
import subprocess
import sys

import pytest

from coloperad.cli import parse_config, run
from coloperad.frobenius import dw_frobenius


def call(capsys, *argv):
    code = run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_dw_count_example(capsys):
    assert call(capsys, "dw-count", "-g", "Z2", "--genus", "0", "--monodromy", "e,e,e") == (0, {"count": "4"})
    code, out = call(capsys, "dw-count", "-g", "Z4", "--genus", "1", "--monodromy", "a,a^-1")
    assert code == 0 and out == {"count": "64"}


def test_strata_example(capsys):
    assert call(capsys, "strata", "--genus", "1", "-n", "1", "-g", "trivial") == (0, {"classes": 2})
    assert call(capsys, "strata", "--genus", "0", "-n", "4") == (0, {"classes": 4})
    code, out = call(capsys, "strata", "--genus", "1", "-n", "1", "-g", "Z2", "--full")
    assert code == 0 and len(out["strata"]) == out["classes"]


def test_group_and_groupoid_commands(capsys):
    code, out = call(capsys, "group-info", "-g", "S3")
    assert code == 0 and out["order"] == 6 and len(out["classes"]) == 3
    code, out = call(capsys, "loop-groupoid", "-g", "S3")
    assert code == 0 and out["objects"] == 6 and out["components"] == 3
    code, out = call(capsys, "groupoid-algebra", "-g", "Z2")
    assert code == 0 and out["dim"] == 4 and out["check"]["ok"]


def test_free_operad_and_monad_laws(capsys):
    code, out = call(capsys, "free-operad", "-g", "Z2", "-n", "4")
    assert code == 0 and out["classes"] == 6
    code, out = call(capsys, "check-monad-laws", "-g", "Z2", "--genus", "1", "-n", "1")
    assert code == 0 and out["ok"]


def test_free_operad_module_input(capsys, tmp_path):
    p = tmp_path / "module.json"
    p.write_text(json.dumps({"type": "representable", "support": [[0, 3]]}))
    code, out = call(capsys, "free-operad", "-g", "Z2", "-n", "3", "--input", str(p))
    assert code == 0 and out["classes"] == 8


def test_covers_and_gluing(capsys):
    code, out = call(capsys, "enumerate-covers", "-g", "Z2", "--monodromy", "e,e,e")
    assert code == 0 and out["count"] == 4 == len(out["covers"])
    code, out = call(capsys, "check-gluing", "-g", "S3", "--genus", "1", "--monodromy", "(12),(12)")
    assert code == 0 and out["ok"] and out["checked"] > 1
    code, out = call(capsys, "check-gluing", "-g", "Z2", "--max-weight", "4")
    assert code == 0 and out["ok"]


def test_check_frobenius_input(capsys, tmp_path):
    p = tmp_path / "alg.json"
    A = dw_frobenius("S3")
    p.write_text(json.dumps(A.to_dict()))
    code, out = call(capsys, "check-frobenius", "--input", str(p))
    assert code == 0 and out["ok"] and out["drinfeld"]["ok"]
    A.product[(1, 2)] = {A.group.mul[1][2]: 7}
    p.write_text(json.dumps(A.to_dict()))
    code, out = call(capsys, "check-frobenius", "--input", str(p))
    assert code == 1 and not out["axioms"]["wdvv"]["ok"]


@pytest.mark.parametrize("argv,kind", [
    (["dw-count", "-g", "Z9x"], "GroupValidationError"),
    (["dw-count", "-g", "Z2", "-n", "2"], "CountError"),
    (["dw-count", "-g", "Z2", "--monodromy", "e,e,q"], "ValueError"),
    (["nonsense"], "CLIError"),
    (["dw-count", "--genus", "x"], "CLIError"),
    (["free-operad", "-g", "S3", "-n", "5", "--bound", "10"], "IncompleteColimitError"),
    (["check-frobenius", "--input", "/nonexistent/alg.json"], "FileNotFoundError"),
    (["acceptance", "--workers", "0"], "CLIError"),
])
def test_errors_are_json(capsys, argv, kind):
    code, out = call(capsys, *argv)
    assert code == 2 and out["error"] == kind and out["message"]


def test_malformed_json_input(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, out = call(capsys, "check-frobenius", "--input", str(p))
    assert code == 2 and out["error"] == "JSONDecodeError"
    p.write_text(json.dumps({"group": "Z2"}))
    code, out = call(capsys, "check-frobenius", "--input", str(p))
    assert code == 2


def test_output_file(capsys, tmp_path):
    p = tmp_path / "out.json"
    assert run(["dw-count", "-g", "S3", "--monodromy", "(12),(12),e", "--output", str(p)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(p.read_text()) == {"count": "12"}


def test_rationals_are_strings(capsys):
    code, out = call(capsys, "check-gluing", "-g", "Z2", "--genus", "0", "--monodromy", "e,e,e,e")
    assert code == 0
    code, out = call(capsys, "dw-count", "-g", "S3", "--genus", "2")
    assert out == {"count": "81"}


def test_config():
    cfg = parse_config(["dw-count", "-g", "Z3", "--genus", "2", "--workers", "3"])
    assert (cfg.command, cfg.group, cfg.genus, cfg.workers) == ("dw-count", "Z3", 2, 3)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coloperad", "dw-count", "-g", "Z2", "--genus", "1",
                           "--monodromy", "e"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"count": "4"}
