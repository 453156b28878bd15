import json
import os
import subprocess
import sys

import pytest

from voakit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_single_case(capsys):
    code, out = run(capsys, "verify", "--case", "wang-c2")
    assert code == 0 and "[PASS   ] wang-c2" in out


def test_verify_failing_case_exit_code(capsys):
    code, out = run(capsys, "verify", "--case", "c2-central-charge", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["cases"][0]["status"] == "fail"


def test_verify_unknown_case(capsys):
    assert main(["verify", "--case", "nope"]) == 2


def test_skipped_cases_do_not_fail(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("VOAKIT_DATA", raising=False)
    code, out = run(capsys, "verify", "--case", "bp-u05-coeff", "--data", str(tmp_path))
    assert code == 0 and "SKIPPED" in out
    assert "VOAKIT_DATA" not in os.environ
    from voakit.presets import data_dir
    assert (data_dir() / "bp_ope.json").exists()


def test_env_overrides_data(capsys, tmp_path, monkeypatch):
    import voakit
    from pathlib import Path
    monkeypatch.setenv("VOAKIT_DATA", str(Path(voakit.__file__).parent / "data"))
    code, out = run(capsys, "verify", "--case", "bp-u05-coeff", "--data", str(tmp_path))
    assert code == 0 and "[PASS   ] bp-u05-coeff" in out


def test_json_is_byte_stable(capsys):
    _, a = run(capsys, "verify", "--case", "ising-hopf", "--case", "singlet-weights", "--json")
    _, b = run(capsys, "verify", "--case", "ising-hopf", "--case", "singlet-weights", "--json")
    assert a == b


def test_timing_flag(capsys):
    _, out = run(capsys, "verify", "--case", "singlet-weights", "--json", "--timing")
    assert "elapsed" in json.loads(out)["cases"][0]


def test_nth_product(capsys):
    code, out = run(capsys, "nth-product", "--preset", "S(1)", "--a", "beta1", "--b", "gamma1", "-n", "0")
    assert code == 0 and out.strip() == "1"


def test_canon(capsys):
    _, out = run(capsys, "canon", "--preset", "S(1)", ":gamma1 beta1:")
    assert out.strip() == ":beta1 gamma1:"


def test_parse_error_exit(capsys):
    assert main(["canon", "--preset", "S(1)", ":beta1"]) == 2


def test_lattice_commands(capsys, tmp_path):
    f = tmp_path / "a2.json"
    f.write_text(json.dumps({"rank": 2, "gram": [[2, -1], [-1, 2]]}))
    _, out = run(capsys, "lattice", "discriminant", str(f))
    assert json.loads(out)["invariants"] == [3]
    g = tmp_path / "z.json"
    g.write_text(json.dumps({"rank": 1, "gram": [[1]], "weight_form": [["-3/8"]]}))
    _, out = run(capsys, "lattice", "check-extension", str(g), "--sub", "[[4]]")
    assert json.loads(out)["result"] == "voa"
    amb = tmp_path / "amb.json"
    amb.write_text(json.dumps({"rank": 2, "gram": [[4, 0], [0, 1]]}))
    _, out = run(capsys, "lattice", "complement", str(amb), "--sub", "[[1,2]]")
    assert json.loads(out)["basis"] == [["1", "-2"]]


def test_char_commands(capsys, tmp_path):
    _, out = run(capsys, "char", "standard", "affine_sl2", "--param", "k=2", "--param", "omega=1", "--order", "14")
    f = tmp_path / "m1.json"
    f.write_text(out)
    code, out = run(capsys, "char", "criterion", str(f), "--form", "[[1/4]]", "--lam", "[2]", "--order", "6")
    assert code == 0 and json.loads(out)["holds"]
    _, out = run(capsys, "char", "branch", str(f), "--form", "[[1/4]]", "--mu", "[1]", "--order", "6")
    assert json.loads(out)["terms"][0]["exponent"] == "1/24"


def test_mtc_hopf(capsys):
    import voakit
    from pathlib import Path
    data = Path(voakit.__file__).parent / "data" / "ising.json"
    code, out = run(capsys, "mtc", "hopf", "--data", str(data), "--J", "K_1/2", "--X", "K_1/16", "--P", "K_1/16")
    assert code == 0 and json.loads(out)["results"][0]["case"] == "case1_Szero"


def test_modrep_commands(capsys, tmp_path):
    (tmp_path / "l.json").write_text(json.dumps({"rank": 1, "gram": [["1/4"]], "basis": [[2]]}))
    (tmp_path / "d.json").write_text(json.dumps({"lattice_ref": "l.json", "orbit_reps": [[0], [2]],
                                                  "labels": {"0": "K_0", "2": "K_1/2"}, "period": [[4]]}))
    _, out = run(capsys, "modrep", "regroup", str(tmp_path / "d.json"))
    assert json.loads(out)["quotient"] == "Z/2"
    (tmp_path / "D.json").write_text(json.dumps({"layers": [[[0, 1]], [[1, 1], [0, 0]], [[0, 1]]]}))
    _, out = run(capsys, "modrep", "fuse", str(tmp_path / "D.json"), "--element", "1,0", "--modulus", "2,2")
    assert json.loads(out)["layers"] == [[[1, 1]], [[0, 1], [1, 0]], [[1, 1]]]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "voakit", "verify", "--case", "singlet-weights"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "singlet-weights" in p.stdout
