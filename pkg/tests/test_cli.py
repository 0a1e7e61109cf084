import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from hypertangent.cli import main

DATA = resources.files("hypertangent") / "data"

RECORD_SCHEMA = {
    "type": "object",
    "required": ["command", "parameters", "results"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "parameters": {"type": "object", "additionalProperties": {"type": "string"}},
        "results": {"type": "array", "items": {"type": "object"}},
        "timing": {"type": "object"},
    },
}

VERIFY_ROW = {
    "type": "object",
    "required": ["key", "title", "passed", "checks", "failures"],
    "properties": {
        "key": {"type": "string"},
        "passed": {"enum": ["yes", "no"]},
        "checks": {"type": "string", "pattern": "^[0-9]+$"},
        "failures": {"type": "array", "items": {"type": "string"}},
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    rec = json.loads(out) if out else None
    if rec is not None:
        jsonschema.validate(rec, RECORD_SCHEMA)
    return code, rec, err


def no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(no_floats(v) for v in obj)
    return True


@pytest.mark.parametrize("args, value", [
    (("bott", "--n", "4", "--i", "1", "--j", "1", "--k", "0"), "1"),
    (("bott", "--n", "4", "--i", "0", "--j", "1", "--k", "5"), "224"),
    (("chi", "--n", "4", "--d", "2"), "-9"),
    (("h1", "--n", "4", "--d", "4"), "105"),
    (("h2", "--n", "4", "--d", "5"), "224"),
    (("conjecture", "--d", "4"), "45"),
    (("defect", "--d", "3"), "30"),
])
def test_values(capsys, args, value):
    code, rec, _ = run_json(capsys, *args)
    assert code == 0
    assert rec["results"][0]["value"] == value
    assert no_floats(rec)


def test_h2_conjectured_flag(capsys):
    code, rec, _ = run_json(capsys, "h2", "--n", "4", "--d", "6")
    row = rec["results"][0]
    assert code == 0 and row["value"] == "670" and row["status"] == "conjectured"


def test_h2_reported_and_unknown(capsys):
    _, rec, _ = run_json(capsys, "h2", "--n", "5", "--d", "3")
    assert rec["results"][0]["status"] == "reported, Fermat only"
    _, rec, _ = run_json(capsys, "h2", "--n", "5", "--d", "2")
    assert rec["results"][0]["status"] == "unknown" and rec["results"][0]["value"] is None


@pytest.mark.parametrize("args, needle", [
    (("bott", "--n", "4", "--i", "2", "--j", "5", "--k", "1"), "j=5"),
    (("h1", "--n", "3", "--d", "4"), "n >= 4"),
    (("chase", "--sequence-file", "/nonexistent/file.txt"), "error"),
])
def test_errors_exit_nonzero(capsys, args, needle):
    code, out, err = run(capsys, *args)
    assert code == 2 and out == "" and needle in err


def test_text_and_csv(capsys):
    code, out, _ = run(capsys, "chi", "--n", "4", "--d", "4")
    assert code == 0 and "-59" in out.splitlines()[2]
    code, out, _ = run(capsys, "chi", "--n", "4", "--d", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["value"] == "-59" and rows[0]["flags"] == "closed_form=agrees"


def test_def_basis(capsys, tmp_path):
    out = tmp_path / "basis.json"
    code, rec, _ = run_json(capsys, "def-basis", "--n", "4", "--d", "3", "--out", str(out))
    assert code == 0 and rec["results"][0]["dimension"] == "40"
    obj = json.loads(out.read_text())
    assert len(obj["tensors"]) == 40 and obj["kind"] == "basis"


def test_phi_check_fermat(capsys):
    code, rec, _ = run_json(capsys, "phi-check", "--n", "4", "--d", "4", "--points", "20",
                            "--primes", "3,5", "--seed", "0")
    assert code == 0
    fibers = [r for r in rec["results"] if r["kind"] == "fiber"]
    assert len(fibers) == 20
    assert all(r["dim_ker_mod_u"] == "3" and r["u_in_kernel"] == "yes" for r in fibers)
    assert rec["results"][-1]["status"] == "ok"


def test_phi_check_with_alpha_file(capsys, tmp_path):
    from hypertangent.fibers import degenerate_alpha
    from hypertangent.serialize import dumps, tensor_to_json
    from hypertangent.tensors import embed, fermat_tensor
    q = fermat_tensor(4, 3)
    path = tmp_path / "alpha.json"
    path.write_text(dumps(tensor_to_json(degenerate_alpha(q, [1, -1, 0, 0, 0]))))
    code, rec, _ = run_json(capsys, "phi-check", "--n", "4", "--d", "3", "--points", "3",
                            "--primes", "5", "--alpha-file", str(path))
    assert code == 0
    assert rec["results"][-2]["status"] == "warning"
    path.write_text(dumps(tensor_to_json(embed(q))))
    code, _, err = run(capsys, "phi-check", "--n", "4", "--d", "3", "--alpha-file", str(path))
    assert code == 2 and "deformation-space" in err


def test_chase_fixture_prints_derivation(capsys):
    code, out, _ = run(capsys, "chase", "--sequence-file", str(DATA / "basic_i.txt"))
    assert code == 0
    assert "h^0(Omega_X(3)) = h^0(Omega_P|X(3)) - h^0(O_X) + h^1(O_X) = 41 - 1 + 0 = 40" in out


def test_chase_inconsistent(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("fact A 0 5 given\nfact B 0 1 given\nseq s: 0, A@0, B@0, 0\n")
    code, rec, _ = run_json(capsys, "chase", "--sequence-file", str(f))
    assert code == 1 and rec["results"][0]["status"] == "inconsistent"


def test_verify_paper_fault_names_criteria(capsys):
    code, rec, _ = run_json(capsys, "verify-paper", "--grid-max-n", "5", "--grid-max-d", "3",
                            "--inject-fault", "chi")
    assert code == 1
    for row in rec["results"]:
        jsonschema.validate(row, VERIFY_ROW)
    failed = {r["key"] for r in rec["results"] if r["passed"] == "no"}
    assert failed == {"C2", "C3", "C5", "all"}


def test_timing_is_opt_in(capsys):
    _, rec, _ = run_json(capsys, "chi", "--n", "4", "--d", "3")
    assert "timing" not in rec
    _, rec, _ = run_json(capsys, "chi", "--n", "4", "--d", "3", "--timing")
    assert "seconds" in rec["timing"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypertangent.cli", "chi", "--n", "3", "--d", "3",
                           "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["value"] == "-29"
    proc = subprocess.run([sys.executable, "-m", "hypertangent.cli", "bott", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
