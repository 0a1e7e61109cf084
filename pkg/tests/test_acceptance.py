"""Acceptance criteria 1-10, each at exact tolerance.

Every test prints one ``[PASS]``/``[FAIL]`` line, visible even when pytest
captures output.
"""
import contextlib
import io

import pytest

from hypertangent import verify
from hypertangent.cli import main


@pytest.fixture
def report(capsys):
    def emit(crit: verify.Criterion) -> None:
        with capsys.disabled():
            print("\n" + crit.line())
        assert crit.passed, crit.failures[:5]
    return emit


def test_criterion_01_h1_two_paths(report):
    report(verify.criterion_h1_two_paths(max_n=8, max_d=6))


def test_criterion_02_hrr_threefolds(report):
    report(verify.criterion_hrr())


def test_criterion_03_h2_table(report):
    report(verify.criterion_h2_table())


def test_criterion_04_conjecture_consistency(report):
    report(verify.criterion_conjecture())


def test_criterion_05_surface_defect(report):
    report(verify.criterion_surfaces())


def test_criterion_06_deformation_space(report):
    report(verify.criterion_deformation_space())


def test_criterion_07_tensor_identities(report):
    crit = verify.criterion_tensor_identities(trials=200, seed=0)
    assert crit.checks == 400
    report(crit)


def test_criterion_08_fibers(report):
    crit = verify.criterion_fibers(points=20, alphas=5, seed=0)
    report(crit)


def test_criterion_09_bott(report):
    report(verify.criterion_bott())


def _verify_json(seed: int) -> tuple[int, bytes]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["verify-paper", "--format", "json", "--seed", str(seed)])
    return code, buf.getvalue().encode()


def test_criterion_10_determinism(report):
    code_a, first = _verify_json(0)
    code_b, second = _verify_json(0)
    same = first == second
    crit = verify.Criterion("C10", "verify-paper twice with one seed gives byte-identical JSON",
                            same and code_a == code_b == 0, 2,
                            [] if same else ["JSON output differs between runs"])
    if code_a != 0:
        crit.failures.append(f"verify-paper exited {code_a}")
    report(crit)


@pytest.mark.parametrize("fault, expected", [
    ("chi", {"C2", "C3", "C5"}),
    ("bott", {"C9"}),
    ("basis", {"C6"}),
])
def test_negative_controls(fault, expected):
    failed = set()
    for crit in (verify.criterion_hrr(fault), verify.criterion_h2_table(fault),
                 verify.criterion_surfaces(fault), verify.criterion_deformation_space(fault),
                 verify.criterion_bott(fault)):
        if not crit.passed:
            failed.add(crit.key)
    assert failed == expected
