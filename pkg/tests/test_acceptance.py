"""Acceptance criteria 1-14 at the pinned sample counts and tolerances.

Each test prints one PASS/FAIL line (visible with ``pytest -s``) before asserting.
"""
import os
import subprocess
import sys

import pytest

from modwedge import verify


def _report(result):
    print()
    print(result.line(), result.metrics)
    return result


@pytest.mark.parametrize("number", sorted(verify.CHECKS), ids=lambda k: f"criterion_{k:02d}")
def test_criterion(number):
    result = _report(verify.CHECKS[number](seed=0))
    assert result.passed, result.metrics


def _verify_all(path):
    env = dict(os.environ)
    env.pop("MODWEDGE_SEED", None)
    proc = subprocess.run([sys.executable, "-m", "modwedge", "verify", "--all", "--out", str(path)],
                          capture_output=True, text=True, env=env)
    return proc.returncode, path.read_bytes() if path.exists() else b""


def test_criterion_14_cli_determinism(tmp_path):
    rc1, first = _verify_all(tmp_path / "a.json")
    rc2, second = _verify_all(tmp_path / "b.json")
    passed = rc1 == 0 and rc2 == 0 and first == second and len(first) > 0
    print()
    print(f"criterion 14 [{'PASS' if passed else 'FAIL'}] CLI determinism", {"exit_codes": [rc1, rc2],
                                                                         "identical": first == second})
    assert passed
