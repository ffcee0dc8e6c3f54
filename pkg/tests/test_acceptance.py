"""All acceptance criteria at their stated tolerances and time limits.

Each test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary. The determinism criterion runs the installed console
script twice in fresh processes and compares the output byte for byte.
"""

import os
import shutil
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from wedgelab.acceptance import CRITERIA, DEFAULT_SEED, run_criterion

IN_PROCESS = [c for c in CRITERIA if c[0] != "determinism"]
DETERMINISM_LIMIT = dict((c[0], c[3]) for c in CRITERIA)["determinism"]


def _report(index: int, name: str, passed: bool, elapsed: float, limit: float, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    line = f"[{index:2d}] {status} {name:<20s} {elapsed:6.2f}s (limit {limit:.0f}s){detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.mark.parametrize("entry", IN_PROCESS, ids=[c[0] for c in IN_PROCESS])
def test_criterion(entry):
    name, _, _, limit = entry
    start = time.perf_counter()
    result = run_criterion(entry, DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    ok = result["passed"] and elapsed <= limit
    detail = f"  {result['error']}" if "error" in result else ""
    _report(CRITERIA.index(entry) + 1, name, ok, elapsed, limit, detail)
    assert result["passed"], result
    assert elapsed <= limit


def _suite_command() -> list[str]:
    exe = shutil.which("wedgelab")
    if exe:
        return [exe]
    return [sys.executable, "-m", "wedgelab.cli"]


def test_determinism_subprocess():
    cmd = _suite_command() + ["suite", "--seed", str(DEFAULT_SEED)]
    env = {k: v for k, v in os.environ.items() if k != "WEDGELAB_SEED"}
    start = time.perf_counter()
    runs = [subprocess.run(cmd, capture_output=True, env=env, check=False) for _ in range(2)]
    elapsed = time.perf_counter() - start
    same = runs[0].stdout == runs[1].stdout and bool(runs[0].stdout)
    codes = [r.returncode for r in runs]
    ok = same and codes == [0, 0] and elapsed <= DETERMINISM_LIMIT
    _report(len(CRITERIA), "determinism", ok, elapsed, DETERMINISM_LIMIT, f"  exit codes {codes}")
    assert codes == [0, 0], runs[0].stderr.decode()[-2000:]
    assert same
    assert elapsed <= DETERMINISM_LIMIT
