"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible under
pytest too). Run ``python3 tests/test_acceptance.py`` for the bare report.
"""

import sys
import time

import pytest

from f1rep.verification import BUDGETS, CLAIMS, run_claims

CRITERIA = sorted({c.criterion for c in CLAIMS})


def evaluate(criterion: int):
    start = time.perf_counter()
    results = run_claims([str(criterion)])
    seconds = time.perf_counter() - start
    ok = bool(results) and all(r.ok for r in results)
    budget = BUDGETS.get(criterion)
    limit = f", budget {budget}s" if budget else ""
    parts = "; ".join(f"{r.claim.id}: {'ok' if r.ok else 'FAILED'} ({r.detail})" for r in results)
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s{limit}) {parts}"
    return ok, line


@pytest.mark.parametrize("criterion", CRITERIA)
def test_criterion(criterion, capsys):
    ok, line = evaluate(criterion)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    outcomes = [evaluate(c) for c in CRITERIA]
    for _, line in outcomes:
        print(line)
    sys.exit(0 if all(ok for ok, _ in outcomes) else 1)
