"""Acceptance gate: the ten verification criteria at full level.

Each test prints one PASS/FAIL line (run pytest with -s to see them all) and
fails if its criterion does not hold at the stated tolerance.
"""

import pytest

from wrlab import verify

_RESULTS = None


def _results():
    global _RESULTS
    if _RESULTS is None:
        _RESULTS = {r.check_id: r for r in verify.run_checks(level="full")}
    return _RESULTS


def _gate(check_id):
    result = _results()[check_id]
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {check_id} {result.name} ({result.seconds:.2f}s): {result.detail}")
    assert result.passed, f"{check_id} {result.name}: {result.detail}"


@pytest.mark.parametrize("check_id", [cid for cid, _, _ in verify.CHECKS])
def test_acceptance_criterion(check_id):
    _gate(check_id)


def test_runtime_budget():
    results = _results()
    assert results["c1"].seconds < 60.0
    assert results["c3"].seconds < 600.0
    assert sum(r.seconds for r in results.values()) < 1800.0
