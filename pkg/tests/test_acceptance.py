"""Acceptance criteria A1-A12; each prints one PASS/FAIL line (run with ``-s`` to see them live)."""

import pytest

from fockd.verify import CRITERIA, run_criterion

LIMITS = {"A1": 10.0, "A2": 30.0, "A5": 120.0}


@pytest.mark.parametrize("cid", list(CRITERIA))
def test_criterion(cid, capsys):
    res = run_criterion(cid)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
    if cid in LIMITS:
        assert res.seconds < LIMITS[cid], f"{cid} took {res.seconds:.1f}s"
