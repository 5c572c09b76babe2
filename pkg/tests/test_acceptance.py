"""Acceptance gate: one test per criterion, each printing its PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines, or
``hqrlab verify -v`` for the same suite with per-case detail.
"""
import pytest

from hqrlab.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number):
    res = run_criterion(number, seed=1)
    print()
    print(res.line())
    for line in res.details:
        print("    " + line)
    assert res.passed, res.line()
