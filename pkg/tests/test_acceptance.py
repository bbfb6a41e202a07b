"""Acceptance criteria AC-1..AC-9, one pass/fail line each (run with ``-s`` to see them).

Set ``GEOMPOLY_INCLUDE=A4,D4`` to add the optional rank-4 volume checks.
"""

import os

import pytest

from geompoly import acceptance

INCLUDE = tuple(t.strip().upper() for t in os.environ.get("GEOMPOLY_INCLUDE", "").split(",") if t.strip())


@pytest.mark.parametrize("key", list(acceptance.CRITERIA))
def test_criterion(key):
    res = acceptance.run_criterion(key, acceptance.DEFAULT_SEED, INCLUDE)
    print(f"\n{res.line()}")
    assert res.passed, res.details
