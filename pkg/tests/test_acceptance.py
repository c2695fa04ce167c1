"""Acceptance suite: every criterion runs at its stated scope and prints
one pass/fail line.  Set PERMRAT_EXTENDED=1 to include the extended
search range 27 < q <= 81 in criterion 1 (budget: one hour)."""

import os

import pytest

from permrat.verify import CHECKS, check_table_reproduction, run_check

EXTENDED = os.environ.get("PERMRAT_EXTENDED", "") not in ("", "0")


@pytest.mark.parametrize("name,fn", CHECKS, ids=[c[0] for c in CHECKS])
def test_criterion(name, fn):
    kwargs = {"extended": EXTENDED} if fn is check_table_reproduction else {}
    result = run_check(name, fn, **kwargs)
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] criterion {result.name} ({result.seconds:.1f}s): "
          f"{result.detail}")
    assert result.passed, result.detail
