"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or use
``knotgenus verify --suite paper`` for the full table.
"""

import pytest

from knotgenus.verify import CRITERIA, FAIL, SKIP, run_suite

_RESULTS = {}


def _result(k):
    if not _RESULTS:
        for r in run_suite():
            _RESULTS[r.number] = r
    return _RESULTS[k]


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k):
    r = _result(k)
    print(f"\ncriterion {k}: {r.status} - {r.title}")
    for line in r.lines:
        print(f"    {line}")
    if r.status == SKIP:
        pytest.skip(f"criterion {k} exceeded its budget")
    assert r.status != FAIL, "\n".join(r.lines)
