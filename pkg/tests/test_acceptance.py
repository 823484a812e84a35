"""Acceptance run: every criterion on the default suite configuration.

Each criterion must report zero failures under exact arithmetic and finish
inside its single-threaded time budget. One summary line is printed per
criterion. Expect roughly ten minutes in total on one core.
"""

import time

import pytest

from sylab.suite import CRITERIA, SuiteConfig, run_criteria

BUDGET_S = {1: 300, 2: 300, 3: 120, 4: 120, 5: 600, 6: 600, 7: 300, 8: 300}


@pytest.mark.slow
@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    t0 = time.perf_counter()
    report = run_criteria(SuiteConfig(), criteria=(k,))
    elapsed = time.perf_counter() - t0
    rep = report["criteria"][str(k)]
    ok = rep["passed"] and elapsed < BUDGET_S[k]
    with capsys.disabled():
        print(
            f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} "
            f"({rep['name']}; checked {rep['checked']}, failures {rep['failures']}, "
            f"{elapsed:.1f}s of {BUDGET_S[k]}s)"
        )
        if k == 6 and "tree_quality" in report:
            worst = max((row[-1] for row in report["tree_quality"]["exact"]), default=None)
            print(f"criterion 6: edge quality, largest ratio to ln N ln ln N = {worst}")
    assert rep["passed"], rep["examples"]
    assert elapsed < BUDGET_S[k]
