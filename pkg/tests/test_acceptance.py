"""Acceptance gate: every primary criterion, run through the verify registry at seed 0."""

import pytest

from hessform.verify import run_verify_suite

pytestmark = pytest.mark.acceptance

CRITERIA = [f"C{n}" for n in range(1, 16)]


@pytest.mark.parametrize("criterion", CRITERIA)
def test_criterion(criterion, capsys):
    report = run_verify_suite(criterion, seed=0)
    failed = [r for r in report.results if not r.passed]
    verdict = "PASS" if report.results and not failed else "FAIL"
    with capsys.disabled():
        print(f"\n{criterion} {verdict} ({len(report.results)} checks, {report.elapsed_ms:.0f} ms)")
        for r in failed:
            print(f"    {r.name}: {r.detail}")
    assert report.results, f"{criterion} has no registered checks"
    assert not failed, "; ".join(f"{r.name}: {r.detail}" for r in failed)
