"""Acceptance battery: one test per criterion, each printing a pass/fail line.

Runtime bounds from the criteria are asserted where stated (the duality
suite under two minutes, the tree dichotomy under five, the whole battery
under ten).
"""

import pytest

from modlat import acceptance


def _check(result, bound_seconds=None):
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {result.name}: {result.detail} ({result.seconds:.2f}s)")
    assert result.passed, f"{result.name}: {result.detail}"
    if bound_seconds is not None:
        assert result.seconds < bound_seconds, (
            f"{result.name} took {result.seconds:.1f}s, bound {bound_seconds}s"
        )
    return result


RESULTS = []


def test_criterion_1_matlis_involution():
    RESULTS.append(_check(acceptance.criterion_matlis_involution(), bound_seconds=120))


def test_criterion_2_decomposition():
    RESULTS.append(_check(acceptance.criterion_decomposition()))


def test_criterion_3_meager_equivalence():
    RESULTS.append(_check(acceptance.criterion_meager_equivalence()))


def test_criterion_4_ideal_tree_dichotomy():
    RESULTS.append(_check(acceptance.criterion_ideal_tree_dichotomy(), bound_seconds=300))


def test_criterion_5_hilbert_samuel():
    RESULTS.append(_check(acceptance.criterion_hilbert_samuel()))


def test_criterion_6_pair_growth():
    RESULTS.append(_check(acceptance.criterion_pair_growth()))


def test_criterion_7_countability():
    RESULTS.append(_check(acceptance.criterion_countability()))


def test_criterion_8_continuity_audit():
    RESULTS.append(_check(acceptance.criterion_continuity_audit()))


def test_criterion_9_square_ideal_embedding():
    RESULTS.append(_check(acceptance.criterion_square_ideal_embedding()))


def test_criterion_10_oracle_equivalence():
    RESULTS.append(_check(acceptance.criterion_oracle_equivalence()))


def test_full_battery_under_ten_minutes():
    if len(RESULTS) < 10:
        pytest.skip("individual criteria did not all run")
    total = sum(r.seconds for r in RESULTS)
    print(f"total acceptance time: {total:.1f}s")
    assert total < 600
