"""Acceptance gate: one test per criterion, printing the measured-vs-expected line.

The assertions and tolerances live in `udwharvest.validation`, which is also
what `udwharvest validate` runs, so the CLI and this module cannot drift.
"""

import pytest

from udwharvest import validation


def _run(fn):
    result = fn()
    print()
    print(result.line())
    return result


def test_a1_appendix_oracle():
    assert _run(validation.check_a1_appendix_oracle).passed


def test_a2_detour_eps_invariance():
    assert _run(validation.check_a2_eps_invariance).passed


def test_a3_direct_ieps_regression():
    assert _run(validation.check_a3_ieps_instability).passed


def test_a4_edr_asymptotes():
    assert _run(validation.check_a4_edr_asymptotes).passed


def test_a5_near_horizon_unruh_vaidya():
    assert _run(validation.check_a5_unruh_vaidya_agreement).passed


def test_a6_death_zones():
    assert _run(validation.check_a6_death_zones).passed


def test_a7_interpolation():
    assert _run(validation.check_a7_interpolation).passed


def test_a8_asymptotic_limits():
    assert _run(validation.check_a8_asymptotics).passed


@pytest.mark.xfail(strict=True, reason="the exact outgoing-null map gives "
                   "ubar -> -4M + (4M/e)U as U -> 0 (series of the principal W branch), "
                   "so the literal -4MU comparison cannot hold; the physical content "
                   "is asserted by the A8 near/kernel clauses")
def test_a8_near_literal_form():
    assert _run(validation.check_a8_near_literal).passed


def test_a9_structural_invariants():
    assert _run(validation.check_a9_structural).passed


def test_a9_parallel_serial_equivalence():
    assert _run(validation.check_a9_parallel_serial).passed
