"""Acceptance battery: every release criterion at its stated tolerance.

Runs the full battery once per session (seed 42) and asserts each criterion,
printing one pass/fail line per criterion.  Criterion 5 is expected to fail:
the claim that *every* antisymmetric matrix yields a vanishing commutator is
false for n >= 2 (antisymmetry does not imply complex-linearity; see the
first_counterexample in its details and the strict xfail below).  The
complex-linear tangent subfamily, which is the provable hypothesis, is
asserted green inside the same criterion's details.
"""

import pytest

from bergmankit.acceptance import (
    canonical_report,
    criterion_11_determinism,
    run_criteria,
)

SEED = 42


@pytest.fixture(scope="module")
def battery():
    results = {r.id: r for r in run_criteria(SEED, range(1, 11))}
    for cid in sorted(results):
        print(results[cid].console_line())
    return results


def _assert_criterion(battery, cid):
    result = battery[cid]
    assert result.passed, f"criterion {cid} failed: {result.details}"


def test_criterion_1_projection_oracle(battery):
    _assert_criterion(battery, 1)
    assert battery[1].details["cases"] >= 3500


def test_criterion_2_projection_laws(battery):
    _assert_criterion(battery, 2)


def test_criterion_3_dz_unbounded(battery):
    _assert_criterion(battery, 3)
    assert battery[3].details["first_m_ratio_sq_above_1e3"] <= 200


def test_criterion_4_dzbar_unbounded(battery):
    _assert_criterion(battery, 4)


@pytest.mark.xfail(
    strict=True,
    reason="unattainable as stated: antisymmetry alone does not imply [X,P]=0 for "
    "n>=2 (needs complex-linearity, i.e. a unitary flow); the exact counterexample "
    "is reported in details.first_counterexample and the complex-linear subfamily "
    "passes (details.complex_linear_tangent_fields_passed)",
)
def test_criterion_5_tangent_commutation(battery):
    _assert_criterion(battery, 5)


def test_criterion_5_provable_part(battery):
    """The parts of criterion 5 that mathematics supports must hold."""
    details = battery[5].details
    assert details["rotation_field_passed"] is True
    assert details["complex_linear_tangent_fields_passed"] is True
    assert details["runtime_within_budget"] is True
    counterexample = details["first_counterexample"]
    assert counterexample is not None and counterexample["n"] >= 2
    assert counterexample["field_is_complex_linear"] is False


def test_criterion_6_tangency(battery):
    _assert_criterion(battery, 6)


def test_criterion_7_filtration(battery):
    _assert_criterion(battery, 7)
    assert battery[7].details["last_over_first"] > 10.0


def test_criterion_8_functional_calculus(battery):
    _assert_criterion(battery, 8)


def test_criterion_9_gelfand(battery):
    _assert_criterion(battery, 9)


def test_criterion_10_kernels(battery):
    _assert_criterion(battery, 10)


def test_criterion_11_determinism(battery):
    result = criterion_11_determinism(SEED, baseline=list(battery.values()))
    print(result.console_line())
    assert result.passed, result.details
    # and the canonical report built from this session is stable too
    report = canonical_report(list(battery.values()), SEED)
    assert report == canonical_report(list(battery.values()), SEED)
