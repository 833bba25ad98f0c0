"""The acceptance battery: every release-gating check as a callable criterion.

Each criterion returns a :class:`CriterionResult` whose ``details`` dict is
fully deterministic for a fixed seed (exact rationals, fixed-order float
computations, no timestamps), so the canonical JSON report of a run can be
compared byte for byte.  Wall-clock measurements live on the result object
itself for console display and never enter the canonical report; the two
runtime-budget criteria record only the boolean verdict.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .commutators import (
    WitnessFamily,
    divergence_scan,
    fit_loglog_slope,
    ratio_sq,
    verify_tangent_commutes,
)
from .fields import RealLinearVectorField, WirtingerDz, wirtinger_dzbar
from .filtration import OperatorOnD, seminorm_estimate
from .kernels import (
    BallSpace,
    FockSpace,
    WeightedDiskSpace,
    basis_partial_sum,
    kernel_eval,
    reproduce_polynomial,
    rkhs_inequality_suite,
    verify_peetre,
)
from .matrixcalc import Contour, gelfand_radius, holomorphic_calculus, spectrum
from .polynomials import MixedPolynomial, inner_product, norm_sq, term_keys_up_to
from .projection import project, project_monomial, project_via_kernel_series
from .rationals import GaussianRational
from .sampling import (
    random_antisymmetric_field,
    random_ball_point,
    random_mixed_polynomial,
    random_rational_point,
    random_real_field,
    random_unitary_generator_field,
)

DEFAULT_SEED = 42


@dataclass
class CriterionResult:
    id: int
    title: str
    passed: bool
    details: Dict
    elapsed_seconds: float = field(default=0.0, compare=False)

    def to_json_dict(self) -> dict:
        # elapsed time intentionally omitted: reports must be byte-reproducible
        return {"id": self.id, "title": self.title, "passed": self.passed, "details": self.details}

    def console_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.id:2d}: {self.title} ({self.elapsed_seconds:.1f}s)"


def _rng(seed: int, criterion_id: int) -> random.Random:
    return random.Random(seed * 1000 + criterion_id)


# ---------------------------------------------------------------------------
# Criteria 1-2: projection
# ---------------------------------------------------------------------------


def criterion_1_projection_oracle(seed: int) -> CriterionResult:
    """Closed-form monomial projection agrees exactly with the kernel-series oracle."""
    start = time.perf_counter()
    cases = 0
    mismatches = []
    for n in (1, 2, 3):
        for alpha, beta in term_keys_up_to(n, 8):
            closed = project_monomial(alpha, beta)
            oracle = project_via_kernel_series(MixedPolynomial.monomial(n, alpha, beta))
            if closed != oracle:
                mismatches.append({"n": n, "alpha": list(alpha), "beta": list(beta)})
            cases += 1
    spot = project_monomial((2,), (1,)) == MixedPolynomial.monomial(
        1, (1,), (0,), GaussianRational(Fraction(2, 3))
    )
    elapsed = time.perf_counter() - start
    within_budget = elapsed < 30.0
    passed = not mismatches and spot and within_budget
    return CriterionResult(
        1,
        "monomial projection equals kernel-series oracle exactly (deg<=8, n<=3)",
        passed,
        {
            "cases": cases,
            "mismatches": mismatches[:5],
            "spot_P_z2zbar_eq_2over3_z": spot,
            "runtime_budget_seconds": 30.0,
            "runtime_within_budget": within_budget,
            "provenance": "exact",
        },
        elapsed,
    )


def criterion_2_projection_laws(seed: int) -> CriterionResult:
    """Idempotence, self-adjointness, contraction, holomorphic fixed points; exact."""
    start = time.perf_counter()
    rng = _rng(seed, 2)
    idempotent = adjoint = contraction = fixed = True
    count = 200
    polys = []
    for k in range(count):
        n = 1 + k % 3
        polys.append(random_mixed_polynomial(rng, n, max_degree=8))
    for f in polys:
        pf = project(f)
        if project(pf) != pf:
            idempotent = False
        if norm_sq(pf) > norm_sq(f):
            contraction = False
        h = random_mixed_polynomial(rng, f.dimension, max_degree=8, holomorphic=True)
        if project(h) != h:
            fixed = False
    for f, g in zip(polys[0::2], polys[1::2]):
        if f.dimension != g.dimension:
            continue
        if inner_product(project(f), g) != inner_product(f, project(g)):
            adjoint = False
    passed = idempotent and adjoint and contraction and fixed
    return CriterionResult(
        2,
        "projection operator laws on 200 random polynomials, exact",
        passed,
        {
            "polynomials": count,
            "idempotence": idempotent,
            "self_adjointness": adjoint,
            "contraction": contraction,
            "holomorphic_fixed_points": fixed,
            "provenance": "exact",
        },
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Criteria 3-4: unboundedness scans
# ---------------------------------------------------------------------------


def criterion_3_dz_unbounded(seed: int) -> CriterionResult:
    """[d/dz_i, P] divergence: exact seed value, monotone growth, slope 2, threshold."""
    start = time.perf_counter()
    family = WitnessFamily(dimension=1)
    scan = divergence_scan(family, "dz", m_max=200, thresholds=(1e3,))
    seed_value_ok = scan.points[0].ratio_sq == Fraction(4, 9)
    monotone = all(
        scan.points[m].ratio_sq > scan.points[m - 1].ratio_sq for m in range(1, 100)
    )
    slope = fit_loglog_slope(scan.points, 50, 100)
    slope_ok = slope is not None and abs(slope - 2.0) <= 0.1
    threshold_m = scan.first_m_exceeding(1000)
    threshold_ok = threshold_m is not None and threshold_m <= 200
    passed = seed_value_ok and monotone and slope_ok and threshold_ok
    return CriterionResult(
        3,
        "unboundedness of [d/dz_i, P]: ratio 4/9 at m=1, monotone, slope 2.0+-0.1",
        passed,
        {
            "ratio_sq_m1": "4/9" if seed_value_ok else str(scan.points[0].ratio_sq),
            "strictly_increasing_m_le_100": monotone,
            "loglog_slope_m_50_100": slope,
            "first_m_ratio_sq_above_1e3": threshold_m,
            "provenance": "exact ratios, float(slope fit)",
        },
        time.perf_counter() - start,
    )


def criterion_4_dzbar_unbounded(seed: int) -> CriterionResult:
    """[P, d/dzbar_i] divergence plus the exact identity dzbar o P = 0."""
    start = time.perf_counter()
    rng = _rng(seed, 4)
    family = WitnessFamily(dimension=1)
    seed_value_ok = ratio_sq(family, 1, "dzbar") == Fraction(4, 3)
    scan = divergence_scan(family, "dzbar", m_max=100)
    slope = fit_loglog_slope(scan.points, 50, 100)
    slope_ok = slope is not None and abs(slope - 2.0) <= 0.1
    annihilation = True
    for k in range(200):
        n = 1 + k % 3
        f = random_mixed_polynomial(rng, n, max_degree=8)
        i = rng.randint(1, n)
        if not wirtinger_dzbar(i, project(f)).is_zero():
            annihilation = False
    passed = seed_value_ok and slope_ok and annihilation
    return CriterionResult(
        4,
        "unboundedness of [P, d/dzbar_i]: ratio 4/3 at m=1, slope 2.0+-0.1, dzbar∘P=0",
        passed,
        {
            "ratio_sq_m1": "4/3" if seed_value_ok else "mismatch",
            "loglog_slope_m_50_100": slope,
            "dzbar_after_project_vanishes_200_polys": annihilation,
            "provenance": "exact ratios, float(slope fit)",
        },
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Criteria 5-6: tangent fields
# ---------------------------------------------------------------------------


def criterion_5_tangent_commutation(seed: int) -> CriterionResult:
    """[X, P] = 0 exactly for tangent linear fields, monomials of degree <= 6.

    As stated this asserts vanishing for arbitrary antisymmetric rational
    matrices.  That is provable only for n = 1: for n >= 2 an antisymmetric
    matrix need not be complex-linear, its flow is orthogonal but not
    unitary, and the commutator picks up the antiholomorphic part of X(z_j)
    (e.g. [X,P]z_1 = sum_l C[1][l] zbar_l with C != 0).  The criterion is
    evaluated faithfully and reports the first counterexample; the details
    also record that the complex-linear (unitary-flow) subfamily does
    commute, which is the provable statement.
    """
    start = time.perf_counter()
    rng = _rng(seed, 5)
    rotation = RealLinearVectorField([[0, 1], [-1, 0]])
    rotation_report = verify_tangent_commutes(rotation, degree=8)
    random_ok = True
    checked = 0
    first_counterexample = None
    for n in (1, 2, 3):
        for _ in range(20):
            A = random_antisymmetric_field(rng, n)
            report = verify_tangent_commutes(A, degree=6)
            checked += report.checked
            if not report.passed:
                random_ok = False
                if first_counterexample is None:
                    first_counterexample = {
                        "n": n,
                        "alpha": list(report.counterexample[0]),
                        "beta": list(report.counterexample[1]),
                        "field_is_complex_linear": A.is_complex_linear(),
                    }

    unitary_ok = True
    for n in (1, 2, 3):
        for _ in range(20):
            A = random_unitary_generator_field(rng, n)
            if not verify_tangent_commutes(A, degree=6).passed:
                unitary_ok = False
    elapsed = time.perf_counter() - start
    within_budget = elapsed < 60.0
    passed = rotation_report.passed and random_ok and within_budget
    return CriterionResult(
        5,
        "tangent fields commute with P exactly (rotation d=8; 20 random per n in 1..3, d=6)",
        passed,
        {
            "rotation_field_passed": rotation_report.passed,
            "random_antisymmetric_fields_passed": random_ok,
            "first_counterexample": first_counterexample,
            "complex_linear_tangent_fields_passed": unitary_ok,
            "monomials_checked": checked,
            "runtime_budget_seconds": 60.0,
            "runtime_within_budget": within_budget,
            "note": "antisymmetry alone forces commutation only for n=1; the "
            "provable hypothesis for n>=2 adds complex-linearity (unitary flow), "
            "verified in complex_linear_tangent_fields_passed",
            "provenance": "exact",
        },
        elapsed,
    )


def criterion_6_tangency_criterion(seed: int) -> CriterionResult:
    """is_tangent agrees with the exact pointwise test x^t A x = 0, 50 matrices."""
    start = time.perf_counter()
    rng = _rng(seed, 6)
    agreements = 0
    disagreements = []
    for idx in range(50):
        n = 1 + idx % 3
        if idx % 2 == 0:
            A = random_antisymmetric_field(rng, n)
        else:
            A = random_real_field(rng, n)
        pointwise_zero = True
        for _ in range(100):
            x = random_rational_point(rng, 2 * n)
            scale = _rational_unit_scale(x)
            scaled = tuple(v * scale for v in x)
            if A.quadratic_form(scaled) != 0:
                pointwise_zero = False
                break
        if pointwise_zero == A.is_tangent():
            agreements += 1
        else:
            disagreements.append(idx)
    passed = agreements == 50
    return CriterionResult(
        6,
        "tangency criterion matches the pointwise x^tAx=0 test on 50 matrices",
        passed,
        {
            "matrices": 50,
            "agreements": agreements,
            "disagreements": disagreements,
            "points_per_matrix": 100,
            "provenance": "exact",
        },
        time.perf_counter() - start,
    )


def _rational_unit_scale(x) -> Fraction:
    """Rational factor bringing |x| close to 1 (the test value is scale-invariant)."""
    norm = math.sqrt(sum(float(v) ** 2 for v in x))
    return Fraction(round(1_000_000 / norm), 1_000_000)


# ---------------------------------------------------------------------------
# Criterion 7: filtration behavior
# ---------------------------------------------------------------------------

DIVERGENCE_DEGREES = (4, 12, 22, 32)
TANGENT_DEGREES = (4, 6, 8, 10)


def criterion_7_filtration(seed: int) -> CriterionResult:
    """Flat semi-norms for tangent generators; divergence for V = {d/dz_1}.

    The divergence half uses truncation degrees (4, 12, 22, 32): the level-1
    estimate grows like d^(3/2), so the shorter tangent-side degree list
    would show monotone growth but not yet a 10x spread.
    """
    start = time.perf_counter()
    rng = _rng(seed, 7)
    P = OperatorOnD.projection(1)

    tangent_fields = [
        OperatorOnD.from_field(random_antisymmetric_field(rng, 1).complexify())
        for _ in range(2)
    ]
    flat_ok = True
    tangent_values = []
    for k in range(4):
        for d in TANGENT_DEGREES:
            value = seminorm_estimate(P, tangent_fields, k, d).value
            tangent_values.append(value)
            if abs(value - 1.0) > 1e-8:
                flat_ok = False

    dz_generator = [OperatorOnD.from_field(WirtingerDz(1, 1))]
    level1 = [seminorm_estimate(P, dz_generator, 1, d).value for d in DIVERGENCE_DEGREES]
    monotone = all(b > a for a, b in zip(level1, level1[1:]))
    spread_ok = level1[0] > 0 and level1[-1] / level1[0] > 10.0
    passed = flat_ok and monotone and spread_ok
    return CriterionResult(
        7,
        "filtration: tangent families flat at 1.0+-1e-8; dz family level-1 diverges",
        passed,
        {
            "tangent_max_deviation": max(abs(v - 1.0) for v in tangent_values),
            "tangent_degrees": list(TANGENT_DEGREES),
            "divergence_degrees": list(DIVERGENCE_DEGREES),
            "level1_estimates": level1,
            "monotone_increasing": monotone,
            "last_over_first": level1[-1] / level1[0],
            "provenance": "float(power iteration tol=1e-10) on exact compressions",
        },
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Criteria 8-9: matrix calculus
# ---------------------------------------------------------------------------


def criterion_8_functional_calculus(seed: int) -> CriterionResult:
    """Contour calculus reproduces 1 -> I, exp on a diagonal, and z -> a."""
    start = time.perf_counter()
    gen = np.random.default_rng(seed * 1000 + 8)
    ones_ok = True
    battery = [
        np.diag([1.0, 2.0]).astype(complex),
        np.array([[1.0, 100.0], [0.0, 1.0]], dtype=complex),
        gen.normal(size=(3, 3)) + 1j * gen.normal(size=(3, 3)),
    ]
    max_err_one = 0.0
    for a in battery:
        result = holomorphic_calculus(a, lambda z: 1.0)
        err = float(np.max(np.abs(result - np.eye(a.shape[0]))))
        max_err_one = max(max_err_one, err)
        if err >= 1e-10:
            ones_ok = False

    exp_result = holomorphic_calculus(
        np.diag([1.0, 2.0]).astype(complex),
        np.exp,
        contour=Contour(center=0.0, radius=4.0, nodes=256),
    )
    exp_err = float(np.max(np.abs(exp_result - np.diag([math.e, math.e**2]))))
    exp_ok = exp_err < 1e-10

    id_ok = True
    max_err_id = 0.0
    for k in range(20):
        size = 2 + k % 3
        a = gen.normal(size=(size, size)) + 1j * gen.normal(size=(size, size))
        result = holomorphic_calculus(a, lambda z: z)
        err = float(np.max(np.abs(result - a)))
        max_err_id = max(max_err_id, err)
        if err >= 1e-10:
            id_ok = False
    passed = ones_ok and exp_ok and id_ok
    return CriterionResult(
        8,
        "functional calculus: 1->I, exp(diag(1,2))=diag(e,e^2), z->a, all within 1e-10",
        passed,
        {
            "constant_one_max_error": max_err_one,
            "exp_diag_error": exp_err,
            "identity_function_max_error": max_err_id,
            "nodes": 256,
            "provenance": "float(1e-10)",
        },
        time.perf_counter() - start,
    )


def criterion_9_gelfand(seed: int) -> CriterionResult:
    """Spectral radius by repeated squaring within 1e-2 of max |eigenvalue|."""
    start = time.perf_counter()
    gen = np.random.default_rng(seed * 1000 + 9)
    diagnostics = []
    ok = True
    hermitian = gen.normal(size=(8, 8))
    hermitian = hermitian + hermitian.T
    battery = {
        "diag(1,3)": np.diag([1.0, 3.0]).astype(complex),
        "nilpotent": np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex),
        "nonnormal_jordan": np.array([[1.0, 100.0], [0.0, 1.0]], dtype=complex),
        "random_hermitian_8": hermitian.astype(complex),
        "random_5": (gen.normal(size=(5, 5)) + 1j * gen.normal(size=(5, 5))),
    }
    for name, a in battery.items():
        result = gelfand_radius(a, max_doublings=30)
        target = max(abs(lam) for lam in spectrum(a))
        err = abs(result.value - target)
        diagnostics.append({"matrix": name, "estimate": result.value, "target": target, "error": err})
        if err >= 1e-2:
            ok = False
    return CriterionResult(
        9,
        "Gelfand radius within 1e-2 by 30 doublings (normal, nilpotent, non-normal)",
        ok,
        {"battery": diagnostics, "provenance": "float(1e-2)"},
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Criterion 10: kernels
# ---------------------------------------------------------------------------


def criterion_10_kernels(seed: int) -> CriterionResult:
    """Reproducing property exact; series vs closed forms; inequality suites."""
    start = time.perf_counter()
    rng = _rng(seed, 10)

    reproduce_ok = True
    reproduce_count = 0
    for k in range(100):
        n = 1 + k % 3
        space = BallSpace(n)
        f = random_mixed_polynomial(rng, n, max_degree=8, holomorphic=True)
        z = random_ball_point(rng, n)
        if reproduce_polynomial(space, f, z) != f.evaluate(z):
            reproduce_ok = False
        reproduce_count += 1

    series_checks = [
        (BallSpace(1), (0.5,), (0.3 + 0.4j,), 1e-8),
        (BallSpace(2), (0.3, 0.2), (0.25, -0.35), 1e-8),
        (WeightedDiskSpace(Fraction(0)), (0.5,), (0.5,), 1e-8),
        (WeightedDiskSpace(Fraction(1)), (0.45,), (-0.3,), 1e-8),
        (FockSpace(Fraction(1)), (0.5,), (0.5,), 1e-12),
    ]
    series_ok = True
    max_series_err = 0.0
    for space, z, w, tol in series_checks:
        err = abs(basis_partial_sum(space, z, w, 60) - kernel_eval(space, z, w))
        max_series_err = max(max_series_err, err)
        if err >= tol:
            series_ok = False

    points = [random_ball_point(rng, 1) for _ in range(32)]
    suite = rkhs_inequality_suite(BallSpace(1), points, seed=seed * 1000 + 10)
    suite_ok = suite.passed() and suite.pairs_checked >= 1000

    peetre_ok = True
    for _ in range(10_000):
        dim = rng.randint(1, 3)
        w = [rng.uniform(-10, 10) for _ in range(dim)]
        mu = [rng.uniform(-10, 10) for _ in range(dim)]
        l = rng.uniform(-5, 5)
        good, _slack = verify_peetre(w, mu, l)
        if not good:
            peetre_ok = False
    passed = reproduce_ok and series_ok and suite_ok and peetre_ok
    return CriterionResult(
        10,
        "kernels: exact reproduction, series within 1e-8 at K=60, RKHS + Peetre suites",
        passed,
        {
            "reproducing_points": reproduce_count,
            "reproducing_exact": reproduce_ok,
            "series_max_error": max_series_err,
            "rkhs_pairs": suite.pairs_checked,
            "rkhs_passed": suite.passed(),
            "peetre_samples": 10_000,
            "peetre_passed": peetre_ok,
            "provenance": "mixed: exact reproduction, float(1e-8) series",
        },
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Criterion 11: determinism
# ---------------------------------------------------------------------------


def criterion_11_determinism(
    seed: int, baseline: Optional[List[CriterionResult]] = None
) -> CriterionResult:
    """The canonical report of criteria 1-10 is byte-identical across runs."""
    start = time.perf_counter()
    first = baseline if baseline is not None else run_criteria(seed, range(1, 11))
    second = run_criteria(seed, range(1, 11))
    report_a = canonical_report(first, seed)
    report_b = canonical_report(second, seed)
    passed = report_a == report_b
    return CriterionResult(
        11,
        "determinism: identical seed gives byte-identical reports",
        passed,
        {
            "seed": seed,
            "report_bytes": len(report_b.encode()),
            "byte_identical": passed,
            "provenance": "exact",
        },
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

CRITERIA: Dict[int, Callable[[int], CriterionResult]] = {
    1: criterion_1_projection_oracle,
    2: criterion_2_projection_laws,
    3: criterion_3_dz_unbounded,
    4: criterion_4_dzbar_unbounded,
    5: criterion_5_tangent_commutation,
    6: criterion_6_tangency_criterion,
    7: criterion_7_filtration,
    8: criterion_8_functional_calculus,
    9: criterion_9_gelfand,
    10: criterion_10_kernels,
}


def run_criteria(seed: int, ids: Sequence[int]) -> List[CriterionResult]:
    results = []
    for cid in ids:
        if cid == 11:
            continue  # handled by the caller so the baseline can be reused
        results.append(CRITERIA[cid](seed))
    return results


def canonical_report(results: Sequence[CriterionResult], seed: int) -> str:
    """Deterministic JSON report; identical config and seed give identical bytes."""
    payload = {
        "seed": seed,
        "criteria": [r.to_json_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def run_selftest(seed: int = DEFAULT_SEED, ids: Optional[Sequence[int]] = None) -> tuple:
    """Run the acceptance battery; returns (results, canonical report string)."""
    requested = list(ids) if ids is not None else list(range(1, 12))
    base_ids = [i for i in requested if i != 11]
    results = run_criteria(seed, base_ids)
    if 11 in requested:
        baseline = results if base_ids == list(range(1, 11)) else None
        results = results + [criterion_11_determinism(seed, baseline=baseline)]
    return results, canonical_report(results, seed)
