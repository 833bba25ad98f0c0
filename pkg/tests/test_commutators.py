"""Commutators with the projection: exact values, divergence scans, tangency.

The sign convention throughout is [X, P] = X∘P - P∘X.  The ratio scans are
checked along two independent routes: the actual commutator evaluation and
the closed-form factorial ratio.
"""

import random
from fractions import Fraction

import pytest

from bergmankit.commutators import (
    WitnessFamily,
    closed_form_ratio_sq,
    commutator_apply,
    divergence_scan,
    fit_loglog_slope,
    linear_combination_unbounded,
    ratio_sq,
    tangent_field_scan,
    verify_tangent_commutes,
)
from bergmankit.fields import RealLinearVectorField, WirtingerDz, WirtingerDzbar
from bergmankit.polynomials import MixedPolynomial
from bergmankit.projection import project
from bergmankit.rationals import GaussianRational
from bergmankit.sampling import (
    random_antisymmetric_field,
    random_mixed_polynomial,
    random_unitary_generator_field,
)

ROTATION = RealLinearVectorField([[0, 1], [-1, 0]])


# -- pointwise commutator values ----------------------------------------------


def test_dz_commutator_frozen_value():
    # [d/dz, P](z^2 zbar) = -(1/3): X(Pf) = 2/3, P(Xf) = P(2 z zbar) = 1
    f = MixedPolynomial.monomial(1, (2,), (1,))
    result = commutator_apply(WirtingerDz(1, 1), f)
    assert result == MixedPolynomial.constant(1, Fraction(-1, 3))


def test_dzbar_commutator_frozen_value():
    # [P, dzbar]f = P(dzbar f) since dzbar∘P = 0; on z^2 zbar this is z^2
    f = MixedPolynomial.monomial(1, (2,), (1,))
    result = -commutator_apply(WirtingerDzbar(1, 1), f)
    assert result == MixedPolynomial.monomial(1, (2,), (0,))


def test_tangent_field_commutator_vanishes_on_monomials():
    X = ROTATION.complexify()
    for p, q in [(0, 0), (3, 1), (2, 2), (0, 4)]:
        f = MixedPolynomial.monomial(1, (p,), (q,))
        assert commutator_apply(X, f).is_zero()


def test_commutator_bilinearity():
    rng = random.Random(31)
    X = WirtingerDz(1, 2)
    for _ in range(10):
        f = random_mixed_polynomial(rng, 2, 5)
        g = random_mixed_polynomial(rng, 2, 5)
        c = GaussianRational(Fraction(2, 3), Fraction(-1, 5))
        lhs = commutator_apply(X, f.scale(c) + g)
        rhs = commutator_apply(X, f).scale(c) + commutator_apply(X, g)
        assert lhs == rhs


def test_dzbar_after_projection_is_zero():
    from bergmankit.fields import wirtinger_dzbar

    rng = random.Random(32)
    for _ in range(30):
        n = rng.randint(1, 3)
        f = random_mixed_polynomial(rng, n, 6)
        for i in range(1, n + 1):
            assert wirtinger_dzbar(i, project(f)).is_zero()


# -- ratio scans ---------------------------------------------------------------


def test_ratio_frozen_values():
    family = WitnessFamily(dimension=1)
    assert ratio_sq(family, 1, "dz") == Fraction(4, 9)
    assert ratio_sq(family, 1, "dzbar") == Fraction(4, 3)


def test_two_path_consistency_against_closed_form():
    """Commutator evaluation equals the factorial closed form, n <= 3."""
    for n in (1, 2, 3):
        family = WitnessFamily(dimension=n, coordinate=n)
        for m in (1, 2, 3, 5, 10, 25, 50):
            p, q = family.p(m), family.q(m)
            assert ratio_sq(family, m, "dz") == closed_form_ratio_sq(n, p, q, "dz")
            assert ratio_sq(family, m, "dzbar") == closed_form_ratio_sq(n, p, q, "dzbar")


def test_monotone_divergence_dz():
    family = WitnessFamily(dimension=1)
    previous = Fraction(0)
    for m in range(1, 101):
        current = ratio_sq(family, m, "dz")
        assert current > previous
        previous = current


def test_divergence_scan_slope_and_thresholds():
    family = WitnessFamily(dimension=1)
    scan = divergence_scan(family, "dz", 100, thresholds=(10, 1000))
    assert scan.slope is not None and abs(scan.slope - 2.0) < 0.1
    assert scan.first_m_exceeding(10) == 4
    # threshold metadata mirrors first_m_exceeding
    assert scan.thresholds[0] == (10.0, 4)
    scan_bar = divergence_scan(family, "dzbar", 100)
    assert abs(scan_bar.slope - 2.0) < 0.1


def test_scan_rejects_small_m_max_and_bad_kind():
    family = WitnessFamily(dimension=1)
    with pytest.raises(ValueError):
        divergence_scan(family, "dz", 5)
    with pytest.raises(ValueError):
        ratio_sq(family, 1, "mixed")


def test_dz_family_requires_p_greater_than_q():
    family = WitnessFamily(dimension=1, p_slope=1, q_slope=1)  # p = q = m
    with pytest.raises(ValueError):
        ratio_sq(family, 3, "dz")


def test_tangent_field_scan_all_zero():
    scan = tangent_field_scan(ROTATION.complexify(), WitnessFamily(dimension=1), 12)
    assert all(point.ratio_sq == 0 for point in scan.points)
    assert scan.slope is None  # undefined on exact zeros


def test_fit_slope_undefined_on_zero_ratio():
    from bergmankit.commutators import RatioPoint

    points = [RatioPoint(m, Fraction(0)) for m in range(1, 20)]
    assert fit_loglog_slope(points, 5, 15) is None


# -- tangent commutation ---------------------------------------------------------


def test_verify_tangent_rotation_field():
    report = verify_tangent_commutes(ROTATION, degree=8)
    assert report.passed and report.counterexample is None
    assert report.checked == 45  # pairs (p, q) with p + q <= 8


def test_verify_tangent_zero_field():
    report = verify_tangent_commutes(RealLinearVectorField([[0, 0], [0, 0]]), degree=4)
    assert report.passed


def test_verify_tangent_refuses_non_tangent():
    with pytest.raises(ValueError):
        verify_tangent_commutes(RealLinearVectorField([[1, 0], [0, 1]]), degree=4)


def test_n1_antisymmetric_always_commutes():
    rng = random.Random(33)
    for _ in range(10):
        A = random_antisymmetric_field(rng, 1)
        assert verify_tangent_commutes(A, degree=6).passed


def test_complex_linear_tangent_fields_commute():
    """The provable commutation theorem: tangency plus complex-linearity."""
    rng = random.Random(34)
    for n in (1, 2, 3):
        for _ in range(5):
            A = random_unitary_generator_field(rng, n)
            assert A.is_tangent() and A.is_complex_linear()
            assert verify_tangent_commutes(A, degree=4 if n == 3 else 6).passed


def test_tangency_alone_insufficient_for_n2():
    """Documented gap: antisymmetry without complex-linearity fails for n >= 2.

    [X,P]z_1 keeps the antiholomorphic part of X(z_1), which is nonzero
    whenever the complexified C matrix is nonzero.
    """
    A = RealLinearVectorField(
        [
            [0, 0, Fraction(1, 3), 0],
            [0, 0, 0, Fraction(1, 5)],
            [Fraction(-1, 3), 0, 0, 0],
            [0, Fraction(-1, 5), 0, 0],
        ]
    )
    assert A.is_tangent() and not A.is_complex_linear()
    report = verify_tangent_commutes(A, degree=2)
    assert not report.passed
    X = A.complexify()
    z1 = MixedPolynomial.z(2, 1)
    residue = commutator_apply(X, z1)
    # exactly the antiholomorphic part of X(z_1)
    expected = MixedPolynomial.zero(2)
    for l in (1, 2):
        expected = expected + MixedPolynomial.zbar(2, l).scale(X.C[0][l - 1])
    assert residue == expected and not residue.is_zero()


# -- linear combinations ----------------------------------------------------------


def test_linear_combination_single_coordinate():
    report = linear_combination_unbounded(
        [GaussianRational(1), GaussianRational(0)], "dz", 20
    )
    assert report.chosen_coordinate == 1
    base = divergence_scan(WitnessFamily(dimension=2, coordinate=1), "dz", 20)
    assert [p.ratio_sq for p in report.scan.points] == [p.ratio_sq for p in base.points]


def test_linear_combination_scales_by_modulus_squared():
    report = linear_combination_unbounded(
        [GaussianRational(0), GaussianRational(0, 3)], "dz", 15
    )
    assert report.chosen_coordinate == 2
    assert report.scale == 9
    base = divergence_scan(WitnessFamily(dimension=2, coordinate=2), "dz", 15)
    assert report.scan.points[4].ratio_sq == 9 * base.points[4].ratio_sq


def test_linear_combination_all_zero_rejected():
    with pytest.raises(ValueError):
        linear_combination_unbounded([GaussianRational(0)], "dz", 15)


def test_cross_terms_vanish_on_witness_monomials():
    """On z_j-only monomials the other derivatives of the combination vanish."""
    f = WitnessFamily(dimension=2, coordinate=1).witness(3)
    assert commutator_apply(WirtingerDz(2, 2), f).is_zero()
