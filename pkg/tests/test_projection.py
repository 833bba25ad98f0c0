"""Bergman projection: closed form against the kernel-series oracle.

The oracle (term-by-term integration against the truncated kernel expansion)
is the independent route; every closed-form value is checked against it.
"""

import random
from fractions import Fraction

from bergmankit.polynomials import (
    MixedPolynomial,
    inner_product,
    norm_sq,
    term_keys_up_to,
)
from bergmankit.projection import project, project_monomial, project_via_kernel_series
from bergmankit.rationals import GaussianRational
from bergmankit.sampling import random_mixed_polynomial


def test_monomial_projection_frozen_values():
    # oracle: basis expansion <z^2 zbar, z>/||z||^2 = (1/3)/(1/2) = 2/3
    assert project_monomial((2,), (1,)) == MixedPolynomial.monomial(
        1, (1,), (0,), GaussianRational(Fraction(2, 3))
    )
    # beta exceeding alpha in any slot kills the monomial
    assert project_monomial((2, 0), (1, 1)).is_zero()
    assert project_monomial((0,), (1,)).is_zero()
    # alpha = beta projects onto a constant: <z zbar, 1>/||1||^2 = 1/2
    assert project_monomial((1,), (1,)) == MixedPolynomial.constant(1, Fraction(1, 2))


def test_kernel_series_frozen_values():
    f = MixedPolynomial.monomial(1, (2,), (1,))
    assert project_via_kernel_series(f) == MixedPolynomial.monomial(
        1, (1,), (0,), GaussianRational(Fraction(2, 3))
    )
    one = MixedPolynomial.constant(1, 1)
    assert project_via_kernel_series(one) == one
    assert project_via_kernel_series(MixedPolynomial.monomial(1, (0,), (2,))).is_zero()


def test_project_linear_extension():
    f = MixedPolynomial.monomial(1, (2,), (1,)) + MixedPolynomial.constant(1, 5)
    expected = MixedPolynomial.monomial(
        1, (1,), (0,), GaussianRational(Fraction(2, 3))
    ) + MixedPolynomial.constant(1, 5)
    assert project(f) == expected
    assert project(MixedPolynomial.zero(2)).is_zero()
    assert project(MixedPolynomial.zbar(1, 1)).is_zero()


def test_oracle_equivalence_exhaustive_small():
    for n in (1, 2):
        for alpha, beta in term_keys_up_to(n, 5):
            f = MixedPolynomial.monomial(n, alpha, beta)
            assert project_monomial(alpha, beta) == project_via_kernel_series(f)


def test_oracle_equivalence_random_polynomials():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 3)
        f = random_mixed_polynomial(rng, n, 6)
        assert project(f) == project_via_kernel_series(f)


def test_idempotence_exact():
    rng = random.Random(12)
    for _ in range(30):
        f = random_mixed_polynomial(rng, rng.randint(1, 3), 8)
        pf = project(f)
        assert project(pf) == pf


def test_self_adjoint_exact():
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randint(1, 3)
        f = random_mixed_polynomial(rng, n, 6)
        g = random_mixed_polynomial(rng, n, 6)
        assert inner_product(project(f), g) == inner_product(f, project(g))


def test_holomorphic_fixed_points():
    rng = random.Random(14)
    for _ in range(30):
        h = random_mixed_polynomial(rng, rng.randint(1, 3), 8, holomorphic=True)
        assert project(h) == h


def test_output_always_holomorphic():
    rng = random.Random(15)
    for _ in range(30):
        f = random_mixed_polynomial(rng, rng.randint(1, 3), 6)
        assert project(f).is_holomorphic()


def test_contraction_exact():
    rng = random.Random(16)
    for _ in range(30):
        f = random_mixed_polynomial(rng, rng.randint(1, 2), 6)
        assert norm_sq(project(f)) <= norm_sq(f)


def test_projection_coefficient_positive_rational():
    for alpha, beta in term_keys_up_to(2, 4):
        p = project_monomial(alpha, beta)
        for _, coeff in p.terms():
            assert coeff.im == 0 and coeff.re > 0
