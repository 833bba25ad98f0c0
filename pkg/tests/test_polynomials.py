"""Mixed polynomials and the exact L^2(B_n) pairing on the monomial basis."""

import random
from fractions import Fraction

import pytest

from bergmankit.polynomials import (
    DimensionMismatchError,
    MixedPolynomial,
    NEG_INF,
    inner_product,
    monomial_inner_product,
    monomial_norm_sq,
    multiindex_factorial,
    norm_sq,
)
from bergmankit.rationals import GaussianRational
from bergmankit.sampling import random_mixed_polynomial


# -- frozen examples ---------------------------------------------------------


def test_multiindex_factorial_values():
    assert multiindex_factorial((0, 0)) == 1
    assert multiindex_factorial((2, 1)) == 2
    assert multiindex_factorial((3, 4)) == 144


def test_monomial_norm_values():
    assert monomial_norm_sq((0,), (0,)) == 1  # probability measure
    assert monomial_norm_sq((2,), (1,)) == Fraction(1, 4)
    assert monomial_norm_sq((1, 0), (0, 0)) == Fraction(1, 3)


def test_monomial_inner_product_values():
    # distinct total exponents are orthogonal
    assert monomial_inner_product((2,), (0,), (1,), (1,)).is_zero()
    # <z^2 zbar, z> = 1!·2!/3!
    assert monomial_inner_product((2,), (1,), (1,), (0,)) == GaussianRational(Fraction(1, 3))
    assert monomial_inner_product((0,), (0,), (0,), (0,)) == GaussianRational(1)


def test_inner_product_values():
    z = MixedPolynomial.z(1, 1)
    assert inner_product(z, z) == GaussianRational(Fraction(1, 2))
    zero = MixedPolynomial.zero(1)
    assert inner_product(z, zero).is_zero()
    scaled = z.scale(GaussianRational(1, 1))  # (1+i) z
    assert inner_product(scaled, z) == GaussianRational(Fraction(1, 2), Fraction(1, 2))


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionMismatchError):
        inner_product(MixedPolynomial.z(1, 1), MixedPolynomial.z(2, 1))
    with pytest.raises(DimensionMismatchError):
        monomial_norm_sq((1,), (0, 0))


# -- invariants on random data ----------------------------------------------


def test_norm_equals_self_inner_product():
    rng = random.Random(3)
    for _ in range(40):
        alpha = tuple(rng.randint(0, 4) for _ in range(2))
        beta = tuple(rng.randint(0, 4) for _ in range(2))
        assert monomial_norm_sq(alpha, beta) == monomial_inner_product(
            alpha, beta, alpha, beta
        ).re


def test_hermitian_symmetry():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 3)
        f = random_mixed_polynomial(rng, n, 5)
        g = random_mixed_polynomial(rng, n, 5)
        assert inner_product(f, g) == inner_product(g, f).conjugate()


def test_cauchy_schwarz_exact():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 2)
        f = random_mixed_polynomial(rng, n, 5)
        g = random_mixed_polynomial(rng, n, 5)
        lhs = inner_product(f, g).abs_sq()
        assert lhs <= norm_sq(f) * norm_sq(g)


def test_positive_definite():
    rng = random.Random(6)
    for _ in range(30):
        f = random_mixed_polynomial(rng, 2, 4)
        value = norm_sq(f)
        assert value >= 0
        assert (value == 0) == f.is_zero()


def test_no_zero_coefficients_after_arithmetic():
    rng = random.Random(7)
    for _ in range(40):
        f = random_mixed_polynomial(rng, 2, 4)
        g = random_mixed_polynomial(rng, 2, 4)
        for result in (f + g, f - g, f * g, f - f, f.scale(0)):
            assert all(not c.is_zero() for _, c in result.terms())
    assert (f - f).is_zero()


def test_degree_sentinel():
    assert MixedPolynomial.zero(2).degree == NEG_INF
    assert MixedPolynomial.constant(2, 3).degree == 0
    assert MixedPolynomial.monomial(2, (1, 0), (0, 2)).degree == 3
    # any real degree beats the sentinel
    assert NEG_INF < 0


def test_product_degree_additive():
    f = MixedPolynomial.monomial(1, (2,), (1,))
    g = MixedPolynomial.monomial(1, (0,), (3,))
    assert (f * g).degree == 6


def test_evaluate_exact():
    f = MixedPolynomial.monomial(1, (2,), (1,), GaussianRational(2))
    z = (GaussianRational(Fraction(1, 2), Fraction(1, 2)),)
    zv = z[0]
    expected = GaussianRational(2) * zv * zv * zv.conjugate()
    assert f.evaluate(z) == expected


def test_conjugate_swaps_and_conjugates():
    f = MixedPolynomial.monomial(2, (1, 0), (0, 2), GaussianRational(1, 3))
    g = f.conjugate()
    assert g.coefficient((0, 2), (1, 0)) == GaussianRational(1, -3)


def test_json_canonical_roundtrip():
    rng = random.Random(8)
    for _ in range(20):
        f = random_mixed_polynomial(rng, rng.randint(1, 3), 5)
        assert MixedPolynomial.from_json(f.to_json()) == f
    # canonical ordering makes serialization deterministic
    f = random_mixed_polynomial(rng, 2, 5)
    assert f.to_json() == MixedPolynomial.from_json(f.to_json()).to_json()


def test_json_rejects_duplicate_terms():
    text = (
        '{"n":1,"terms":[{"alpha":[1],"beta":[0],"re":"1/1","im":"0/1"},'
        '{"alpha":[1],"beta":[0],"re":"2/1","im":"0/1"}]}'
    )
    with pytest.raises(ValueError):
        MixedPolynomial.from_json(text)
