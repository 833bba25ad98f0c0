"""Gaussian rational arithmetic: exact closure and involution properties."""

import random
from fractions import Fraction

import pytest

from bergmankit.rationals import GaussianRational, format_rational, parse_rational


def _random_gr(rng):
    return GaussianRational(
        Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
        Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
    )


def test_field_operations_exact():
    a = GaussianRational(Fraction(1, 2), Fraction(-1, 3))
    b = GaussianRational(Fraction(2, 5), Fraction(7, 4))
    assert a + b == GaussianRational(Fraction(9, 10), Fraction(17, 12))
    assert a * b == GaussianRational(
        Fraction(1, 2) * Fraction(2, 5) - Fraction(-1, 3) * Fraction(7, 4),
        Fraction(1, 2) * Fraction(7, 4) + Fraction(-1, 3) * Fraction(2, 5),
    )
    assert (a / b) * b == a


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_conjugation_is_involution_and_multiplicative():
    rng = random.Random(1)
    for _ in range(50):
        a, b = _random_gr(rng), _random_gr(rng)
        assert a.conjugate().conjugate() == a
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.abs_sq() == (a * a.conjugate()).re
        assert (a * a.conjugate()).im == 0


def test_closure_under_inverse():
    rng = random.Random(2)
    for _ in range(50):
        a = _random_gr(rng)
        if a.is_zero():
            continue
        inv = GaussianRational(1) / a
        assert a * inv == GaussianRational(1)


def test_scalar_coercion():
    assert GaussianRational(Fraction(1, 2)) + 1 == GaussianRational(Fraction(3, 2))
    assert 2 * GaussianRational(0, 1) == GaussianRational(0, 2)
    assert GaussianRational(3) == 3


def test_immutable():
    a = GaussianRational(1, 2)
    with pytest.raises(AttributeError):
        a.re = Fraction(5)


def test_rational_string_roundtrip():
    values = [Fraction(0), Fraction(-7, 3), Fraction(22, 7), Fraction(5)]
    for q in values:
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(5)) == "5/1"


def test_json_pair_roundtrip():
    a = GaussianRational(Fraction(-3, 7), Fraction(11, 2))
    assert GaussianRational.from_json_pair(a.to_json_pair()) == a
