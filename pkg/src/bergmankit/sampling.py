"""Seeded random generators for rational test data.

Every randomized check in the package draws from these helpers with an
explicit ``random.Random`` instance so that reports are reproducible and
byte-identical for a fixed seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Tuple

from .fields import RealLinearVectorField
from .polynomials import MixedPolynomial, multiindices_up_to
from .rationals import GaussianRational


def random_fraction(rng: random.Random, max_num: int = 6, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_gaussian_rational(rng: random.Random, max_num: int = 6, max_den: int = 6) -> GaussianRational:
    return GaussianRational(random_fraction(rng, max_num, max_den), random_fraction(rng, max_num, max_den))


def random_mixed_polynomial(
    rng: random.Random,
    n: int,
    max_degree: int,
    max_terms: int = 6,
    holomorphic: bool = False,
) -> MixedPolynomial:
    """Random polynomial with up to max_terms nonzero monomials, degree <= max_degree."""
    keys = list(multiindices_up_to(n, max_degree))
    poly = MixedPolynomial.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        alpha = rng.choice(keys)
        remaining = max_degree - sum(alpha)
        if holomorphic:
            beta = (0,) * n
        else:
            beta = rng.choice([b for b in multiindices_up_to(n, remaining)])
        coeff = random_gaussian_rational(rng)
        poly = poly + MixedPolynomial.monomial(n, alpha, beta, coeff)
    return poly


def random_rational_matrix(rng: random.Random, size: int, max_num: int = 4) -> List[List[Fraction]]:
    return [[random_fraction(rng, max_num) for _ in range(size)] for _ in range(size)]


def random_antisymmetric_field(rng: random.Random, n: int, max_num: int = 4) -> RealLinearVectorField:
    """Random exact-rational antisymmetric 2n x 2n matrix as a vector field."""
    size = 2 * n
    entries = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = random_fraction(rng, max_num)
            entries[i][j] = v
            entries[j][i] = -v
    return RealLinearVectorField(entries)


def random_real_field(rng: random.Random, n: int, max_num: int = 4) -> RealLinearVectorField:
    return RealLinearVectorField(random_rational_matrix(rng, 2 * n, max_num))


def random_unitary_generator_field(rng: random.Random, n: int, max_num: int = 4) -> RealLinearVectorField:
    """Random tangent field whose flow is unitary (complex-linear).

    Real form of a skew-Hermitian matrix R + iS (R antisymmetric, S symmetric
    rational): the 2x2 block at (k, l) is [[r, -s], [s, r]].  These are the
    tangent fields that commute with the Bergman projection.
    """
    R = [[Fraction(0)] * n for _ in range(n)]
    S = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        S[k][k] = random_fraction(rng, max_num)
        for l in range(k + 1, n):
            R[k][l] = random_fraction(rng, max_num)
            R[l][k] = -R[k][l]
            S[k][l] = random_fraction(rng, max_num)
            S[l][k] = S[k][l]
    size = 2 * n
    entries = [[Fraction(0)] * size for _ in range(size)]
    for k in range(n):
        for l in range(n):
            entries[2 * k][2 * l] = R[k][l]
            entries[2 * k][2 * l + 1] = -S[k][l]
            entries[2 * k + 1][2 * l] = S[k][l]
            entries[2 * k + 1][2 * l + 1] = R[k][l]
    return RealLinearVectorField(entries)


def random_rational_point(rng: random.Random, size: int, max_num: int = 8, scale_den: int = 1) -> Tuple[Fraction, ...]:
    """Random nonzero rational vector; optionally shrunk by 1/scale_den."""
    while True:
        point = tuple(
            Fraction(rng.randint(-max_num, max_num), max_num * scale_den) for _ in range(size)
        )
        if any(point):
            return point


def random_ball_point(rng: random.Random, n: int, radius_num: int = 7, radius_den: int = 10) -> Tuple[GaussianRational, ...]:
    """Random rational point of C^n with |z| < radius_num/radius_den exactly."""
    bound = Fraction(radius_num, radius_den) ** 2
    while True:
        point = tuple(
            GaussianRational(
                Fraction(rng.randint(-6, 6), 12), Fraction(rng.randint(-6, 6), 12)
            )
            for _ in range(n)
        )
        if sum(w.abs_sq() for w in point) < bound:
            return point
