"""Linear vector fields on R^2n ~ C^n acting on mixed polynomials.

A real field X = (Ax)^t d/dx is stored as its exact rational 2n x 2n matrix.
Complexification rewrites it in Wirtinger form

    X = sum_k ( sum_l B[k][l] z_l + C[k][l] zbar_l ) d/dz_k
      + sum_k ( sum_l conj(C[k][l]) z_l + conj(B[k][l]) zbar_l ) d/dzbar_k

under the fixed coordinate convention z_j = x_{2j-1} + i x_{2j} (interleaved
real coordinates).  The B and C matrices depend on this convention; it is the
only one used anywhere in the package.

Everything here is exact except :func:`flow_matrix`, which exists solely to
sanity-check the one-parameter group e^{As} (orthogonality, unit determinant)
in floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg

from .polynomials import DimensionMismatchError, MixedPolynomial
from .rationals import GaussianRational

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


def coordinate_polynomial(n: int, k: int) -> MixedPolynomial:
    """The real coordinate x_k of R^2n as a polynomial in z, zbar (1-based k).

    x_{2j-1} = (z_j + zbar_j)/2 and x_{2j} = -i (z_j - zbar_j)/2.
    """
    if not 1 <= k <= 2 * n:
        raise IndexError(f"coordinate {k} out of range for R^{2 * n}")
    j = (k + 1) // 2
    if k % 2 == 1:
        return (MixedPolynomial.z(n, j) + MixedPolynomial.zbar(n, j)).scale(
            GaussianRational(Fraction(1, 2))
        )
    return (MixedPolynomial.z(n, j) - MixedPolynomial.zbar(n, j)).scale(
        GaussianRational(0, Fraction(-1, 2))
    )


def _as_rational_matrix(rows: Sequence[Sequence]) -> RationalMatrix:
    matrix = tuple(tuple(Fraction(v) for v in row) for row in rows)
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("matrix must be square and nonempty")
    return matrix


# ---------------------------------------------------------------------------
# Wirtinger derivatives
# ---------------------------------------------------------------------------


def wirtinger_dz(i: int, f: MixedPolynomial) -> MixedPolynomial:
    """d/dz_i on the monomial basis (1-based i)."""
    n = f.dimension
    if not 1 <= i <= n:
        raise IndexError(f"coordinate {i} out of range for dimension {n}")
    j = i - 1
    result = MixedPolynomial.zero(n)
    for (alpha, beta), coeff in f.terms():
        if alpha[j] == 0:
            continue
        new_alpha = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1 :]
        result = result + MixedPolynomial.monomial(n, new_alpha, beta, coeff * alpha[j])
    return result


def wirtinger_dzbar(i: int, f: MixedPolynomial) -> MixedPolynomial:
    """d/dzbar_i on the monomial basis (1-based i)."""
    n = f.dimension
    if not 1 <= i <= n:
        raise IndexError(f"coordinate {i} out of range for dimension {n}")
    j = i - 1
    result = MixedPolynomial.zero(n)
    for (alpha, beta), coeff in f.terms():
        if beta[j] == 0:
            continue
        new_beta = beta[:j] + (beta[j] - 1,) + beta[j + 1 :]
        result = result + MixedPolynomial.monomial(n, alpha, new_beta, coeff * beta[j])
    return result


class WirtingerDz:
    """The constant-coefficient field d/dz_i, usable wherever a field acts."""

    def __init__(self, i: int, dimension: int):
        if not 1 <= i <= dimension:
            raise IndexError(f"coordinate {i} out of range for dimension {dimension}")
        self.i = i
        self.dimension = dimension

    def apply(self, f: MixedPolynomial) -> MixedPolynomial:
        if f.dimension != self.dimension:
            raise DimensionMismatchError("field and polynomial dimensions differ")
        return wirtinger_dz(self.i, f)

    def __repr__(self):
        return f"WirtingerDz(i={self.i}, n={self.dimension})"


class WirtingerDzbar:
    """The constant-coefficient field d/dzbar_i."""

    def __init__(self, i: int, dimension: int):
        if not 1 <= i <= dimension:
            raise IndexError(f"coordinate {i} out of range for dimension {dimension}")
        self.i = i
        self.dimension = dimension

    def apply(self, f: MixedPolynomial) -> MixedPolynomial:
        if f.dimension != self.dimension:
            raise DimensionMismatchError("field and polynomial dimensions differ")
        return wirtinger_dzbar(self.i, f)

    def __repr__(self):
        return f"WirtingerDzbar(i={self.i}, n={self.dimension})"


# ---------------------------------------------------------------------------
# Real linear vector fields
# ---------------------------------------------------------------------------


class RealLinearVectorField:
    """X = (Ax)^t d/dx with A an exact rational 2n x 2n matrix."""

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix = _as_rational_matrix(matrix)
        if len(self.matrix) % 2 != 0:
            raise ValueError("matrix size must be even (2n for ambient dimension n)")
        self.dimension = len(self.matrix) // 2

    def is_tangent(self) -> bool:
        """Tangent to the unit sphere iff A + A^t = 0 exactly."""
        return self.antisymmetry_defect() == 0

    def is_complex_linear(self) -> bool:
        """True iff A commutes with the complex structure of C^n.

        Equivalent to every 2x2 block having the form [[a, -b], [b, a]], and
        to the complexified field having no dzbar-coefficient in its dz part
        (C = 0).  Tangent fields with this property generate unitary flows
        and are exactly the ones whose commutator with the projection
        vanishes; tangency alone does not suffice for n >= 2.
        """
        n = self.dimension
        A = self.matrix
        for k in range(n):
            for l in range(n):
                if A[2 * k][2 * l] != A[2 * k + 1][2 * l + 1]:
                    return False
                if A[2 * k][2 * l + 1] != -A[2 * k + 1][2 * l]:
                    return False
        return True

    def antisymmetry_defect(self) -> Fraction:
        """max |(A + A^t)[i][j]| as an exact rational (0 iff antisymmetric)."""
        size = len(self.matrix)
        defect = Fraction(0)
        for i in range(size):
            for j in range(size):
                entry = abs(self.matrix[i][j] + self.matrix[j][i])
                if entry > defect:
                    defect = entry
        return defect

    def quadratic_form(self, x: Sequence[Fraction]) -> Fraction:
        """x^t A x, exact; vanishes for every x iff the field is tangent."""
        size = len(self.matrix)
        if len(x) != size:
            raise DimensionMismatchError(f"point has length {len(x)}, expected {size}")
        total = Fraction(0)
        for i in range(size):
            if x[i] == 0:
                continue
            row = self.matrix[i]
            total += x[i] * sum(row[j] * x[j] for j in range(size))
        return total

    def coordinate_image(self, k: int) -> MixedPolynomial:
        """(Ax)_k written as a polynomial in z, zbar (1-based k); round-trip target."""
        n = self.dimension
        result = MixedPolynomial.zero(n)
        half = GaussianRational(Fraction(1, 2))
        minus_half_i = GaussianRational(0, Fraction(-1, 2))
        for l in range(1, n + 1):
            # x_{2l-1} = (z_l + zbar_l)/2, x_{2l} = -i (z_l - zbar_l)/2
            a_odd = self.matrix[k - 1][2 * l - 2]
            a_even = self.matrix[k - 1][2 * l - 1]
            if a_odd:
                result = result + (MixedPolynomial.z(n, l) + MixedPolynomial.zbar(n, l)).scale(
                    half * a_odd
                )
            if a_even:
                result = result + (MixedPolynomial.z(n, l) - MixedPolynomial.zbar(n, l)).scale(
                    minus_half_i * a_even
                )
        return result

    def complexify(self) -> "ComplexLinearVectorField":
        """Exact Wirtinger form (B, C) under z_j = x_{2j-1} + i x_{2j}."""
        n = self.dimension
        A = self.matrix
        B: List[List[GaussianRational]] = []
        C: List[List[GaussianRational]] = []
        for k in range(n):
            brow: List[GaussianRational] = []
            crow: List[GaussianRational] = []
            for l in range(n):
                a_oo = A[2 * k][2 * l]          # odd row, odd col
                a_oe = A[2 * k][2 * l + 1]      # odd row, even col
                a_eo = A[2 * k + 1][2 * l]      # even row, odd col
                a_ee = A[2 * k + 1][2 * l + 1]  # even row, even col
                brow.append(
                    GaussianRational(Fraction(a_oo + a_ee, 2), Fraction(a_eo - a_oe, 2))
                )
                crow.append(
                    GaussianRational(Fraction(a_oo - a_ee, 2), Fraction(a_eo + a_oe, 2))
                )
            B.append(brow)
            C.append(crow)
        return ComplexLinearVectorField(B, C)

    def flow_matrix(self, s: float) -> np.ndarray:
        """e^{As} in double precision (scaling-and-squaring Pade via scipy)."""
        a = np.array([[float(v) for v in row] for row in self.matrix], dtype=float)
        return scipy.linalg.expm(a * float(s))

    def __repr__(self):
        return f"RealLinearVectorField(2n={len(self.matrix)})"


# ---------------------------------------------------------------------------
# Complexified fields
# ---------------------------------------------------------------------------


class ComplexLinearVectorField:
    """Wirtinger form of a real linear field; acts exactly on polynomials."""

    def __init__(self, B: Sequence[Sequence], C: Sequence[Sequence]):
        self.B = tuple(tuple(GaussianRational.coerce(v) for v in row) for row in B)
        self.C = tuple(tuple(GaussianRational.coerce(v) for v in row) for row in C)
        n = len(self.B)
        if n == 0 or any(len(row) != n for row in self.B) or len(self.C) != n or any(
            len(row) != n for row in self.C
        ):
            raise ValueError("B and C must be square matrices of the same size")
        self.dimension = n

    def preserves_holomorphy(self) -> bool:
        """True iff C = 0, i.e. the field maps holomorphic polynomials to
        holomorphic polynomials."""
        return all(v.is_zero() for row in self.C for v in row)

    def dz_coefficient(self, k: int) -> MixedPolynomial:
        """Coefficient polynomial of d/dz_k (1-based k)."""
        n = self.dimension
        result = MixedPolynomial.zero(n)
        for l in range(1, n + 1):
            b = self.B[k - 1][l - 1]
            c = self.C[k - 1][l - 1]
            if not b.is_zero():
                result = result + MixedPolynomial.z(n, l).scale(b)
            if not c.is_zero():
                result = result + MixedPolynomial.zbar(n, l).scale(c)
        return result

    def dzbar_coefficient(self, k: int) -> MixedPolynomial:
        """Coefficient of d/dzbar_k; the conjugate pair (Cbar, Bbar) by realness."""
        n = self.dimension
        result = MixedPolynomial.zero(n)
        for l in range(1, n + 1):
            b = self.B[k - 1][l - 1].conjugate()
            c = self.C[k - 1][l - 1].conjugate()
            if not c.is_zero():
                result = result + MixedPolynomial.z(n, l).scale(c)
            if not b.is_zero():
                result = result + MixedPolynomial.zbar(n, l).scale(b)
        return result

    def apply(self, f: MixedPolynomial) -> MixedPolynomial:
        """X(f) by the exact Leibniz rule; linear fields preserve total degree."""
        if f.dimension != self.dimension:
            raise DimensionMismatchError("field and polynomial dimensions differ")
        n = self.dimension
        result = MixedPolynomial.zero(n)
        for k in range(1, n + 1):
            df = wirtinger_dz(k, f)
            if not df.is_zero():
                result = result + self.dz_coefficient(k) * df
            dfbar = wirtinger_dzbar(k, f)
            if not dfbar.is_zero():
                result = result + self.dzbar_coefficient(k) * dfbar
        return result

    def __repr__(self):
        return f"ComplexLinearVectorField(n={self.dimension})"


def is_tangent(field: RealLinearVectorField) -> bool:
    return field.is_tangent()


def complexify(field: RealLinearVectorField) -> ComplexLinearVectorField:
    return field.complexify()


def flow_matrix(field: RealLinearVectorField, s: float) -> np.ndarray:
    return field.flow_matrix(s)


def apply_field(field, f: MixedPolynomial) -> MixedPolynomial:
    """Apply any field-like object (Wirtinger derivative or linear field)."""
    return field.apply(f)
