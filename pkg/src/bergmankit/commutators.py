"""Commutators of vector fields with the Bergman projection.

Sign convention, used everywhere and echoed by the CLI:

    [X, P] := X o P - P o X

Applied to a polynomial f this is  X(P(f)) - P(X(f)), evaluated exactly.
The module provides the two witness-family norm-ratio scans whose divergence
exhibits the unboundedness of [d/dz_i, P] and [P, d/dzbar_i], the closed-form
ratio each scan is cross-checked against, and an exact-zero checker for the
commutation of tangent linear fields with the projection.  The checker is a
verifier, not a theorem: commutation holds for tangent fields that are also
complex-linear (always the case when n = 1), and for other tangent fields it
returns the offending monomial.

Unboundedness is always reported as "the ratio exceeds threshold c at m=...",
mirroring a proof by contradiction; no operator norm of an unbounded operator
is ever claimed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .fields import RealLinearVectorField, WirtingerDz, WirtingerDzbar
from .polynomials import MixedPolynomial, MultiIndex, norm_sq, term_keys_up_to
from .projection import project
from .rationals import GaussianRational

COMMUTATOR_CONVENTION = "[X,P] = X∘P - P∘X"


def commutator_apply(field_obj, f: MixedPolynomial) -> MixedPolynomial:
    """[X, P] f = X(P(f)) - P(X(f)), exact.

    `field_obj` is anything with an ``apply`` method: a complexified linear
    field or a single Wirtinger derivative.
    """
    return field_obj.apply(project(f)) - project(field_obj.apply(f))


# ---------------------------------------------------------------------------
# Witness families and ratio scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessFamily:
    """Monomials f_m = z_i^{p(m)} zbar_i^{q(m)} on B_n with affine p, q.

    p(m) = p_slope*m + p_offset and likewise for q.  The default (p, q) =
    (2m, m) is the family used in both divergence scans.
    """

    dimension: int
    coordinate: int = 1
    p_slope: int = 2
    p_offset: int = 0
    q_slope: int = 1
    q_offset: int = 0

    def __post_init__(self):
        if not 1 <= self.coordinate <= self.dimension:
            raise ValueError("witness coordinate out of range")

    def p(self, m: int) -> int:
        return self.p_slope * m + self.p_offset

    def q(self, m: int) -> int:
        return self.q_slope * m + self.q_offset

    def witness(self, m: int) -> MixedPolynomial:
        n = self.dimension
        i = self.coordinate - 1
        alpha = tuple(self.p(m) if j == i else 0 for j in range(n))
        beta = tuple(self.q(m) if j == i else 0 for j in range(n))
        return MixedPolynomial.monomial(n, alpha, beta)


@dataclass(frozen=True)
class RatioPoint:
    m: int
    ratio_sq: Fraction

    def ratio_sq_float(self) -> float:
        return float(self.ratio_sq)


def _validate_family(family: WitnessFamily, m: int, kind: str) -> Tuple[int, int]:
    p, q = family.p(m), family.q(m)
    if p < 0 or q < 1:
        raise ValueError(f"witness family needs p >= 0 and q >= 1, got p={p}, q={q}")
    if kind == "dz" and p <= q:
        raise ValueError(f"dz family needs p > q for a nonzero commutator, got p={p}, q={q}")
    if kind not in ("dz", "dzbar"):
        raise ValueError(f"unknown field kind {kind!r}")
    return p, q


def _commutator_for_kind(family: WitnessFamily, kind: str):
    """The commutator map for the scan: [d/dz_i, P] or [P, d/dzbar_i]."""
    n, i = family.dimension, family.coordinate
    if kind == "dz":
        return lambda f: commutator_apply(WirtingerDz(i, n), f)
    # [P, Y] is the negation of [Y, P]
    return lambda f: -commutator_apply(WirtingerDzbar(i, n), f)


def ratio_sq(family: WitnessFamily, m: int, kind: str) -> Fraction:
    """||[X,P] f_m||^2 / ||f_m||^2 from the actual commutator evaluation."""
    _validate_family(family, m, kind)
    f = family.witness(m)
    image = _commutator_for_kind(family, kind)(f)
    return norm_sq(image) / norm_sq(f)


def closed_form_ratio_sq(n: int, p: int, q: int, kind: str) -> Fraction:
    """The closed-form ratio the commutator evaluation must reproduce.

    dz:     q^2 p!p!(p-q-1+n)!/((n+p)!(n+p)!(p-q-1)!) * (n+p+q)!/(p+q)!
    dzbar:  q^2 p!p!(p-q+1+n)!/((n+p)!(n+p)!(p-q+1)!) * (n+p+q)!/(p+q)!
    """
    if kind == "dz":
        if p <= q:
            raise ValueError("dz closed form needs p > q")
        shift = p - q - 1
    elif kind == "dzbar":
        if q < 1 or p - q + 1 < 0:
            raise ValueError("dzbar closed form needs q >= 1 and p >= q - 1")
        shift = p - q + 1
    else:
        raise ValueError(f"unknown field kind {kind!r}")
    num = q * q * math.factorial(p) ** 2 * math.factorial(shift + n) * math.factorial(n + p + q)
    den = math.factorial(n + p) ** 2 * math.factorial(shift) * math.factorial(p + q)
    return Fraction(num, den)


@dataclass
class DivergenceScan:
    """Exact ratio points plus the float log-log growth diagnostics."""

    kind: str
    dimension: int
    coordinate: int
    points: List[RatioPoint]
    slope: Optional[float]  # None when some ratio vanishes (slope undefined)
    thresholds: List[Tuple[float, Optional[int]]] = field(default_factory=list)

    def first_m_exceeding(self, threshold) -> Optional[int]:
        # Fraction compares exactly against int, float, and Fraction alike.
        for point in self.points:
            if point.ratio_sq > threshold:
                return point.m
        return None


def fit_loglog_slope(points: Sequence[RatioPoint], m_lo: int, m_hi: int) -> Optional[float]:
    """Least-squares slope of log(ratio_sq) against log(m) over m in [m_lo, m_hi]."""
    xs, ys = [], []
    for point in points:
        if m_lo <= point.m <= m_hi:
            if point.ratio_sq == 0:
                return None
            xs.append(math.log(point.m))
            ys.append(math.log(float(point.ratio_sq)))
    if len(xs) < 2:
        return None
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return sxy / sxx


def divergence_scan(
    family: WitnessFamily,
    kind: str,
    m_max: int,
    thresholds: Sequence[float] = (),
) -> DivergenceScan:
    """Exact ratios for m = 1..m_max plus a slope fit over the upper half.

    The fit window [ceil(m_max/2), m_max] suppresses the O(1/m) transient:
    the exact ratio behaves like m^2 * (bounded), so the slope approaches 2.
    """
    if m_max < 10:
        raise ValueError("m_max must be at least 10 for a meaningful scan")
    points = [RatioPoint(m, ratio_sq(family, m, kind)) for m in range(1, m_max + 1)]
    slope = fit_loglog_slope(points, (m_max + 1) // 2, m_max)
    scan = DivergenceScan(
        kind=kind,
        dimension=family.dimension,
        coordinate=family.coordinate,
        points=points,
        slope=slope,
    )
    scan.thresholds = [(float(c), scan.first_m_exceeding(float(c))) for c in thresholds]
    return scan


def tangent_field_scan(field_obj, family: WitnessFamily, m_max: int) -> DivergenceScan:
    """Ratio scan for an arbitrary field; no pass/fail claim is attached."""
    points = []
    for m in range(1, m_max + 1):
        f = family.witness(m)
        image = commutator_apply(field_obj, f)
        points.append(RatioPoint(m, norm_sq(image) / norm_sq(f)))
    slope = fit_loglog_slope(points, (m_max + 1) // 2, m_max)
    return DivergenceScan(
        kind="field",
        dimension=family.dimension,
        coordinate=family.coordinate,
        points=points,
        slope=slope,
    )


# ---------------------------------------------------------------------------
# Tangent-field commutation
# ---------------------------------------------------------------------------


@dataclass
class TangentCommutationReport:
    dimension: int
    degree: int
    checked: int
    passed: bool
    counterexample: Optional[Tuple[MultiIndex, MultiIndex]] = None

    def to_json_dict(self) -> dict:
        return {
            "n": self.dimension,
            "degree": self.degree,
            "monomials_checked": self.checked,
            "passed": self.passed,
            "counterexample": None
            if self.counterexample is None
            else {"alpha": list(self.counterexample[0]), "beta": list(self.counterexample[1])},
            "provenance": "exact",
        }


def verify_tangent_commutes(A: RealLinearVectorField, degree: int) -> TangentCommutationReport:
    """Exact-zero check of [X, P] on every monomial of total degree <= degree.

    Refuses non-tangent input: that is a violated precondition, not a failed
    theorem.
    """
    if not A.is_tangent():
        raise ValueError(
            "field is not tangent to the sphere (A + A^t != 0); "
            "tangency is a precondition of this check"
        )
    X = A.complexify()
    n = A.dimension
    checked = 0
    for alpha, beta in term_keys_up_to(n, degree):
        f = MixedPolynomial.monomial(n, alpha, beta)
        if not commutator_apply(X, f).is_zero():
            return TangentCommutationReport(n, degree, checked, False, (alpha, beta))
        checked += 1
    return TangentCommutationReport(n, degree, checked, True)


# ---------------------------------------------------------------------------
# Linear combinations of d/dz_i (or d/dzbar_i)
# ---------------------------------------------------------------------------


@dataclass
class LinearCombinationReport:
    chosen_coordinate: int
    scale: Fraction  # |a_j|^2
    scan: DivergenceScan


def linear_combination_unbounded(
    coeffs: Sequence[GaussianRational],
    kind: str,
    m_max: int,
    thresholds: Sequence[float] = (),
) -> LinearCombinationReport:
    """Divergence scan for X = sum_i a_i d/dz_i (or dzbar), not all a_i zero.

    On the coordinate-j witness monomials every other term of the combination
    kills the monomial (it contains no z_i factor), so the scan reduces to the
    single-derivative scan scaled by |a_j|^2.
    """
    coeffs = [GaussianRational.coerce(c) for c in coeffs]
    n = len(coeffs)
    j = next((idx + 1 for idx, c in enumerate(coeffs) if not c.is_zero()), None)
    if j is None:
        raise ValueError("all coefficients are zero; no unboundedness witness exists")
    family = WitnessFamily(dimension=n, coordinate=j)
    base = divergence_scan(family, kind, m_max)
    scale = coeffs[j - 1].abs_sq()
    scaled_points = [RatioPoint(pt.m, pt.ratio_sq * scale) for pt in base.points]
    scan = DivergenceScan(
        kind=kind,
        dimension=n,
        coordinate=j,
        points=scaled_points,
        slope=base.slope,
    )
    scan.thresholds = [(float(c), scan.first_m_exceeding(float(c))) for c in thresholds]
    return LinearCombinationReport(chosen_coordinate=j, scale=scale, scan=scan)
