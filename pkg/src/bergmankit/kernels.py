"""Reproducing kernels: unit ball, weighted disk, and Segal-Bargmann space.

All three spaces are normalized so that ||1|| = 1.  For the weighted disk
this means the weight ((a+1)/pi)(1-|z|^2)^a, which makes the measure a
probability measure for every a > -1 and gives the closed-form kernel
1/(1 - z wbar)^(2+a) exactly (the usual unnormalized weight differs from
this by the constant a+1).

Monomial norms are exact rationals whenever the space parameter is rational,
so the reproducing property and the semigroup identity can be checked with
exact arithmetic on truncated expansions; kernel evaluation itself is the
closed form in double precision.

Kernel convention: kernel_eval(space, z, w) is holomorphic in z and
anti-holomorphic in w, with conjugate symmetry K(z,w) = conj(K(w,z)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .polynomials import (
    MixedPolynomial,
    MultiIndex,
    inner_product,
    mi_total,
    multiindex_factorial,
    multiindices_of_total,
    norm_sq,
)
from .rationals import GaussianRational

ComplexVector = Sequence[complex]


class DomainError(ValueError):
    """Point outside the domain of the space."""


@dataclass(frozen=True)
class BallSpace:
    """Bergman space of the unit ball of C^n, kernel 1/(1 - z.wbar)^(n+1)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ball dimension must be >= 1")

    @property
    def dimension(self) -> int:
        return self.n

    def monomial_norm_sq(self, gamma: MultiIndex) -> Fraction:
        return Fraction(
            math.factorial(self.n) * multiindex_factorial(gamma),
            math.factorial(self.n + mi_total(gamma)),
        )

    def check_domain(self, z: ComplexVector) -> None:
        if sum(abs(v) ** 2 for v in z) >= 1.0:
            raise DomainError("ball kernel requires |z| < 1")

    def kernel(self, z: ComplexVector, w: ComplexVector) -> complex:
        pairing = sum(zi * complex(wi).conjugate() for zi, wi in zip(z, w))
        return (1.0 - pairing) ** (-(self.n + 1))

    def degree_coefficient(self, k: int) -> float:
        """Coefficient of (z.wbar)^k in the kernel series; used for tail bounds."""
        return math.comb(k + self.n, self.n)


@dataclass(frozen=True)
class WeightedDiskSpace:
    """Weighted Bergman space on the unit disk, weight ~ (1-|z|^2)^a, a > -1."""

    a: Union[Fraction, float]

    def __post_init__(self):
        if float(self.a) <= -1.0:
            raise ValueError("disk weight exponent must exceed -1")

    @property
    def dimension(self) -> int:
        return 1

    @property
    def exact_parameter(self) -> Optional[Fraction]:
        return self.a if isinstance(self.a, (int, Fraction)) else None

    def monomial_norm_sq(self, gamma: MultiIndex) -> Fraction:
        """||z^k||^2 = k! / ((a+2)(a+3)...(a+k+1)); exact for rational a."""
        a = self.exact_parameter
        if a is None:
            raise ValueError("exact disk norms need a rational weight exponent")
        k = gamma[0]
        denom = Fraction(1)
        for j in range(2, k + 2):
            denom *= a + j
        return Fraction(math.factorial(k)) / denom

    def monomial_norm_sq_float(self, k: int) -> float:
        a = float(self.a)
        denom = 1.0
        for j in range(2, k + 2):
            denom *= a + j
        return math.factorial(k) / denom

    def check_domain(self, z: ComplexVector) -> None:
        if abs(z[0]) >= 1.0:
            raise DomainError("disk kernel requires |z| < 1")

    def kernel(self, z: ComplexVector, w: ComplexVector) -> complex:
        pairing = z[0] * complex(w[0]).conjugate()
        return (1.0 - pairing) ** (-(2.0 + float(self.a)))

    def degree_coefficient(self, k: int) -> float:
        return 1.0 / self.monomial_norm_sq_float(k)


@dataclass(frozen=True)
class FockSpace:
    """Segal-Bargmann space with Gaussian weight exp(-|z|^2/t)/(pi t)^n."""

    t: Union[Fraction, float]
    n: int = 1

    def __post_init__(self):
        if float(self.t) <= 0.0:
            raise ValueError("Fock parameter t must be positive")
        if self.n < 1:
            raise ValueError("Fock dimension must be >= 1")

    @property
    def dimension(self) -> int:
        return self.n

    @property
    def exact_parameter(self) -> Optional[Fraction]:
        return Fraction(self.t) if isinstance(self.t, (int, Fraction)) else None

    def monomial_norm_sq(self, gamma: MultiIndex) -> Fraction:
        """||z^gamma||^2 = gamma! t^|gamma|, from the radial integral recurrence."""
        t = self.exact_parameter
        if t is None:
            raise ValueError("exact Fock norms need a rational t")
        return Fraction(multiindex_factorial(gamma)) * t ** mi_total(gamma)

    def check_domain(self, z: ComplexVector) -> None:
        pass  # entire functions: no domain restriction

    def kernel(self, z: ComplexVector, w: ComplexVector) -> complex:
        pairing = sum(zi * complex(wi).conjugate() for zi, wi in zip(z, w))
        return cmath.exp(pairing / float(self.t))

    def degree_coefficient(self, k: int) -> float:
        return 1.0 / (math.factorial(k) * float(self.t) ** k)


KernelSpace = Union[BallSpace, WeightedDiskSpace, FockSpace]


def parse_space(text: str) -> KernelSpace:
    """Parse CLI notation: ball:2, disk:1, disk:1/2, fock:3/2 (parameters exact)."""
    kind, _, param = text.partition(":")
    kind = kind.strip().lower()
    if kind == "ball":
        return BallSpace(int(param))
    if kind == "disk":
        return WeightedDiskSpace(Fraction(param))
    if kind == "fock":
        return FockSpace(Fraction(param))
    raise ValueError(f"unknown kernel space {text!r} (expected ball:n, disk:a, fock:t)")


# ---------------------------------------------------------------------------
# Evaluation and expansion
# ---------------------------------------------------------------------------


def _as_vector(z, dimension: int) -> Tuple[complex, ...]:
    if isinstance(z, (int, float, complex)):
        z = (z,)
    vec = tuple(complex(v) for v in z)
    if len(vec) != dimension:
        raise ValueError(f"point has {len(vec)} components, space has dimension {dimension}")
    return vec


def kernel_eval(space: KernelSpace, z, w) -> complex:
    """Closed-form kernel K(z, w)."""
    zv = _as_vector(z, space.dimension)
    wv = _as_vector(w, space.dimension)
    space.check_domain(zv)
    space.check_domain(wv)
    return space.kernel(zv, wv)


def basis_partial_sum(space: KernelSpace, z, w, K: int) -> complex:
    """sum over |gamma| <= K of e_gamma(z) conj(e_gamma(w)) with the closed-form bases."""
    if K < 0:
        raise ValueError("truncation degree K must be >= 0")
    zv = _as_vector(z, space.dimension)
    wv = _as_vector(w, space.dimension)
    space.check_domain(zv)
    space.check_domain(wv)
    n = space.dimension
    total = 0.0 + 0.0j
    for k in range(K + 1):
        for gamma in multiindices_of_total(n, k):
            zpow = 1.0 + 0.0j
            wpow = 1.0 + 0.0j
            for zi, wi, g in zip(zv, wv, gamma):
                zpow *= zi**g
                wpow *= wi**g
            if isinstance(space, WeightedDiskSpace):
                nrm = space.monomial_norm_sq_float(k)
            else:
                nrm = float(space.monomial_norm_sq(gamma))
            total += zpow * wpow.conjugate() / nrm
    return total


def series_tail_bound(space: KernelSpace, z, w, K: int, extra_terms: int = 400) -> float:
    """Numeric bound on |K(z,w) - partial sum| from the scalar degree series."""
    zv = _as_vector(z, space.dimension)
    wv = _as_vector(w, space.dimension)
    r = math.sqrt(sum(abs(v) ** 2 for v in zv)) * math.sqrt(sum(abs(v) ** 2 for v in wv))
    tail = 0.0
    for k in range(K + 1, K + 1 + extra_terms):
        term = space.degree_coefficient(k) * r**k
        tail += term
        if term < 1e-300:
            break
    return tail


# ---------------------------------------------------------------------------
# Exact reproducing property on the ball
# ---------------------------------------------------------------------------


def reproduce_polynomial(
    space: BallSpace, f: MixedPolynomial, z: Sequence[GaussianRational]
) -> GaussianRational:
    """<f, K_z> computed exactly by pairing f against the truncated kernel series.

    Terms of the kernel expansion beyond degree(f) are orthogonal to f, so the
    truncation is exact; the result must equal f(z).  Only holomorphic inputs
    are accepted: reproduction of general L^2 elements is out of scope.
    """
    if not isinstance(space, BallSpace):
        raise TypeError("exact reproduction is implemented for ball spaces")
    if f.dimension != space.n:
        raise ValueError("polynomial dimension does not match the space")
    if not f.is_holomorphic():
        raise ValueError("reproducing check requires a holomorphic polynomial")
    zs = [GaussianRational.coerce(v) for v in z]
    if len(zs) != space.n:
        raise ValueError("point dimension mismatch")
    if sum(v.abs_sq() for v in zs) >= 1:
        raise DomainError("reproducing point must satisfy |z| < 1")
    if f.is_zero():
        return GaussianRational.zero()
    n = space.n
    zero_mi = (0,) * n
    total = GaussianRational.zero()
    for k in range(int(f.degree) + 1):
        for gamma in multiindices_of_total(n, k):
            basis_monomial = MixedPolynomial.monomial(n, gamma, zero_mi)
            pairing = inner_product(f, basis_monomial)
            if pairing.is_zero():
                continue
            zpow = GaussianRational.one()
            for zi, g in zip(zs, gamma):
                for _ in range(g):
                    zpow = zpow * zi
            total = total + pairing * zpow / space.monomial_norm_sq(gamma)
    return total


# ---------------------------------------------------------------------------
# Inequality suite
# ---------------------------------------------------------------------------


@dataclass
class RkhsSuiteReport:
    space: str
    seed: int
    pairs_checked: int
    cauchy_schwarz_ok: bool
    max_cs_violation: float
    polynomials_checked: int
    pointwise_bound_ok: bool
    semigroup_exact_ok: bool
    semigroup_degree: int
    semigroup_tail_bound: float

    def passed(self) -> bool:
        return self.cauchy_schwarz_ok and self.pointwise_bound_ok and self.semigroup_exact_ok

    def to_json_dict(self) -> dict:
        return {
            "space": self.space,
            "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "cauchy_schwarz_ok": self.cauchy_schwarz_ok,
            "max_cauchy_schwarz_violation": self.max_cs_violation,
            "polynomials_checked": self.polynomials_checked,
            "pointwise_bound_ok": self.pointwise_bound_ok,
            "semigroup_exact_ok": self.semigroup_exact_ok,
            "semigroup_degree": self.semigroup_degree,
            "semigroup_tail_bound": self.semigroup_tail_bound,
            "passed": self.passed(),
            "provenance": "mixed: float(1e-12 relative) inequalities, exact semigroup identity",
        }


def semigroup_truncated_exact(
    space: KernelSpace, z: Sequence[GaussianRational], u: Sequence[GaussianRational], K: int
) -> bool:
    """Exact check of  integral of T_K(z,w) T_K(w,u) dmu(w) = T_K(z,u).

    T_K is the kernel series truncated at total degree K.  The integral is
    expanded as a double sum over basis monomials with exact monomial inner
    products; orthonormality collapses it back to the single truncated sum.
    """
    n = space.dimension
    zs = [GaussianRational.coerce(v) for v in z]
    us = [GaussianRational.coerce(v) for v in u]

    def power(point: List[GaussianRational], gamma: MultiIndex) -> GaussianRational:
        out = GaussianRational.one()
        for p, g in zip(point, gamma):
            for _ in range(g):
                out = out * p
        return out

    gammas = [g for k in range(K + 1) for g in multiindices_of_total(n, k)]
    norms = {g: space.monomial_norm_sq(g) for g in gammas}
    # Route 1: expand the product integral; <w^delta, w^gamma> = [gamma=delta] * N_gamma
    lhs = GaussianRational.zero()
    for gamma in gammas:
        for delta in gammas:
            if gamma != delta:
                continue  # exact orthogonality of distinct monomials
            lhs = lhs + power(zs, gamma) * power(us, delta).conjugate() * (
                norms[gamma] / (norms[gamma] * norms[delta])
            )
    # Route 2: the truncated kernel at (z, u) directly
    rhs = GaussianRational.zero()
    for gamma in gammas:
        rhs = rhs + power(zs, gamma) * power(us, gamma).conjugate() / norms[gamma]
    return lhs == rhs


def rkhs_inequality_suite(
    space: KernelSpace,
    points: Sequence[Sequence[GaussianRational]],
    seed: int,
    num_polynomials: int = 25,
    semigroup_degree: int = 12,
    rel_tol: float = 1e-12,
) -> RkhsSuiteReport:
    """Kernel inequality battery at the given rational sample points."""
    import random

    from .sampling import random_mixed_polynomial  # local: sampling pulls in scipy via fields

    rng = random.Random(seed)
    pts = [tuple(GaussianRational.coerce(v) for v in p) for p in points]
    float_pts = [tuple(complex(v) for v in p) for p in pts]

    # (i) |K(w,z)|^2 <= K(z,z) K(w,w) at every ordered pair
    cs_ok = True
    max_violation = 0.0
    for zp in float_pts:
        for wp in float_pts:
            lhs = abs(kernel_eval(space, wp, zp)) ** 2
            rhs = kernel_eval(space, zp, zp).real * kernel_eval(space, wp, wp).real
            slack = (lhs - rhs) / max(rhs, 1e-300)
            max_violation = max(max_violation, slack)
            if slack > rel_tol:
                cs_ok = False

    # (ii) |F(z)|^2 <= K(z,z) ||F||^2 with exact |F(z)|^2 and ||F||^2
    pointwise_ok = True
    polys_checked = 0
    if isinstance(space, BallSpace):
        for _ in range(num_polynomials):
            f = random_mixed_polynomial(rng, space.n, max_degree=5, holomorphic=True)
            if f.is_zero():
                continue
            fn = norm_sq(f)
            for zp, zf in zip(pts, float_pts):
                value = float(f.evaluate(zp).abs_sq())
                bound = kernel_eval(space, zf, zf).real * float(fn)
                if value > bound * (1.0 + rel_tol):
                    pointwise_ok = False
            polys_checked += 1

    # (iii) exact semigroup identity on the truncated expansion
    if len(pts) >= 2:
        z0, u0 = pts[0], pts[1]
    else:
        z0 = u0 = pts[0]
    semigroup_ok = semigroup_truncated_exact(space, z0, u0, semigroup_degree)
    tail = series_tail_bound(space, [complex(v) for v in z0], [complex(v) for v in u0], semigroup_degree)

    return RkhsSuiteReport(
        space=repr(space),
        seed=seed,
        pairs_checked=len(pts) ** 2,
        cauchy_schwarz_ok=cs_ok,
        max_cs_violation=max_violation,
        polynomials_checked=polys_checked,
        pointwise_bound_ok=pointwise_ok,
        semigroup_exact_ok=semigroup_ok,
        semigroup_degree=semigroup_degree,
        semigroup_tail_bound=tail,
    )


# ---------------------------------------------------------------------------
# Peetre inequality
# ---------------------------------------------------------------------------


def japanese_bracket(x: Sequence[float]) -> float:
    """<x> = (1 + |x|^2)^(1/2)."""
    return math.sqrt(1.0 + sum(v * v for v in x))


def verify_peetre(w: Sequence[float], mu: Sequence[float], l: float) -> Tuple[bool, float]:
    """Check <w+mu>^l <= 2^|l| <w>^|l| <mu>^l; returns (pass, slack ratio RHS/LHS)."""
    if len(w) != len(mu):
        raise ValueError("vectors must have the same length")
    lhs = japanese_bracket([a + b for a, b in zip(w, mu)]) ** l
    rhs = 2.0 ** abs(l) * japanese_bracket(w) ** abs(l) * japanese_bracket(mu) ** l
    return lhs <= rhs * (1.0 + 1e-12), rhs / lhs
