"""Spectral toolbox on matrix algebras: resolvent, Neumann series, Gelfand
radius, and contour-integral holomorphic functional calculus.

The contour for the functional calculus is a single circle centered at the
spectral centroid with radius 1.5x the largest eigenvalue distance; a circle
suffices for matrices and keeps the quadrature a plain trapezoid rule, which
converges geometrically on periodic analytic integrands.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np

DEFAULT_NODES = 256
DEFAULT_RADIUS_FACTOR = 1.5


class SpectrumError(ValueError):
    """Evaluation point is in (or numerically touching) the spectrum."""


def as_square_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError("expected a nonempty square matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def spectrum(a) -> List[complex]:
    """Eigenvalues with multiplicity, sorted by (re, im)."""
    m = as_square_matrix(a)
    eigs = np.linalg.eigvals(m)
    return sorted((complex(v) for v in eigs), key=lambda w: (w.real, w.imag))


def resolvent(a, z: complex, residual_tol: float = 1e-10) -> np.ndarray:
    """(zI - a)^{-1} by direct solve, with a max-norm residual check."""
    m = as_square_matrix(a)
    eigs = spectrum(m)
    if min(abs(z - lam) for lam in eigs) < 1e-12:
        raise SpectrumError(f"z = {z} is within 1e-12 of the spectrum")
    size = m.shape[0]
    shifted = z * np.eye(size) - m
    res = np.linalg.solve(shifted, np.eye(size, dtype=complex))
    residual = float(np.max(np.abs(shifted @ res - np.eye(size))))
    if residual >= residual_tol:
        raise ArithmeticError(f"resolvent residual {residual:.3e} exceeds {residual_tol:g}")
    return res


def von_neumann_inverse(a, tol: float = 1e-10) -> np.ndarray:
    """(I - a)^{-1} = sum a^n for ||a|| < 1, truncated by the geometric tail bound."""
    m = as_square_matrix(a)
    norm = float(np.linalg.norm(m, 2))
    if norm >= 1.0:
        raise ValueError(f"Neumann series needs ||a|| < 1, got {norm:.6g}")
    size = m.shape[0]
    if norm == 0.0:
        return np.eye(size, dtype=complex)
    # smallest N with norm^(N+1)/(1-norm) < tol
    steps = max(0, math.ceil(math.log(tol * (1.0 - norm)) / math.log(norm) - 1))
    total = np.eye(size, dtype=complex)
    power = np.eye(size, dtype=complex)
    for _ in range(steps):
        power = power @ m
        total = total + power
    direct = np.linalg.solve(np.eye(size) - m, np.eye(size, dtype=complex))
    residual = float(np.max(np.abs(total - direct)))
    if residual >= 10.0 * tol:
        raise ArithmeticError(f"Neumann partial sum off by {residual:.3e} (> 10*tol)")
    return total


@dataclass
class GelfandResult:
    """||a^(2^k)||^(1/2^k) sequence from repeated squaring, plus the limit estimate."""

    estimates: List[float]
    value: float


def gelfand_radius(a, max_doublings: int = 30) -> GelfandResult:
    """Spectral radius via the norm-limit formula with per-step normalization.

    Repeated squaring with renormalization avoids overflow: track B ~ a^(2^k)
    up to scale and accumulate the log of the scale separately.
    """
    m = as_square_matrix(a)
    norm = float(np.linalg.norm(m, 2))
    if norm == 0.0:
        return GelfandResult([0.0], 0.0)
    estimates = [norm]
    b = m / norm
    log_scale = math.log(norm)  # log ||a^(2^k)|| estimate, k = 0
    for k in range(1, max_doublings + 1):
        b = b @ b
        step_norm = float(np.linalg.norm(b, 2))
        if step_norm == 0.0:
            estimates.append(0.0)
            return GelfandResult(estimates, 0.0)
        log_scale = 2.0 * log_scale + math.log(step_norm)
        b = b / step_norm
        estimates.append(math.exp(log_scale / 2.0**k))
    return GelfandResult(estimates, estimates[-1])


# ---------------------------------------------------------------------------
# Holomorphic functional calculus
# ---------------------------------------------------------------------------


@dataclass
class Contour:
    """Circle |z - center| = radius sampled at `nodes` equispaced points."""

    center: complex
    radius: float
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("contour radius must be positive")
        if self.nodes < 16:
            raise ValueError("contour needs at least 16 nodes")


def default_contour(a, nodes: int = DEFAULT_NODES, radius_factor: float = DEFAULT_RADIUS_FACTOR) -> Contour:
    """Circle at the spectral centroid enclosing the spectrum with margin."""
    eigs = spectrum(a)
    center = sum(eigs) / len(eigs)
    spread = max(abs(lam - center) for lam in eigs)
    radius = radius_factor * spread if spread > 0 else max(1.0, radius_factor)
    return Contour(center=center, radius=radius, nodes=nodes)


def holomorphic_calculus(
    a,
    f: Callable[[complex], complex],
    contour: Contour | None = None,
    nodes: int | None = None,
) -> np.ndarray:
    """(1/2 pi i) contour integral of f(z) (zI - a)^{-1} dz by the trapezoid rule.

    The caller guarantees f is holomorphic on and inside the contour.  Nodes
    are evaluated independently and combined with numpy's deterministic
    pairwise reduction, so results are reproducible bit for bit.
    """
    m = as_square_matrix(a)
    if contour is None:
        contour = default_contour(m, nodes=nodes or DEFAULT_NODES)
    elif nodes is not None:
        contour = Contour(contour.center, contour.radius, nodes)
    eigs = spectrum(m)
    if max(abs(lam - contour.center) for lam in eigs) >= contour.radius:
        raise ValueError("contour does not enclose the spectrum")
    clearance = min(contour.radius - abs(lam - contour.center) for lam in eigs)
    if clearance < contour.radius / 100.0:
        warnings.warn(
            f"contour passes within {clearance:.3e} of the spectrum "
            f"(< radius/100); quadrature may be ill-conditioned",
            RuntimeWarning,
        )
    size = m.shape[0]
    thetas = 2.0 * math.pi * np.arange(contour.nodes) / contour.nodes
    phases = np.exp(1j * thetas)
    terms = np.empty((contour.nodes, size, size), dtype=complex)
    eye = np.eye(size, dtype=complex)
    for j, phase in enumerate(phases):
        zj = contour.center + contour.radius * phase
        res = np.linalg.solve(zj * eye - m, eye)
        terms[j] = f(zj) * phase * res
    return (contour.radius / contour.nodes) * np.sum(terms, axis=0)


# ---------------------------------------------------------------------------
# Closed-subalgebra demonstration: upper-triangular inverses
# ---------------------------------------------------------------------------


@dataclass
class TriangularInverseReport:
    passed: bool
    max_lower_entry: float
    inverse: np.ndarray = field(repr=False, default=None)


def spectra_agree_under_subalgebra(a, tol: float = 1e-12) -> TriangularInverseReport:
    """Invert an upper-triangular matrix and check the inverse stays triangular."""
    m = as_square_matrix(a)
    size = m.shape[0]
    lower = np.tril(m, k=-1)
    if np.any(lower != 0):
        raise ValueError("input must be exactly upper triangular")
    diag = np.diagonal(m)
    if np.any(np.abs(diag) < 1e-14):
        raise SpectrumError("matrix is singular (zero diagonal entry)")
    inv = np.linalg.solve(m, np.eye(size, dtype=complex))
    max_lower = float(np.max(np.abs(np.tril(inv, k=-1)))) if size > 1 else 0.0
    return TriangularInverseReport(passed=max_lower < tol, max_lower_entry=max_lower, inverse=inv)
