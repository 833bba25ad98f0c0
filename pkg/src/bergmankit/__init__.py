"""Exact-arithmetic toolkit for the Bergman projection on the unit ball.

The package computes the Bergman projection on mixed polynomials with
Gaussian-rational coefficients, evaluates commutators of linear vector
fields with the projection, runs the norm-ratio scans that witness the
unboundedness of [d/dz_i, P] and [P, d/dzbar_i], verifies exactly that
sphere-tangent linear fields commute with the projection, estimates the
iterated-commutator filtration semi-norms on degree truncations, and
provides matrix holomorphic functional calculus and reproducing-kernel
checkers.
"""

from .rationals import GaussianRational
from .polynomials import (
    DimensionMismatchError,
    MixedPolynomial,
    inner_product,
    monomial_inner_product,
    monomial_norm_sq,
    multiindex_factorial,
    norm_sq,
)
from .projection import project, project_monomial, project_via_kernel_series
from .fields import (
    ComplexLinearVectorField,
    RealLinearVectorField,
    WirtingerDz,
    WirtingerDzbar,
    complexify,
    coordinate_polynomial,
    flow_matrix,
    is_tangent,
    wirtinger_dz,
    wirtinger_dzbar,
)
from .commutators import (
    WitnessFamily,
    closed_form_ratio_sq,
    commutator_apply,
    divergence_scan,
    linear_combination_unbounded,
    ratio_sq,
    verify_tangent_commutes,
)
from .filtration import (
    CommutatorSystem,
    OperatorOnD,
    commutator,
    filtration_report,
    iterated_commutator,
    seminorm_estimate,
    truncate,
    truncated_norm,
)
from .matrixcalc import (
    Contour,
    gelfand_radius,
    holomorphic_calculus,
    resolvent,
    spectra_agree_under_subalgebra,
    spectrum,
    von_neumann_inverse,
)
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

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "MixedPolynomial",
    "DimensionMismatchError",
    "inner_product",
    "monomial_inner_product",
    "monomial_norm_sq",
    "multiindex_factorial",
    "norm_sq",
    "project",
    "project_monomial",
    "project_via_kernel_series",
    "RealLinearVectorField",
    "ComplexLinearVectorField",
    "WirtingerDz",
    "WirtingerDzbar",
    "complexify",
    "coordinate_polynomial",
    "flow_matrix",
    "is_tangent",
    "wirtinger_dz",
    "wirtinger_dzbar",
    "WitnessFamily",
    "closed_form_ratio_sq",
    "commutator_apply",
    "divergence_scan",
    "linear_combination_unbounded",
    "ratio_sq",
    "verify_tangent_commutes",
    "CommutatorSystem",
    "OperatorOnD",
    "commutator",
    "filtration_report",
    "iterated_commutator",
    "seminorm_estimate",
    "truncate",
    "truncated_norm",
    "Contour",
    "gelfand_radius",
    "holomorphic_calculus",
    "resolvent",
    "spectra_agree_under_subalgebra",
    "spectrum",
    "von_neumann_inverse",
    "BallSpace",
    "WeightedDiskSpace",
    "FockSpace",
    "basis_partial_sum",
    "kernel_eval",
    "reproduce_polynomial",
    "rkhs_inequality_suite",
    "verify_peetre",
]
