"""Degree-truncated operator compressions and the iterated-commutator semi-norms."""

import random
from fractions import Fraction

import numpy as np
import pytest

from bergmankit.filtration import (
    CommutatorSystem,
    OperatorOnD,
    commutator,
    filtration_report,
    iterated_commutator,
    orthogonal_span_basis,
    seminorm_estimate,
    truncate,
    truncated_norm,
)
from bergmankit.fields import RealLinearVectorField, WirtingerDz
from bergmankit.polynomials import MixedPolynomial, inner_product, term_keys_up_to
from bergmankit.sampling import random_mixed_polynomial, random_unitary_generator_field

ROTATION = RealLinearVectorField([[0, 1], [-1, 0]])


def _rotation_op(n=1):
    return OperatorOnD.from_field(ROTATION.complexify())


# -- orthogonal basis ---------------------------------------------------------


def test_span_basis_is_orthogonal_and_exhaustive():
    basis, vectors, norms = orthogonal_span_basis(1, 6)
    assert len(basis) == len(list(term_keys_up_to(1, 6)))
    for j in range(len(vectors)):
        assert norms[j].re > 0
        for k in range(j):
            assert inner_product(vectors[j], vectors[k]).is_zero()


def test_span_basis_mixed_monomials_not_orthogonal():
    # the reason Gram-Schmidt is needed at all: <z zbar, 1> = 1/2 != 0
    one = MixedPolynomial.constant(1, 1)
    zzbar = MixedPolynomial.monomial(1, (1,), (1,))
    assert inner_product(zzbar, one) == Fraction(1, 2)


# -- iterated commutators -------------------------------------------------------


def _operator_eq_on_degree(op_a, op_b, n, degree):
    for alpha, beta in term_keys_up_to(n, degree):
        f = MixedPolynomial.monomial(n, alpha, beta)
        if op_a.apply(f) != op_b.apply(f):
            return False
    return True


def test_iterated_commutator_tangent_system_vanishes():
    P = OperatorOnD.projection(1)
    X = _rotation_op()
    zero = OperatorOnD.zero(1)
    single = iterated_commutator(CommutatorSystem((X,)), P)
    assert _operator_eq_on_degree(single, zero, 1, 6)
    double = iterated_commutator(CommutatorSystem((X, X)), P)
    assert _operator_eq_on_degree(double, zero, 1, 6)


def test_identity_commutes_with_derivatives():
    D = OperatorOnD.from_field(WirtingerDz(1, 1))
    result = iterated_commutator(CommutatorSystem((D,)), OperatorOnD.identity(1))
    assert _operator_eq_on_degree(result, OperatorOnD.zero(1), 1, 6)


def test_iterated_commutator_linear_in_b():
    rng = random.Random(41)
    D = OperatorOnD.from_field(WirtingerDz(1, 1))
    P = OperatorOnD.projection(1)
    system = CommutatorSystem((D,))
    combo = iterated_commutator(system, P + P.scale(Fraction(1, 2)))
    direct = iterated_commutator(system, P) + iterated_commutator(system, P).scale(Fraction(1, 2))
    for _ in range(10):
        f = random_mixed_polynomial(rng, 1, 5)
        assert combo.apply(f) == direct.apply(f)


def test_empty_system_rejected():
    with pytest.raises(ValueError):
        CommutatorSystem(())


# -- truncation -----------------------------------------------------------------


def test_truncate_identity_is_identity_matrix():
    tr = truncate(OperatorOnD.identity(1), 4)
    assert np.max(np.abs(tr.matrix - np.eye(len(tr.basis)))) < 1e-12


def test_truncate_zero_operator():
    tr = truncate(OperatorOnD.zero(2), 3)
    assert np.max(np.abs(tr.matrix)) == 0.0


def test_truncate_projection_is_orthogonal_projection_matrix():
    tr = truncate(OperatorOnD.projection(1), 5)
    m = tr.matrix
    assert np.max(np.abs(m - m.conj().T)) < 1e-12       # Hermitian
    assert np.max(np.abs(m @ m - m)) < 1e-12            # idempotent
    assert abs(truncated_norm(tr).value - 1.0) < 1e-9


def test_truncation_respects_composition_for_span_preserving_ops():
    P = OperatorOnD.projection(1)
    X = _rotation_op()
    d = 5
    product = truncate(X @ P, d).matrix
    factored = truncate(X, d).matrix @ truncate(P, d).matrix
    assert np.max(np.abs(product - factored)) < 1e-10


def test_truncation_not_multiplicative_when_span_leaks():
    """Multiplication by z leaks out of the span; a following derivative maps
    the leaked part back in, so the compressions stop composing."""
    D = OperatorOnD.from_field(WirtingerDz(1, 1))
    mz = OperatorOnD(1, lambda f: MixedPolynomial.z(1, 1) * f, "Mz")
    d = 4
    product = truncate(D @ mz, d).matrix
    factored = truncate(D, d).matrix @ truncate(mz, d).matrix
    assert np.max(np.abs(product - factored)) > 1e-3


def test_truncated_norm_examples():
    two_id = OperatorOnD.identity(1).scale(2)
    est = truncated_norm(truncate(two_id, 3))
    assert est.converged and abs(est.value - 2.0) < 1e-9
    zero = truncated_norm(truncate(OperatorOnD.zero(1), 3))
    assert zero.value == 0.0 and zero.converged


def test_truncated_norm_matches_svd():
    rng = random.Random(42)
    D = OperatorOnD.from_field(WirtingerDz(1, 1))
    P = OperatorOnD.projection(1)
    for op in (commutator(D, P), P + D, D @ P):
        tr = truncate(op, 6)
        sigma = float(np.linalg.svd(tr.matrix, compute_uv=False)[0])
        assert abs(truncated_norm(tr).value - sigma) < 1e-8 * max(sigma, 1.0)
    _ = rng


# -- semi-norms ------------------------------------------------------------------


def test_seminorm_tangent_family_flat():
    P = OperatorOnD.projection(1)
    V = [_rotation_op()]
    for k in (0, 1, 2, 3):
        for d in (4, 6, 8):
            assert abs(seminorm_estimate(P, V, k, d).value - 1.0) < 1e-8


def test_seminorm_empty_family_is_base_norm():
    P = OperatorOnD.projection(1)
    for k in (0, 1, 3):
        assert abs(seminorm_estimate(P, [], k, 4).value - 1.0) < 1e-9


def test_seminorm_dz_generator_grows_with_degree():
    P = OperatorOnD.projection(1)
    V = [OperatorOnD.from_field(WirtingerDz(1, 1))]
    values = [seminorm_estimate(P, V, 1, d).value for d in (4, 6, 8, 10)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_seminorm_tangent_family_n2():
    rng = random.Random(43)
    P = OperatorOnD.projection(2)
    V = [OperatorOnD.from_field(random_unitary_generator_field(rng, 2).complexify())]
    for k in (1, 2):
        assert abs(seminorm_estimate(P, V, k, 4).value - 1.0) < 1e-8


def test_filtration_report_verdicts():
    P = OperatorOnD.projection(1)
    tangent = filtration_report(P, [_rotation_op()], k_max=2, degrees=[4, 6, 8, 10])
    assert all(level.verdict == "stable" for level in tangent.levels)

    dz = filtration_report(
        P, [OperatorOnD.from_field(WirtingerDz(1, 1))], k_max=1, degrees=[4, 12, 22, 32]
    )
    assert dz.levels[0].verdict == "stable"  # k=0 is the plain norm, 1.0 at all d
    assert dz.levels[1].verdict == "diverging"

    ident = filtration_report(OperatorOnD.identity(1), [_rotation_op()], 2, [4, 6])
    assert all(level.verdict == "stable" for level in ident.levels)


def test_filtration_report_json_shape():
    P = OperatorOnD.projection(1)
    report = filtration_report(P, [_rotation_op()], 1, [4, 6])
    payload = report.to_json_dict()
    assert {level["k"] for level in payload["levels"]} == {0, 1}
    for level in payload["levels"]:
        assert {e["d"] for e in level["estimates"]} == {4, 6}
        assert all(e["flag"] == "ok" for e in level["estimates"])
