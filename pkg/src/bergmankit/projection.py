"""The Bergman projection on the polynomial subspace of L^2(B_n).

Two independent routes are provided:

* :func:`project_monomial` / :func:`project` use the closed-form image of a
  monomial,

      P(z^alpha zbar^beta) = [alpha!/(n+|alpha|)!] *
                             [(|alpha-beta|+n)!/(alpha-beta)!] * z^(alpha-beta)

  when alpha >= beta componentwise, and 0 otherwise.

* :func:`project_via_kernel_series` integrates against the kernel expansion

      1/(1 - z.wbar)^(n+1) = sum_k (k+n)!/(k!n!) sum_{|g|=k} (k!/g!) z^g wbar^g

  truncated at k = degree(f).  Monomial orthogonality makes the truncation
  exact, so the two routes must agree term for term; the series route is the
  oracle the closed form is tested against.

"alpha >= beta" is read componentwise: the nonzero case requires a g in N^n
with beta + g = alpha, which forces every component.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict

from .polynomials import (
    MixedPolynomial,
    MultiIndex,
    TermKey,
    mi_add,
    mi_geq,
    mi_sub,
    mi_total,
    monomial_integral,
    multiindex_factorial,
    multiindices_of_total,
)
from .rationals import GaussianRational


def project_monomial(alpha: MultiIndex, beta: MultiIndex) -> MixedPolynomial:
    """Closed-form Bergman projection of the monomial z^alpha zbar^beta."""
    alpha = tuple(alpha)
    beta = tuple(beta)
    if len(alpha) != len(beta):
        raise ValueError("multi-index lengths differ")
    n = len(alpha)
    if not mi_geq(alpha, beta):
        return MixedPolynomial.zero(n)
    diff = mi_sub(alpha, beta)
    coeff = Fraction(
        multiindex_factorial(alpha) * math.factorial(mi_total(diff) + n),
        math.factorial(n + mi_total(alpha)) * multiindex_factorial(diff),
    )
    return MixedPolynomial.monomial(n, diff, (0,) * n, GaussianRational(coeff))


def project(f: MixedPolynomial) -> MixedPolynomial:
    """Linear extension of the monomial projection; output is holomorphic."""
    result = MixedPolynomial.zero(f.dimension)
    for (alpha, beta), coeff in f.terms():
        result = result + project_monomial(alpha, beta).scale(coeff)
    return result


def project_via_kernel_series(f: MixedPolynomial) -> MixedPolynomial:
    """Bergman projection by term-by-term integration against the kernel series.

    For each series index g the contribution to P(f) is

        (|g|+n)!/(|g|!n!) * (|g|!/g!) * [integral of f(w) wbar^g dmu(w)] * z^g

    and only |g| <= degree(f) can pair nonzero with f, so the truncated sum
    is the exact projection, not an approximation.
    """
    n = f.dimension
    if f.is_zero():
        return MixedPolynomial.zero(n)
    max_k = int(f.degree)
    terms: Dict[TermKey, GaussianRational] = {}
    zero_mi = (0,) * n
    for k in range(max_k + 1):
        series_factor = Fraction(math.factorial(k + n), math.factorial(k) * math.factorial(n))
        for gamma in multiindices_of_total(n, k):
            multinomial = Fraction(math.factorial(k), multiindex_factorial(gamma))
            # integral of f(w) * wbar^gamma over B_n, term by term
            integral = GaussianRational.zero()
            for (a, b), coeff in f.terms():
                weight = monomial_integral(a, mi_add(b, gamma))
                if weight:
                    integral = integral + coeff * weight
            if not integral.is_zero():
                value = integral * (series_factor * multinomial)
                key = (gamma, zero_mi)
                terms[key] = terms.get(key, GaussianRational.zero()) + value
    return MixedPolynomial(n, terms)
