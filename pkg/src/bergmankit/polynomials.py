"""Multi-indices and mixed polynomials on the unit ball of C^n.

A mixed polynomial is a finite sum  sum_{(alpha,beta)} c * z^alpha zbar^beta
with GaussianRational coefficients.  This is the dense subspace on which the
Bergman projection and all commutators are evaluated exactly.

The L^2 pairing uses the Lebesgue measure normalized so the ball has total
mass 1.  On monomials it reduces to

    <z^a zbar^b, z^c zbar^d>  =  n!(a+d)!/(n+|a+d|)!   if a+d = b+c,
                                 0                     otherwise,

which is the single closed form everything in this module rests on.  The
inner product is linear in the first slot and conjugate-linear in the second.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Dict, Iterator, Sequence, Tuple, Union

from .rationals import GaussianRational, ScalarLike, format_rational, parse_rational

MultiIndex = Tuple[int, ...]
TermKey = Tuple[MultiIndex, MultiIndex]

NEG_INF = float("-inf")  # degree of the zero polynomial


class DimensionMismatchError(ValueError):
    """Operands live on balls of different complex dimension."""


def validate_multiindex(alpha: Sequence[int], n: int) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n:
        raise DimensionMismatchError(f"multi-index {alpha} has length {len(alpha)}, expected {n}")
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {alpha} has a negative entry")
    return alpha


def mi_total(alpha: MultiIndex) -> int:
    """|alpha| = sum of entries."""
    return sum(alpha)


def mi_add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def mi_sub(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    """Componentwise difference; caller must ensure alpha >= beta."""
    return tuple(a - b for a, b in zip(alpha, beta))


def mi_geq(alpha: MultiIndex, beta: MultiIndex) -> bool:
    """Componentwise alpha >= beta."""
    return all(a >= b for a, b in zip(alpha, beta))


def multiindex_factorial(alpha: MultiIndex) -> int:
    """alpha! = prod_i alpha_i!."""
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def multiindices_of_total(n: int, total: int) -> Iterator[MultiIndex]:
    """All alpha in N^n with |alpha| = total, lexicographically descending in the first slot."""
    if n == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in multiindices_of_total(n - 1, total - head):
            yield (head,) + rest


def multiindices_up_to(n: int, max_total: int) -> Iterator[MultiIndex]:
    for total in range(max_total + 1):
        yield from multiindices_of_total(n, total)


def term_keys_up_to(n: int, max_degree: int) -> Iterator[TermKey]:
    """All (alpha, beta) with |alpha| + |beta| <= max_degree, graded order."""
    for total in range(max_degree + 1):
        for da in range(total, -1, -1):
            for alpha in multiindices_of_total(n, da):
                for beta in multiindices_of_total(n, total - da):
                    yield alpha, beta


# ---------------------------------------------------------------------------
# Monomial pairings (the exact closed forms)
# ---------------------------------------------------------------------------


def monomial_integral(alpha: MultiIndex, beta: MultiIndex) -> Fraction:
    """integral over B_n of z^alpha zbar^beta dmu: n!alpha!/(n+|alpha|)! if alpha=beta else 0."""
    if len(alpha) != len(beta):
        raise DimensionMismatchError("multi-index lengths differ")
    if alpha != beta:
        return Fraction(0)
    n = len(alpha)
    return Fraction(
        math.factorial(n) * multiindex_factorial(alpha),
        math.factorial(n + mi_total(alpha)),
    )


def monomial_norm_sq(alpha: MultiIndex, beta: MultiIndex) -> Fraction:
    """||z^alpha zbar^beta||^2 = n!(alpha+beta)!/(n+|alpha+beta|)!."""
    if len(alpha) != len(beta):
        raise DimensionMismatchError("multi-index lengths differ")
    return monomial_integral(mi_add(alpha, beta), mi_add(alpha, beta))


def monomial_inner_product(
    alpha: MultiIndex, beta: MultiIndex, gamma: MultiIndex, delta: MultiIndex
) -> GaussianRational:
    """<z^alpha zbar^beta, z^gamma zbar^delta>; nonzero iff alpha+delta = beta+gamma."""
    if not (len(alpha) == len(beta) == len(gamma) == len(delta)):
        raise DimensionMismatchError("multi-index lengths differ")
    return GaussianRational(monomial_integral(mi_add(alpha, delta), mi_add(beta, gamma)))


# ---------------------------------------------------------------------------
# Mixed polynomials
# ---------------------------------------------------------------------------


def term_sort_key(key: TermKey):
    """Graded-lexicographic order on (alpha, beta); fixes all canonical orderings."""
    alpha, beta = key
    return (mi_total(alpha) + mi_total(beta), alpha, beta)


class MixedPolynomial:
    """Finite sum of z^alpha zbar^beta terms with GaussianRational coefficients.

    Zero coefficients are never stored; the zero polynomial is the empty
    term map.  Instances are treated as immutable: all operations return
    new polynomials.
    """

    __slots__ = ("dimension", "_terms")

    def __init__(self, dimension: int, terms: Dict[TermKey, GaussianRational] | None = None):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        object.__setattr__(self, "dimension", int(dimension))
        clean: Dict[TermKey, GaussianRational] = {}
        for (alpha, beta), coeff in (terms or {}).items():
            alpha = validate_multiindex(alpha, dimension)
            beta = validate_multiindex(beta, dimension)
            coeff = GaussianRational.coerce(coeff)
            if not coeff.is_zero():
                clean[(alpha, beta)] = coeff
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MixedPolynomial is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(n: int) -> "MixedPolynomial":
        return MixedPolynomial(n, {})

    @staticmethod
    def constant(n: int, value: ScalarLike) -> "MixedPolynomial":
        zero_mi = (0,) * n
        return MixedPolynomial(n, {(zero_mi, zero_mi): GaussianRational.coerce(value)})

    @staticmethod
    def monomial(
        n: int, alpha: Sequence[int], beta: Sequence[int], coeff: ScalarLike = 1
    ) -> "MixedPolynomial":
        return MixedPolynomial(n, {(tuple(alpha), tuple(beta)): GaussianRational.coerce(coeff)})

    @staticmethod
    def z(n: int, j: int) -> "MixedPolynomial":
        """The coordinate polynomial z_j (1-based j)."""
        alpha = tuple(1 if k == j - 1 else 0 for k in range(n))
        return MixedPolynomial.monomial(n, alpha, (0,) * n)

    @staticmethod
    def zbar(n: int, j: int) -> "MixedPolynomial":
        beta = tuple(1 if k == j - 1 else 0 for k in range(n))
        return MixedPolynomial.monomial(n, (0,) * n, beta)

    # -- inspection -------------------------------------------------------

    def terms(self) -> Iterator[Tuple[TermKey, GaussianRational]]:
        """Terms in canonical graded-lexicographic order."""
        for key in sorted(self._terms, key=term_sort_key):
            yield key, self._terms[key]

    def coefficient(self, alpha: Sequence[int], beta: Sequence[int]) -> GaussianRational:
        return self._terms.get((tuple(alpha), tuple(beta)), GaussianRational.zero())

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_holomorphic(self) -> bool:
        """True iff no zbar factor appears (all beta = 0)."""
        return all(mi_total(beta) == 0 for (_, beta) in self._terms)

    @property
    def degree(self) -> Union[int, float]:
        """Max |alpha|+|beta| over terms; NEG_INF for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(mi_total(a) + mi_total(b) for a, b in self._terms)

    # -- algebra ----------------------------------------------------------

    def _require_same_dimension(self, other: "MixedPolynomial") -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"dimensions differ: {self.dimension} vs {other.dimension}"
            )

    def __add__(self, other: "MixedPolynomial") -> "MixedPolynomial":
        self._require_same_dimension(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            terms[key] = terms.get(key, GaussianRational.zero()) + coeff
        return MixedPolynomial(self.dimension, terms)

    def __sub__(self, other: "MixedPolynomial") -> "MixedPolynomial":
        return self + (-other)

    def __neg__(self) -> "MixedPolynomial":
        return MixedPolynomial(self.dimension, {k: -c for k, c in self._terms.items()})

    def scale(self, factor: ScalarLike) -> "MixedPolynomial":
        factor = GaussianRational.coerce(factor)
        return MixedPolynomial(self.dimension, {k: c * factor for k, c in self._terms.items()})

    def __mul__(self, other) -> "MixedPolynomial":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        self._require_same_dimension(other)
        terms: Dict[TermKey, GaussianRational] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (mi_add(a1, a2), mi_add(b1, b2))
                terms[key] = terms.get(key, GaussianRational.zero()) + c1 * c2
        return MixedPolynomial(self.dimension, terms)

    def __rmul__(self, other) -> "MixedPolynomial":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def conjugate(self) -> "MixedPolynomial":
        """Complex conjugate as a function: swaps alpha and beta, conjugates coefficients."""
        return MixedPolynomial(
            self.dimension, {(b, a): c.conjugate() for (a, b), c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.dimension == other.dimension and self._terms == other._terms

    def __hash__(self):
        return hash((self.dimension, frozenset(self._terms.items())))

    def evaluate(self, point: Sequence[ScalarLike]) -> GaussianRational:
        """Exact evaluation at a point with GaussianRational components."""
        zs = [GaussianRational.coerce(p) for p in point]
        if len(zs) != self.dimension:
            raise DimensionMismatchError("point dimension mismatch")
        total = GaussianRational.zero()
        for (alpha, beta), coeff in self._terms.items():
            value = coeff
            for zj, aj, bj in zip(zs, alpha, beta):
                for _ in range(aj):
                    value = value * zj
                zbar = zj.conjugate()
                for _ in range(bj):
                    value = value * zbar
            total = total + value
        return total

    def __repr__(self) -> str:
        if self.is_zero():
            return f"MixedPolynomial({self.dimension}, 0)"
        parts = []
        for (alpha, beta), coeff in self.terms():
            factors = [f"({coeff})"]
            for j, a in enumerate(alpha):
                if a:
                    factors.append(f"z{j + 1}^{a}" if a > 1 else f"z{j + 1}")
            for j, b in enumerate(beta):
                if b:
                    factors.append(f"zb{j + 1}^{b}" if b > 1 else f"zb{j + 1}")
            parts.append("*".join(factors))
        return f"MixedPolynomial({self.dimension}, {' + '.join(parts)})"

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        entries = []
        for (alpha, beta), coeff in self.terms():
            entries.append(
                {
                    "alpha": list(alpha),
                    "beta": list(beta),
                    "re": format_rational(coeff.re),
                    "im": format_rational(coeff.im),
                }
            )
        return {"n": self.dimension, "terms": entries}

    @staticmethod
    def from_json_dict(data: dict) -> "MixedPolynomial":
        n = int(data["n"])
        terms: Dict[TermKey, GaussianRational] = {}
        for entry in data.get("terms", []):
            key = (tuple(entry["alpha"]), tuple(entry["beta"]))
            coeff = GaussianRational(parse_rational(entry["re"]), parse_rational(entry["im"]))
            if key in terms:
                raise ValueError(f"duplicate term {key} in polynomial JSON")
            terms[key] = coeff
        return MixedPolynomial(n, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json(text: str) -> "MixedPolynomial":
        return MixedPolynomial.from_json_dict(json.loads(text))


# ---------------------------------------------------------------------------
# L^2(B_n) pairing on polynomials
# ---------------------------------------------------------------------------


def inner_product(f: MixedPolynomial, g: MixedPolynomial) -> GaussianRational:
    """<f, g>, linear in f and conjugate-linear in g, exact."""
    if f.dimension != g.dimension:
        raise DimensionMismatchError("polynomial dimensions differ")
    total = GaussianRational.zero()
    for (alpha, beta), cf in f._terms.items():
        for (gamma, delta), cg in g._terms.items():
            weight = monomial_integral(mi_add(alpha, delta), mi_add(beta, gamma))
            if weight:
                total = total + cf * cg.conjugate() * weight
    return total


def norm_sq(f: MixedPolynomial) -> Fraction:
    """||f||^2 as an exact nonnegative rational."""
    value = inner_product(f, f)
    assert value.im == 0
    return value.re
