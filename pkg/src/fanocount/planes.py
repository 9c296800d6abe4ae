"""Degrees of loci of hypersurfaces and complete intersections containing
k-planes, and Plucker-degree integrals over Fano schemes.

Setting: degree-d hypersurfaces in projective r-space, or complete
intersections of multidegree (d_1, ..., d_m).  The k-planes contained in such
a variety are cut out, on the Grassmannian of k-planes, by a section of the
d-th symmetric power of the dual tautological bundle.  Writing x_0, ..., x_k
for the Chern roots of that rank-(k+1) bundle, every number computed here is
one coefficient of an explicit symmetric polynomial:

* multiplying a symmetric form by the Vandermonde polynomial V turns
  "coefficient of the top Schur basis element" into "coefficient of the
  single monomial x_0^r x_1^{r-1} ... x_k^{r-k}", which is how the
  coefficient-extraction routes below work;
* independently, the same numbers arise as fixed-point sums for the torus
  acting on the Grassmannian by rescaling coordinates (one term per
  coordinate k-plane).  The two routes must agree exactly, which the test
  suite exercises on a grid.

Codimension bookkeeping: gamma = sum_j C(d_j + k, k) - (k+1)(r-k) is the
codimension (in the parameter space of complete intersections) of the locus
of members containing a k-plane; its negation delta is the expected dimension
of the Fano scheme of a single member.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, prod
from typing import Iterator, Sequence, Union

from .errors import InconsistencyError, RegimeError, SingularWeightsError
from .polycore import (
    ExactScalar,
    MultiPoly,
    elem_sym,
    vandermonde,
    weight_vectors,
    weighted_linear_product,
)

__all__ = [
    "DEFAULT_SEED",
    "FixedPlane",
    "ProblemSpec",
    "RegimeReport",
    "TorusWeights",
    "c2_fano_integral",
    "deg_ci_planes",
    "deg_fano",
    "deg_planes_bott",
    "deg_planes_dm",
    "fixed_planes",
    "linear_system_dim",
    "regime_report",
    "tau_poly",
]

# Fixed documented seed for reproducible torus-weight draws.
DEFAULT_SEED = 1729

FixedPlane = tuple[int, ...]


@dataclass(frozen=True)
class ProblemSpec:
    """A counting problem: complete intersections of multidegree ``degrees``
    in projective ``r``-space, probed for ``k``-planes.

    The order of ``degrees`` matters to :func:`deg_ci_planes` (the last entry
    is the degree that varies in its linear system); all other formulas are
    symmetric in the degrees.
    """

    degrees: tuple[int, ...]
    r: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not self.degrees:
            raise ValueError("degrees must be non-empty")
        if any(d < 2 for d in self.degrees):
            raise ValueError(f"every degree must be at least 2, got {self.degrees}")
        if self.r < 3:
            raise ValueError(f"ambient dimension r must be at least 3, got {self.r}")
        if self.k < 1:
            raise ValueError(f"plane dimension k must be at least 1, got {self.k}")

    @property
    def m(self) -> int:
        return len(self.degrees)

    @property
    def gamma(self) -> int:
        """Codimension of the containing-a-k-plane locus; positive means the
        general member carries no k-plane."""
        return sum(comb(d + self.k, self.k) for d in self.degrees) \
            - (self.k + 1) * (self.r - self.k)

    @property
    def delta(self) -> int:
        """Expected dimension of the Fano scheme of k-planes (= -gamma)."""
        return -self.gamma

    @property
    def two_k_below_r(self) -> bool:
        """Whether 2k < r, the half-dimension inequality several regimes need."""
        return 2 * self.k < self.r

    def sorted_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees))


@dataclass(frozen=True)
class RegimeReport:
    gamma: int
    delta: int
    empty: bool
    fano_dimension: int | None


def regime_report(spec: ProblemSpec) -> RegimeReport:
    """Codimension/dimension bookkeeping for a spec.

    The Fano scheme of the general member is empty iff gamma > 0 or
    2k > r - m; otherwise its dimension is delta.
    """
    empty = spec.gamma > 0 or 2 * spec.k > spec.r - spec.m
    return RegimeReport(
        gamma=spec.gamma,
        delta=spec.delta,
        empty=empty,
        fano_dimension=None if empty else spec.delta,
    )


@dataclass(frozen=True)
class TorusWeights:
    """Weights t_0, ..., t_r of the torus rescaling the r+1 coordinates."""

    t: tuple[ExactScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))

    @classmethod
    def random(cls, r: int, seed: int, low: int = -50, high: int = 50) -> "TorusWeights":
        """r+1 distinct random integer weights; deterministic in ``seed``."""
        if high - low < r:
            raise ValueError("weight range too small to draw r+1 distinct values")
        rng = random.Random(seed)
        return cls(tuple(rng.sample(range(low, high + 1), r + 1)))

    def __len__(self) -> int:
        return len(self.t)

    def __iter__(self):
        return iter(self.t)

    def __getitem__(self, i):
        return self.t[i]


WeightsLike = Union[TorusWeights, Sequence[ExactScalar]]


def _weight_tuple(t: WeightsLike, r: int) -> tuple[ExactScalar, ...]:
    tt = tuple(t.t if isinstance(t, TorusWeights) else t)
    if len(tt) != r + 1:
        raise SingularWeightsError(f"need r+1 = {r + 1} weights, got {len(tt)}")
    return tt


def fixed_planes(r: int, k: int) -> Iterator[FixedPlane]:
    """Index sets of the coordinate k-planes: all (k+1)-subsets of {0..r}."""
    return combinations(range(r + 1), k + 1)


# ---------------------------------------------------------------------------
# hypersurfaces
# ---------------------------------------------------------------------------

def _psi_target(r: int, k: int) -> tuple[int, ...]:
    return tuple(r - i for i in range(k + 1))


def _extraction_bound(r: int, k: int) -> int:
    return sum(r - i for i in range(k + 1))


@lru_cache(maxsize=None)
def tau_poly(d: int, r: int, k: int) -> MultiPoly:
    """Top Chern form for k-planes in degree-d hypersurfaces of P^r: the
    homogeneous degree-(k+1)(r-k) component of
    prod_{|v| = d} (1 + v_0 x_0 + ... + v_k x_k) in k+1 variables.

    Symmetric in the variables.  The codimension gate (gamma > 0, d >= 3)
    belongs to the degree computations, not to the form itself.
    """
    if d < 1:
        raise RegimeError("degree-too-small", f"need d >= 1, got d={d}")
    if k < 1 or 2 * k >= r:
        raise RegimeError("plane-dimension", f"need 1 <= k and 2k < r, got k={k}, r={r}")
    n = (k + 1) * (r - k)
    return weighted_linear_product(k, d, affine=True, bound=n).homogeneous_component(n)


def _check_hypersurface_regime(d: int, r: int, k: int) -> None:
    if d < 3:
        raise RegimeError(
            "degree-too-small",
            f"the plane-count degree formula needs d >= 3 (quadrics carry "
            f"positive-dimensional plane families and reducible Fano schemes); got d={d}")
    if k < 1 or 2 * k >= r:
        raise RegimeError("plane-dimension", f"need 1 <= k and 2k < r, got k={k}, r={r}")
    g = comb(d + k, k) - (k + 1) * (r - k)
    if g <= 0:
        raise RegimeError(
            "gamma-not-positive",
            f"gamma({d},{r},{k}) = {g} <= 0: the general hypersurface already "
            "contains k-planes, so the containing locus is not proper")


def deg_planes_dm(d: int, r: int, k: int) -> int:
    """Degree of the locus of degree-d hypersurfaces in P^r containing a
    k-plane, by single-coefficient extraction.

    Equals the coefficient of x_0^r x_1^{r-1} ... x_k^{r-k} in V * tau, where
    V is the Vandermonde polynomial.  Intermediate products are truncated at
    the target degree; only the top-degree component of the big product can
    reach the target monomial, so the truncation is lossless.
    """
    _check_hypersurface_regime(d, r, k)
    bound = _extraction_bound(r, k)
    acc = vandermonde(k)
    for v in weight_vectors(k + 1, d):
        acc = acc.mul(MultiPoly.linear_form(v, 1), bound=bound)
    value = acc.coefficient(_psi_target(r, k))
    if not isinstance(value, int) or value <= 0:
        raise InconsistencyError(
            f"deg Sigma({d},{r},{k}) computed as {value}; expected a positive integer "
            "(implementation bug)")
    return value


def deg_planes_bott(d: int, r: int, k: int, t: WeightsLike) -> int:
    """The same degree as :func:`deg_planes_dm`, by the torus fixed-point sum

        sum over (k+1)-subsets I of  tau(t_i : i in I) / prod_{i in I, j not in I} (t_i - t_j).

    Each term is a rational function of the weights but the sum is a constant
    positive integer; any other outcome raises :class:`InconsistencyError`.
    """
    _check_hypersurface_regime(d, r, k)
    weights = _weight_tuple(t, r)
    if len(set(weights)) != len(weights):
        raise SingularWeightsError(f"weights must be pairwise distinct, got {weights}")
    tau = tau_poly(d, r, k)
    total = Fraction(0)
    for subset in fixed_planes(r, k):
        numerator = tau.evaluate([weights[i] for i in subset])
        denominator: ExactScalar = 1
        inside = set(subset)
        for i in subset:
            for j in range(r + 1):
                if j not in inside:
                    denominator *= weights[i] - weights[j]
        total += Fraction(numerator) / Fraction(denominator)
    if total.denominator != 1 or total <= 0:
        raise InconsistencyError(
            f"fixed-point sum for Sigma({d},{r},{k}) is {total}; expected a positive "
            "integer (implementation bug)")
    return int(total)


# ---------------------------------------------------------------------------
# complete intersections
# ---------------------------------------------------------------------------

def linear_system_dim(r: int, cut_degrees: Sequence[int], d: int) -> int:
    """Dimension of the linear system of degree-d divisors on a general
    complete intersection X of multidegree ``cut_degrees`` in P^r.

    Computed as h^0(X, O_X(d)) - 1 with h^0 obtained by inclusion-exclusion
    over subsets of the cutting degrees (the restriction of degree-d forms is
    surjective and the syzygies of a regular sequence are generated by the
    obvious products).  Heuristic in the sense that it presumes the general
    complete intersection; it is exact for those.
    """
    h0 = 0
    for mask in range(1 << len(cut_degrees)):
        shift = d
        sign = 1
        for i, e in enumerate(cut_degrees):
            if mask >> i & 1:
                shift -= e
                sign = -sign
        if shift >= 0:
            h0 += sign * comb(shift + r, r)
    return h0 - 1


def deg_ci_planes(spec: ProblemSpec) -> int:
    """Degree of the locus, inside the linear system of degree-d_m divisors on
    a general complete intersection X of multidegree (d_1, ..., d_{m-1}), of
    members containing a k-plane.

    Coefficient of x_0^r ... x_k^{r-k} in Q * theta * V, where Q is the
    product of the purely linear weight forms for d_1, ..., d_{m-1} (the
    class of the Fano scheme of X) and theta is the degree-rho component of
    the affine product for d_m, with rho = C(d_m + k, k) - gamma.

    Distinct regime failures carry distinct codes: product-degree-too-small,
    plane-dimension, ambient-fano-empty, gamma-not-positive,
    fano-dimension-negative, linear-system-too-small.
    """
    degrees, r, k, m = spec.degrees, spec.r, spec.k, spec.m
    if prod(degrees) <= 2:
        raise RegimeError(
            "product-degree-too-small",
            f"multidegree {degrees} has product <= 2; quadric loci are excluded")
    if m == 1:
        _check_hypersurface_regime(degrees[0], r, k)
    elif 2 * k > r - (m - 1):
        raise RegimeError(
            "ambient-fano-empty",
            f"2k = {2 * k} > r - (m-1) = {r - m + 1}: the ambient complete "
            "intersection carries no k-planes")
    g = spec.gamma
    if g <= 0:
        raise RegimeError("gamma-not-positive", f"gamma = {g} <= 0")
    rho = comb(degrees[-1] + k, k) - g
    if rho < 0:
        raise RegimeError(
            "fano-dimension-negative",
            f"the ambient Fano scheme has expected dimension {rho} < 0")
    sys_dim = linear_system_dim(r, degrees[:-1], degrees[-1])
    if sys_dim <= g:
        raise RegimeError(
            "linear-system-too-small",
            f"the degree-{degrees[-1]} system on the ambient complete intersection "
            f"has dimension {sys_dim} <= gamma = {g}")

    bound = _extraction_bound(r, k)
    acc = vandermonde(k)
    for d in degrees[:-1]:
        for v in weight_vectors(k + 1, d):
            acc = acc.mul(MultiPoly.linear_form(v, 0), bound=bound)
    for v in weight_vectors(k + 1, degrees[-1]):
        acc = acc.mul(MultiPoly.linear_form(v, 1), bound=bound)
    value = acc.coefficient(_psi_target(r, k))
    if not isinstance(value, int) or value <= 0:
        raise InconsistencyError(
            f"deg for {spec} computed as {value}; expected a positive integer")
    return value


# ---------------------------------------------------------------------------
# Fano schemes of positive expected dimension
# ---------------------------------------------------------------------------

def _q_factors(spec: ProblemSpec) -> Iterator[MultiPoly]:
    """Linear factors of the Fano-class form Q: one <v, x> per weight vector
    of each degree."""
    for d in spec.degrees:
        for v in weight_vectors(spec.k + 1, d):
            yield MultiPoly.linear_form(v, 0)


def _fano_extraction(spec: ProblemSpec, extra: MultiPoly) -> int:
    """Coefficient of the target monomial in Q * extra * V, with truncation."""
    r, k = spec.r, spec.k
    bound = _extraction_bound(r, k)
    # degree bookkeeping: Q*extra*V is homogeneous of exactly the target degree
    q_degree = sum(comb(d + k, k) for d in spec.degrees)
    assert q_degree + extra.total_degree() + k * (k + 1) // 2 == bound
    acc = vandermonde(k).mul(extra, bound=bound)
    for factor in _q_factors(spec):
        acc = acc.mul(factor, bound=bound)
    value = acc.coefficient(_psi_target(r, k))
    if not isinstance(value, int):
        raise InconsistencyError(f"non-integer extraction {value} for {spec}")
    return value


def deg_fano(spec: ProblemSpec) -> int:
    """Degree, under the Plucker embedding, of the Fano scheme of k-planes in
    a general complete intersection of the given multidegree.

    Coefficient of x_0^r ... x_k^{r-k} in Q * (x_0 + ... + x_k)^delta * V.
    Valid when delta >= 0 and r >= 2k + m (the non-emptiness regime).
    """
    if spec.delta < 0:
        raise RegimeError("delta-negative",
                          f"expected dimension delta = {spec.delta} < 0: Fano scheme empty")
    if spec.r < 2 * spec.k + spec.m:
        raise RegimeError("nonempty-regime",
                          f"need r >= 2k + m = {2 * spec.k + spec.m}, got r = {spec.r}")
    e = elem_sym(1, spec.k + 1)
    value = _fano_extraction(spec, e**spec.delta)
    if value <= 0:
        raise InconsistencyError(f"deg F = {value} for {spec}; expected positive")
    return value


def c2_fano_integral(spec: ProblemSpec) -> int:
    """Integral over the Fano surface of the second Chern class of the dual
    tautological bundle: coefficient of the target monomial in
    Q * (sum_{i<j} x_i x_j) * V.  Only defined in the surface case delta = 2,
    where the degree bookkeeping matches the Grassmannian dimension exactly.
    """
    if spec.delta != 2:
        raise RegimeError("delta-not-two",
                          f"c2 integral needs a Fano surface (delta = 2), got delta = {spec.delta}")
    return _fano_extraction(spec, elem_sym(2, spec.k + 1))
