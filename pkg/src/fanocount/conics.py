"""Degree of the locus of degree-d hypersurfaces in P^r containing a conic.

The parameter space of plane conics in P^r is a P^5-bundle over the
Grassmannian of planes, of dimension 3r - 1.  Restricting degree-d forms to
the universal conic gives a rank-(2d+1) bundle; the degree of the
containing-a-conic locus (codimension epsilon = 2d + 2 - 3r, assumed
positive) is the integral of its Chern class of degree 3r - 1 over the
parameter space.

Writing x_1, x_2, x_3 for the Chern roots of the rank-3 bundle of linear
forms on the moving plane, the restriction bundle sits in an exact sequence
whose sub term is the degree-(d-2) symmetric power multiplied by the
universal conic equation.  Its Chern series is therefore the product over
weight vectors of total weight d, divided by the series for total weight
d - 2 -- with one caveat that matters for fixed-point sums: the conic
equation is only well defined up to scale, so the sub-bundle is twisted by
the tautological line of the P^5 fiber.  The 3-variable form ``eta_form``
ignores that twist (the twist contributes nothing when the fiber class is
suppressed); the 4-variable form ``eta_form_twisted`` keeps it, and is what
the torus fixed-point sum must use.  The dispatcher validates the sum by
recomputing at a second weight assignment and, for quartic surfaces, halves
the result (the general quartic surface in the locus carries two conics).

``conic_factor_report`` documents, with exact numbers, why the untwisted
per-plane shortcut and the once-published closed form -(5/32) C(r+1,3)
eta(1,1,1) both fail the anchor value deg = 2508 for (d, r) = (4, 3), while
the twisted fixed-point sum reproduces it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterator, NamedTuple, Sequence

from .errors import InconsistencyError, RegimeError, SingularWeightsError
from .planes import DEFAULT_SEED, TorusWeights, WeightsLike, _weight_tuple
from .polycore import (
    ExactScalar,
    MultiPoly,
    TruncatedSeries,
    weight_vectors,
    weighted_linear_product,
)

__all__ = [
    "BottSum",
    "ClosedFormComparison",
    "ConicFixedPoint",
    "ConicProblem",
    "ConicRegime",
    "chern_Ed_series",
    "conic_factor_report",
    "conic_fixed_points",
    "conic_regime",
    "deg_conics",
    "deg_conics_bott",
    "deg_conics_closed",
    "deg_conics_untwisted_sum",
    "eta_form",
    "eta_form_twisted",
    "fixed_point_census",
    "generic_conic_weights",
]


@dataclass(frozen=True)
class ConicProblem:
    """Hypersurfaces of degree d in P^r, probed for plane conics."""

    d: int
    r: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"need d >= 2, got d={self.d}")
        if self.r < 3:
            raise ValueError(f"need r >= 3, got r={self.r}")

    @property
    def epsilon(self) -> int:
        """Codimension of the containing-a-conic locus."""
        return 2 * self.d + 2 - 3 * self.r

    @property
    def mu(self) -> int:
        """Expected dimension of the space of conics on a general member."""
        return 3 * self.r - 2 * self.d - 2


@dataclass(frozen=True)
class ConicRegime:
    epsilon: int
    mu: int
    note: str


def conic_regime(problem: ConicProblem) -> ConicRegime:
    """Codimension bookkeeping plus the uniqueness statement for the general
    member of the locus."""
    eps = problem.epsilon
    if eps > 0 and (problem.d, problem.r) != (4, 3):
        note = "the general member of the locus contains a unique conic, and it is smooth"
    elif (problem.d, problem.r) == (4, 3):
        note = ("the general quartic surface in the locus contains exactly two "
                "distinct conics, smooth and coplanar")
    elif eps == 0:
        note = ("boundary regime: the locus fills the whole parameter space and "
                "members carry finitely many conics, but no degree is defined")
    else:
        note = ("every member carries a positive-dimensional family of conics; "
                "no locus degree is defined")
    return ConicRegime(epsilon=eps, mu=problem.mu, note=note)


# ---------------------------------------------------------------------------
# Chern series of the restriction bundle
# ---------------------------------------------------------------------------

def chern_Ed_series(d: int, bound: int) -> TruncatedSeries:
    """Chern series of the rank-(2d+1) bundle of degree-d forms on the
    universal conic, in the 3 Chern roots of the rank-3 bundle of linear
    forms: [prod over |v| = d of (1 + <v, x>)] / [same with d - 2].

    d = 1 is the rank-3 bundle itself; d = 2 divides by the empty product.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got d={d}")
    if bound < 1:
        raise ValueError(f"need bound >= 1, got bound={bound}")
    numerator = TruncatedSeries(weighted_linear_product(2, d, affine=True, bound=bound),
                                bound)
    if d <= 2:
        return numerator
    denominator = TruncatedSeries(
        weighted_linear_product(2, d - 2, affine=True, bound=bound), bound)
    return numerator * denominator.inverse()


@lru_cache(maxsize=None)
def eta_form(d: int, r: int) -> MultiPoly:
    """Homogeneous component of degree 3r - 1 of :func:`chern_Ed_series`:
    a symmetric form in 3 variables."""
    if ConicProblem(d, r).epsilon < 0:
        raise RegimeError("epsilon-negative",
                          f"epsilon({d},{r}) = {2 * d + 2 - 3 * r} < 0")
    n = 3 * r - 1
    return chern_Ed_series(d, n).homogeneous_component(n)


@lru_cache(maxsize=None)
def eta_form_twisted(d: int, r: int) -> MultiPoly:
    """Degree-(3r-1) top Chern form of the restriction bundle keeping the
    fiber twist: a form in 4 variables (x_1, x_2, x_3, z), where z is the
    hyperplane class of the P^5 fiber.

    The sub-bundle of multiples of the universal conic equation has Chern
    roots <w, x> - z (the equation is a point of the fiber, so its line
    twists the embedding), hence the series divides by
    prod_{|w| = d - 2} (1 + <w, x> - z).  Setting z = 0 recovers
    :func:`eta_form`.
    """
    if ConicProblem(d, r).epsilon < 0:
        raise RegimeError("epsilon-negative",
                          f"epsilon({d},{r}) = {2 * d + 2 - 3 * r} < 0")
    n = 3 * r - 1
    numerator = MultiPoly.one(4)
    for v in weight_vectors(3, d):
        numerator = numerator.mul(MultiPoly.linear_form((*v, 0), 1), bound=n)
    series = TruncatedSeries(numerator, n)
    if d > 2:
        denominator = MultiPoly.one(4)
        for w in weight_vectors(3, d - 2):
            denominator = denominator.mul(MultiPoly.linear_form((*w, -1), 1), bound=n)
        series = series * TruncatedSeries(denominator, n).inverse()
    return series.homogeneous_component(n)


# ---------------------------------------------------------------------------
# fixed points
# ---------------------------------------------------------------------------

ConicFixedPoint = tuple[tuple[int, int, int], tuple[int, int]]


def conic_fixed_points(r: int) -> Iterator[ConicFixedPoint]:
    """Torus-fixed conics: a coordinate plane (3-subset I of {0..r}) together
    with an unordered pair {a, b} from I, a = b allowed (the double line
    x_a^2 = 0).  Six conics per plane."""
    for plane in combinations(range(r + 1), 3):
        for pair in combinations_with_replacement(plane, 2):
            yield plane, pair


def fixed_point_census(r: int) -> int:
    """Count the torus-fixed conics by enumeration and check the closed form
    r(r^2 - 1) = 6 C(r+1, 3)."""
    if r < 2:
        raise ValueError(f"need r >= 2, got r={r}")
    count = sum(1 for _ in conic_fixed_points(r))
    if count != r * (r * r - 1):
        raise InconsistencyError(
            f"fixed-point enumeration gave {count}, closed form gives {r * (r * r - 1)}")
    return count


def generic_conic_weights(r: int, seed: int) -> TorusWeights:
    """Distinct positive integer weights with all six pairwise sums distinct
    inside every 3-subset; deterministic in ``seed``.  Positivity keeps every
    denominator of both fixed-point sums away from zero."""
    rng = random.Random(seed)
    while True:
        t = rng.sample(range(1, 40 * (r + 2)), r + 1)
        if all(
            len({t[a] + t[b] for a, b in combinations_with_replacement(plane, 2)}) == 6
            for plane in combinations(range(r + 1), 3)
        ):
            return TorusWeights(tuple(t))


def _validate_conic_weights(t: Sequence[ExactScalar], r: int, twisted: bool) -> None:
    if any(x == 0 for x in t):
        raise SingularWeightsError("conic fixed-point weights must be nonzero")
    for a, b in combinations(range(r + 1), 2):
        if t[a] + t[b] == 0:
            raise SingularWeightsError(
                f"weights t_{a} and t_{b} sum to zero; fixed-point denominators vanish")
    if twisted:
        if len(set(t)) != len(t):
            raise SingularWeightsError("weights must be pairwise distinct")
        for plane in combinations(range(r + 1), 3):
            sums = {t[a] + t[b] for a, b in combinations_with_replacement(plane, 2)}
            if len(sums) != 6:
                raise SingularWeightsError(
                    f"pairwise weight sums collide inside plane {plane}")


class BottSum(NamedTuple):
    """Raw fixed-point sum plus an integrality flag."""

    value: Fraction
    is_integral: bool


def _local_top_chern(d: int, n: int, roots: Sequence[Fraction], shift: Fraction) -> Fraction:
    """Value of the twisted top Chern form at one fixed point, computed as the
    degree-n coefficient of a univariate series: substitute a grading variable
    for total degree, so each root contributes a factor (1 + root*Z).

    ``roots`` are the three Chern-root values and ``shift`` the value of the
    fiber hyperplane class; the divisor roots are <w, roots> - shift.
    This equals eta_form_twisted(d, r).evaluate((*roots, shift)) but costs
    O((2d+1) * n) scalar operations per fixed point instead of a large
    4-variable expansion.
    """
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] = Fraction(1)
    for v in weight_vectors(3, d):
        root = sum(Fraction(v[a]) * roots[a] for a in range(3))
        for j in range(n, 0, -1):
            coeffs[j] += root * coeffs[j - 1]
    if d > 2:
        for w in weight_vectors(3, d - 2):
            root = sum(Fraction(w[a]) * roots[a] for a in range(3)) - shift
            # divide by (1 + root*Z): forward recurrence
            for j in range(1, n + 1):
                coeffs[j] -= root * coeffs[j - 1]
    return coeffs[n]


def _check_conic_degree_regime(d: int, r: int) -> None:
    problem = ConicProblem(d, r)
    if problem.epsilon == 0:
        raise RegimeError(
            "boundary-regime",
            f"epsilon({d},{r}) = 0: members carry finitely many conics but the "
            "uniqueness statement needs epsilon > 0; no validated degree is returned")
    if problem.epsilon < 0:
        raise RegimeError(
            "conic-family",
            f"epsilon({d},{r}) = {problem.epsilon} < 0: conics move in positive-"
            "dimensional families and the locus degree is undefined")
    # epsilon > 0 is exactly rank(E_d) = 2d+1 > 3r-1 = dim of the parameter space
    assert 2 * d + 1 > 3 * r - 1


def deg_conics_bott(d: int, r: int, t: WeightsLike) -> BottSum:
    """Torus fixed-point sum for the conic-locus degree, with the fiber twist.

    For each fixed conic (plane I = {i, j, k}, equation x_a x_b = 0):

    * local Chern contribution: the twisted top form at Chern-root values
      (-t_i, -t_j, -t_k) and fiber class value t_a + t_b;
    * Euler term: prod over alpha in I, beta outside I of (t_beta - t_alpha),
      times prod over the five pairs {p, q} != {a, b} of
      (t_a + t_b) - (t_p + t_q).

    The sum is a constant positive integer; the raw rational is returned with
    an integrality flag, and halving for (d, r) = (4, 3) is the dispatcher's
    job, not this function's.
    """
    _check_conic_degree_regime(d, r)
    weights = _weight_tuple(t, r)
    _validate_conic_weights(weights, r, twisted=True)
    n = 3 * r - 1
    total = Fraction(0)
    for plane in combinations(range(r + 1), 3):
        roots = tuple(-Fraction(weights[i]) for i in plane)
        outside = [Fraction(weights[j]) for j in range(r + 1) if j not in plane]
        grass = Fraction(1)
        for i in plane:
            for tb in outside:
                grass *= tb - Fraction(weights[i])
        pairs = list(combinations_with_replacement(plane, 2))
        pair_sums = [Fraction(weights[a]) + Fraction(weights[b]) for a, b in pairs]
        for idx in range(6):
            shift = pair_sums[idx]
            euler = grass
            for jdx in range(6):
                if jdx != idx:
                    euler *= shift - pair_sums[jdx]
            total += _local_top_chern(d, n, roots, shift) / euler
    return BottSum(value=total, is_integral=total.denominator == 1)


def deg_conics_untwisted_sum(d: int, r: int, t: WeightsLike) -> Fraction:
    """The fixed-point shortcut that drops the fiber twist:

        - sum over planes and pairs of
          eta(t_i, t_j, t_k) / [(t_i t_j t_k)^{r-2} prod_{5 pairs}(t_p + t_q)].

    Kept runnable for comparison.  This expression is NOT constant in the
    weights (the per-plane numerator cannot see which of the six conics is
    being localized), so it carries no enumerative meaning at generic
    weights; at the all-ones assignment it collapses to
    -(6/32) C(r+1, 3) eta(1,1,1), the per-plane factor documented by
    :func:`conic_factor_report`.
    """
    _check_conic_degree_regime(d, r)
    weights = _weight_tuple(t, r)
    _validate_conic_weights(weights, r, twisted=False)
    eta = eta_form(d, r)
    total = Fraction(0)
    for plane in combinations(range(r + 1), 3):
        tvals = [Fraction(weights[i]) for i in plane]
        eta_value = Fraction(eta.evaluate(tvals))
        base = (tvals[0] * tvals[1] * tvals[2]) ** (r - 2)
        pairs = list(combinations_with_replacement(plane, 2))
        pair_sums = [Fraction(weights[a]) + Fraction(weights[b]) for a, b in pairs]
        for idx in range(6):
            denom = base
            for jdx in range(6):
                if jdx != idx:
                    denom *= pair_sums[jdx]
            total += eta_value / denom
    return -total


def deg_conics(d: int, r: int, seed: int = DEFAULT_SEED) -> int:
    """Validated degree of the locus of degree-d hypersurfaces in P^r
    containing a conic.

    Runs the twisted fixed-point sum at two independent seeded weight
    assignments, checks the two values agree and are integral, halves for
    (d, r) = (4, 3) (two conics on the general member there), and returns a
    positive integer.
    """
    _check_conic_degree_regime(d, r)
    rng = random.Random(seed)
    first = deg_conics_bott(d, r, generic_conic_weights(r, rng.randrange(2**30)))
    second = deg_conics_bott(d, r, generic_conic_weights(r, rng.randrange(2**30)))
    if first.value != second.value:
        raise InconsistencyError(
            f"fixed-point sum for ({d},{r}) is not constant: {first.value} vs {second.value}")
    if not first.is_integral:
        raise InconsistencyError(f"fixed-point sum for ({d},{r}) is not an integer: {first.value}")
    value = int(first.value)
    if (d, r) == (4, 3):
        if value % 2 != 0:
            raise InconsistencyError(f"quartic-surface count {value} is odd; cannot halve")
        value //= 2
    if value <= 0:
        raise InconsistencyError(f"conic-locus degree for ({d},{r}) is {value} <= 0")
    return value


@dataclass(frozen=True)
class ClosedFormComparison:
    """The published closed form next to the validated fixed-point value."""

    value: Fraction
    fixed_point_value: Fraction
    consistent: bool
    ratio: Fraction | None


def deg_conics_closed(d: int, r: int, seed: int = DEFAULT_SEED) -> ClosedFormComparison:
    """Evaluate the closed form -(5/32) C(r+1, 3) eta(1,1,1) exactly, as
    published, alongside the validated fixed-point sum.

    The two disagree (see :func:`conic_factor_report`); the comparison records
    the exact ratio.  Advisory only: the dispatcher never uses this value.
    """
    _check_conic_degree_regime(d, r)
    if (d, r) == (4, 3):
        raise RegimeError("halving-case",
                          "the closed form excludes (4, 3), where the count halves")
    eta_ones = Fraction(eta_form(d, r).evaluate((1, 1, 1)))
    value = -Fraction(5, 32) * comb(r + 1, 3) * eta_ones
    reference = Fraction(deg_conics(d, r, seed=seed))
    return ClosedFormComparison(
        value=value,
        fixed_point_value=reference,
        consistent=value == reference,
        ratio=None if reference == 0 else value / reference,
    )


def conic_factor_report(seed: int = DEFAULT_SEED) -> str:
    """Generated report reconciling the three conic-degree routes against the
    anchor deg = 2508 for quartic surfaces in P^3.

    Documents the measured per-plane factor of the fixed-point route next to
    the -(5/32) of the closed form and the -(6/32) that termwise evaluation
    of the untwisted sum at unit weights produces.
    """
    d, r = 4, 3
    eta_ones = Fraction(eta_form(d, r).evaluate((1, 1, 1)))
    planes_count = comb(r + 1, 3)
    twisted = deg_conics_bott(d, r, generic_conic_weights(r, seed))
    halved = deg_conics(d, r, seed=seed)
    untwisted_ones = deg_conics_untwisted_sum(d, r, [1] * (r + 1))
    closed_candidate = -Fraction(5, 32) * planes_count * eta_ones
    measured_factor = twisted.value / (planes_count * eta_ones)

    lines = [
        "conic-degree reconciliation report (anchor: quartic surfaces in P^3)",
        "---------------------------------------------------------------------",
        f"eta(1,1,1) for (d,r)=({d},{r})              : {eta_ones}",
        f"number of coordinate planes C(r+1,3)        : {planes_count}",
        f"twisted fixed-point sum (constant in t)     : {twisted.value}",
        f"after halving (two conics per quartic)      : {halved}",
        f"anchor value                                : 2508",
        f"anchor reproduced                           : {halved == 2508}",
        "",
        f"closed form -(5/32)*C(r+1,3)*eta(1,1,1)     : {closed_candidate}",
        f"untwisted sum at t = (1,...,1)              : {untwisted_ones}",
        f"  equals -(6/32)*C(r+1,3)*eta(1,1,1)        : "
        f"{untwisted_ones == -Fraction(6, 32) * planes_count * eta_ones}",
        f"measured factor  sum / (C(r+1,3)*eta(1,1,1)): {measured_factor}",
        "",
        "verdict: the anchor 2508 singles out the twisted fixed-point sum; the",
        "published per-plane factors -5/32 and -6/32 both fail it, and the",
        "untwisted sum is not even constant in the weights.  The measured",
        "factor above is specific to (4,3): the fixed-point value is not a",
        "multiple of eta(1,1,1) in any uniform sense.",
    ]

    extra_d, extra_r = 5, 3
    eta_ones_2 = Fraction(eta_form(extra_d, extra_r).evaluate((1, 1, 1)))
    comparison = deg_conics_closed(extra_d, extra_r, seed=seed)
    lines += [
        "",
        f"supplementary row (d,r)=({extra_d},{extra_r}):",
        f"  fixed-point degree                        : {comparison.fixed_point_value}",
        f"  closed form -(5/32)*C(r+1,3)*eta(1,1,1)   : {comparison.value}",
        f"  eta(1,1,1)                                : {eta_ones_2}",
        f"  agreement                                 : {comparison.consistent}"
        + (f" (exact ratio {comparison.ratio})" if not comparison.consistent else ""),
    ]
    return "\n".join(lines)
