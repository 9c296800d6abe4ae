"""Chern-number coefficients and surface invariants of Fano schemes, plus the
irregularity and Picard-number classifications.

For a general complete intersection whose Fano scheme F of k-planes is a
smooth surface (expected dimension delta = 2), the Chern numbers of F are
linear combinations of two Grassmannian integrals: the Plucker degree of F
and the integral of c2 of the dual tautological bundle over F.  The
combination coefficients A and B are explicit binomial expressions in
(d_1...d_m, r, k), assembled from:

* the coefficients alpha, beta, gamma expressing c2 and c1 of a symmetric
  power Sym^n(E) of a rank-(k+1) bundle E in terms of c1(E)^2, c2(E), c1(E);
* the second Chern class of the tangent bundle of the Grassmannian;
* the normal-bundle contributions of the defining equations.

From e(F) = A*deg(F) + B*c2int and the canonical-class multiple one gets
K^2, the holomorphic Euler characteristic by Noether's formula
chi = (K^2 + e)/12, the arithmetic genus p_a = chi - 1, and the signature
4*chi - e.

The classification functions record two facts about these Fano schemes: which
ones are irregular (exactly three families), and which very general complete
intersections have Fano schemes of Picard number bigger than one (three
exceptional families of quadric type).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import InconsistencyError, RegimeError
from .planes import ProblemSpec, c2_fano_integral, deg_fano

__all__ = [
    "Classification",
    "InvariantReport",
    "IrregularityCase",
    "PicardInfo",
    "SymPowerCoeffs",
    "AB_coeffs",
    "canonical_coefficient",
    "canonical_degree",
    "combinatorial_identity",
    "irregularity_classify",
    "is_smooth_fano",
    "picard_number",
    "surface_invariants",
    "sym_power_coeffs",
    "sym_power_coeffs_small",
]


@dataclass(frozen=True)
class SymPowerCoeffs:
    """Chern-class coefficients of Sym^n for a rank-(k+1) bundle:
    c2(Sym^n E) = alpha*c1(E)^2 + beta*c2(E) and c1(Sym^n E) = gamma*c1(E)."""

    n: int
    k: int
    alpha: int
    beta: int
    gamma: int


def sym_power_coeffs(n: int, k: int) -> SymPowerCoeffs:
    """alpha, beta, gamma for Sym^n of a rank-(k+1) bundle.

    alpha is assembled over exact rationals (two 1/2 factors) and asserted
    integral; the halves always cancel.
    """
    if n < 1 or k < 0:
        raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    g = comb(n + k, k + 1)
    alpha = Fraction(g * g, 2) - Fraction(g, 2) - comb(n + k, k + 2)
    if alpha.denominator != 1:
        raise InconsistencyError(f"alpha({n},{k}) = {alpha} is not an integer")
    return SymPowerCoeffs(n=n, k=k, alpha=int(alpha), beta=comb(n + k + 1, k + 2), gamma=g)


def sym_power_coeffs_small(n: int, k: int) -> tuple[int, int]:
    """Closed forms for (alpha, beta) in ranks 2 and 3 (k = 1, 2); cross-check
    of :func:`sym_power_coeffs` only."""
    if k == 1:
        alpha = Fraction(3 * n + 2, 4) * comb(n + 1, 3)
        beta = comb(n + 2, 3)
    elif k == 2:
        alpha = Fraction(5 * (n + 1), 3) * comb(n + 3, 5)
        beta = comb(n + 3, 4)
    else:
        raise ValueError(f"closed forms exist only for k in (1, 2), got k={k}")
    if alpha.denominator != 1:
        raise InconsistencyError(f"closed-form alpha({n},{k}) = {alpha} is not an integer")
    return int(alpha), beta


def combinatorial_identity(n: int, m: int, k: int) -> tuple[int, int]:
    """Both sides of sum_{i=1}^{n} C(i-1, m-1) C(n-i+k, k) = C(n+k, m+k);
    exposed for property testing."""
    if not (n >= m >= 1 and k >= 0):
        raise ValueError(f"need n >= m >= 1 and k >= 0, got n={n}, m={m}, k={k}")
    lhs = sum(comb(i - 1, m - 1) * comb(n - i + k, k) for i in range(1, n + 1))
    return lhs, comb(n + k, m + k)


def AB_coeffs(spec: ProblemSpec) -> tuple[int, int]:
    """Coefficients with c2(F) = (A*h^2 + B*c2(S*)) . [F] for the Fano scheme
    of a general complete intersection (h the Plucker hyperplane class).

    A collects the tangent class of the Grassmannian, the per-degree alpha
    terms, the pairwise gamma products across the m factors (empty for m = 1),
    and the square/cross terms of the first normal Chern class;
    B = r - 2k - 1 - sum of the betas.
    """
    r, k = spec.r, spec.k
    coeffs = [sym_power_coeffs(d, k) for d in spec.degrees]
    c1_normal = sum(comb(d + k, k + 1) for d in spec.degrees)
    a = (comb(r + 1, 2) + k
         - sum(c.alpha for c in coeffs)
         - sum(x.gamma * y.gamma for x, y in combinations(coeffs, 2))
         - (r + 1) * c1_normal
         + c1_normal**2)
    b = r - 2 * k - 1 - sum(c.beta for c in coeffs)
    return a, b


def canonical_coefficient(spec: ProblemSpec) -> int:
    """The integer c with K_F = c * (Plucker hyperplane class restricted to F):
    c = sum_i C(d_i + k, k + 1) - (r + 1)."""
    return sum(comb(d + spec.k, spec.k + 1) for d in spec.degrees) - (spec.r + 1)


def is_smooth_fano(spec: ProblemSpec) -> bool:
    """Whether the Fano scheme itself is a smooth Fano variety: the canonical
    coefficient is negative as soon as sum_i C(d_i + k, k + 1) <= r."""
    return sum(comb(d + spec.k, spec.k + 1) for d in spec.degrees) <= spec.r


def canonical_degree(spec: ProblemSpec, deg_f: int) -> int:
    """Self-intersection K_F^delta = (canonical coefficient)^delta * deg(F)."""
    if spec.delta < 0:
        raise RegimeError("delta-negative", f"delta = {spec.delta} < 0")
    return canonical_coefficient(spec) ** spec.delta * deg_f


@dataclass(frozen=True)
class InvariantReport:
    """Exact invariants of a Fano surface of k-planes (delta = 2)."""

    spec: ProblemSpec
    deg_f: int
    c2_integral: int
    per_degree: tuple[SymPowerCoeffs, ...]
    a_coeff: int
    b_coeff: int
    c1_coeff: int
    k_delta: int
    euler: int
    chi_o: int
    p_a: int
    signature: int
    smooth_fano: bool


def surface_invariants(spec: ProblemSpec) -> InvariantReport:
    """Full invariant bundle for a Fano surface: degree, c2 integral, A, B,
    K^2, topological and holomorphic Euler characteristics, arithmetic genus
    and signature.

    Requires delta = 2 and r >= 2k + m.  Raises InconsistencyError if
    K^2 + e fails the Noether divisibility by 12, which cannot happen for an
    actual smooth surface.
    """
    if spec.delta != 2:
        raise RegimeError("delta-not-two",
                          f"surface invariants need delta = 2, got delta = {spec.delta}")
    if spec.r < 2 * spec.k + spec.m:
        raise RegimeError("nonempty-regime",
                          f"need r >= 2k + m = {2 * spec.k + spec.m}, got r = {spec.r}")
    deg_f = deg_fano(spec)
    c2int = c2_fano_integral(spec)
    a, b = AB_coeffs(spec)
    k2 = canonical_degree(spec, deg_f)
    euler = a * deg_f + b * c2int
    if (k2 + euler) % 12 != 0:
        raise InconsistencyError(
            f"K^2 + e = {k2 + euler} is not divisible by 12 for {spec}; "
            "chi(O) of a smooth surface is an integer, so this is a bug")
    chi = (k2 + euler) // 12
    return InvariantReport(
        spec=spec,
        deg_f=deg_f,
        c2_integral=c2int,
        per_degree=tuple(sym_power_coeffs(d, spec.k) for d in spec.degrees),
        a_coeff=a,
        b_coeff=b,
        c1_coeff=canonical_coefficient(spec),
        k_delta=k2,
        euler=euler,
        chi_o=chi,
        p_a=chi - 1,
        signature=4 * chi - euler,
        smooth_fano=is_smooth_fano(spec),
    )


# ---------------------------------------------------------------------------
# classifications
# ---------------------------------------------------------------------------

class IrregularityCase(Enum):
    CUBIC_THREEFOLD_LINES = "irregular-cubic-threefold-lines"
    CUBIC_FIVEFOLD_PLANES = "irregular-cubic-fivefold-planes"
    TWO_QUADRICS = "irregular-two-quadrics"
    REGULAR = "regular"


@dataclass(frozen=True)
class Classification:
    case: IrregularityCase
    k: int | None
    note: str


def _require_irreducible_fano(spec: ProblemSpec, min_delta: int) -> None:
    if spec.delta < min_delta:
        raise RegimeError("delta-too-small",
                          f"classification needs delta >= {min_delta}, got {spec.delta}")
    if spec.r < 2 * spec.k + spec.m:
        raise RegimeError("empty-fano",
                          f"need r >= 2k + m = {2 * spec.k + spec.m} for a non-empty "
                          f"Fano scheme, got r = {spec.r}")
    if spec.sorted_degrees() == (2,) and spec.r == 2 * spec.k + 1:
        raise RegimeError(
            "reducible-fano",
            "the Fano scheme of middle-dimensional planes on an even-dimensional "
            "quadric has two components, so the irreducibility hypothesis fails")


def irregularity_classify(spec: ProblemSpec) -> Classification:
    """Which Fano schemes of general complete intersections (irreducible, of
    dimension >= 2) are irregular.

    Exactly three families: lines on cubic threefolds, planes on cubic
    fivefolds, and k-planes on intersections of two quadrics in P^{2k+3}
    (dimension k+1).  Everything else has vanishing irregularity; in
    particular r >= 2k + m + 2 forces regularity.
    """
    _require_irreducible_fano(spec, min_delta=2)
    degs = spec.sorted_degrees()
    if degs == (3,) and spec.r == 4 and spec.k == 1:
        return Classification(IrregularityCase.CUBIC_THREEFOLD_LINES, None,
                              "surface of lines on a general cubic threefold")
    if degs == (3,) and spec.r == 6 and spec.k == 2:
        return Classification(IrregularityCase.CUBIC_FIVEFOLD_PLANES, None,
                              "surface of planes on a general cubic fivefold")
    if degs == (2, 2) and spec.r == 2 * spec.k + 3:
        return Classification(
            IrregularityCase.TWO_QUADRICS, spec.k,
            f"(k+1)-dimensional Fano scheme of k-planes on two general quadrics, k={spec.k}")
    return Classification(IrregularityCase.REGULAR, None, "irregularity vanishes")


VERY_GENERAL_NOTE = ("Picard numbers refer to the very general complete intersection; "
                     "'general' is not enough here.")


@dataclass(frozen=True)
class PicardInfo:
    rho: int
    components: int
    note: str


def picard_number(spec: ProblemSpec) -> PicardInfo:
    """Picard number of the Fano scheme of the very general complete
    intersection with delta >= 2: equal to 1 except for three quadric-type
    families.  For the two-component quadric case the number refers to each
    component."""
    if spec.delta < 2:
        raise RegimeError("delta-too-small",
                          f"Picard classification needs delta >= 2, got {spec.delta}")
    degs = spec.sorted_degrees()
    k = spec.k
    if degs == (2,) and spec.r == 2 * k + 1:
        return PicardInfo(1, 2, "two isomorphic disjoint components, each of Picard "
                                "number 1. " + VERY_GENERAL_NOTE)
    if degs == (2,) and spec.r == 2 * k + 3:
        return PicardInfo(2, 1, VERY_GENERAL_NOTE)
    if degs == (2, 2) and spec.r == 2 * k + 4:
        return PicardInfo(2 * k + 6, 1, VERY_GENERAL_NOTE)
    return PicardInfo(1, 1, VERY_GENERAL_NOTE)
