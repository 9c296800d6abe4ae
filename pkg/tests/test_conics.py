import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from fanocount.errors import RegimeError, SingularWeightsError
from fanocount.conics import (
    ConicProblem,
    chern_Ed_series,
    conic_factor_report,
    conic_fixed_points,
    conic_regime,
    deg_conics,
    deg_conics_bott,
    deg_conics_closed,
    deg_conics_untwisted_sum,
    eta_form,
    eta_form_twisted,
    fixed_point_census,
    generic_conic_weights,
)
from fanocount.polycore import MultiPoly, TruncatedSeries, weighted_linear_product

from oracles import dense_conic_bott, dense_eta


# frozen values: validated by constancy over independent weight draws,
# integrality, the dense-oracle recomputation, and (for quartic surfaces)
# the published anchor 2508 after halving
CONIC_DEGREES = {
    (4, 3): 2508,
    (5, 3): 282880,
    (6, 3): 6677208,
    (7, 3): 92994300,
    (6, 4): 188068995,
    (7, 4): 12618251100,
    (7, 5): 85393742658,
}
RAW_BOTT = {(4, 3): 5016, (5, 3): 282880, (6, 3): 6677208, (6, 4): 188068995}
ETA_ONES = {(4, 3): 14528256, (5, 3): 1374702885}


# ---------------------------------------------------------------------------
# regimes
# ---------------------------------------------------------------------------

def test_conic_regime_examples():
    quartic = conic_regime(ConicProblem(4, 3))
    assert quartic.epsilon == 1 and "two" in quartic.note
    quintic = conic_regime(ConicProblem(5, 3))
    assert quintic.epsilon == 3 and "unique" in quintic.note
    quadric = conic_regime(ConicProblem(2, 3))
    assert quadric.epsilon == -3 and "family" in quadric.note


def test_conic_problem_validation():
    with pytest.raises(ValueError):
        ConicProblem(1, 3)
    with pytest.raises(ValueError):
        ConicProblem(4, 2)


def test_epsilon_mu_sum_to_zero():
    for d in range(2, 9):
        for r in range(3, 7):
            p = ConicProblem(d, r)
            assert p.epsilon + p.mu == 0


def test_positive_epsilon_matches_rank_inequality():
    # epsilon > 0 is exactly rank 2d+1 > 3r-1 = dim of the conic parameter space
    for d in range(2, 12):
        for r in range(3, 8):
            assert (2 * d + 2 - 3 * r > 0) == (2 * d + 1 > 3 * r - 1)


# ---------------------------------------------------------------------------
# Chern series
# ---------------------------------------------------------------------------

def test_chern_series_degree_two_has_trivial_divisor():
    series = chern_Ed_series(2, 3)
    direct = TruncatedSeries(weighted_linear_product(2, 2, affine=True, bound=3), 3)
    assert series == direct


def test_chern_series_degree_one_special_case():
    series = chern_Ed_series(1, 4)
    expected = MultiPoly.one(3)
    for i in range(3):
        expected = expected * (MultiPoly.one(3) + MultiPoly.variable(3, i))
    assert series.poly == expected


def test_chern_series_rejects_degree_zero():
    with pytest.raises(ValueError):
        chern_Ed_series(0, 3)


def test_chern_series_matches_dense_oracle_layers():
    series = chern_Ed_series(3, 5)
    dense = dense_eta(3, 2)   # degree-5 layer of the same quotient series
    assert series.poly.homogeneous_component(5).terms == {
        e: c for e, c in dense.items()}


def test_chern_series_low_truncation_matches_dense_division():
    # degree <= 2 truncation of the d = 3 quotient series, layer by layer
    from oracles import dict_mul, dict_series_inverse, dict_weight_product, dict_layer
    bound = 2
    dense = dict_mul(dict_weight_product(0, 3, bound),
                     dict_series_inverse(dict_weight_product(0, 1, bound), bound), bound)
    series = chern_Ed_series(3, bound)
    for n in range(bound + 1):
        assert series.poly.homogeneous_component(n).terms == dict_layer(dense, n)


def test_chern_series_defining_identity_d4():
    bound = 8
    series = chern_Ed_series(4, bound)
    divisor = weighted_linear_product(2, 2, affine=True, bound=bound)
    product = series * divisor
    full = weighted_linear_product(2, 4, affine=True, bound=bound)
    assert product.poly == full


# ---------------------------------------------------------------------------
# eta forms
# ---------------------------------------------------------------------------

def test_eta_is_symmetric():
    eta = eta_form(4, 3)
    for perm in itertools.permutations(range(3)):
        assert eta.permute_variables(list(perm)) == eta


def test_eta_is_homogeneous():
    eta = eta_form(4, 3)
    for point in [(1, 2, 3), (2, -1, 5)]:
        scaled = tuple(2 * t for t in point)
        assert eta.evaluate(scaled) == 2**8 * eta.evaluate(point)


def test_eta_parity():
    eta = eta_form(4, 3)   # degree 3r-1 = 8, even
    for point in [(1, 2, 3), (3, 5, -7)]:
        negated = tuple(-t for t in point)
        assert eta.evaluate(negated) == (-1) ** 8 * eta.evaluate(point)


def test_eta_at_ones_frozen():
    for (d, r), expected in sorted(ETA_ONES.items()):
        assert eta_form(d, r).evaluate((1, 1, 1)) == expected
        assert expected > 0


def test_eta_regime():
    with pytest.raises(RegimeError):
        eta_form(3, 3)     # epsilon = -1


def test_twisted_eta_restricts_to_eta():
    twisted = eta_form_twisted(4, 3)
    spine = MultiPoly(3, {e[:3]: c for e, c in twisted.terms.items() if e[3] == 0})
    assert spine == eta_form(4, 3)


def test_twisted_eta_matches_dense_oracle():
    from oracles import dense_eta_twisted
    dense = dense_eta_twisted(4, 3)
    assert eta_form_twisted(4, 3).terms == {e: c for e, c in dense.items()}


def test_twisted_eta_agrees_with_local_series_route():
    # the per-fixed-point univariate evaluation must equal the symbolic form
    from fanocount.conics import _local_top_chern
    twisted = eta_form_twisted(4, 3)
    rng = random.Random(4)
    for _ in range(5):
        roots = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))
        shift = Fraction(rng.randint(1, 12), rng.randint(1, 3))
        assert _local_top_chern(4, 8, roots, shift) == twisted.evaluate((*roots, shift))


# ---------------------------------------------------------------------------
# fixed points
# ---------------------------------------------------------------------------

def test_fixed_point_census_values():
    assert fixed_point_census(3) == 24
    assert fixed_point_census(4) == 60


def test_fixed_point_census_closed_form():
    for r in range(2, 9):
        assert fixed_point_census(r) == r * (r * r - 1) == 6 * comb(r + 1, 3)


def test_fixed_points_include_double_lines():
    points = list(conic_fixed_points(3))
    assert ((0, 1, 2), (0, 0)) in points          # the double line x_0^2 = 0
    assert ((0, 1, 2), (0, 1)) in points
    assert len([p for p in points if p[0] == (0, 1, 2)]) == 6


# ---------------------------------------------------------------------------
# fixed-point sums
# ---------------------------------------------------------------------------

def test_bott_sum_quartic_anchor():
    value = deg_conics_bott(4, 3, generic_conic_weights(3, seed=11))
    assert value.is_integral and value.value == 5016


def test_bott_sum_constant_across_weights():
    for seed_pair in [(1, 2), (3, 4)]:
        values = [deg_conics_bott(4, 3, generic_conic_weights(3, seed=s)).value
                  for s in seed_pair]
        assert values[0] == values[1] == 5016


def test_bott_sum_matches_dense_oracle():
    weights = generic_conic_weights(3, seed=21)
    ours = deg_conics_bott(4, 3, weights).value
    assert ours == dense_conic_bott(4, 3, tuple(weights)) == 5016


@pytest.mark.parametrize("dr,expected", sorted(RAW_BOTT.items()))
def test_bott_sum_frozen(dr, expected):
    d, r = dr
    value = deg_conics_bott(d, r, generic_conic_weights(r, seed=17))
    assert value.is_integral and value.value == expected


def test_bott_weight_validation():
    with pytest.raises(SingularWeightsError):
        deg_conics_bott(4, 3, (0, 1, 2, 3))
    with pytest.raises(SingularWeightsError):
        deg_conics_bott(4, 3, (1, -1, 2, 3))
    with pytest.raises(SingularWeightsError):
        deg_conics_bott(4, 3, (1, 2, 3, 4))    # 1+4 = 2+3: sums collide in a plane


@pytest.mark.parametrize("dr,expected", sorted(CONIC_DEGREES.items()))
def test_deg_conics_frozen(dr, expected):
    assert deg_conics(*dr) == expected


def test_deg_conics_seed_independent():
    assert deg_conics(4, 3, seed=1) == deg_conics(4, 3, seed=987654) == 2508


def test_deg_conics_regime_errors():
    with pytest.raises(RegimeError) as err:
        deg_conics(5, 4)       # epsilon = 0
    assert err.value.code == "boundary-regime"
    with pytest.raises(RegimeError) as err:
        deg_conics(2, 3)       # epsilon < 0
    assert err.value.code == "conic-family"


# ---------------------------------------------------------------------------
# the untwisted shortcut and the closed form
# ---------------------------------------------------------------------------

def test_untwisted_sum_at_unit_weights():
    for (d, r) in [(4, 3), (5, 3)]:
        value = deg_conics_untwisted_sum(d, r, [1] * (r + 1))
        assert value == -Fraction(6, 32) * comb(r + 1, 3) * ETA_ONES[(d, r)]


def test_untwisted_sum_is_not_constant():
    a = deg_conics_untwisted_sum(4, 3, (1, 2, 5, 7))
    b = deg_conics_untwisted_sum(4, 3, (1, 3, 7, 12))
    assert a != b


def test_closed_form_value_and_disagreement():
    comparison = deg_conics_closed(5, 3)
    assert comparison.value == -Fraction(5, 32) * comb(4, 3) * ETA_ONES[(5, 3)]
    assert comparison.value == -Fraction(6873514425, 8)
    assert comparison.fixed_point_value == 282880
    assert not comparison.consistent
    assert comparison.ratio == comparison.value / 282880


def test_closed_form_comparison_at_6_4():
    comparison = deg_conics_closed(6, 4)
    assert comparison.value == -4393178803200           # -(5/32)*C(5,3)*eta(1,1,1)
    assert eta_form(6, 4).evaluate((1, 1, 1)) == 2811634434048
    assert comparison.fixed_point_value == 188068995
    assert not comparison.consistent


def test_closed_form_excludes_the_halving_case():
    with pytest.raises(RegimeError) as err:
        deg_conics_closed(4, 3)
    assert err.value.code == "halving-case"


def test_factor_report_contents():
    report = conic_factor_report()
    assert "2508" in report and "5016" in report
    assert "anchor reproduced                           : True" in report
    assert "-(5/32)" in report and "(1,...,1)" in report
    assert str(ETA_ONES[(4, 3)]) in report
    # measured per-plane factor, exact: 5016 / (4 * 14528256)
    assert str(Fraction(5016, 4 * 14528256)) in report
