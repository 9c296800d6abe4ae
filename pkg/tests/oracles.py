"""Independent reference implementations used to validate the package.

Two deliberately different computational routes from the ones in the package:

* plane counts through dense sympy expansion (no truncation, no sparse
  folding);
* conic fixed-point sums through dict-based dense series arithmetic in four
  variables, with the inverse computed by a homogeneous-layer recurrence
  rather than geometric-series iteration.

These stay oracle-side: the package never imports them.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp


def compositions(nvars, total):
    """All exponent tuples of length nvars summing to total."""
    if nvars == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(nvars - 1, total - head):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# dense sympy route for plane counts
# ---------------------------------------------------------------------------

def sympy_vars(k):
    return sp.symbols(f"x0:{k + 1}")


def sympy_tau(d, r, k):
    """Full dense expansion, then the degree-(k+1)(r-k) part."""
    X = sympy_vars(k)
    product = sp.expand(sp.prod(
        [1 + sum(v[i] * X[i] for i in range(k + 1)) for v in compositions(k + 1, d)]))
    n = (k + 1) * (r - k)
    poly = sp.Poly(product, *X)
    return sp.expand(sum(
        c * sp.prod([X[i] ** e for i, e in enumerate(mono)])
        for mono, c in zip(poly.monoms(), poly.coeffs()) if sum(mono) == n))


def sympy_psi(expr, X, target):
    return sp.Poly(sp.expand(expr), *X).coeff_monomial(
        sp.prod([X[i] ** t for i, t in enumerate(target)]))


def sympy_deg_planes(d, r, k):
    X = sympy_vars(k)
    vandermonde = sp.prod([X[i] - X[j]
                           for i in range(k + 1) for j in range(i + 1, k + 1)])
    return int(sympy_psi(sympy_tau(d, r, k) * vandermonde, X,
                         tuple(r - i for i in range(k + 1))))


def sympy_deg_ci_planes(degrees, r, k):
    X = sympy_vars(k)
    q = sp.expand(sp.prod([sum(v[i] * X[i] for i in range(k + 1))
                           for d in degrees[:-1] for v in compositions(k + 1, d)]))
    affine = sp.expand(sp.prod([1 + sum(v[i] * X[i] for i in range(k + 1))
                                for v in compositions(k + 1, degrees[-1])]))
    vandermonde = sp.prod([X[i] - X[j]
                           for i in range(k + 1) for j in range(i + 1, k + 1)])
    return int(sympy_psi(q * affine * vandermonde, X,
                         tuple(r - i for i in range(k + 1))))


# ---------------------------------------------------------------------------
# dict-based dense route for the conic side
# ---------------------------------------------------------------------------

def dict_mul(a, b, bound):
    out = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) > bound:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def dict_weight_product(nvars_extra, d, bound, extra_coeff=0):
    """prod over |v| = d of (1 + v.x [+ extra_coeff * z]) in 3+nvars_extra vars."""
    width = 3 + nvars_extra
    acc = {(0,) * width: Fraction(1)}
    for v in compositions(3, d):
        lin = {(0,) * width: Fraction(1)}
        for i, vi in enumerate(v):
            if vi:
                e = [0] * width
                e[i] = 1
                lin[tuple(e)] = Fraction(vi)
        if nvars_extra and extra_coeff:
            e = [0] * width
            e[-1] = 1
            lin[tuple(e)] = Fraction(extra_coeff)
        acc = dict_mul(acc, lin, bound)
    return acc


def dict_layer(poly, n):
    return {e: c for e, c in poly.items() if sum(e) == n}


def dict_series_inverse(poly, bound):
    """Layer recurrence: t_n = -sum_{j=1..n} s_j t_{n-j}; no geometric series."""
    width = len(next(iter(poly)))
    one = (0,) * width
    s_layers = [dict_layer(poly, n) for n in range(bound + 1)]
    assert s_layers[0] == {one: Fraction(1)}
    t_layers = [{one: Fraction(1)}]
    for n in range(1, bound + 1):
        acc = {}
        for j in range(1, n + 1):
            for e, c in dict_mul(s_layers[j], t_layers[n - j], bound).items():
                acc[e] = acc.get(e, Fraction(0)) + c
        t_layers.append({e: -c for e, c in acc.items() if c != 0})
    out = {}
    for layer in t_layers:
        out.update(layer)
    return out


def dict_eval(poly, point):
    total = Fraction(0)
    for exps, coeff in poly.items():
        value = coeff
        for x, e in zip(point, exps):
            value *= Fraction(x) ** e
        total += value
    return total


def dense_eta(d, r):
    """Untwisted top Chern form in 3 variables (dense route)."""
    bound = 3 * r - 1
    numerator = dict_weight_product(0, d, bound)
    if d > 2:
        denominator = dict_weight_product(0, d - 2, bound)
        numerator = dict_mul(numerator, dict_series_inverse(denominator, bound), bound)
    return dict_layer(numerator, bound)


def dense_eta_twisted(d, r):
    """Twisted top Chern form in 4 variables (dense route): the divisor
    factors carry -z."""
    bound = 3 * r - 1
    numerator = dict_weight_product(1, d, bound, extra_coeff=0)
    if d > 2:
        denominator = dict_weight_product(1, d - 2, bound, extra_coeff=-1)
        numerator = dict_mul(numerator, dict_series_inverse(denominator, bound), bound)
    return dict_layer(numerator, bound)


def dense_conic_bott(d, r, t):
    """Twisted fixed-point sum evaluated through the dense 4-variable form."""
    eta4 = dense_eta_twisted(d, r)
    total = Fraction(0)
    for plane in itertools.combinations(range(r + 1), 3):
        roots = tuple(-Fraction(t[i]) for i in plane)
        grass = Fraction(1)
        for alpha in plane:
            for beta in range(r + 1):
                if beta not in plane:
                    grass *= Fraction(t[beta]) - Fraction(t[alpha])
        pairs = list(itertools.combinations_with_replacement(plane, 2))
        sums = [Fraction(t[a]) + Fraction(t[b]) for a, b in pairs]
        for idx in range(6):
            euler = grass
            for jdx in range(6):
                if jdx != idx:
                    euler *= sums[idx] - sums[jdx]
            total += dict_eval(eta4, (*roots, sums[idx])) / euler
    return total
