"""Equivariant series of semistable strata and moduli Poincare polynomials.

The total series for rank n over a genus-g curve is the closed form

    prod_{j=1}^n (1 + t^{2j-1})^{2g} / ((1 - t^{2n}) prod_{j=1}^{n-1} (1 - t^{2j})^2)

and the semistable part is obtained by subtracting, per nontrivial
filtration type mu, the product of lower-rank semistable series shifted by
t^{2 codim(mu)}.  Since every stratum shifts by at least t^2, only the types
with codim <= T/2 can touch a series truncated at order T, which keeps each
step finite.  In the coprime case multiplying by (1 - t^2) collapses the
series to the Poincare polynomial of the moduli space.
"""

from __future__ import annotations

import os
from math import gcd

from .errors import InvariantViolation, ValidationError
from .exactalg import Poly, RatFun, Series, is_palindrome, series_expand
from .hn import codim, enumerate_types

_CLASSIFYING = {}
_SS_SERIES = {}

DEFAULT_TRUNCATION_SLACK = 4


def truncation_slack():
    raw = os.environ.get("MODREC_TRUNCATION_SLACK", "")
    if not raw:
        return DEFAULT_TRUNCATION_SLACK
    try:
        slack = int(raw)
    except ValueError:
        raise ValidationError("MODREC_TRUNCATION_SLACK must be an integer")
    if slack < 0:
        raise ValidationError("MODREC_TRUNCATION_SLACK must be >= 0")
    return slack


def classifying_series(n, g):
    """Poincare series of the classifying space of the rank-n gauge group."""
    if n < 1:
        raise ValidationError("rank must be positive")
    if g < 2:
        raise ValidationError("genus must be at least 2")
    key = (n, g)
    if key not in _CLASSIFYING:
        t = Poly.var("t")
        one = Poly.one()
        num = Poly.one()
        for j in range(1, n + 1):
            num = num * (one + t ** (2 * j - 1)) ** (2 * g)
        den = one - t ** (2 * n)
        for j in range(1, n):
            den = den * (one - t ** (2 * j)) ** 2
        _CLASSIFYING[key] = RatFun(num, den)
    return _CLASSIFYING[key]


def ss_equivariant_series(n, d, g, order):
    """Equivariant Poincare series of the semistable stratum, to the given order.

    Memoized on (n, d, g, order) with d stored as given, so the periodicity
    in d remains a testable output rather than a built-in assumption.
    """
    if order < 0:
        raise ValidationError("truncation order must be >= 0")
    key = (n, d, g, order)
    if key in _SS_SERIES:
        return _SS_SERIES[key]
    total = series_expand(classifying_series(n, g), "t", order)
    for mu in enumerate_types(n, d, g, order // 2):
        if mu.is_trivial:
            continue
        c = codim(mu, g)
        sub_order = order - 2 * c
        prod = Series.one("t", sub_order)
        for nj, dj in mu.parts:
            prod = prod * ss_equivariant_series(nj, dj, g, sub_order)
        total = total - _shift_into(prod, 2 * c, order)
    _SS_SERIES[key] = total
    return total


def _shift_into(series, shift, order):
    coeffs = [Poly.zero()] * (order + 1)
    for k, c in enumerate(series.coeffs):
        if shift + k <= order:
            coeffs[shift + k] = c
    return Series("t", coeffs)


def moduli_poincare(n, d, g):
    """Poincare polynomial of the moduli space of stable bundles (coprime case).

    Computed with slack above the expected top degree 2(n^2(g-1)+1); nonzero
    coefficients beyond the top degree mean the type cutoff is wrong and are
    reported as a violation, as are failures of palindromic symmetry,
    integrality or vanishing at t = -1.
    """
    if n < 1:
        raise ValidationError("rank must be positive")
    if g < 2:
        raise ValidationError("genus must be at least 2")
    if gcd(n, d) != 1:
        raise ValidationError(
            "rank and degree must be coprime; use ss_equivariant_series for "
            "the non-coprime semistable series")
    top = 2 * (n * n * (g - 1) + 1)
    order = top + truncation_slack()
    series = ss_equivariant_series(n, d, g, order)
    one_minus_t2 = Series("t", [Poly.one(), Poly.zero(), Poly.const(-1)]
                          + [Poly.zero()] * (order - 2))
    collapsed = series * one_minus_t2
    values = collapsed.coefficient_values()
    for k in range(top + 1, order + 1):
        if values[k] != 0:
            raise InvariantViolation(
                "coefficient %d above the top degree is %s; wrong truncation"
                % (k, values[k]))
    poly = Poly.univariate("t", values[: top + 1])
    if not is_palindrome(poly, top):
        raise InvariantViolation("moduli polynomial is not palindromic")
    if any(not isinstance(c, int) or c < 0 for c in values[: top + 1]):
        raise InvariantViolation("moduli polynomial has bad coefficients")
    if poly.evaluate({"t": -1}) != 0:
        raise InvariantViolation("moduli polynomial misses the vanishing at t = -1")
    return poly


def fixed_determinant_poly(n, d, g):
    """Moduli polynomial with the torus factor (1+t)^{2g} divided out."""
    full = moduli_poincare(n, d, g)
    jac = (Poly.one() + Poly.var("t")) ** (2 * g)
    quotient = RatFun(full, jac)
    return quotient.as_poly()


def clear_caches():
    _CLASSIFYING.clear()
    _SS_SERIES.clear()
