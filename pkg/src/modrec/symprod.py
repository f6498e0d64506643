"""Symmetric powers of the curve: cohomology polynomials and divisor counts.

The Betti polynomial of the n-th symmetric power is the x^n coefficient of

    (1 + x t)^{2g} / ((1 - x)(1 - x t^2)),

its Hodge refinement the x^n coefficient of

    (1 + x u)^g (1 + x v)^g / ((1 - x)(1 - x u v)).

On the arithmetic side, points of the n-th symmetric power are effective
divisors of degree n, whose generating function is the zeta function; the
brute-force oracle counts multisets of closed points directly instead.
"""

from __future__ import annotations

from math import comb

from .curve import count_points, zeta_Z
from .errors import InvariantViolation, ValidationError
from .exactalg import Poly, series_expand


def sym_poincare(g, n):
    """Betti polynomial of the n-th symmetric power of a genus-g curve."""
    if n < 0:
        raise ValidationError("symmetric power index must be >= 0")
    terms = {}
    for i in range(0, min(2 * g, n) + 1):
        c = comb(2 * g, i)
        for b in range(0, n - i + 1):
            k = i + 2 * b
            terms[k] = terms.get(k, 0) + c
    return Poly.univariate("t", [terms.get(k, 0) for k in range(2 * n + 1)])


def sym_hodge(g, n):
    """Hodge polynomial in u, v; setting u = v = t recovers sym_poincare."""
    if n < 0:
        raise ValidationError("symmetric power index must be >= 0")
    u, v = Poly.var("u"), Poly.var("v")
    out = Poly.zero()
    for i in range(0, min(g, n) + 1):
        ci = comb(g, i)
        for j in range(0, min(g, n - i) + 1):
            cij = ci * comb(g, j)
            for b in range(0, n - i - j + 1):
                out = out + cij * u ** (i + b) * v ** (j + b)
    return out


def sym_count(curve, n):
    """Number of degree-n effective divisors, read off the zeta expansion."""
    if not curve.is_arithmetic:
        raise ValidationError("divisor counts need arithmetic mode")
    if n < 0:
        raise ValidationError("degree must be >= 0")
    z = zeta_Z(curve).substitute({"t": Poly.var("x")})
    coeff = series_expand(z, "x", n).coefficient_values()[n]
    if not isinstance(coeff, int):
        raise InvariantViolation("divisor count came out non-integral: %s" % coeff)
    if coeff < 0:
        raise ValidationError("negative divisor count signals invalid zeta data")
    return coeff


DIVISOR_DEGREE_LIMIT = 6


def divisor_enumerate(model, n):
    """Count effective divisors of degree n as multisets of closed points.

    Closed points of exact degree d are obtained from the extension counts
    N_1..N_n by Moebius inversion; the multiset count is the resulting
    Euler-product coefficient.  Independent of the zeta reconstruction for
    n beyond the genus, which is what makes it an oracle.
    """
    if n < 0:
        raise ValidationError("degree must be >= 0")
    if n > DIVISOR_DEGREE_LIMIT:
        raise ValidationError("divisor enumeration is desk-scale: n <= %d" % DIVISOR_DEGREE_LIMIT)
    if n == 0:
        return 1
    counts = {r: count_points(model, r) for r in range(1, n + 1)}
    closed = {}
    for d in range(1, n + 1):
        total = sum(_moebius(d // e) * counts[e] for e in range(1, d + 1) if d % e == 0)
        if total % d:
            raise ValidationError("inconsistent point counts in orbit inversion")
        closed[d] = total // d
    # coefficient of x^n in prod_d (1 - x^d)^(-B_d)
    ways = [0] * (n + 1)
    ways[0] = 1
    for d in range(1, n + 1):
        b = closed[d]
        if b == 0:
            continue
        new = [0] * (n + 1)
        for base in range(n + 1):
            if ways[base] == 0:
                continue
            k = 0
            while base + d * k <= n:
                new[base + d * k] += ways[base] * comb(b + k - 1, k)
                k += 1
        ways = new
    return ways[n]


def _moebius(n):
    if n == 1:
        return 1
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result
