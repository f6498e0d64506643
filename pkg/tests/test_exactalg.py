"""Exact arithmetic layer: spec'd examples, ring axioms, canonical forms.

The long-division oracle below is written independently of the library's
series code: it works on dense Fraction lists and nothing else.
"""

import random
from fractions import Fraction

import pytest

from modrec.errors import ValidationError
from modrec.exactalg import (
    Poly,
    RatFun,
    fraction_from_str,
    is_palindrome,
    poly_from_json,
    poly_gcd,
    poly_to_json,
    ratfun_from_json,
    ratfun_to_json,
    series_expand,
    substitute,
)

T = Poly.var("t")
Q = Poly.var("q")
X = Poly.var("x")


def dense(p, var="t", upto=None):
    return p.scalar_coeffs(var, upto=upto)


def longdiv_oracle(num, den, order):
    """Power-series quotient of dense Fraction lists, written from scratch."""
    num = [Fraction(c) for c in num] + [Fraction(0)] * order
    den = [Fraction(c) for c in den]
    assert den[0] != 0
    out = []
    for n in range(order + 1):
        c = num[n]
        for k in range(1, min(n, len(den) - 1) + 1):
            c -= den[k] * out[n - k]
        out.append(c / den[0])
    return out


# -- rational function arithmetic -------------------------------------------


def test_additive_inverse_is_zero():
    f = RatFun(1, Poly.one() - T)
    assert (f + (-f)).is_zero
    assert f + (-f) == RatFun.zero()


def test_normalization_cancels_common_factor():
    f = RatFun(Poly.one() - T ** 2, Poly.one() - T)
    assert f * RatFun.one() == RatFun(Poly.one() + T)
    assert f.is_poly and f.as_poly() == Poly.one() + T


def test_division_example_against_series_oracle():
    lhs = RatFun((Poly.one() + T) ** 4, Poly.one() - T ** 2) / RatFun(Poly.one() + T)
    rhs = RatFun((Poly.one() + T) ** 2, Poly.one() - T)
    assert lhs == rhs
    got = series_expand(lhs, "t", 6).coefficient_values()
    want = longdiv_oracle(dense((Poly.one() + T) ** 2, upto=6), [1, -1], 6)
    assert got == want


def test_division_by_zero_raises():
    f = RatFun(1, Poly.one() - T)
    with pytest.raises(ZeroDivisionError):
        f / RatFun.zero()
    with pytest.raises(ZeroDivisionError):
        RatFun(Poly.one(), Poly.zero())


# -- series expansion ---------------------------------------------------------


def test_geometric_series():
    f = RatFun(1, Poly.one() - T)
    assert series_expand(f, "t", 3).coefficient_values() == [1, 1, 1, 1]
    assert series_expand(f, "t", 0).coefficient_values() == [1]


def test_series_example_from_long_division():
    f = RatFun((Poly.one() + T) ** 4, Poly.one() - T ** 2)
    got = series_expand(f, "t", 2).coefficient_values()
    assert got == longdiv_oracle([1, 4, 6, 4, 1], [1, 0, -1], 2)
    assert got == [1, 4, 7]


def test_series_pole_detection():
    with pytest.raises(ValidationError):
        series_expand(RatFun(1, T), "t", 3)


def test_series_multiplicativity():
    rng = random.Random(20260809)
    for _ in range(25):
        f = _random_ratfun(rng)
        g = _random_ratfun(rng)
        order = 8
        sf = series_expand(f, "t", order)
        sg = series_expand(g, "t", order)
        assert sf * sg == series_expand(f * g, "t", order)


# -- substitution -------------------------------------------------------------


def test_substitute_examples():
    f = RatFun(Q - 1)
    assert substitute(f, {"q": RatFun(T ** 2)}) == RatFun(T ** 2 - 1)

    p = RatFun(Poly.one() + 4 * X ** 4)
    val = substitute(p, {"x": RatFun(Fraction(1, 4))})
    assert val.const_value() == Fraction(65, 64)

    f = RatFun(Q, Q - 1)
    assert substitute(f, {"q": RatFun(T ** 2)}) == RatFun(T ** 2, T ** 2 - 1)


def test_substitute_vanishing_denominator():
    f = RatFun(1, Q - 1)
    with pytest.raises(ZeroDivisionError):
        substitute(f, {"q": RatFun.one()})


def test_substitute_then_expand_commutes():
    rng = random.Random(7)
    for _ in range(15):
        f = _random_ratfun(rng)
        binding = {"t": Poly.univariate("t", [0, rng.randint(1, 3)])}
        lhs = series_expand(f.substitute(binding), "t", 6)
        # expand then substitute coefficientwise: substitute t -> c*t in the
        # truncated series means scaling coefficient k by c**k
        c = binding["t"].scalar_coeffs("t")[1]
        rhs = [v * c ** k for k, v in enumerate(series_expand(f, "t", 6).coefficient_values())]
        assert lhs.coefficient_values() == rhs


# -- palindromes ---------------------------------------------------------------


def test_palindrome_examples():
    assert is_palindrome(Poly.one() + T ** 2, 2)
    fixed_det = Poly.univariate("t", [1, 0, 1, 4, 1, 0, 1])
    assert is_palindrome(fixed_det, 6)
    assert not is_palindrome(Poly.one() + 2 * T, 2)


def test_palindrome_preconditions():
    with pytest.raises(ValidationError):
        is_palindrome(Poly.one() + T ** 3, 2)
    with pytest.raises(ValidationError):
        is_palindrome(Poly.one() + Q, 2)


# -- ring axioms on randomized inputs ------------------------------------------


def _random_poly(rng, vars=("t",), max_deg=3):
    p = Poly.zero()
    for _ in range(rng.randint(1, 4)):
        term = Poly.const(rng.randint(-4, 4))
        for v in vars:
            term = term * Poly.var(v) ** rng.randint(0, max_deg)
        p = p + term
    return p


def _random_ratfun(rng):
    num = _random_poly(rng)
    den = Poly.zero()
    while den.is_zero or den.coefficient("t", 0).is_zero:
        den = Poly.one() + Poly.var("t") * _random_poly(rng)
        if rng.random() < 0.3:
            den = den * (Poly.one() - Poly.var("t") ** rng.randint(1, 2))
        if den.coefficient("t", 0).is_zero:
            den = den + 1
    return RatFun(num, den)


def test_ring_axioms():
    rng = random.Random(12345)
    for _ in range(40):
        a, b, c = (_random_ratfun(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_bivariate_gcd_reduction():
    u, v = Poly.var("u"), Poly.var("v")
    common = (u + v) ** 2
    f = RatFun(common * (u - v), common * (Poly.one() + u * v))
    assert f == RatFun(u - v, Poly.one() + u * v)
    g = poly_gcd(common * (u - v), common * (Poly.one() + u * v))
    assert g == common


def test_randomized_bivariate_gcd():
    from modrec.exactalg import poly_divexact

    rng = random.Random(31337)
    for _ in range(30):
        p = _random_poly(rng, vars=("u", "v"), max_deg=3)
        q = _random_poly(rng, vars=("u", "v"), max_deg=3)
        r = _random_poly(rng, vars=("u", "v"), max_deg=2)
        if p.is_zero or q.is_zero or r.is_zero:
            continue
        g = poly_gcd(p * r, q * r)
        # g divides both products and is divisible by the planted factor
        a = poly_divexact(p * r, g)
        b = poly_divexact(q * r, g)
        assert (a * g == p * r) and (b * g == q * r)
        scale = r.signed_content()
        poly_divexact(g, r.scaled(1 / scale))
        # idempotence: gcd of g with either product is g again
        assert poly_gcd(g, p * r) == g


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        Poly.univariate("t", [0.5, 1])
    with pytest.raises(ValidationError):
        RatFun(0.5)


def test_normalization_idempotent():
    rng = random.Random(99)
    for _ in range(25):
        f = _random_ratfun(rng)
        again = RatFun(f.num, f.den)
        assert again.num == f.num and again.den == f.den
        # denominator canonical: integer, coprime, positive leading coefficient
        assert f.den.signed_content() == 1


# -- serialization ----------------------------------------------------------------


def test_poly_json_roundtrip():
    p = Poly.univariate("t", [1, Fraction(-3, 2), 0, 7])
    obj = poly_to_json(p)
    assert obj["coeffs"] == ["1", "-3/2", "0", "7"]
    assert poly_from_json(obj) == p
    const = Poly.const(Fraction(5, 3))
    assert poly_from_json(poly_to_json(const)) == const


def test_ratfun_json_roundtrip():
    f = RatFun((Poly.one() + T) ** 2, Poly.one() - T)
    assert ratfun_from_json(ratfun_to_json(f)) == f


def test_multivariate_json_roundtrip():
    u, v = Poly.var("u"), Poly.var("v")
    p = Poly.one() + 2 * u + 2 * v + u * v
    assert poly_from_json(poly_to_json(p)) == p
    f = RatFun(p, Poly.one() - u * v)
    assert ratfun_from_json(ratfun_to_json(f)) == f


def test_fraction_strings():
    assert fraction_from_str("65/24") == Fraction(65, 24)
    assert fraction_from_str("75") == 75
