"""Gauge-side recursion: closed forms, series oracle, moduli polynomials."""

import pytest

from modrec.errors import ValidationError
from modrec.exactalg import Poly, RatFun, is_palindrome, series_expand
from modrec.yangmills import (
    classifying_series,
    fixed_determinant_poly,
    moduli_poincare,
    ss_equivariant_series,
)

T = Poly.var("t")
ONE = Poly.one()


def rank2_closed_form(g):
    """(1+t)^{2g} ((1+t^3)^{2g} - t^{2g} (1+t)^{2g}) / ((1-t^2)^2 (1+t^2))."""
    num = (ONE + T) ** (2 * g) * ((ONE + T ** 3) ** (2 * g) - T ** (2 * g) * (ONE + T) ** (2 * g))
    den = (ONE - T ** 2) ** 2 * (ONE + T ** 2)
    return RatFun(num, den)


def test_classifying_series_examples():
    assert classifying_series(1, 2) == RatFun((ONE + T) ** 4, ONE - T ** 2)
    expected2 = RatFun((ONE + T) ** 4 * (ONE + T ** 3) ** 4,
                       (ONE - T ** 4) * (ONE - T ** 2) ** 2)
    assert classifying_series(2, 2) == expected2
    # coefficient of t^2 is C(4, 2) exterior pairs plus the two degree-2
    # polynomial generators coming from the (1 - t^2)^2 factor
    got = series_expand(classifying_series(2, 2), "t", 2).coefficient_values()
    assert got == [1, 4, 8]


def test_ss_series_rank_one_is_total():
    for g in (2, 3):
        for d in (-1, 0, 5):
            got = ss_equivariant_series(1, d, g, 10)
            want = series_expand(RatFun((ONE + T) ** (2 * g), ONE - T ** 2), "t", 10)
            assert got == want


def test_ss_series_rank_two_closed_form():
    got = ss_equivariant_series(2, 1, 2, 12)
    q_factor = Poly.univariate("t", [1, 0, 1, 4, 1, 0, 1])
    want = series_expand(RatFun((ONE + T) ** 4 * q_factor, ONE - T ** 2), "t", 12)
    assert got == want


def test_ss_series_degree_periodicity():
    for order in (8, 14):
        assert ss_equivariant_series(2, 1, 2, order) == ss_equivariant_series(2, 3, 2, order)
        assert ss_equivariant_series(3, 1, 2, order) == ss_equivariant_series(3, 4, 2, order)


def test_truncation_stability():
    low = ss_equivariant_series(2, 1, 2, 8)
    high = ss_equivariant_series(2, 1, 2, 16)
    assert high.truncate(8) == low


def test_moduli_rank_one():
    assert moduli_poincare(1, 0, 2) == (ONE + T) ** 4
    assert moduli_poincare(1, 3, 3) == (ONE + T) ** 6


def test_moduli_rank_two_example():
    got = moduli_poincare(2, 1, 2)
    q_factor = Poly.univariate("t", [1, 0, 1, 4, 1, 0, 1])
    assert got == (ONE + T) ** 4 * q_factor


def test_moduli_against_closed_form():
    for g in (2, 3, 4):
        got = moduli_poincare(2, 1, g)
        assert RatFun(got) == rank2_closed_form(g)


def test_moduli_properties():
    for n, d, g in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 2, 2)]:
        p = moduli_poincare(n, d, g)
        top = 2 * (n * n * (g - 1) + 1)
        assert p.degree("t") == top
        assert is_palindrome(p, top)
        coeffs = p.scalar_coeffs("t")
        assert all(isinstance(c, int) and c >= 0 for c in coeffs)
        assert p.evaluate({"t": -1}) == 0


def test_moduli_rejects_non_coprime():
    with pytest.raises(ValidationError):
        moduli_poincare(2, 4, 2)


def test_fixed_determinant_poly():
    assert fixed_determinant_poly(2, 1, 2) == Poly.univariate("t", [1, 0, 1, 4, 1, 0, 1])
    # degree 6g - 6
    for g in (2, 3):
        assert fixed_determinant_poly(2, 1, g).degree("t") == 6 * g - 6


def test_known_low_betti_numbers():
    # the fixed-determinant space starts 1, 0, 1, 2g, ... for every genus
    for g in (2, 3, 4):
        head = fixed_determinant_poly(2, 1, g).scalar_coeffs("t")[:4]
        assert head == [1, 0, 1, 2 * g]
    # at genus 2 the space is the intersection of two quadrics in P^5
    assert fixed_determinant_poly(2, 1, 2).scalar_coeffs("t") == [1, 0, 1, 4, 1, 0, 1]


def test_truncation_slack_env(monkeypatch):
    from modrec import yangmills

    monkeypatch.setenv("MODREC_TRUNCATION_SLACK", "6")
    assert yangmills.truncation_slack() == 6
    monkeypatch.delenv("MODREC_TRUNCATION_SLACK")
    assert yangmills.truncation_slack() == 4
    monkeypatch.setenv("MODREC_TRUNCATION_SLACK", "nope")
    with pytest.raises(ValidationError):
        yangmills.truncation_slack()
    # extra slack never changes the answer, only the vanish window checked
    monkeypatch.setenv("MODREC_TRUNCATION_SLACK", "8")
    yangmills.clear_caches()
    wide = yangmills.moduli_poincare(2, 1, 2)
    monkeypatch.delenv("MODREC_TRUNCATION_SLACK")
    yangmills.clear_caches()
    assert wide == yangmills.moduli_poincare(2, 1, 2)
