"""Matrix divisor spaces: cell decomposition, stabilization, the bridge."""

import pytest

from modrec.errors import ValidationError
from modrec.exactalg import Poly, series_expand
from modrec.matrixdiv import div_bridge_check, div_hodge, div_poincare
from modrec.symprod import sym_hodge, sym_poincare
from modrec.yangmills import classifying_series

T = Poly.var("t")


def test_rank_one_is_symmetric_power():
    for e in range(6):
        assert div_poincare(1, e, 2) == sym_poincare(2, e)


def test_rank_two_degree_one_example():
    c1 = sym_poincare(2, 1)
    assert div_poincare(2, 1, 2) == c1 + T ** 2 * c1


def test_degree_zero_is_point():
    assert div_poincare(2, 0, 2) == Poly.one()
    assert div_hodge(1, 0, 2) == Poly.one()


def test_coefficients_nonnegative():
    for e in range(5):
        coeffs = div_poincare(2, e, 2).scalar_coeffs("t")
        assert all(isinstance(c, int) and c >= 0 for c in coeffs)


def test_hodge_examples():
    uv = Poly.var("u") * Poly.var("v")
    s1 = sym_hodge(2, 1)
    assert div_hodge(2, 1, 2) == s1 + uv * s1


def test_hodge_specializes():
    for (n, e, g) in [(2, 3, 2), (3, 2, 2)]:
        h = div_hodge(n, e, g)
        assert h.substitute({"u": T, "v": T}) == div_poincare(n, e, g)


def test_bridge_rank_one():
    report = div_bridge_check(1, 2, e=16, cutoff=8)
    assert report.match
    want = series_expand(classifying_series(1, 2), "t", 8).coefficient_values()
    assert list(report.classifying_coeffs) == want


def test_bridge_rank_two():
    report = div_bridge_check(2, 2, e=30, cutoff=8)
    assert report.match
    assert report.first_mismatch is None
    assert report.divisor_coeffs == report.stabilized_coeffs == report.classifying_coeffs


def test_bridge_precondition():
    with pytest.raises(ValidationError):
        div_bridge_check(2, 2, e=10, cutoff=8)


def test_cell_weight_ignores_first_entry():
    # the cell shift sums (i-1) d_i from i = 1, so the first entry is free:
    # this is what lets the coefficients stabilize as the degree grows
    from modrec.matrixdiv import _torsion_vectors

    def shift(vec):
        return sum(i * di for i, di in enumerate(vec))

    for vec in _torsion_vectors(3, 4):
        bumped = (vec[0] + 7,) + vec[1:]
        assert shift(bumped) == shift(vec)


def test_stabilization_is_monotone():
    # once a coefficient agrees between consecutive torsion degrees it stays
    g, n, k = 2, 2, 4
    values = []
    for e in range(k + n * 2 * g, k + n * 2 * g + 4):
        values.append(div_poincare(n, e, g).scalar_coeffs("t", upto=k)[: k + 1])
    assert values[0] == values[1] == values[2] == values[3]


def test_report_json():
    report = div_bridge_check(2, 2, e=30, cutoff=4)
    obj = report.to_json()
    assert obj["match"] is True and obj["first_mismatch"] is None
