"""Spaces of matrix divisors via their torus decomposition.

A rank-n matrix divisor space of torsion degree e decomposes into cells
indexed by vectors (d_1, ..., d_n) of non-negative integers summing to e;
the cell indexed by d contributes the product of symmetric-power
polynomials shifted by t^{2 c_d} with c_d = sum (i-1) d_i.  The weight c_d
ignores d_1, so raising e pushes new contributions to ever higher degrees
and the low-order coefficients stabilize; the stabilized series is the
classifying series of the rank-n gauge group, which is the bridge between
the divisor picture and the gauge picture.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .exactalg import Poly, series_expand
from .symprod import sym_hodge, sym_poincare
from .yangmills import classifying_series


def _torsion_vectors(n, e):
    """All vectors of n non-negative integers with sum e, lexicographic."""
    if n == 1:
        yield (e,)
        return
    for first in range(e + 1):
        for rest in _torsion_vectors(n - 1, e - first):
            yield (first,) + rest


def div_poincare(n, e, g):
    """Betti polynomial of the rank-n matrix divisor space of torsion degree e."""
    if n < 1:
        raise ValidationError("rank must be positive")
    if e < 0:
        raise ValidationError("torsion degree must be >= 0")
    t = Poly.var("t")
    total = Poly.zero()
    for vec in _torsion_vectors(n, e):
        shift = sum(i * di for i, di in enumerate(vec))
        term = t ** (2 * shift)
        for di in vec:
            term = term * sym_poincare(g, di)
        total = total + term
    return total


def div_hodge(n, e, g):
    """Hodge polynomial; each cell shift becomes a factor (u v)^{c_d}."""
    if n < 1:
        raise ValidationError("rank must be positive")
    if e < 0:
        raise ValidationError("torsion degree must be >= 0")
    uv = Poly.var("u") * Poly.var("v")
    total = Poly.zero()
    for vec in _torsion_vectors(n, e):
        shift = sum(i * di for i, di in enumerate(vec))
        term = uv ** shift
        for di in vec:
            term = term * sym_hodge(g, di)
        total = total + term
    return total


@dataclass(frozen=True)
class BridgeReport:
    n: int
    g: int
    e: int
    cutoff: int
    match: bool
    first_mismatch: int | None
    divisor_coeffs: tuple
    stabilized_coeffs: tuple
    classifying_coeffs: tuple

    def to_json(self):
        return {
            "n": self.n,
            "g": self.g,
            "e": self.e,
            "cutoff": self.cutoff,
            "match": self.match,
            "first_mismatch": self.first_mismatch,
            "divisor_coeffs": [str(c) for c in self.divisor_coeffs],
            "stabilized_coeffs": [str(c) for c in self.stabilized_coeffs],
            "classifying_coeffs": [str(c) for c in self.classifying_coeffs],
        }


def div_bridge_check(n, g, e, cutoff):
    """Stabilization and bridge in one report.

    Coefficients of t^0..t^cutoff of the divisor polynomial at torsion
    degrees e and e+1 must agree with each other and with the classifying
    series.  A mismatch is reported with its first differing power rather
    than silently absorbed: it falsifies the configuration.
    """
    if cutoff < 0:
        raise ValidationError("cutoff must be >= 0")
    if e < cutoff + n * 2 * g:
        raise ValidationError(
            "torsion degree %d is too small for cutoff %d; need e >= cutoff + 2ng"
            % (e, cutoff))
    here = div_poincare(n, e, g).scalar_coeffs("t", upto=cutoff)[: cutoff + 1]
    there = div_poincare(n, e + 1, g).scalar_coeffs("t", upto=cutoff)[: cutoff + 1]
    target = series_expand(classifying_series(n, g), "t", cutoff).coefficient_values()
    first_mismatch = None
    for k in range(cutoff + 1):
        if not (here[k] == there[k] == target[k]):
            first_mismatch = k
            break
    return BridgeReport(n, g, e, cutoff, first_mismatch is None, first_mismatch,
                        tuple(here), tuple(there), tuple(target))
