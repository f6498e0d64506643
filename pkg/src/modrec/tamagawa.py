"""Arithmetic recursion for stacky masses of semistable bundles.

The total mass of all rank-n bundles of a fixed degree, weighted by
1/#Aut, is the zeta-value product

    total(n) = P(1)/(q-1) * q^{(n^2-1)(g-1)} * zeta(2) ... zeta(n)

(the mass-formula normalization of the volume of the integral subgroup,
together with the count of line-bundle twists).  Subtracting, per
filtration type, q^{mass_exponent} times the product of lower-rank
semistable masses leaves the semistable mass beta(n, d).  The infinite
degree sums collapse composition by composition: on each residue cell of
the slope-gap lattice the exponent is affine with negative weights, so the
sum is a product of geometric series evaluated in closed form.

Everything is generic over the coefficient field, so the same recursion
yields exact rational numbers (numeric mode), Poincare series (Betti mode,
q = t^2) and Hodge refinements (q = u v).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .curve import SpecializationField
from .errors import InvariantViolation, ValidationError
from .exactalg import RatFun
from .hn import codim, compositions, degrees_from_gaps, enumerate_types, gap_weights, mass_exponent


def total_mass(n, d, field):
    """Total stacky mass of rank-n degree-d bundles; independent of d."""
    if n < 1:
        raise ValidationError("rank must be positive")
    g = field.genus
    value = field.P_one() / (field.q - RatFun.one())
    value = value * field.q_power((n * n - 1) * (g - 1))
    for i in range(2, n + 1):
        value = value * field.zeta(i)
    return value


@dataclass(frozen=True)
class ConeSum:
    """Degree-cone summation data for one composition.

    ``factors[j][r]`` is the semistable mass of a rank ``composition[j]``
    part whose degree is congruent to r.  The exponent of q on a degree
    vector is the affine form with the stated coefficients; its restriction
    to every unbounded ray of the slope-decreasing cone has negative slope,
    which is what makes the closed-form summation legitimate.
    """

    composition: tuple
    genus: int
    factors: tuple

    def exponent_form(self):
        """(coefficients on d_1..d_r, constant) of the mass exponent."""
        comp = self.composition
        N = sum(comp)
        prefix = [0]
        for n in comp:
            prefix.append(prefix[-1] + n)
        coeffs = tuple(prefix[j] + prefix[j + 1] - N for j in range(len(comp)))
        const = (self.genus - 1) * sum(
            comp[i] * comp[j] for i in range(len(comp)) for j in range(i + 1, len(comp)))
        return coeffs, const


def cone_sum(cs, d, field):
    """Closed-form sum of stratum masses over all degree vectors of the cone.

    The slope-gap coordinates gamma_k >= 1 carve the cone into finitely many
    residue cells; on each cell the exponent decreases by the integer
    W_k = m_k (N - m_k) N per period step, so each cell contributes its base
    term times prod_k 1/(1 - q^{-W_k}).
    """
    comp = cs.composition
    r = len(comp)
    if r == 1:
        return cs.factors[0][d % comp[0]]
    g = cs.genus
    weights, periods = gap_weights(comp)
    if any(w <= 0 for w in weights):
        raise InvariantViolation("cone weight must be positive")
    _, const = cs.exponent_form()
    geom = []
    for w, P in zip(weights, periods):
        W = w * P
        if W.denominator != 1 or W <= 0:
            raise InvariantViolation("period step must be a positive integer")
        ratio = field.q_power(-int(W))
        if ratio == RatFun.one():
            raise InvariantViolation("geometric ratio 1 in a cone sum")
        geom.append(RatFun.one() / (RatFun.one() - ratio))
    total = RatFun.zero()
    for gamma in itertools.product(*(range(1, P + 1) for P in periods)):
        degrees = degrees_from_gaps(comp, d, gamma)
        if degrees is None:
            continue
        exponent = Fraction(const) - sum(w * c for w, c in zip(weights, gamma))
        if exponent.denominator != 1:
            raise InvariantViolation("non-integer exponent on an integral cell")
        term = field.q_power(int(exponent))
        for j, dj in enumerate(degrees):
            term = term * cs.factors[j][dj % comp[j]]
        for gfac in geom:
            term = term * gfac
        total = total + term
    return total


def _cone_for(comp, field):
    factors = tuple(
        tuple(ss_mass(nj, res, field) for res in range(nj)) for nj in comp)
    return ConeSum(comp, field.genus, factors)


def ss_mass(n, d, field):
    """Stacky mass of semistable rank-n degree-d bundles in the given field.

    Memoized per field instance on (n, d mod n): twisting by a degree-1 line
    bundle shifts d by n without changing the mass.
    """
    if n < 1:
        raise ValidationError("rank must be positive")
    key = (n, d % n)
    cached = field.mass_cache.get(key)
    if cached is not None:
        return cached
    if n == 1:
        value = field.P_one() / (field.q - RatFun.one())
    else:
        value = total_mass(n, d, field)
        for comp in compositions(n):
            if len(comp) < 2:
                continue
            value = value - cone_sum(_cone_for(comp, field), d, field)
    if field.mode == SpecializationField.NUMERIC and value.const_value() <= 0:
        raise InvariantViolation("numeric semistable mass is not positive")
    field.mass_cache[key] = value
    return value


def stratum_mass(mu, field):
    """Mass of the stratum labelled by one filtration type."""
    value = field.q_power(mass_exponent(mu, field.genus))
    for nj, dj in mu.parts:
        value = value * ss_mass(nj, dj, field)
    return value


def stable_count(n, d, field):
    """Exact number of stable bundles of coprime rank and degree.

    Every stable bundle has automorphism group the nonzero scalars, so the
    count is (q - 1) times the semistable mass; it must come out a
    non-negative integer, and anything else means a formula bug.
    """
    _require_numeric(field)
    if gcd(n, d) != 1:
        raise ValidationError("rank and degree must be coprime for stable counts")
    value = ((field.q - RatFun.one()) * ss_mass(n, d, field)).const_value()
    if value.denominator != 1 or value < 0:
        raise InvariantViolation("stable count %s is not a non-negative integer" % value)
    return int(value)


def fixed_determinant_count(n, d, field):
    """Stable bundles with one fixed determinant: the count divided by P(1)."""
    count = stable_count(n, d, field)
    classes = int(field.P_one().const_value())
    if count % classes:
        raise InvariantViolation(
            "stable count %d is not divisible by the class number %d" % (count, classes))
    return count // classes


def _require_numeric(field):
    if field.mode != SpecializationField.NUMERIC:
        raise ValidationError("this operation needs the numeric specialization")


# ---------------------------------------------------------------------------
# executable mass-formula check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SiegelReport:
    n: int
    d: int
    mode: str
    total: Fraction
    semistable: Fraction
    partial_sums: tuple
    gaps: tuple
    tail_bound: Fraction

    def to_json(self):
        from .exactalg import fraction_to_str

        return {
            "n": self.n,
            "d": self.d,
            "mode": self.mode,
            "value": fraction_to_str(self.semistable),
            "total": fraction_to_str(self.total),
            "partial_sums": [fraction_to_str(v) for v in self.partial_sums],
            "gaps": [fraction_to_str(v) for v in self.gaps],
            "tail_bound": fraction_to_str(self.tail_bound),
        }


def siegel_check(n, d, field, max_codim):
    """Partial sums of stratum masses must climb to the total mass.

    The semistable term plus all strata of codimension <= level is compared
    with the zeta-value total for every level up to ``max_codim``; the gaps
    must shrink monotonically and the final gap must sit below a geometric
    tail bound computed from the ratios actually used.
    """
    _require_numeric(field)
    if max_codim < 0:
        raise ValidationError("codimension bound must be >= 0")
    g = field.genus
    total = total_mass(n, d, field).const_value()
    beta = ss_mass(n, d, field).const_value()
    level_mass = {}
    for mu in enumerate_types(n, d, g, max_codim):
        if mu.is_trivial:
            continue
        c = codim(mu, g)
        level_mass[c] = level_mass.get(c, Fraction(0)) + stratum_mass(mu, field).const_value()
    partials, gaps = [], []
    acc = beta
    for level in range(max_codim + 1):
        acc += level_mass.get(level, Fraction(0))
        partials.append(acc)
        gap = total - acc
        if gap < 0 or (n > 1 and gap == 0):
            raise InvariantViolation("partial sums overshoot the total mass")
        if gaps and gap > gaps[-1]:
            raise InvariantViolation("gaps must be non-increasing")
        if gaps and level in level_mass and not gap < gaps[-1]:
            raise InvariantViolation("gap failed to shrink on an occupied level")
        gaps.append(gap)
    bound = _tail_bound(n, d, field, max_codim)
    if gaps[-1] > bound:
        raise InvariantViolation(
            "final gap %s exceeds the geometric tail bound %s" % (gaps[-1], bound))
    return SiegelReport(n, d, field.mode, total, beta,
                        tuple(partials), tuple(gaps), bound)


def _tail_bound(n, d, field, max_codim):
    """Rigorous overcount of all stratum masses with codim > max_codim.

    Per composition: every such stratum has mass q^{K - c} times a product
    of part masses, with K = 2(g-1) sum n_i n_j; the number of strata at
    codimension c is at most (c - G + 1)^{r-2}.  Summing the resulting
    polynomial-times-geometric series in closed form bounds the tail.
    """
    g = field.genus
    q = field.q.const_value()
    x = 1 / q
    bound = Fraction(0)
    for comp in compositions(n):
        r = len(comp)
        if r < 2:
            continue
        G = (g - 1) * sum(comp[i] * comp[j]
                          for i in range(r) for j in range(i + 1, r))
        K = 2 * G
        best = Fraction(1)
        for nj in comp:
            best = best * max(ss_mass(nj, res, field).const_value() for res in range(nj))
        start = max(max_codim + 1, G + 1)
        tail = Fraction(0)
        # sum_{c >= start} (c - G + 1)^(r-2) x^c, exact
        p = r - 2
        for s in range(p + 1):
            shift = 1 - G
            tail += comb(p, s) * shift ** (p - s) * _power_tail(x, s, start)
        bound += q ** K * best * tail
    return bound


def _power_tail(x, p, start):
    """sum_{i >= start} i^p x^i as an exact Fraction, for 0 < x < 1."""
    # numerator of sum_{i>=0} i^p x^i over (1-x)^(p+1), by the derivative
    # recurrence S_p = x * dS_{p-1}/dx
    num = [Fraction(1)]
    for k in range(1, p + 1):
        deriv = [i * c for i, c in enumerate(num)][1:]
        mixed = [Fraction(0)] * (len(num) + 1)
        for i, c in enumerate(deriv):
            mixed[i] += c
            mixed[i + 1] -= c
        for i, c in enumerate(num):
            mixed[i] += k * c
        num = [Fraction(0)] + mixed  # multiply by x
        while num and num[-1] == 0:
            num.pop()
    full = sum(c * x ** i for i, c in enumerate(num)) / (1 - x) ** (p + 1)
    head = sum(Fraction(i) ** p * x ** i for i in range(start))
    return full - head
