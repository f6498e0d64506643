"""Curve models, zeta data and coefficient-field specializations.

A curve enters in one of two ways: symbolically (genus only, feeding the
Betti/Hodge specializations) or arithmetically (a hyperelliptic model over a
prime field, or directly its point counts / zeta numerator).

Finite fields F_{p^m} are realized as polynomial quotients.  The defining
irreducible is the smallest one in lexicographic order on the ascending
coefficient tuple (c_0, ..., c_{m-1}), so counts are reproducible across
runs.  Elements are coefficient tuples; everything is schoolbook arithmetic,
which is plenty at the enforced desk scale q^r <= 2^20.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import InvariantViolation, ValidationError
from .exactalg import Poly, RatFun

FIELD_SIZE_LIMIT = 2 ** 20


# ---------------------------------------------------------------------------
# arithmetic over F_p[x] (dense ascending int lists)
# ---------------------------------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        _trim(a)
        if len(a) - 1 < dm:
            break
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j in range(dm + 1):
            a[shift + j] = (a[shift + j] - c * m[j]) % p
        _trim(a)
    return a


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(list(base), m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pderiv(a, p):
    return _trim([(k * c) % p for k, c in enumerate(a)][1:])


def _is_irreducible(poly, p):
    """Frobenius criterion for a monic polynomial over F_p."""
    m = len(poly) - 1
    x = [0, 1]
    frob = _ppowmod(x, p ** m, poly, p)
    if _trim(list(frob)) != [0, 1]:
        return False
    for ell in _prime_divisors(m):
        g = _pgcd([(a - b) % p for a, b in itertools.zip_longest(
            _ppowmod(x, p ** (m // ell), poly, p), x, fillvalue=0)], poly, p)
        if len(g) - 1 > 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _find_irreducible(p, m):
    """Smallest monic irreducible of degree m, lexicographic on (c_0..c_{m-1})."""
    if m == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=m):
        poly = list(tail) + [1]
        if _is_irreducible(poly, p):
            return poly
    raise InvariantViolation("no irreducible polynomial found (impossible)")


class GF:
    """The finite field F_{p^m}; elements are length-m coefficient tuples."""

    _cache = {}

    def __new__(cls, p, m):
        key = (p, m)
        if key not in cls._cache:
            if p ** m > FIELD_SIZE_LIMIT:
                raise ValidationError(
                    "field size %d^%d exceeds the desk-scale limit 2^20" % (p, m))
            self = super().__new__(cls)
            self.p = p
            self.m = m
            self.q = p ** m
            self.modulus = _find_irreducible(p, m)
            self.zero = (0,) * m
            self.one = tuple([1] + [0] * (m - 1)) if m else ()
            cls._cache[key] = self
        return cls._cache[key]

    def elements(self):
        return (tuple(reversed(digits))
                for digits in itertools.product(range(self.p), repeat=self.m))

    def lift(self, c):
        """Embed an integer (an F_p scalar) into the field."""
        return tuple([c % self.p] + [0] * (self.m - 1))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = _pmul(list(a), list(b), self.p)
        prod = _pmod(prod, self.modulus, self.p)
        return tuple(prod + [0] * (self.m - len(prod)))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        return self.power(a, self.q - 2)

    def power(self, a, e):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def eval_poly(self, coeffs, x):
        """Evaluate an F_p-coefficient polynomial at a field element."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.lift(c))
        return acc


# ---------------------------------------------------------------------------
# hyperelliptic models and point counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HyperellipticModel:
    """y^2 + h(x) y = f(x) over F_{p^k}, with f, h defined over F_p.

    deg f is 2g+1 or 2g+2 and deg h <= g; the affine curve must be smooth.
    """

    p: int
    k: int
    f: tuple
    h: tuple

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, isqrt(self.p) + 1)):
            raise ValidationError("p must be prime, got %d" % self.p)
        if self.k < 1:
            raise ValidationError("extension exponent k must be >= 1")
        f = _trim([c % self.p for c in self.f])
        h = _trim([c % self.p for c in self.h])
        object.__setattr__(self, "f", tuple(f))
        object.__setattr__(self, "h", tuple(h))
        d = len(f) - 1
        if d < 5:
            raise ValidationError("deg f must be at least 5 (genus >= 2)")
        g = (d - 1) // 2
        if len(h) - 1 > g:
            raise ValidationError("deg h must be at most g = %d" % g)
        self._check_affine_smooth()

    @property
    def genus(self):
        return (len(self.f) - 2) // 2

    @property
    def q(self):
        return self.p ** self.k

    def _check_affine_smooth(self):
        p, f, h = self.p, list(self.f), list(self.h)
        if p == 2:
            # y^2 = f(x) degenerates in characteristic 2, and even-degree f
            # can drop genus behind an Artin-Schreier substitution; only the
            # standard odd-degree form keeps the genus bookkeeping honest.
            # Singular points are the common roots of h and h'^2 f - f'^2.
            if not h:
                raise ValidationError("characteristic 2 requires a nonzero h")
            if (len(f) - 1) % 2 == 0:
                raise ValidationError("characteristic 2 requires deg f = 2g + 1")
            fp = _pderiv(f, p)
            hp = _pderiv(h, p)
            crit = [(a - b) % p for a, b in itertools.zip_longest(
                _pmul(_pmul(hp, hp, p), f, p), _pmul(fp, fp, p), fillvalue=0)]
            g = _pgcd(h, _trim(crit), p)
            if len(g) - 1 >= 1:
                raise ValidationError("affine curve is singular in characteristic 2")
        else:
            inv4 = pow(4, p - 2, p)
            hh = _pmul(h, h, p)
            F = [(a + b * inv4) % p for a, b in itertools.zip_longest(f, hh, fillvalue=0)]
            F = _trim(F)
            g = _pgcd(F, _pderiv(F, p), p)
            if len(g) - 1 >= 1:
                raise ValidationError("affine curve is singular (discriminant condition)")


def count_points(model, r):
    """Exact number of points of the smooth model over F_{q^r}."""
    if r < 1:
        raise ValidationError("extension degree r must be >= 1")
    m = model.k * r
    if model.p ** m > FIELD_SIZE_LIMIT:
        raise ValidationError("field F_{%d^%d} exceeds the desk-scale limit" % (model.p, m))
    K = GF(model.p, m)
    f, h = list(model.f), list(model.h)
    # table of quadratic solution counts: sols[w] = #{z : z^2 (+ z) = w}
    if model.p == 2:
        artin = {}
        for z in K.elements():
            w = K.add(K.mul(z, z), z)
            artin[w] = artin.get(w, 0) + 1
        count = 0
        for x in K.elements():
            a = K.eval_poly(h, x)
            b = K.eval_poly(f, x)
            if a == K.zero:
                count += 1  # squaring is a bijection
            else:
                ainv2 = K.inv(K.mul(a, a))
                count += artin.get(K.mul(b, ainv2), 0)
    else:
        squares = {}
        for y in K.elements():
            w = K.mul(y, y)
            squares[w] = squares.get(w, 0) + 1
        inv4 = K.inv(K.lift(4))
        count = 0
        for x in K.elements():
            a = K.eval_poly(h, x)
            b = K.eval_poly(f, x)
            rhs = K.add(b, K.mul(K.mul(a, a), inv4))
            count += squares.get(rhs, 0)
    # points at infinity: one for odd degree; for even degree (odd
    # characteristic only) solve z^2 = lead, i.e. 2 points or none
    if (len(model.f) - 1) % 2 == 1:
        count += 1
    else:
        count += squares.get(K.lift(model.f[-1]), 0)
    return count


# ---------------------------------------------------------------------------
# zeta data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveData:
    """Genus plus, in arithmetic mode, the size of the base field and the
    degree-2g zeta numerator (integer coefficients, constant term 1)."""

    genus: int
    q: int | None = None
    numerator: Poly | None = None

    def __post_init__(self):
        if self.genus < 2:
            raise ValidationError("genus must be at least 2, got %d" % self.genus)
        if (self.q is None) != (self.numerator is None):
            raise ValidationError("arithmetic mode needs both q and the zeta numerator")
        if self.q is not None:
            _validate_prime_power(self.q)
            _validate_numerator(self.numerator, self.q, self.genus)

    @property
    def is_arithmetic(self):
        return self.q is not None

    @staticmethod
    def symbolic(genus):
        return CurveData(genus)

    @staticmethod
    def from_model(model):
        counts = [count_points(model, r) for r in range(1, model.genus + 1)]
        return zeta_from_counts(model.q, model.genus, counts)

    def coefficients(self):
        return [int(c) for c in self.numerator.scalar_coeffs("t", upto=2 * self.genus)]

    def point_count(self, r):
        """N_r recovered from the zeta numerator via Newton's identities."""
        if not self.is_arithmetic:
            raise ValidationError("point counts need arithmetic mode")
        a = self.coefficients()
        e = [(-1) ** k * a[k] for k in range(len(a))]
        power_sums = _power_sums_from_elementary(e, r)
        return self.q ** r + 1 - power_sums[r - 1]

    def class_number(self):
        """P(1) = number of degree-0 divisor classes."""
        return sum(self.coefficients())


def _validate_prime_power(q):
    if q < 2:
        raise ValidationError("q must be a prime power >= 2")
    n = q
    p = None
    for d in range(2, isqrt(q) + 2):
        if n % d == 0:
            p = d
            break
    p = p or n
    while n % p == 0:
        n //= p
    if n != 1:
        raise ValidationError("q = %d is not a prime power" % q)


def _power_sums_from_elementary(e, upto):
    """Newton's identities: power sums p_1..p_upto from e_0=1, e_1, e_2, ..."""
    ps = []
    for k in range(1, upto + 1):
        s = Fraction(0)
        for i in range(1, min(k, len(e))):
            s += (-1) ** (i - 1) * Fraction(e[i]) * ps[k - i - 1]
        if k < len(e):
            s += (-1) ** (k - 1) * k * Fraction(e[k])
        ps.append(s)
    return [int(p) for p in ps]


def _validate_numerator(P, q, g):
    coeffs = P.scalar_coeffs("t", upto=2 * g) if not P.is_zero else []
    if P.is_zero or P.degree("t") != 2 * g or any(v != "t" for v in P.vars):
        raise ValidationError("zeta numerator must have degree 2g in t")
    if any(not isinstance(c, int) for c in coeffs):
        raise ValidationError("zeta numerator needs integer coefficients")
    if coeffs[0] != 1:
        raise ValidationError("zeta numerator must have constant term 1")
    for i in range(0, 2 * g + 1):
        if coeffs[2 * g - i] != q ** (g - i) * coeffs[i]:
            raise ValidationError(
                "functional-equation symmetry fails at coefficient %d" % i)
    # exact coefficient bounds implied by reciprocal roots of norm sqrt(q)
    for i in range(1, 2 * g + 1):
        if coeffs[i] ** 2 > comb(2 * g, i) ** 2 * q ** i:
            raise ValidationError("coefficient %d violates its Weil bound" % i)
    if sum(coeffs) <= 0:
        raise ValidationError("P(1) must be positive (class number)")
    _weil_norm_check(coeffs, q)
    # derived counts must satisfy Hasse-Weil exactly
    e = [(-1) ** k * coeffs[k] for k in range(len(coeffs))]
    for r, s in enumerate(_power_sums_from_elementary(e, 2 * g), start=1):
        if s ** 2 > 4 * g ** 2 * q ** r:
            raise ValidationError("derived count at r=%d violates Hasse-Weil" % r)


def _weil_norm_check(coeffs, q, tol=1e-9):
    """Numeric check (documented exception to exactness): every root of the
    numerator must have absolute value q^{-1/2} within tol.

    Multiplicities are stripped exactly first (gcd with the derivative), so
    every remaining root is simple and Newton polishing of numpy's estimates
    converges to machine precision; the raw solver alone is not reliably
    inside the tolerance, and double roots would stall it entirely."""
    import numpy

    from .exactalg import poly_divexact, poly_gcd

    P = Poly.univariate("t", coeffs)
    deriv_poly = Poly.univariate("t", [k * c for k, c in enumerate(coeffs)][1:])
    g = poly_gcd(P, deriv_poly)
    squarefree = P if g.is_const else poly_divexact(P, g)
    sf = squarefree.scalar_coeffs("t")
    deriv = [k * c for k, c in enumerate(sf)][1:]
    for root in numpy.roots([float(c) for c in reversed(sf)]):
        z = complex(root)
        for _ in range(60):
            dz = _horner(deriv, z)
            if dz == 0:
                break
            step = _horner(sf, z) / dz
            z -= step
            if abs(step) < 1e-15 * max(abs(z), 1.0):
                break
        if abs(abs(z) - q ** -0.5) > tol:
            raise ValidationError(
                "zeta numerator root %s violates the norm condition" % z)


def _horner(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def zeta_from_counts(q, g, counts):
    """Reconstruct the zeta numerator from N_1..N_g.

    Power sums S_r = q^r + 1 - N_r determine the first g coefficients via
    Newton's identities; the functional equation supplies the rest.
    """
    _validate_prime_power(q)
    if g < 2:
        raise ValidationError("genus must be at least 2")
    if len(counts) != g:
        raise ValidationError("need exactly g = %d point counts" % g)
    S = [q ** r + 1 - counts[r - 1] for r in range(1, g + 1)]
    e = [Fraction(1)]
    for k in range(1, g + 1):
        # S_k = e_1 S_{k-1} - e_2 S_{k-2} + ... + (-1)^{k-1} k e_k
        acc = Fraction(S[k - 1])
        for i in range(1, k):
            acc -= (-1) ** (i - 1) * e[i] * S[k - i - 1]
        ek = acc / ((-1) ** (k - 1) * k)
        if ek.denominator != 1:
            raise ValidationError("counts are inconsistent: non-integer coefficient")
        e.append(ek)
    a = [1] + [int((-1) ** k * e[k]) for k in range(1, g + 1)]
    a += [q ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
    P = Poly.univariate("t", a)
    return CurveData(g, q, P)


def zeta_Z(curve):
    """Z(t) = P(t) / ((1 - t)(1 - q t)) as an exact rational function."""
    if not curve.is_arithmetic:
        raise ValidationError("zeta function needs arithmetic mode")
    t = Poly.var("t")
    return RatFun(curve.numerator, (Poly.one() - t) * (Poly.one() - curve.q * t))


# ---------------------------------------------------------------------------
# specialization fields
# ---------------------------------------------------------------------------


class SpecializationField:
    """Coefficient field carrying the counting unit q and the numerator P.

    numeric: q is the base-field size, P the curve's zeta numerator.
    betti:   q = t^2 and P(x) = (1 + t x)^{2g}.
    hodge:   q = u v and P(x) = ((1 + u x)(1 + v x))^g.

    All elements are exact rational functions; numeric mode stays inside the
    constants.  Each instance owns the memoization stores of the arithmetic
    recursion built on top of it, so independently created fields recompute
    from scratch.
    """

    NUMERIC = "numeric"
    BETTI = "betti"
    HODGE = "hodge"

    def __init__(self, mode, genus, curve=None):
        if mode not in (self.NUMERIC, self.BETTI, self.HODGE):
            raise ValidationError("unknown specialization mode %r" % mode)
        if mode == self.NUMERIC:
            if curve is None or not curve.is_arithmetic:
                raise ValidationError("numeric mode needs an arithmetic curve")
            genus = curve.genus
        if genus < 2:
            raise ValidationError("genus must be at least 2")
        self.mode = mode
        self.genus = genus
        self.curve = curve
        if mode == self.NUMERIC:
            self.q = RatFun(curve.q)
        elif mode == self.BETTI:
            self.q = RatFun(Poly.var("t") ** 2)
        else:
            self.q = RatFun(Poly.var("u") * Poly.var("v"))
        self._qpow = {0: RatFun.one(), 1: self.q}
        self._zeta = {}
        self._P_one = None
        self.mass_cache = {}

    @staticmethod
    def numeric(curve):
        return SpecializationField(SpecializationField.NUMERIC, curve.genus, curve)

    @staticmethod
    def betti(genus):
        return SpecializationField(SpecializationField.BETTI, genus)

    @staticmethod
    def hodge(genus):
        return SpecializationField(SpecializationField.HODGE, genus)

    def q_power(self, e):
        if e not in self._qpow:
            self._qpow[e] = self.q ** e
        return self._qpow[e]

    def P_at(self, x):
        """The numerator P evaluated at a rational-function argument."""
        x = RatFun._coerce(x)
        g = self.genus
        if self.mode == self.NUMERIC:
            acc = RatFun.zero()
            xp = RatFun.one()
            for c in self.curve.coefficients():
                if c:
                    acc = acc + c * xp
                xp = xp * x
            return acc
        if self.mode == self.BETTI:
            return (RatFun.one() + RatFun.var("t") * x) ** (2 * g)
        return ((RatFun.one() + RatFun.var("u") * x) * (RatFun.one() + RatFun.var("v") * x)) ** g

    def P_one(self):
        if self._P_one is None:
            self._P_one = self.P_at(RatFun.one())
        return self._P_one

    def zeta(self, i):
        """Z(q^{-i}) in the field: P(q^{-i}) / ((1 - q^{-i})(1 - q^{1-i}))."""
        if i < 2:
            raise ValidationError("zeta values are used for i >= 2")
        if i not in self._zeta:
            qi = self.q_power(-i)
            one = RatFun.one()
            self._zeta[i] = self.P_at(qi) / ((one - qi) * (one - self.q_power(1 - i)))
        return self._zeta[i]

    def out(self, value):
        """Mode-appropriate external form: Fraction in numeric mode."""
        if self.mode == self.NUMERIC:
            return value.const_value()
        return value


def zeta_value(field, i):
    """Z(q^{-i}) computed in the given specialization field."""
    return field.out(field.zeta(i))
