"""Exact polynomials, rational functions and truncated power series.

Everything is built on arbitrary-precision rationals (``fractions.Fraction``,
with integer-valued coefficients stored as plain ``int``).  No floating point
enters any computation.

Representation choices:

* ``Poly`` is a sparse multivariate polynomial over the closed variable set
  ``{t, q, x, u, v}``.  A polynomial stores the ordered tuple of variables it
  actually uses and a dict mapping exponent tuples to nonzero coefficients.
  Unused variables are stripped, so two equal polynomials are structurally
  identical.

* ``RatFun`` is a quotient of two polynomials kept in a canonical form:
  numerator and denominator are coprime, and the denominator has coprime
  integer coefficients with a positive leading coefficient (lexicographic
  term order).  Equality is therefore plain structural equality.

* ``Series`` is a dense truncated power series in one variable whose
  coefficients are polynomials in the remaining variables.  Arithmetic never
  reads past the truncation order.

>>> one_minus_t = Poly.one() - Poly.var("t")
>>> f = RatFun(1, one_minus_t)
>>> series_expand(f, "t", 3).coefficient_values()
[1, 1, 1, 1]
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import ValidationError

VARIABLES = ("t", "q", "x", "u", "v")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}


def _cnorm(c):
    # keep integral coefficients as ints: int arithmetic is much faster
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    return c


def _as_coeff(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _cnorm(c)
    if isinstance(c, str):
        return _cnorm(Fraction(c))
    # floats stay out on purpose: the whole point is exactness
    raise TypeError("coefficients must be int, Fraction or 'p/q' string, got %r" % type(c))


def _check_var(name):
    if name not in _VAR_INDEX:
        raise ValidationError("unknown variable %r; allowed: %s" % (name, ", ".join(VARIABLES)))
    return name


class Poly:
    """Sparse exact polynomial in a subset of the variables t, q, x, u, v."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None, *, _trusted=False):
        if _trusted:
            self.vars = vars
            self.terms = terms if terms is not None else {}
            return
        vars = tuple(vars)
        for name in vars:
            _check_var(name)
        if list(vars) != sorted(vars, key=_VAR_INDEX.__getitem__) or len(set(vars)) != len(vars):
            raise ValidationError("variables must be distinct and in canonical order %s" % (VARIABLES,))
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars):
                raise ValidationError("exponent length does not match variable list")
            if any(e < 0 for e in exp):
                raise ValidationError("negative exponent in polynomial")
            c = _as_coeff(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        clean = {e: _cnorm(c) for e, c in clean.items() if c}
        self.vars, self.terms = _strip_vars(vars, clean)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return Poly((), {}, _trusted=True)

    @staticmethod
    def one():
        return Poly.const(1)

    @staticmethod
    def const(c):
        c = _as_coeff(c)
        if not c:
            return Poly.zero()
        return Poly((), {(): c}, _trusted=True)

    @staticmethod
    def var(name):
        _check_var(name)
        return Poly((name,), {(1,): 1}, _trusted=True)

    @staticmethod
    def univariate(name, coeffs):
        """Build a polynomial in one variable from an ascending coefficient list."""
        _check_var(name)
        terms = {}
        for k, c in enumerate(coeffs):
            c = _as_coeff(c)
            if c:
                terms[(k,)] = c
        if not terms:
            return Poly.zero()
        vars, terms = _strip_vars((name,), terms)
        return Poly(vars, terms, _trusted=True)

    @staticmethod
    def _coerce(value):
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly.const(value)
        return NotImplemented

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_const(self):
        return not self.vars

    def const_value(self):
        if self.vars:
            raise ValidationError("polynomial is not constant: %s" % self)
        if not self.terms:
            return Fraction(0)
        return Fraction(self.terms[()])

    def degree(self, name=None):
        """Total degree, or degree in one variable (zero polynomial: -1)."""
        if self.is_zero:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def coefficient(self, name, k):
        """Coefficient of ``name**k`` as a Poly in the remaining variables."""
        _check_var(name)
        if name not in self.vars:
            return self if k == 0 else Poly.zero()
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        terms = {}
        for e, c in self.terms.items():
            if e[i] == k:
                terms[e[:i] + e[i + 1:]] = c
        if not terms:
            return Poly.zero()
        rest, terms = _strip_vars(rest, terms)
        return Poly(rest, terms, _trusted=True)

    def dense_coeffs(self, name, upto=None):
        """Ascending coefficient list in ``name``; coefficients are Polys."""
        d = self.degree(name)
        top = d if upto is None else max(d, upto)
        return [self.coefficient(name, k) for k in range(top + 1)]

    def scalar_coeffs(self, name, upto=None):
        """Ascending list of scalar coefficients; requires univariate/const."""
        if any(v != name for v in self.vars):
            raise ValidationError("polynomial is not univariate in %s: %s" % (name, self))
        d = self.degree(name)
        top = d if upto is None else max(d, upto)
        out = [0] * (top + 1)
        if self.is_const:
            if self.terms:
                out[0] = self.terms[()]
            return out
        for e, c in self.terms.items():
            out[e[0]] = c
        return out

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __bool__(self):
        return not self.is_zero

    # -- arithmetic ----------------------------------------------------

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        vars, ta, tb = _align(self, other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _cnorm(s)
            else:
                out.pop(e, None)
        vars, out = _strip_vars(vars, out)
        return Poly(vars, out, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero()
        if self.is_const:
            c = self.terms[()]
            return Poly(other.vars, {e: _cnorm(c * v) for e, v in other.terms.items()}, _trusted=True)
        if other.is_const:
            c = other.terms[()]
            return Poly(self.vars, {e: _cnorm(c * v) for e, v in self.terms.items()}, _trusted=True)
        if self.vars == other.vars and len(self.vars) == 1:
            return _mul_dense_univar(self, other)
        vars, ta, tb = _align(self, other)
        out = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        out = {e: _cnorm(c) for e, c in out.items()}
        vars, out = _strip_vars(vars, out)
        return Poly(vars, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValidationError("Poly exponent must be a non-negative integer")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def substitute(self, bindings):
        """Substitute polynomials (or scalars) for variables; returns a Poly."""
        bound = {}
        for name, value in bindings.items():
            _check_var(name)
            value = Poly._coerce(value)
            if value is NotImplemented:
                raise ValidationError("binding for %s is not a polynomial" % name)
            bound[name] = value
        if not any(v in bound for v in self.vars):
            return self
        result = Poly.zero()
        powers = {name: {0: Poly.one()} for name in self.vars}

        def _power(name, k):
            cache = powers[name]
            if k not in cache:
                base = bound.get(name, Poly.var(name))
                best = max(i for i in cache if i <= k)
                acc = cache[best]
                for i in range(best, k):
                    acc = acc * base
                    cache[i + 1] = acc
            return cache[k]

        for e, c in self.terms.items():
            term = Poly.const(c)
            for name, k in zip(self.vars, e):
                if k:
                    term = term * _power(name, k)
            result = result + term
        return result

    def evaluate(self, bindings):
        """Evaluate with every variable bound to a rational; returns Fraction."""
        value = self.substitute({k: Poly.const(v) for k, v in bindings.items()})
        return value.const_value()

    # -- normal-form helpers --------------------------------------------

    def leading_term(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        if self.is_zero:
            raise ValidationError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def signed_content(self):
        """Rational r with the sign of the leading coefficient such that
        self / r has coprime integer coefficients and positive leading one."""
        if self.is_zero:
            raise ValidationError("zero polynomial has no content")
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            f = Fraction(c)
            num_gcd = _int_gcd(num_gcd, abs(f.numerator))
            den_lcm = den_lcm * f.denominator // _int_gcd(den_lcm, f.denominator)
        r = Fraction(num_gcd, den_lcm)
        _, lead = self.leading_term()
        if lead < 0:
            r = -r
        return r

    def scaled(self, factor):
        factor = Fraction(factor)
        if factor == 0:
            return Poly.zero()
        return Poly(self.vars, {e: _cnorm(c * factor) for e, c in self.terms.items()}, _trusted=True)

    # -- display ---------------------------------------------------------

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append("%s^%d" % (name, k))
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append("%s*%s" % (c, body))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return "Poly(%s)" % self


def _strip_vars(vars, terms):
    """Drop variables whose exponent is zero in every term."""
    if not vars or not terms:
        return ((), dict(terms)) if terms else ((), {})
    used = [False] * len(vars)
    for e in terms:
        for i, k in enumerate(e):
            if k:
                used[i] = True
    if all(used):
        return vars, terms
    keep = [i for i, u in enumerate(used) if u]
    new_vars = tuple(vars[i] for i in keep)
    new_terms = {}
    for e, c in terms.items():
        new_terms[tuple(e[i] for i in keep)] = c
    return new_vars, new_terms


def _align(a, b):
    """Common variable tuple plus both term dicts re-indexed onto it."""
    if a.vars == b.vars:
        return a.vars, a.terms, b.terms
    union = tuple(sorted(set(a.vars) | set(b.vars), key=_VAR_INDEX.__getitem__))

    def remap(p):
        idx = [union.index(v) for v in p.vars]
        out = {}
        n = len(union)
        for e, c in p.terms.items():
            new = [0] * n
            for pos, k in zip(idx, e):
                new[pos] = k
            out[tuple(new)] = c
        return out

    return union, remap(a), remap(b)


def _mul_dense_univar(a, b):
    name = a.vars[0]
    ca = a.scalar_coeffs(name)
    cb = b.scalar_coeffs(name)
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if not x:
            continue
        for j, y in enumerate(cb):
            if y:
                out[i + j] += x * y
    return Poly.univariate(name, [_cnorm(c) for c in out])


# ---------------------------------------------------------------------------
# gcd and exact division
# ---------------------------------------------------------------------------


def _dense_int_coeffs(p, name):
    """Clear denominators of a univariate Poly; returns primitive int list."""
    coeffs = p.scalar_coeffs(name)
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // _int_gcd(den, c.denominator)
    out = [int(c * den) for c in coeffs]
    g = 0
    for c in out:
        g = _int_gcd(g, abs(c))
    if g > 1:
        out = [c // g for c in out]
    return out


def _int_prem(a, b):
    """Pseudo-remainder of integer coefficient lists (ascending)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j in range(db + 1):
            a[shift + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def _int_primitive(a):
    g = 0
    for c in a:
        g = _int_gcd(g, abs(c))
    if g > 1:
        a = [c // g for c in a]
    return a


def _gcd_univar(a, b, name):
    A = _dense_int_coeffs(a, name)
    B = _dense_int_coeffs(b, name)
    if len(A) < len(B):
        A, B = B, A
    while any(B):
        R = _int_primitive(_int_prem(A, B))
        A, B = B, R
    if A and A[-1] < 0:
        A = [-c for c in A]
    return Poly.univariate(name, A)


def poly_gcd(a, b):
    """Greatest common divisor, primitive with positive leading coefficient."""
    if a.is_zero and b.is_zero:
        return Poly.zero()
    if a.is_zero:
        return b.scaled(1 / b.signed_content())
    if b.is_zero:
        return a.scaled(1 / a.signed_content())
    if a.is_const or b.is_const:
        return Poly.one()
    union = tuple(sorted(set(a.vars) | set(b.vars), key=_VAR_INDEX.__getitem__))
    if len(union) == 1:
        return _gcd_univar(a, b, union[0])
    heuristic = _gcd_eval_heuristic(a, b, union)
    if heuristic is not None:
        return heuristic
    return _gcd_prs(a, b, union)


def _gcd_prs(a, b, union):
    main = union[-1]
    ca, pa = _content_pp(a, main)
    cb, pb = _content_pp(b, main)
    cg = poly_gcd(ca, cb)
    f, g = pa, pb
    if f.degree(main) < g.degree(main):
        f, g = g, f
    while not g.is_zero:
        r = _pseudo_rem(f, g, main)
        if not r.is_zero:
            r = _content_pp(r, main)[1]
        f, g = g, r
    result = cg * f
    return result.scaled(1 / result.signed_content())


def _integerize(p):
    """Scale to coprime integer coefficients with positive lex leading one."""
    return p.scaled(1 / p.signed_content())


def _eval_var_int(p, name, xi):
    """Substitute an integer for one variable; exact, by digit accumulation."""
    if name not in p.vars:
        return p
    i = p.vars.index(name)
    rest = p.vars[:i] + p.vars[i + 1:]
    terms = {}
    for e, c in p.terms.items():
        key = e[:i] + e[i + 1:]
        terms[key] = terms.get(key, 0) + c * xi ** e[i]
    terms = {e: c for e, c in terms.items() if c}
    vars, terms = _strip_vars(rest, terms)
    return Poly(vars, terms, _trusted=True)


def _balanced_digits(value, xi):
    """value = sum digits[i] * xi^i with digits in (-xi/2, xi/2]."""
    digits = []
    half = xi // 2
    while value:
        d = value % xi
        if d > half:
            d -= xi
        digits.append(d)
        value = (value - d) // xi
    return digits


def _gcd_eval_heuristic(a, b, union, attempts=3):
    """Evaluation/reconstruction gcd, sound because it is verified.

    Evaluating the last variable at a large integer xi reduces to a gcd with
    one variable fewer; balanced base-xi digits rebuild a candidate.  Factors
    involving only the evaluated variable survive as integer content, so the
    content gcd's digits are reconstructed too.  A candidate counts only if
    it divides both inputs (so it divides the true gcd) and the cofactors
    share no factor purely in the evaluated variable (the one blind spot of
    a single evaluation); the evaluated degrees rule everything else out.
    Failures retry with a larger xi and then fall back to the remainder
    sequence.
    """
    a = _integerize(a)
    b = _integerize(b)
    name = union[-1]
    bound = 1
    for p in (a, b):
        for c in p.terms.values():
            bound = max(bound, abs(c))
    xi = 2 * int(bound) + 29
    for _ in range(attempts):
        ga = _eval_var_int(a, name, xi)
        gb = _eval_var_int(b, name, xi)
        if ga.is_zero or gb.is_zero:
            xi = xi * 3 + 1
            continue
        content = _int_gcd(_int_content(ga), _int_content(gb))
        gamma = poly_gcd(ga, gb).scaled(content)
        candidate = _reconstruct_from_digits(gamma, name, xi)
        if candidate is not None and not candidate.is_zero:
            candidate = _integerize(candidate)
            try:
                cofactor_a = poly_divexact(a, candidate)
                cofactor_b = poly_divexact(b, candidate)
            except ValidationError:
                pass
            else:
                leftover = poly_gcd(_content_in_var(cofactor_a, name),
                                    _content_in_var(cofactor_b, name))
                if leftover.is_const:
                    return candidate
        xi = xi * 3 + 1
    return None


def _int_content(p):
    g = 0
    for c in p.terms.values():
        g = _int_gcd(g, abs(c))
    return g or 1


def _content_in_var(p, name):
    """gcd of the coefficient polynomials of ``name`` grouped by the other
    variables; a nonconstant result is the largest pure-``name`` factor."""
    if name not in p.vars or p.is_zero:
        return Poly.one()
    i = p.vars.index(name)
    buckets = {}
    for e, c in p.terms.items():
        key = e[:i] + e[i + 1:]
        buckets.setdefault(key, {})[(e[i],)] = c
    content = Poly.zero()
    for coeffs in buckets.values():
        vars, terms = _strip_vars((name,), coeffs)
        content = poly_gcd(content, Poly(vars, terms, _trusted=True))
        if content.is_const:
            return Poly.one()
    return content


def _reconstruct_from_digits(gamma, name, xi):
    out = Poly.zero()
    v = Poly.var(name)
    for e, c in gamma.terms.items():
        if not isinstance(c, int):
            return None
        mono_vars, mono_terms = _strip_vars(gamma.vars, {e: 1})
        mono = Poly(mono_vars, mono_terms, _trusted=True)
        for k, digit in enumerate(_balanced_digits(c, xi)):
            if digit:
                out = out + digit * mono * v ** k
    return out


def _content_pp(p, main):
    """Content (gcd of coefficients w.r.t. ``main``) and primitive part."""
    coeffs = [c for c in p.dense_coeffs(main) if not c.is_zero]
    content = coeffs[0]
    for c in coeffs[1:]:
        content = poly_gcd(content, c)
        if content.is_const:
            break
    if content.is_const:
        content = Poly.one()
        return content, p
    return content, poly_divexact(p, content)


def _pseudo_rem(f, g, main):
    lg = g.coefficient(main, g.degree(main))
    dg = g.degree(main)
    r = f
    v = Poly.var(main)
    while not r.is_zero and r.degree(main) >= dg:
        dr = r.degree(main)
        lr = r.coefficient(main, dr)
        r = lg * r - lr * v ** (dr - dg) * g
    return r


def poly_divexact(a, b):
    """Exact polynomial division; raises if the division leaves a remainder."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero:
        return Poly.zero()
    if b.is_const:
        return a.scaled(Fraction(1) / Fraction(b.terms[()]))
    union = tuple(sorted(set(a.vars) | set(b.vars), key=_VAR_INDEX.__getitem__))
    main = union[-1]
    db = b.degree(main)
    lb = b.coefficient(main, db)
    v = Poly.var(main)
    quot = Poly.zero()
    r = a
    while not r.is_zero and r.degree(main) >= db:
        dr = r.degree(main)
        lr = r.coefficient(main, dr)
        if lb.is_const:
            qc = lr.scaled(Fraction(1) / Fraction(lb.terms[()]))
        else:
            qc = poly_divexact(lr, lb)
        step = qc * v ** (dr - db)
        quot = quot + step
        r = r - step * b
        if not r.is_zero and r.degree(main) == dr:
            raise ValidationError("non-exact polynomial division")
    if not r.is_zero:
        raise ValidationError("non-exact polynomial division")
    return quot


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RatFun:
    """Quotient of polynomials in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _reduced=False):
        num = Poly._coerce(num)
        den = Poly._coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise ValidationError("RatFun expects polynomials or rationals")
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero():
        return RatFun(Poly.zero(), Poly.one(), _reduced=True)

    @staticmethod
    def one():
        return RatFun(Poly.one(), Poly.one(), _reduced=True)

    @staticmethod
    def var(name):
        return RatFun(Poly.var(name), Poly.one(), _reduced=True)

    @staticmethod
    def _coerce(value):
        if isinstance(value, RatFun):
            return value
        p = Poly._coerce(value)
        if p is NotImplemented:
            return NotImplemented
        return RatFun(p, Poly.one())

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_poly(self):
        return self.den == Poly.one()

    def as_poly(self):
        if not self.is_poly:
            raise ValidationError("rational function is not a polynomial: %s" % self)
        return self.num

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        g = poly_gcd(self.den, other.den)
        if g.is_const:
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            return RatFun(num, den)
        # Fraction-style addition: keep gcd inputs small
        da = poly_divexact(self.den, g)
        db = poly_divexact(other.den, g)
        num = self.num * db + other.num * da
        h = poly_gcd(num, g)
        if not h.is_const:
            num = poly_divexact(num, h)
            g = poly_divexact(g, h)
        den = da * db * g
        num, den = _unit_normalize(num, den)
        return RatFun(num, den, _reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RatFun.zero()
        # cross-cancel first so the final product needs no gcd
        na, db = _cancel(self.num, other.den)
        nb, da = _cancel(other.num, self.den)
        num = na * nb
        den = da * db
        num, den = _unit_normalize(num, den)
        return RatFun(num, den, _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFun(other.den, other.num)

    def __rtruediv__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValidationError("RatFun exponent must be an integer")
        if n == 0:
            return RatFun.one()
        base = self
        if n < 0:
            if base.is_zero:
                raise ZeroDivisionError("negative power of zero")
            base = RatFun(base.den, base.num)
            n = -n
        num, den = _unit_normalize(base.num ** n, base.den ** n)
        return RatFun(num, den, _reduced=True)

    def substitute(self, bindings):
        """Compose with rational-function (or polynomial) bindings."""
        coerced = {}
        all_poly = True
        for name, value in bindings.items():
            _check_var(name)
            value = RatFun._coerce(value)
            if value is NotImplemented:
                raise ValidationError("binding for %s is not rational" % name)
            coerced[name] = value
            all_poly = all_poly and value.is_poly
        if all_poly:
            poly_bindings = {k: v.num for k, v in coerced.items()}
            num = self.num.substitute(poly_bindings)
            den = self.den.substitute(poly_bindings)
        else:
            num_rf = _poly_subs_ratfun(self.num, coerced)
            den_rf = _poly_subs_ratfun(self.den, coerced)
            num = num_rf.num * den_rf.den
            den = num_rf.den * den_rf.num
        if den.is_zero:
            raise ZeroDivisionError("denominator vanishes identically after substitution")
        return RatFun(num, den)

    def __str__(self):
        if self.is_poly:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFun(%s)" % self


def _reduce(num, den):
    if num.is_zero:
        return Poly.zero(), Poly.one()
    g = poly_gcd(num, den)
    if not g.is_const:
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    return _unit_normalize(num, den)


def _unit_normalize(num, den):
    r = den.signed_content()
    if r != 1:
        den = den.scaled(1 / r)
        num = num.scaled(1 / r)
    return num, den


def _cancel(a, b):
    """Divide out gcd(a, b); returns the reduced pair."""
    g = poly_gcd(a, b)
    if g.is_const:
        return a, b
    return poly_divexact(a, g), poly_divexact(b, g)


def _poly_subs_ratfun(p, bindings):
    result = RatFun.zero()
    powers = {name: {0: RatFun.one()} for name in p.vars}

    def _power(name, k):
        cache = powers[name]
        if k not in cache:
            base = bindings.get(name, RatFun.var(name))
            best = max(i for i in cache if i <= k)
            acc = cache[best]
            for i in range(best, k):
                acc = acc * base
                cache[i + 1] = acc
        return cache[k]

    for e, c in p.terms.items():
        term = RatFun._coerce(c)
        for name, k in zip(p.vars, e):
            if k:
                term = term * _power(name, k)
        result = result + term
    return result


def substitute(f, bindings):
    """Module-level alias for :meth:`RatFun.substitute`."""
    return RatFun._coerce(f).substitute(bindings)


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------


class Series:
    """Truncated power series; coefficients are Polys in the other variables."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs):
        _check_var(var)
        clean = []
        for c in coeffs:
            c = Poly._coerce(c)
            if c is NotImplemented:
                raise ValidationError("series coefficients must be polynomials")
            if var in c.vars:
                raise ValidationError("series coefficient contains the series variable")
            clean.append(c)
        if not clean:
            raise ValidationError("series needs at least the constant coefficient")
        self.var = var
        self.coeffs = clean

    @property
    def order(self):
        return len(self.coeffs) - 1

    @staticmethod
    def zero(var, order):
        return Series(var, [Poly.zero()] * (order + 1))

    @staticmethod
    def one(var, order):
        return Series(var, [Poly.one()] + [Poly.zero()] * order)

    def coefficient_values(self):
        """Coefficients as ints/Fractions; requires scalar coefficients."""
        return [_cnorm(c.const_value()) for c in self.coeffs]

    def truncate(self, order):
        if order >= self.order:
            return self
        return Series(self.var, self.coeffs[: order + 1])

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, tuple(self.coeffs)))

    def _common(self, other):
        if not isinstance(other, Series):
            other = Series(self.var, [Poly._coerce(other)] + [Poly.zero()] * self.order)
        if other.var != self.var:
            raise ValidationError("series variables differ")
        n = min(self.order, other.order)
        return other, n

    def __add__(self, other):
        other, n = self._common(other)
        return Series(self.var, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return Series(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        other, n = self._common(other)
        return Series(self.var, [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            p = Poly._coerce(other)
            return Series(self.var, [c * p for c in self.coeffs])
        other, n = self._common(other)
        out = [Poly.zero()] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a.is_zero:
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return Series(self.var, out)

    __rmul__ = __mul__

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                parts.append("(%s)*%s^%d" % (c, self.var, k))
        body = " + ".join(parts) if parts else "0"
        return "%s + O(%s^%d)" % (body, self.var, self.order + 1)


def series_expand(f, var, order):
    """Expand a rational function as a power series around 0 in ``var``."""
    f = RatFun._coerce(f)
    _check_var(var)
    if order < 0:
        raise ValidationError("series order must be non-negative")
    den0 = f.den.coefficient(var, 0)
    if den0.is_zero:
        raise ValidationError("pole at 0 in the expansion variable %s" % var)
    if not den0.is_const:
        raise ValidationError(
            "denominator constant term in %s must be a scalar for polynomial "
            "series coefficients" % var)
    d0 = den0.const_value()
    num = f.num.dense_coeffs(var, upto=order)
    den = f.den.dense_coeffs(var, upto=order)
    inv = Fraction(1) / d0
    out = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else Poly.zero()
        for k in range(1, min(n, len(den) - 1) + 1):
            if not den[k].is_zero and not out[n - k].is_zero:
                acc = acc - den[k] * out[n - k]
        out.append(acc.scaled(inv) if inv != 1 else acc)
    return Series(var, out)


def is_palindrome(p, top_degree):
    """True iff coefficient(k) == coefficient(top_degree - k) for all k."""
    if not isinstance(p, Poly):
        raise ValidationError("is_palindrome expects a Poly")
    if any(v != "t" for v in p.vars):
        raise ValidationError("palindrome check requires a univariate polynomial in t")
    if p.degree("t") > top_degree:
        raise ValidationError("degree exceeds the stated top degree")
    coeffs = p.scalar_coeffs("t", upto=top_degree)
    return all(coeffs[k] == coeffs[top_degree - k] for k in range(top_degree + 1))


# ---------------------------------------------------------------------------
# JSON forms ("p/q" strings, univariate coefficient lists)
# ---------------------------------------------------------------------------


def fraction_to_str(c):
    return str(Fraction(c))


def fraction_from_str(s):
    return _cnorm(Fraction(s))


def poly_to_json(p):
    """Univariate polynomials use the coefficient-list form; multivariate
    ones fall back to a sorted exponent/coefficient term list."""
    if not isinstance(p, Poly):
        raise ValidationError("poly_to_json expects a Poly")
    if len(p.vars) > 1:
        return {"vars": list(p.vars),
                "terms": [[list(e), fraction_to_str(c)]
                          for e, c in sorted(p.terms.items())]}
    var = p.vars[0] if p.vars else None
    coeffs = p.scalar_coeffs(var) if var else ([p.const_value()] if not p.is_zero else [0])
    return {"var": var, "coeffs": [fraction_to_str(c) for c in coeffs]}


def poly_from_json(obj):
    if "vars" in obj:
        vars = tuple(obj["vars"])
        terms = {tuple(e): fraction_from_str(c) for e, c in obj["terms"]}
        return Poly(vars, terms)
    var = obj["var"]
    coeffs = [fraction_from_str(c) for c in obj["coeffs"]]
    if var is None:
        if len(coeffs) > 1:
            raise ValidationError("constant polynomial with several coefficients")
        return Poly.const(coeffs[0]) if coeffs else Poly.zero()
    return Poly.univariate(var, coeffs)


def ratfun_to_json(f):
    f = RatFun._coerce(f)
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfun_from_json(obj):
    return RatFun(poly_from_json(obj["num"]), poly_from_json(obj["den"]))
