"""Ordered valued field backends with exact arithmetic.

Three backends share one element protocol:

``RationalField``
    Exact rationals with the usual (Archimedean) absolute value.  The
    log-absolute-value is a double, so exact-equality arguments are
    reserved for the two non-Archimedean backends.

``RationalFunctionField``
    Rational functions in one variable ``t`` over the rationals.  The
    order makes ``t`` larger than every rational, and ``log|p/q|`` is
    ``deg p - deg q``, so the value group is the integers and the
    absolute value is ultrametric.

``PuiseuxField``
    Truncated Puiseux series in ``t`` with rational exponents and
    rational coefficients.  Here ``t`` is a positive infinitesimal:
    the sign of an element is the sign of its lowest-order coefficient
    and ``log|x|`` is minus the lowest exponent, so the value group is
    the (dense) rationals.

Puiseux elements carry a precision budget ``tau``: the element is known
modulo terms of exponent >= tau, and every arithmetic result records the
tightest budget that the inputs support.  A result whose leading term is
undetermined (everything cancelled below the budget) is kept as a
truncated zero, but any operation that *needs* the leading term -- sign,
comparison, log-absolute-value, inversion, square root -- raises
:class:`~valhilb.errors.PrecisionExhausted` instead of silently treating
it as zero.  The error is retryable with a larger budget.

All elements are immutable values and every operation is pure, so they
are safe to share across concurrent workers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from .errors import (
    DivisionByZero,
    FieldParseError,
    MixedBackends,
    NegativeInput,
    NotRepresentable,
    PrecisionExhausted,
)

INF = math.inf

LT, EQ, GT = -1, 0, 1


@total_ordering
class LogAbs:
    """An element of the value group, or minus infinity for |0|.

    ``value`` is an exact :class:`~fractions.Fraction` for the
    non-Archimedean backends and a double for the rational backend.
    """

    __slots__ = ("value", "neg_inf")

    def __init__(self, value, neg_inf: bool = False):
        self.value = value
        self.neg_inf = neg_inf

    @classmethod
    def minus_infinity(cls) -> "LogAbs":
        return cls(None, neg_inf=True)

    def is_finite(self) -> bool:
        return not self.neg_inf

    def __eq__(self, other):
        if not isinstance(other, LogAbs):
            return NotImplemented
        if self.neg_inf or other.neg_inf:
            return self.neg_inf and other.neg_inf
        return self.value == other.value

    def __lt__(self, other):
        if not isinstance(other, LogAbs):
            return NotImplemented
        if self.neg_inf:
            return not other.neg_inf
        if other.neg_inf:
            return False
        return self.value < other.value

    def __add__(self, other):
        if not isinstance(other, LogAbs):
            return NotImplemented
        if self.neg_inf or other.neg_inf:
            return LogAbs.minus_infinity()
        return LogAbs(self.value + other.value)

    def __hash__(self):
        return hash(("-inf",)) if self.neg_inf else hash(self.value)

    def __repr__(self):
        return "LogAbs(-inf)" if self.neg_inf else f"LogAbs({self.value})"


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, ascending coefficient tuples
# ---------------------------------------------------------------------------

_PZERO: tuple = ()


def _ptrim(cs: list) -> tuple:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _pdeg(p: tuple) -> int:
    # degree of the zero polynomial is represented by -1
    return len(p) - 1


def _padd(p: tuple, q: tuple) -> tuple:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _ptrim(out)


def _pneg(p: tuple) -> tuple:
    return tuple(-c for c in p)


def _pmul(p: tuple, q: tuple) -> tuple:
    if not p or not q:
        return _PZERO
    if len(p) == 1:
        c = p[0]
        return tuple(c * x for x in q)
    if len(q) == 1:
        c = q[0]
        return tuple(c * x for x in p)
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _ptrim(out)


def _pdivmod(p: tuple, q: tuple) -> tuple:
    if not q:
        raise DivisionByZero("polynomial division by zero")
    rem = list(p)
    dq = _pdeg(q)
    lq = q[-1]
    quo = [Fraction(0)] * max(0, len(p) - dq)
    while len(rem) - 1 >= dq and rem:
        c = rem[-1] / lq
        k = len(rem) - 1 - dq
        quo[k] = c
        for i in range(dq + 1):
            rem[k + i] -= c * q[i]
        while rem and rem[-1] == 0:
            rem.pop()
    return _ptrim(quo), _ptrim(rem)


def _pgcd(p: tuple, q: tuple) -> tuple:
    # monic gcd; remainders are re-normalized monic at every step, which
    # keeps the Fraction coefficients from blowing up along the way
    while q:
        p, q = q, _pdivmod(p, q)[1]
        if q and q[-1] != 1:
            lc = q[-1]
            q = tuple(c / lc for c in q)
    if p and p[-1] != 1:
        lc = p[-1]
        p = tuple(c / lc for c in p)
    return p


# ---------------------------------------------------------------------------
# element protocol
# ---------------------------------------------------------------------------


class _ElementBase:
    """Arithmetic plumbing shared by all backends."""

    __slots__ = ("field",)

    def _coerce(self, other):
        if isinstance(other, _ElementBase):
            # same backend *kind* is enough: Puiseux fields differing only
            # in their default budget operate on the same elements
            if type(other.field) is not type(self.field):
                raise MixedBackends(
                    f"cannot mix {self.field.name} and {other.field.name} elements"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field._add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field._add(self, self.field._neg(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field._add(o, self.field._neg(self))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field._mul(self, self.field.invert(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.field._mul(o, self.field.invert(self))

    def __neg__(self):
        return self.field._neg(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.field.invert(self) ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # ordered-field comparisons, via exact sign of the difference
    def compare(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError("cannot compare with this type")
        return self.field.compare(self, o)

    def __lt__(self, other):
        return self.compare(other) == LT

    def __le__(self, other):
        return self.compare(other) != GT

    def __gt__(self, other):
        return self.compare(other) == GT

    def __ge__(self, other):
        return self.compare(other) != LT

    def sign(self) -> int:
        return self.field.sign(self)

    def log_abs(self) -> LogAbs:
        return self.field.log_abs(self)

    def abs_cmp(self, other) -> int:
        """Exact comparison of |self| and |other| (-1, 0 or 1)."""
        o = self._coerce(other)
        if o is None:
            raise TypeError("cannot compare with this type")
        return self.field.abs_cmp(self, o)

    def is_zero(self) -> bool:
        return self.field.is_zero(self)


class RationalElem(_ElementBase):
    __slots__ = ("value",)

    def __init__(self, field, value: Fraction):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("field elements are immutable")

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.value == o.value

    def __hash__(self):
        return hash(("rat", self.value))

    def __repr__(self):
        return f"Q({self.value})"

    def __str__(self):
        return str(self.value)

    def __float__(self):
        return float(self.value)


class RatFuncElem(_ElementBase):
    """p(t)/q(t) in canonical form: gcd-reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, field, num: tuple, den: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("field elements are immutable")

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("ratfunc", self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)

    def as_fraction(self) -> Fraction | None:
        """The rational value if the element is constant, else None."""
        if _pdeg(self.num) <= 0 and _pdeg(self.den) == 0:
            c = self.num[0] if self.num else Fraction(0)
            return c / self.den[0]
        return None


class PuiseuxElem(_ElementBase):
    """Finitely many (exponent, coefficient) terms, known modulo t**tau.

    Terms are sorted by strictly increasing exponent, coefficients are
    nonzero and every stored exponent is below the budget.  ``tau`` is a
    Fraction, or ``math.inf`` for exactly-known elements.
    """

    __slots__ = ("terms", "tau")

    def __init__(self, field, terms: tuple, tau):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "tau", tau)

    def __setattr__(self, *a):
        raise AttributeError("field elements are immutable")

    def __eq__(self, other):
        # representation equality; use compare() for precision-aware order
        o = self._coerce(other)
        return NotImplemented if o is None else self.terms == o.terms

    def __hash__(self):
        return hash(("puiseux", self.terms))

    def __repr__(self):
        return f"Puiseux({self}; tau={self.tau})"

    def __str__(self):
        return format_puiseux(self)

    def is_exact(self) -> bool:
        return self.tau == INF

    def leading(self) -> tuple:
        """(exponent, coefficient) of the lowest-order term."""
        if not self.terms:
            raise PrecisionExhausted(self.tau) if self.tau != INF else DivisionByZero(
                "exact zero has no leading term"
            )
        return self.terms[0]

    def as_fraction(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0) if self.tau == INF else None
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return self.terms[0][1]
        return None

    def _bound(self):
        # exponent e with self = O(t**e); for a truncated zero this is tau
        return self.terms[0][0] if self.terms else self.tau


# ---------------------------------------------------------------------------
# truncated-series kernels (term tuples, relative precision in exponent units)
# ---------------------------------------------------------------------------


def _ser_add(a: tuple, b: tuple, cap) -> tuple:
    acc = {}
    for e, c in a:
        if e < cap:
            acc[e] = acc.get(e, Fraction(0)) + c
    for e, c in b:
        if e < cap:
            acc[e] = acc.get(e, Fraction(0)) + c
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def _ser_mul(a: tuple, b: tuple, cap) -> tuple:
    acc = {}
    for e1, c1 in a:
        for e2, c2 in b:
            e = e1 + e2
            if e < cap:
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
            else:
                break  # b sorted ascending, later terms only larger
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def _ser_scale(a: tuple, c: Fraction, de) -> tuple:
    return tuple((e + de, co * c) for e, co in a)


def _ser_inverse_one_plus(u: tuple, rel) -> tuple:
    """(1 + u)**-1 modulo t**rel, u with strictly positive exponents."""
    one = ((Fraction(0), Fraction(1)),)
    if not u:
        return one
    f = _ser_add(one, u, rel)
    eps = u[0][0]
    two = ((Fraction(0), Fraction(2)),)
    g = one
    prec = eps
    while True:
        cap = min(2 * prec, rel)
        fg = _ser_mul(f, g, cap)
        g = _ser_mul(g, _ser_add(two, _pneg_terms(fg), cap), cap)  # g*(2 - f*g)
        prec = cap
        if prec >= rel:
            return g


def _pneg_terms(a: tuple) -> tuple:
    return tuple((e, -c) for e, c in a)


def _ser_sqrt_one_plus(u: tuple, rel) -> tuple:
    """(1 + u)**(1/2) modulo t**rel via the inverse-square-root iteration."""
    one = ((Fraction(0), Fraction(1)),)
    if not u:
        return one
    f = _ser_add(one, u, rel)
    eps = u[0][0]
    w = one  # w -> f**(-1/2)
    prec = eps
    half = Fraction(1, 2)
    three_half = Fraction(3, 2)
    while True:
        cap = min(2 * prec, rel)
        w2 = _ser_mul(w, w, cap)
        fw2 = _ser_mul(f, w2, cap)
        corr = _ser_add(_ser_scale(one, three_half, 0), _ser_scale(fw2, -half, 0), cap)
        w = _ser_mul(w, corr, cap)
        prec = cap
        if prec >= rel:
            return _ser_mul(f, w, rel)  # sqrt(f) = f * f**(-1/2)


def _fraction_sqrt(c: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# field backends
# ---------------------------------------------------------------------------


class _FieldBase:
    name = "?"
    value_group = "?"
    archimedean = False

    def zero(self):
        return self.from_fraction(Fraction(0))

    def one(self):
        return self.from_fraction(Fraction(1))

    def from_int(self, n: int):
        return self.from_fraction(Fraction(n))

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def __repr__(self):
        return f"<{type(self).__name__}>"


class RationalField(_FieldBase):
    """Exact rationals with the Archimedean absolute value."""

    name = "rational"
    value_group = "R"
    archimedean = True

    def from_fraction(self, fr: Fraction) -> RationalElem:
        return RationalElem(self, fr)

    def _add(self, x, y):
        return RationalElem(self, x.value + y.value)

    def _neg(self, x):
        return RationalElem(self, -x.value)

    def _mul(self, x, y):
        return RationalElem(self, x.value * y.value)

    def invert(self, x):
        if x.value == 0:
            raise DivisionByZero("invert(0)")
        return RationalElem(self, 1 / x.value)

    def compare(self, x, y) -> int:
        if x.value == y.value:
            return EQ
        return LT if x.value < y.value else GT

    def sign(self, x) -> int:
        v = x.value
        return 0 if v == 0 else (1 if v > 0 else -1)

    def log_abs(self, x) -> LogAbs:
        if x.value == 0:
            return LogAbs.minus_infinity()
        return LogAbs(math.log(abs(float(x.value))))

    def abs_cmp(self, x, y) -> int:
        ax, ay = abs(x.value), abs(y.value)
        if ax == ay:
            return 0
        return -1 if ax < ay else 1

    def is_zero(self, x) -> bool:
        return x.value == 0

    def parse(self, text: str):
        return parse_element(self, text)


class RationalFunctionField(_FieldBase):
    """Q(t) with t infinitely large and log|p/q| = deg p - deg q."""

    name = "ratfunc"
    value_group = "Z"
    archimedean = False

    def from_fraction(self, fr: Fraction) -> RatFuncElem:
        num = (fr,) if fr else _PZERO
        return RatFuncElem(self, num, (Fraction(1),))

    def t(self) -> RatFuncElem:
        return RatFuncElem(self, (Fraction(0), Fraction(1)), (Fraction(1),))

    def from_polys(self, num: tuple, den: tuple) -> RatFuncElem:
        num = _ptrim([Fraction(c) for c in num])
        den = _ptrim([Fraction(c) for c in den])
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return RatFuncElem(self, _PZERO, (Fraction(1),))
        if _pdeg(num) > 0 and _pdeg(den) > 0:
            g = _pgcd(num, den)
            if _pdeg(g) > 0:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        lc = den[-1]
        if lc != 1:
            num = tuple(c / lc for c in num)
            den = tuple(c / lc for c in den)
        return RatFuncElem(self, num, den)

    def _add(self, x, y):
        num = _padd(_pmul(x.num, y.den), _pmul(y.num, x.den))
        return self.from_polys(num, _pmul(x.den, y.den))

    def _neg(self, x):
        return RatFuncElem(self, _pneg(x.num), x.den)

    def _mul(self, x, y):
        return self.from_polys(_pmul(x.num, y.num), _pmul(x.den, y.den))

    def invert(self, x):
        if not x.num:
            raise DivisionByZero("invert(0)")
        return self.from_polys(x.den, x.num)

    def sign(self, x) -> int:
        # t exceeds every rational, so the sign at t -> +infinity decides
        if not x.num:
            return 0
        s = 1 if x.num[-1] > 0 else -1
        return s  # canonical form has a positive (monic) denominator

    def compare(self, x, y) -> int:
        if x.num == y.num and x.den == y.den:
            return EQ
        s = self.sign(self._add(x, self._neg(y)))
        return EQ if s == 0 else (LT if s < 0 else GT)

    def log_abs(self, x) -> LogAbs:
        if not x.num:
            return LogAbs.minus_infinity()
        return LogAbs(Fraction(_pdeg(x.num) - _pdeg(x.den)))

    def abs_cmp(self, x, y) -> int:
        la, lb = self.log_abs(x), self.log_abs(y)
        if la == lb:
            return 0
        return -1 if la < lb else 1

    def is_zero(self, x) -> bool:
        return not x.num

    def parse(self, text: str):
        return parse_element(self, text)


class PuiseuxField(_FieldBase):
    """Truncated Puiseux series over Q with t a positive infinitesimal."""

    name = "puiseux"
    value_group = "Q"
    archimedean = False

    def __init__(self, tau=Fraction(64)):
        self.tau = Fraction(tau)

    def from_fraction(self, fr: Fraction) -> PuiseuxElem:
        terms = ((Fraction(0), fr),) if fr else ()
        return PuiseuxElem(self, terms, INF)

    def t(self, exponent=1) -> PuiseuxElem:
        return self.monomial(Fraction(1), Fraction(exponent))

    def monomial(self, coeff: Fraction, exponent) -> PuiseuxElem:
        coeff = Fraction(coeff)
        if coeff == 0:
            return PuiseuxElem(self, (), INF)
        return PuiseuxElem(self, ((Fraction(exponent), coeff),), INF)

    def from_terms(self, terms, tau=INF) -> PuiseuxElem:
        acc = {}
        for e, c in terms:
            e, c = Fraction(e), Fraction(c)
            if e < tau and c:
                acc[e] = acc.get(e, Fraction(0)) + c
        tidy = tuple(sorted((e, c) for e, c in acc.items() if c))
        return PuiseuxElem(self, tidy, tau)

    def _add(self, x, y):
        tau = min(x.tau, y.tau)
        return PuiseuxElem(self, _ser_add(x.terms, y.terms, tau), tau)

    def _neg(self, x):
        return PuiseuxElem(self, _pneg_terms(x.terms), x.tau)

    def _mul(self, x, y):
        if (not x.terms and x.tau == INF) or (not y.terms and y.tau == INF):
            return PuiseuxElem(self, (), INF)
        tau = min(x._bound() + y.tau, y._bound() + x.tau)
        return PuiseuxElem(self, _ser_mul(x.terms, y.terms, tau), tau)

    def invert(self, x):
        if not x.terms:
            if x.tau == INF:
                raise DivisionByZero("invert(0)")
            raise PrecisionExhausted(x.tau, "invert needs a determined leading term")
        v, c = x.terms[0]
        rel = x.tau - v if x.tau != INF else INF
        if len(x.terms) == 1:
            out_tau = INF if rel == INF else -v + min(rel, self.tau)
            return PuiseuxElem(self, ((-v, 1 / c),), out_tau)
        rel_work = min(rel, self.tau)
        u = _ser_scale(x.terms[1:], 1 / c, -v)
        inv = _ser_inverse_one_plus(u, rel_work)
        return PuiseuxElem(self, _ser_scale(inv, 1 / c, -v), -v + rel_work)

    def sqrt(self, x):
        """Square root of a positive element.

        The leading coefficient must be the square of a rational, since
        coefficients live in Q; otherwise NotRepresentable is raised.
        """
        if not x.terms:
            if x.tau == INF:
                return PuiseuxElem(self, (), INF)
            raise PrecisionExhausted(x.tau, "sqrt needs a determined leading term")
        v, c = x.terms[0]
        if c < 0:
            raise NegativeInput("sqrt of a negative element")
        r = _fraction_sqrt(c)
        if r is None:
            raise NotRepresentable(
                f"sqrt: leading coefficient {c} is not a rational square"
            )
        _, series = self._sqrt_scaled(x)
        # series already carries the t**(v/2) factor; fold in sqrt(c)
        return self._mul(self.from_fraction(r), series)

    def _sqrt_scaled(self, x):
        """Decompose sqrt(x) = sqrt(c) * y with c rational and y a series
        with leading term t**(v/2); used by callers that can carry the
        radical sqrt(c) symbolically."""
        if not x.terms:
            raise PrecisionExhausted(x.tau, "sqrt needs a determined leading term")
        v, c = x.terms[0]
        if c < 0:
            raise NegativeInput("sqrt of a negative element")
        rel = x.tau - v if x.tau != INF else INF
        if len(x.terms) == 1:
            return c, PuiseuxElem(self, ((v / 2, Fraction(1)),), INF if rel == INF else v / 2 + min(rel, self.tau))
        rel_work = min(rel, self.tau)
        u = _ser_scale(x.terms[1:], 1 / c, -v)
        root = _ser_sqrt_one_plus(u, rel_work)
        return c, PuiseuxElem(self, _ser_scale(root, Fraction(1), v / 2), v / 2 + rel_work)

    def sign(self, x) -> int:
        # t is an infinitesimal: the lowest-order coefficient decides
        if not x.terms:
            if x.tau == INF:
                return 0
            raise PrecisionExhausted(x.tau, "sign undetermined")
        return 1 if x.terms[0][1] > 0 else -1

    def compare(self, x, y) -> int:
        if x.terms == y.terms:
            return EQ
        s = self.sign(self._add(x, self._neg(y)))
        return EQ if s == 0 else (LT if s < 0 else GT)

    def log_abs(self, x) -> LogAbs:
        if not x.terms:
            if x.tau == INF:
                return LogAbs.minus_infinity()
            raise PrecisionExhausted(x.tau, "log_abs undetermined")
        return LogAbs(-x.terms[0][0])

    def abs_cmp(self, x, y) -> int:
        la, lb = self.log_abs(x), self.log_abs(y)
        if la == lb:
            return 0
        return -1 if la < lb else 1

    def is_zero(self, x) -> bool:
        if not x.terms:
            if x.tau == INF:
                return True
            raise PrecisionExhausted(x.tau, "zero test undetermined")
        return False

    def with_tau(self, tau) -> "PuiseuxField":
        return PuiseuxField(tau)

    def parse(self, text: str):
        return parse_element(self, text)


def vanishes_mod_budget(x) -> bool:
    """True if x is exactly zero, or cancelled below its precision budget.

    Unlike ``is_zero`` this never raises; it answers the weaker question
    "is there any certified nonzero term", which is what residual checks
    in verification code need.
    """
    if isinstance(x, PuiseuxElem):
        return not x.terms
    return x.is_zero()


def get_field(name: str, tau=None):
    """Field backend by name: 'rational', 'ratfunc' or 'puiseux'."""
    if name == "rational":
        return RationalField()
    if name == "ratfunc":
        return RationalFunctionField()
    if name == "puiseux":
        return PuiseuxField(Fraction(tau) if tau is not None else Fraction(64))
    raise ValueError(f"unknown field backend {name!r}")


# ---------------------------------------------------------------------------
# literal grammar
#
#   ratfunc  := group ("/" group)?          group := "(" poly ")" | poly
#   poly     := ["-"] term (("+"|"-") term)*
#   term     := rational tpart? | tpart     tpart := "t" ("^" integer)?
#   puiseux  := ["-"] pterm (("+"|"-") pterm)*
#   pterm    := rational ptpart? | ptpart
#   ptpart   := "t" ("^(" rational ")" | "^" integer)?
#   rational := integer ("/" integer)?
#
# A "/" is read as part of a rational when it sits directly between two
# integers; otherwise it separates the two polynomials of a ratfunc.
# ---------------------------------------------------------------------------


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str) -> list:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("NUM", int(text[i:j]), i))
            i = j
        elif ch == "t":
            toks.append(_Tok("T", None, i))
            i += 1
        elif ch in "+-^()/":
            kind = {"+": "PLUS", "-": "MINUS", "^": "CARET",
                    "(": "LPAREN", ")": "RPAREN", "/": "SLASH"}[ch]
            toks.append(_Tok(kind, None, i))
            i += 1
        else:
            raise FieldParseError(i, "digit, 't', sign, '^', '/', or parenthesis", text)
    toks.append(_Tok("EOF", None, n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead=0) -> _Tok:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str):
        t = self.next()
        if t.kind != kind:
            raise FieldParseError(t.pos, kind, self.text)
        return t

    def fail(self, expected: str):
        raise FieldParseError(self.peek().pos, expected, self.text)

    def rational(self) -> Fraction:
        neg = False
        if self.peek().kind == "MINUS":
            self.next()
            neg = True
        num = self.expect("NUM").value
        den = 1
        # "/" binds as a rational only directly between two integers
        if self.peek().kind == "SLASH" and self.peek(1).kind == "NUM":
            self.next()
            den = self.expect("NUM").value
            if den == 0:
                self.fail("nonzero denominator")
        fr = Fraction(num, den)
        return -fr if neg else fr

    # --- polynomials in t with integer exponents (ratfunc side) ---

    def poly(self) -> tuple:
        coeffs: dict = {}
        sign = 1
        if self.peek().kind == "MINUS":
            self.next()
            sign = -1
        self._term(coeffs, sign)
        while self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.next().kind == "PLUS" else -1
            self._term(coeffs, sign)
        if not coeffs:
            return _PZERO
        deg = max(coeffs)
        out = [Fraction(0)] * (deg + 1)
        for k, v in coeffs.items():
            out[k] = v
        return _ptrim(out)

    def _term(self, coeffs: dict, sign: int):
        tok = self.peek()
        if tok.kind == "NUM":
            c = self.rational()
        elif tok.kind == "T":
            c = Fraction(1)
        else:
            self.fail("rational or 't'")
        e = 0
        if self.peek().kind == "T":
            self.next()
            e = 1
            if self.peek().kind == "CARET":
                self.next()
                neg = False
                if self.peek().kind == "MINUS":
                    self.next()
                    neg = True
                e = self.expect("NUM").value
                if neg:
                    self.fail("nonnegative exponent")
        coeffs[e] = coeffs.get(e, Fraction(0)) + sign * c

    # --- Puiseux polynomials with rational exponents ---

    def puiseux_terms(self) -> list:
        out = []
        sign = 1
        if self.peek().kind == "MINUS":
            self.next()
            sign = -1
        out.append(self._pterm(sign))
        while self.peek().kind in ("PLUS", "MINUS"):
            sign = 1 if self.next().kind == "PLUS" else -1
            out.append(self._pterm(sign))
        return out

    def _pterm(self, sign: int) -> tuple:
        tok = self.peek()
        if tok.kind == "NUM":
            c = self.rational()
        elif tok.kind == "T":
            c = Fraction(1)
        else:
            self.fail("rational or 't'")
        e = Fraction(0)
        if self.peek().kind == "T":
            self.next()
            e = Fraction(1)
            if self.peek().kind == "CARET":
                self.next()
                if self.peek().kind == "LPAREN":
                    self.next()
                    e = self.rational()
                    self.expect("RPAREN")
                elif self.peek().kind in ("NUM", "MINUS"):
                    e = self.rational()
                else:
                    self.fail("'(' or integer exponent")
        return (e, sign * c)


def parse_element(field, text: str):
    """Parse a field literal in the backend's grammar."""
    p = _Parser(text)
    if field.name == "rational":
        fr = p.rational()
        if p.peek().kind != "EOF":
            p.fail("end of input")
        return field.from_fraction(fr)

    if field.name == "ratfunc":
        num = _parse_group(p)
        den = (Fraction(1),)
        if p.peek().kind == "SLASH":
            p.next()
            den = _parse_group(p)
            if not den:
                raise FieldParseError(p.peek().pos, "nonzero denominator polynomial", text)
        if p.peek().kind != "EOF":
            p.fail("end of input")
        return field.from_polys(num, den)

    if field.name == "puiseux":
        terms = p.puiseux_terms()
        if p.peek().kind != "EOF":
            p.fail("end of input")
        return field.from_terms(terms)

    raise ValueError(f"no grammar for backend {field.name!r}")


def _parse_group(p: _Parser) -> tuple:
    if p.peek().kind == "LPAREN":
        p.next()
        poly = p.poly()
        p.expect("RPAREN")
        return poly
    return p.poly()


# ---------------------------------------------------------------------------
# formatting (round-trips through the grammar)
# ---------------------------------------------------------------------------


def _format_poly(p: tuple) -> str:
    if not p:
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        if e == 0:
            mono = str(abs(c))
        else:
            tpow = "t" if e == 1 else f"t^{e}"
            mono = tpow if abs(c) == 1 else f"{abs(c)} {tpow}"
        parts.append(("-" if c < 0 else "+", mono))
    sign0, first = parts[0]
    out = ("-" if sign0 == "-" else "") + first
    for s, m in parts[1:]:
        out += f" {s} {m}"
    return out


def format_ratfunc(x: RatFuncElem) -> str:
    num = _format_poly(x.num)
    if _pdeg(x.den) == 0 and x.den[0] == 1:
        return num
    return f"({num})/({_format_poly(x.den)})"


def format_puiseux(x: PuiseuxElem) -> str:
    if not x.terms:
        return "0"
    parts = []
    for e, c in x.terms:
        if e == 0:
            mono = str(abs(c))
        else:
            tpow = "t" if e == 1 else f"t^({e})"
            mono = tpow if abs(c) == 1 else f"{abs(c)} {tpow}"
        parts.append(("-" if c < 0 else "+", mono))
    sign0, first = parts[0]
    out = ("-" if sign0 == "-" else "") + first
    for s, m in parts[1:]:
        out += f" {s} {m}"
    return out
