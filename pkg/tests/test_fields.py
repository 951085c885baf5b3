"""Field backend tests: frozen examples first, then property suites."""

from fractions import Fraction
from random import Random

import pytest

from valhilb.errors import (
    DivisionByZero,
    FieldParseError,
    NegativeInput,
    NotRepresentable,
    PrecisionExhausted,
)
from valhilb.fields import EQ, GT, LT, LogAbs, get_field
from valhilb.sampling import rand_element, rand_positive

QT = get_field("ratfunc")
PS = get_field("puiseux")
QQ = get_field("rational")


# ---------------------------------------------------------------------
# rational function field Q(t)
# ---------------------------------------------------------------------

class TestRatFunc:
    def test_polynomial_identity(self):
        t = QT.t()
        assert (t + 1) * (t - 1) == t * t - 1

    def test_invert_t(self):
        x = QT.invert(QT.t())
        assert x == 1 / QT.t()
        assert x.log_abs() == LogAbs(Fraction(-1))

    def test_t_exceeds_every_rational(self):
        t = QT.t()
        assert t.compare(10 ** 6) == GT
        assert t.compare(Fraction(-7, 3)) == GT
        assert (t - 10 ** 9).sign() == 1

    def test_compare_reflexive(self):
        x = QT.parse("(t^2+1)/(t-3)")
        assert x.compare(x) == EQ

    def test_log_abs_degree_difference(self):
        x = QT.parse("(t^2+1)/(t-3)")
        assert x.log_abs() == LogAbs(Fraction(1))
        assert QT.one().log_abs() == LogAbs(Fraction(0))
        assert QT.zero().log_abs().neg_inf

    def test_canonical_form(self):
        # (t^2-1)/(t-1) reduces to t+1, denominator monic
        a = QT.from_polys((Fraction(-1), Fraction(0), Fraction(1)), (Fraction(-1), Fraction(1)))
        assert a == QT.t() + 1

    def test_divide_by_zero(self):
        with pytest.raises(DivisionByZero):
            QT.invert(QT.zero())

    def test_sign_of_quotient(self):
        # sign(num lc / den lc) under the order t > every rational
        x = QT.parse("(-2 t + 5)/(t + 1)")
        assert x.sign() == -1
        assert (-x).sign() == 1


# ---------------------------------------------------------------------
# truncated Puiseux series
# ---------------------------------------------------------------------

class TestPuiseux:
    def test_t_is_infinitesimal(self):
        t = PS.t()
        for n in (1, 2, 10, 10 ** 6):
            assert t.compare(Fraction(1, n)) == LT
        assert t.sign() == 1

    def test_invert_geometric_series(self):
        # oracle: multiply back and check == 1 modulo t**4
        field = get_field("puiseux", tau=4)
        x = field.from_terms([(0, 1), (1, 1)])  # 1 + t
        inv = field.invert(x)
        assert inv.terms == tuple(
            (Fraction(k), Fraction((-1) ** k)) for k in range(4)
        )
        back = inv * x
        assert all(e >= 4 for e, _ in (back - 1).terms)

    def test_sqrt_binomial_series(self):
        # oracle: square and compare modulo t**3
        field = get_field("puiseux", tau=3)
        x = field.from_terms([(0, 1), (1, 1)])
        r = field.sqrt(x)
        assert r.terms == (
            (Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(1, 2)),
            (Fraction(2), Fraction(-1, 8)),
        )
        assert all(e >= 3 for e, _ in (r * r - x).terms)

    def test_sqrt_monomials(self):
        assert PS.sqrt(PS.t() * PS.t()) == PS.t()
        assert PS.sqrt(PS.from_fraction(Fraction(4))) == PS.from_fraction(Fraction(2))

    def test_sqrt_rejects_negative_and_nonsquare(self):
        with pytest.raises(NegativeInput):
            PS.sqrt(-PS.t())
        with pytest.raises(NotRepresentable):
            PS.sqrt(PS.from_fraction(Fraction(2)))

    def test_log_abs_leading_exponent(self):
        x = PS.from_terms([(Fraction(1, 2), 3), (1, 1)])
        assert x.log_abs() == LogAbs(Fraction(-1, 2))

    def test_truncated_zero_is_loud(self):
        field = get_field("puiseux", tau=4)
        x = field.invert(field.from_terms([(0, 1), (1, 1)]))
        y = x - x  # all terms cancel, but only known modulo t**4
        assert y.terms == ()
        with pytest.raises(PrecisionExhausted):
            y.sign()
        with pytest.raises(PrecisionExhausted):
            y.log_abs()
        with pytest.raises(PrecisionExhausted):
            field.invert(y)
        # representation comparison still certifies x == x
        assert x.compare(x) == EQ

    def test_budget_propagation_invert(self):
        field = get_field("puiseux", tau=8)
        x = field.from_terms([(2, 1), (3, 1)])  # t^2 (1 + t)
        inv = field.invert(x)
        assert inv.leading() == (Fraction(-2), Fraction(1))
        assert inv.tau == Fraction(6)  # -v + min(rel, default) = -2 + 8

    def test_exact_flag(self):
        assert PS.t().is_exact()
        assert not PS.invert(PS.from_terms([(0, 1), (1, 2)])).is_exact()


# ---------------------------------------------------------------------
# rational backend
# ---------------------------------------------------------------------

class TestRational:
    def test_arithmetic(self):
        x = QQ.from_fraction(Fraction(3, 2))
        assert (x + 1) * 2 == QQ.from_fraction(Fraction(5))
        assert QQ.invert(x) == QQ.from_fraction(Fraction(2, 3))

    def test_log_abs_is_float(self):
        import math

        x = QQ.from_fraction(Fraction(3, 2))
        assert x.log_abs().value == pytest.approx(math.log(1.5))

    def test_abs_cmp_exact(self):
        a = QQ.from_fraction(Fraction(-7, 5))
        b = QQ.from_fraction(Fraction(7, 5))
        assert a.abs_cmp(b) == 0
        assert a.abs_cmp(QQ.one()) == 1


# ---------------------------------------------------------------------
# literal grammar
# ---------------------------------------------------------------------

class TestParsing:
    def test_ratfunc_literals(self):
        t = QT.t()
        assert QT.parse("(t^2+1)/(t-3)") == (t * t + 1) / (t - 3)
        assert QT.parse("1/2 t^2 + t") == t * t / 2 + t
        assert QT.parse("t/(t+1)") == t / (t + 1)
        assert QT.parse("-t + 3") == 3 - t
        assert QT.parse("1/2") == QT.from_fraction(Fraction(1, 2))

    def test_puiseux_literals(self):
        x = PS.parse("3/2 t^(1/2) + t^(2)")
        assert x.terms == ((Fraction(1, 2), Fraction(3, 2)), (Fraction(2), Fraction(1)))
        assert PS.parse("1 - t") == PS.from_terms([(0, 1), (1, -1)])
        assert PS.parse("t^(-1)") == PS.invert(PS.t())

    def test_rational_literal(self):
        assert QQ.parse("-3/2") == QQ.from_fraction(Fraction(-3, 2))

    def test_error_reports_offset(self):
        with pytest.raises(FieldParseError) as exc:
            QT.parse("t^2 + $")
        assert exc.value.offset == 6
        with pytest.raises(FieldParseError):
            PS.parse("t^(1/2")

    def test_roundtrip_through_str(self):
        rng = Random(11)
        for _ in range(50):
            x = rand_element(QT, rng)
            assert QT.parse(str(x)) == x
            y = rand_element(PS, rng)
            assert PS.parse(str(y)) == y


# ---------------------------------------------------------------------
# property suites (reduced counts here; full counts run in acceptance)
# ---------------------------------------------------------------------

@pytest.mark.parametrize("name", ["ratfunc", "puiseux"])
def test_order_compatibility(name):
    field = get_field(name)
    rng = Random(101)
    for _ in range(500):
        x = rand_element(field, rng)
        y = rand_element(field, rng)
        x, y = (x, y) if x.abs_cmp(y) <= 0 else (y, x)
        # arrange 0 <= x <= y by taking absolute values in the field
        if x.sign() < 0:
            x = -x
        if y.sign() < 0:
            y = -y
        if x.compare(y) == GT:
            x, y = y, x
        assert x.log_abs() <= y.log_abs()


@pytest.mark.parametrize("name", ["ratfunc", "puiseux"])
def test_ultrametric_inequality(name):
    field = get_field(name)
    rng = Random(102)
    for _ in range(500):
        x = rand_element(field, rng)
        y = rand_element(field, rng)
        s = x + y
        logs = [v.log_abs() for v in (x, y)]
        if not field.is_zero(s):
            assert s.log_abs() <= max(logs)
        if x.sign() >= 0 and y.sign() >= 0 and (x.sign() or y.sign()):
            assert s.log_abs() == max(logs)


@pytest.mark.parametrize("name", ["ratfunc", "puiseux"])
def test_log_abs_homomorphism(name):
    field = get_field(name)
    rng = Random(103)
    for _ in range(500):
        x = rand_element(field, rng, nonzero=True)
        y = rand_element(field, rng, nonzero=True)
        assert (x * y).log_abs() == x.log_abs() + y.log_abs()


def test_sqrt_roundtrip_property():
    field = get_field("puiseux")
    rng = Random(104)
    for _ in range(100):
        x = rand_positive(field, rng)
        x = x * x  # guarantees a square leading coefficient
        r = field.sqrt(x)
        resid = r * r - x
        # every term below the propagated budget must have cancelled
        assert resid.terms == ()
        assert resid.tau > r.leading()[0]


def test_mixed_backends_rejected():
    from valhilb.errors import MixedBackends

    with pytest.raises(MixedBackends):
        QT.t() + PS.t()
