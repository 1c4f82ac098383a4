from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dec, dec_sign
from reptiler.exactfield import (
    QF,
    RadicandMismatch,
    format_num,
    is_rational,
    lift,
    parse_num,
    qf,
    qf_cmp,
    qf_div,
    qf_sign,
    qf_sqrt,
    rat,
    rational_enclosure,
    sqrt_rational,
    to_rat,
)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=40).map(rat)
radicands = st.sampled_from([2, 3, 5, 6, 7, 13, 41])


@st.composite
def same_field(draw, n=3):
    m = draw(radicands)
    return [QF(draw(rats), draw(rats), m) for _ in range(n)]


def test_conjugate_product():
    assert qf(1, 1, 6) * qf(1, -1, 6) == -5


def test_cancellation_to_rational():
    s = qf("4/5", "-1/5", 6) + qf("1/5", "1/5", 6)
    assert s == 1 and is_rational(s)


def test_square_expansion():
    u = qf("2/5", "2/5", 6)
    assert u * u == qf("28/25", "8/25", 6)


@pytest.mark.parametrize(
    "u, expected",
    [(qf(0, 0, 6), 0), (qf("4/5", "-1/5", 6), 1), (qf(1, "-3/5", 3), -1)],
)
def test_sign_examples(u, expected):
    assert qf_sign(u) == expected


def test_cmp_examples():
    assert qf_cmp(rat("7/5"), 1) == 1
    assert qf_cmp(qf(0, "1/2", 7), 1) == 1
    assert qf_cmp(qf("19/20", "3/20", 13), rat("19/10")) == -1


def test_mixed_radicands_rejected():
    with pytest.raises(RadicandMismatch):
        qf(1, 1, 2) + qf(1, 1, 3)


def test_rationals_mix_with_any_field():
    assert qf(1, 1, 2) + rat(1) == qf(2, 1, 2)
    assert 2 * qf(1, 1, 5) == qf(2, 2, 5)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        qf_div(qf(1, 1, 2), qf(0, 0, 2))


@pytest.mark.parametrize(
    "u, eps, box",
    [
        (rat("3/5"), "1/100", ("3/5", "3/5")),
        (qf(0, 1, 2), "1/10", ("7/5", "3/2")),
        (qf(0, "1/2", 7), "1/100", ("33/25", "133/100")),
    ],
)
def test_rational_enclosure(u, eps, box):
    lo, hi = rational_enclosure(u, rat(eps))
    assert rat(box[0]) <= lo <= hi <= rat(box[1])
    assert hi - lo <= rat(eps)
    assert dec(lo) <= dec(u) <= dec(hi)


def test_sqrt_rational_and_qf_sqrt():
    assert sqrt_rational(rat(12)) == (2, 3)
    assert sqrt_rational(rat("9/4")) == (rat("3/2"), 1)
    assert qf_sqrt(qf(3, 2, 2)) == qf(1, 1, 2)  # (1+sqrt 2)^2
    assert qf_sqrt(qf(7, 0, 7)) == qf(0, 1, 7)
    assert qf_sqrt(qf(2, 0, 3)) is None


def test_tower_field():
    inner = qf(0, 1, 13)
    s3 = QF(0, 1, 3, (13,))
    u = inner * s3  # sqrt 39 in Q(sqrt 13)(sqrt 3)
    assert u * u == 39
    assert qf_sign(u - 6) > 0 and qf_sign(u - 7) < 0
    assert lift(rat(2), (13, 3)) == 2


def test_parse_and_format_roundtrip():
    u = parse_num("(2+2√6)/5")
    assert u == qf("2/5", "2/5", 6)
    assert parse_num(format_num(u)) == u
    assert parse_num("(4−√6)/5") == qf("4/5", "-1/5", 6)
    assert parse_num("1+2b", {"b": rat("1/5")}) == rat("7/5")
    with pytest.raises((ValueError, SyntaxError)):
        parse_num("__import__('os')")


def test_to_rat_rejects_irrational():
    assert to_rat(qf(3, 0, 5)) == 3
    with pytest.raises(ValueError):
        to_rat(qf(3, 1, 5))


@settings(max_examples=300, deadline=None)
@given(same_field())
def test_field_axioms(vals):
    u, v, w = vals
    assert (u + v) + w == u + (v + w)
    assert u * (v + w) == u * v + u * w
    assert u * v == v * u
    assert u - u == 0
    if u != 0:
        assert u * (1 / u) == 1


@settings(max_examples=300, deadline=None)
@given(same_field(1))
def test_sign_matches_decimal_oracle(vals):
    (u,) = vals
    assert qf_sign(u) == dec_sign(u)


@settings(max_examples=100, deadline=None)
@given(same_field(1), st.sampled_from(["1/10", "1/1000", "1/100000"]))
def test_enclosure_contains_value(vals, eps):
    (u,) = vals
    lo, hi = rational_enclosure(u, rat(eps))
    assert dec(lo) <= dec(u) <= dec(hi) and hi - lo <= rat(eps)


@settings(max_examples=100, deadline=None)
@given(same_field(1))
def test_sqrt_of_square(vals):
    (u,) = vals
    r = qf_sqrt(u * u)
    assert r is not None and r == abs(u)


def test_fraction_inputs():
    assert rat(Fraction(3, 6)) == rat("1/2")
