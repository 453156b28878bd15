from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from voakit.exactmath import (K, Phase, PoleAtK, Scalar, ScalarParseError, format_scalar,
                              parse_scalar, phase_mul, scalar_eval)

rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(rats, min_size=0, max_size=3).map(Scalar.poly)


@st.composite
def scalars(draw):
    num = draw(polys)
    den = draw(polys.filter(lambda p: bool(p)))
    return num / den


def test_eval_examples():
    assert scalar_eval(parse_scalar("k+2/5"), F(-2, 5)) == 0
    assert scalar_eval(F(1), F(7, 3)) == 1
    assert scalar_eval(parse_scalar("k^2 + 2/21*k + 1/28"), 0) == F(1, 28)


def test_pole_raises():
    with pytest.raises(PoleAtK):
        scalar_eval(1 / (K + 2), -2)


def test_parse_forms():
    assert parse_scalar("-1/15") == F(-1, 15)
    assert parse_scalar("(k+2)/5") == (K + 2) / 5
    assert parse_scalar("k**2") == K * K
    with pytest.raises(ScalarParseError):
        parse_scalar("k+?")


def test_format_roundtrip():
    s = (K * K + F(65, 21) * K + F(17, 7)) / (K - 1)
    assert parse_scalar(str(s).replace("(", "(").replace(")", ")")) == s
    assert format_scalar(F(3, 4)) == "3/4"


def test_rational_roots():
    assert (K + F(2, 5)).roots() == [F(-2, 5)]
    assert (K * K + F(2, 21) * K + F(1, 28)).roots() == []
    assert ((K - 1) * (3 * K + 2)).roots() == [F(-2, 3), F(1)]


def test_constant_scalar_equals_fraction():
    s = (K + 1) / (K + 1)
    assert s == 1 and hash(s) == hash(F(1))


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if a != 0:
        assert a * (1 / a) == 1


@given(scalars(), scalars())
def test_canonical_form_unique(a, b):
    assert (a - b == 0) == (str(Scalar.poly([0]) + a) == str(Scalar.poly([0]) + b))


@given(scalars(), rats)
def test_eval_is_homomorphism(a, k0):
    b = a * a + 3
    try:
        assert scalar_eval(b, k0) == scalar_eval(a, k0) ** 2 + 3
    except PoleAtK:
        pass


def test_phase_examples():
    assert phase_mul(Phase(F(1, 2)), Phase(F(1, 2))) == Phase(0)
    assert phase_mul(Phase(F(1, 16)), Phase(F(15, 16))) == Phase(0)
    assert phase_mul(Phase(F(1, 3)), Phase(F(1, 3))) == Phase(F(2, 3))
    assert Phase(F(1, 2)) == -1 and Phase(0) == 1


@given(rats, rats, rats)
def test_phase_group(a, b, c):
    x, y, z = Phase(a), Phase(b), Phase(c)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * x.inverse() == Phase(0)
    assert 0 <= x.exponent < 1
