import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import preset
from voakit.coset import (NotVirasoro, c1_leading_coefficient, c1_reduce, commutant_test,
                          primary_check, verify_identity, virasoro_check)
from voakit.engine import derivative, normal_order, nth_product
from voakit.exactmath import K
from voakit.presets import named_state


def test_wang_virasoro():
    c = preset("S(1)")
    v = virasoro_check(c, c.named["L_Wang"])
    assert v.is_virasoro and v.central_charge == -2 and v.normalization == F(1, 2)


def test_commutant_examples():
    c = preset("S(1)")
    assert commutant_test(c, c.named["L_Wang"]).ok
    r = commutant_test(c, c.named["h"])
    assert not r.ok and r.witness == -c.vacuum()
    assert commutant_test(c, c.vacuum()).ok


def test_verify_identity_negative():
    c = preset("S(1)")
    L = c.named["L_Wang"]
    r = verify_identity(c, L, L + c.gen("beta1"))
    assert not r.ok and r.witness == -c.gen("beta1")


def test_not_virasoro():
    c = preset("S(1)")
    with pytest.raises(NotVirasoro):
        virasoro_check(c, c.gen("beta1"))


def test_primary_examples():
    s2 = preset("S(2)")
    assert primary_check(s2, s2.named["L"], s2.named["P"]).weight == 2
    assert primary_check(s2, s2.named["L"], s2.named["X12"]).weight == 1
    c = preset("S(1)")
    L = c.named["L_Wang"]
    assert not primary_check(c, L, derivative(c, L), normalization=F(1, 2))


def test_wang_w_completion_is_primary():
    c = preset("S(1)")
    L, W = c.named["L_Wang"], c.named["W_Wang"]
    assert not primary_check(c, L, W, normalization=F(1, 2))
    fixed = primary_check(c, L, W + derivative(c, L) * F(3, 4), normalization=F(1, 2))
    assert fixed and fixed.weight == 3


def test_sugawara_central_charge_is_minus_three():
    c = preset("S(2)")
    assert virasoro_check(c, c.named["L"], normalize=False).central_charge == -3


def test_c1_reduce_examples():
    s = preset("sl2")
    r = c1_reduce(s, s.parse("D^3(Y)"), -2)
    assert r.residual == s.parse("D^3(Y)") and r.coefficient == 1
    assert c1_reduce(s, s.parse(":D(H) Y:"), -2).residual.is_zero()
    u = nth_product(s, named_state(s, "U_{0,4}"), s.parse("D^5(Y)"), 0)
    r = c1_reduce(s, u, -2)
    assert r.coefficient == K + F(2, 5) and r.residual_monomial == ((s.index["Y"], 10),)


def test_leading_coefficient():
    s = preset("sl2")
    u4 = named_state(s, "U_{0,4}")
    coeffs = {c1_leading_coefficient(s, u4, i, "Y") for i in range(5, 9)}
    assert coeffs == {K + F(2, 5)}
    assert (K + F(2, 5)).roots() == [F(-2, 5)]
    assert c1_leading_coefficient(s, named_state(s, "U_{0,5}"), 5, "Y", k0="-2/5") == F(-1, 15)


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_c1_reduce_conserves_state(seed):
    s = preset("sl2")
    rng = random.Random(seed)
    a = s.parse(f":H D^{rng.randint(0, 3)}(Y):") * rng.randint(1, 4) + s.parse(f"D^{rng.randint(1, 5)}(Y)")
    r = c1_reduce(s, a, -2)
    assert r.residual + r.discarded == a


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(0, 2), st.just(0)), min_size=1, max_size=3),
       st.integers(-3, 3).filter(bool))
def test_h_polynomials_not_in_commutant(factors, coeff):
    c = preset("S(1)")
    h = c.named["h"]
    parts = [derivative(c, h, d) for d, _ in factors]
    a = normal_order(c, *parts) * coeff
    assert not commutant_test(c, a).ok

