import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import preset
from voakit.engine import (NotHomogeneous, UnknownGenerator, charge_of, derivative, nth_product,
                           random_state, verify_axioms, weight_of)
from voakit.expr import ParseError, canonicalize, format_state, parse_state, random_expression
from voakit.freefield import FreeFieldOracle
from voakit.presets import named_state


def test_beta_gamma_pole():
    c = preset("S(1)")
    assert nth_product(c, c.gen("beta1"), c.gen("gamma1"), 0) == c.vacuum()
    assert nth_product(c, c.gen("gamma1"), c.gen("beta1"), 0) == -c.vacuum()


def test_h_h_pole():
    c = preset("S(1)")
    h = c.named["h"]
    assert nth_product(c, h, h, 1) == -c.vacuum()
    assert nth_product(c, h, h, 2).is_zero()


@pytest.mark.parametrize("name", ["S(1)", "E(1)", "sl2", "bp"])
def test_creation_axiom(name):
    c = preset(name)
    for g in c.generators:
        a = c.gen(g.name)
        assert nth_product(c, a, c.vacuum(), -1) == a


def test_canonical_order():
    c = preset("S(1)")
    assert format_state(parse_state(c, ":D(beta1) gamma1:")) == ":D^1(beta1) gamma1:"
    assert parse_state(c, ":gamma1 beta1:") == parse_state(c, ":beta1 gamma1:")
    nested = parse_state(c, "::beta1 gamma1: beta1:")
    assert nested == parse_state(c, ":beta1 beta1 gamma1:") - parse_state(c, "D(beta1)")


def test_nested_normal_order_matches_oracle():
    c = preset("S(1)")
    o = FreeFieldOracle(c)
    nested = parse_state(c, "::beta1 gamma1: beta1:")
    bg = parse_state(c, ":beta1 gamma1:")
    assert o.fock(nested) == o.product(bg, c.gen("beta1"), -1)


def test_derivative():
    c = preset("S(1)")
    assert derivative(c, c.vacuum()).is_zero()
    assert derivative(c, c.gen("beta1")) == c.gen("beta1", 1)
    assert derivative(c, parse_state(c, ":beta1 gamma1:")) == parse_state(c, ":D(beta1) gamma1: + :beta1 D(gamma1):")


def test_weights_and_charges():
    c = preset("S(1)")
    assert weight_of(c, c.named["L_Wang"]) == 2
    with pytest.raises(NotHomogeneous):
        weight_of(c, c.gen("beta1") + c.named["h"])
    s = preset("sl2")
    assert weight_of(s, named_state(s, "U_{0,4}")) == 6
    assert charge_of(s, s.gen("X")) == 2
    assert charge_of(s, s.gen("Y")) == -2
    assert charge_of(s, s.vacuum()) == 0


def test_unknown_generator_and_parse_error():
    c = preset("S(1)")
    with pytest.raises(UnknownGenerator):
        parse_state(c, ":beta1 zeta:")
    with pytest.raises(ParseError):
        parse_state(c, ":beta1 gamma1")


@pytest.mark.parametrize("name", ["S(1)", "E(1)", "S(1)xE(1)"])
def test_verify_axioms_50(name):
    assert verify_axioms(preset(name), 50)


def test_corrupted_table_fails_skew():
    c = preset("S(1)").with_table_entry("beta1", "gamma1", {0: 2})
    rep = verify_axioms(c, 20)
    assert not rep
    assert any(f["axiom"] == "skew-symmetry" for f in rep.failures)


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.integers(-2, 3), st.sampled_from(["S(2)", "sl2", "S(1)xE(1)"]))
def test_weight_and_charge_additivity(seed, n, name):
    c = preset(name)
    rng = random.Random(seed)
    a = c.gen(rng.choice(c.generators).name, rng.randint(0, 1))
    b = c.gen(rng.choice(c.generators).name, rng.randint(0, 1))
    p = nth_product(c, a, b, n)
    if p.is_zero():
        return
    assert weight_of(c, p) == weight_of(c, a) + weight_of(c, b) - n - 1
    assert charge_of(c, p) == charge_of(c, a) + charge_of(c, b)


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.sampled_from(["S(1)", "E(1)", "S(1)xE(1)", "heisenberg(2)"]))
def test_oracle_agreement(seed, name):
    c = preset(name)
    rng = random.Random(seed)
    a, b = random_state(c, 3, rng, 2), random_state(c, 3, rng, 2)
    o = FreeFieldOracle(c)
    for n in range(-1, 4):
        assert o.agrees(a, b, n)


@settings(max_examples=60)
@given(st.integers(0, 10_000), st.sampled_from(["S(2)", "S(1)xE(1)", "sl2"]))
def test_canonicalize_idempotent(seed, name):
    c = preset(name)
    s1 = canonicalize(c, random_expression(c, random.Random(seed)))
    assert canonicalize(c, format_state(s1)) == s1
    assert canonicalize(c, s1) == s1
