import itertools
from fractions import Fraction as F
from pathlib import Path

import pytest

import voakit
from voakit.exactmath import Phase
from voakit.mtc import (ExactValue, NotFixedPoint, RibbonData, RibbonDataError, abelian_groups,
                        hopf_criterion, load_ribbon_data, parse_value, pointed_data,
                        simple_current_order)

ISING = Path(voakit.__file__).parent / "data" / "ising.json"


@pytest.fixture(scope="module")
def ising():
    return load_ribbon_data(ISING)


def test_ising_orders(ising):
    assert simple_current_order(ising, "K_1/2") == 2
    assert simple_current_order(ising, "K_0") == 1


@pytest.mark.parametrize("P,case,scalar", [("K_0", "case2_theta_balanced", 1),
                                           ("K_1/2", "case2_theta_balanced", 1),
                                           ("K_1/16", "case1_Szero", -1)])
def test_ising_bullets(ising, P, case, scalar):
    r = hopf_criterion(ising, "K_1/2", "K_1/16", 1, P)
    assert r.case == case and r.scalar == scalar
    if case == "case1_Szero":
        assert r.s_entry.is_zero()


def test_not_fixed_point(ising):
    with pytest.raises(NotFixedPoint):
        hopf_criterion(ising, "K_1/2", "K_0", 1, "K_0")


def test_unit_twist_and_consistency(ising):
    assert ising.twists["K_0"] == Phase(0)
    J = "K_1/2"
    for P in ising.labels:
        assert hopf_criterion(ising, J, ising.unit, 2, P).scalar == 1


def test_exact_values():
    assert parse_value("sqrt(2)/2") * parse_value("sqrt(8)") == 2
    assert parse_value("e(1/2)") == -1
    assert (parse_value("sqrt(2)") - parse_value("sqrt(2)")).is_zero()
    assert parse_value("-1/2*sqrt(8)*e(-1/16)") == ExactValue.of(-1) * parse_value("sqrt(2)") * parse_value("e(15/16)")
    assert parse_value("sqrt(3)").inverse() * parse_value("sqrt(3)") == 1


def test_bad_data_rejected():
    with pytest.raises(RibbonDataError):
        RibbonData(["a", "b"], "a", {("a", "a"): {"a": 1}, ("a", "b"): {"b": 1}, ("b", "a"): {"a": 1},
                                     ("b", "b"): {"a": 1}}, {"a": 0, "b": 0})
    with pytest.raises(RibbonDataError):
        RibbonData(["a"], "a", {("a", "a"): {"a": 1}}, {"a": F(1, 2)})


def test_dict_roundtrip(ising):
    again = RibbonData.from_dict(ising.to_dict())
    assert again.fusion == ising.fusion and again.twists == ising.twists


def test_group_count():
    groups = abelian_groups(8)
    assert len(groups) == 11
    assert (2, 4) in groups and (2, 2, 2) in groups and () in groups


def test_z3_order():
    R = pointed_data((3,))
    assert simple_current_order(R, (1,)) == 3 and simple_current_order(R, (2,)) == 3


@pytest.mark.parametrize("inv", abelian_groups(8))
def test_pointed_always_case2(inv):
    R = pointed_data(inv)
    for J in R.labels:
        s = simple_current_order(R, J)
        for X, P in itertools.product(R.labels, repeat=2):
            assert hopf_criterion(R, J, X, s, P).case == "case2_theta_balanced"


def test_exact_value_cyclotomic_relations():
    from voakit.mtc import parse_value as p
    assert (p("1") + p("e(1/3)") + p("e(2/3)")).is_zero()
    assert p("sqrt(2)") == p("e(1/8)") + p("e(-1/8)")
    assert p("sqrt(5)") == p("1") + 2 * p("e(1/5)") + 2 * p("e(4/5)")
    assert p("sqrt(6)") == (p("e(1/8)") + p("e(-1/8)")) * (p("e(1/12)") + p("e(-1/12)"))
    assert p("sqrt(2)") != p("1")
    assert not (p("1") + p("e(1/5)")).is_zero()
    assert hash(p("sqrt(2)")) == hash(p("e(1/8)") + p("e(-1/8)"))
