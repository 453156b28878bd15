import pytest

from conftest import preset
from voakit.engine import nth_product, verify_axioms
from voakit.exactmath import K
from voakit.presets import BC, SchemaError, UnknownName, context_from_dict, named_state

PRESETS = ["S(1)", "E(1)", "S(2)", "E(2)", "S(1)xE(1)", "heisenberg(2)", "sl2", "bp"]


def test_bc_poles_and_parity():
    c = preset("E(1)")
    b, cc = c.gen("b1"), c.gen("c1")
    assert nth_product(c, b, cc, 0) == c.vacuum()
    assert nth_product(c, cc, b, 0) == c.vacuum()
    assert all(g.odd for g in c.generators)


def test_sl2_level():
    c = preset("sl2")
    assert nth_product(c, c.gen("X"), c.gen("Y"), 1) == c.vacuum() * K
    assert nth_product(c, c.gen("H"), c.gen("X"), 0) == 2 * c.gen("X")


def test_named_states():
    c = preset("S(1)")
    assert named_state(c, "L_Wang") == c.parse(":beta1 beta1 gamma1 gamma1: + 2*:beta1 D(gamma1): - 2*:D(beta1) gamma1:")
    s2 = preset("S(2)")
    assert named_state(s2, "R") == s2.named["L1"] - s2.named["L2"]
    s11 = preset("S(1)xE(1)")
    assert named_state(s11, "phi11") == s11.parse(":b1 gamma1:")
    with pytest.raises(UnknownName):
        named_state(c, "nothing")


@pytest.mark.slow
@pytest.mark.parametrize("name", PRESETS)
def test_every_preset_passes_axioms(name):
    assert verify_axioms(preset(name), 100)


@pytest.mark.parametrize("name", [p for p in PRESETS if "x" not in p] + ["S(2)xE(1)"])
def test_heisenberg_state(name):
    c = preset(name)
    h = c.heisenberg["h"]
    assert not nth_product(c, h, h, 1).is_zero()
    assert set(nth_product(c, h, h, 1).terms) == {()}
    for n in (2, 3):
        assert nth_product(c, h, h, n).is_zero()


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_mixed_current_norm(n, m):
    # sum :beta gamma: - sum :b c: has norm m - n, so it is null when n = m
    c = preset(f"S({n})xE({m})")
    h = c.heisenberg["h"]
    assert nth_product(c, h, h, 1) == c.vacuum() * (m - n)


def test_schema_error():
    with pytest.raises(SchemaError):
        context_from_dict({"generators": [{"name": "a"}]})


def test_bc_dataclass_default():
    assert BC().m == 1
