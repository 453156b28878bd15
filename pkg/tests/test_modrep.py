import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from voakit.cases import toy_fuse_oracle, toy_regroup_oracle
from voakit.lattice import Lattice
from voakit.modrep import (DecompositionData, InconsistentLabels, LengthMismatch, LoewyDiagram,
                           MissingLabel, SimpleCurrentLabel, exactness_transport, fuse_diagram,
                           orbit_split, sw_regroup, transport_diagram)
from voakit.mtc import abelian_groups

L2 = Lattice([[F(1, 4)]], [[2]])


def k2_data():
    return DecompositionData(L2, [0, 2], {0: "K_0", 2: "K_1/2"}, period=[[4]])


def test_k2_regroup():
    r = sw_regroup(k2_data())
    assert r.N.basis == [[4]] and r.quotient == "Z/2" and r.order == 2


def test_regroup_idempotent_and_maximal():
    r = sw_regroup(k2_data())
    again = sw_regroup(r.grouped)
    assert again.N.same_as(r.N)
    # 2Z is the only strictly larger sublattice of L = 2Z containing 4Z; it moves the labels
    assert k2_data().label_of((2,)) != k2_data().label_of((0,))


def test_distinct_labels_give_zero_N():
    reps = list(range(-8, 9, 2))
    data = DecompositionData(L2, reps, {m: ("C", m) for m in reps})
    r = sw_regroup(data)
    assert r.N.rank == 0 and r.free_rank == 1


def test_inconsistent_labels():
    data = DecompositionData(Lattice.from_gram([[1]]), [0, 1, 2, 3],
                             {0: "A", 1: "B", 2: "A", 3: "A"}, period=[[4]])
    with pytest.raises(InconsistentLabels):
        sw_regroup(data)


def test_orbit_split():
    one = DecompositionData(L2, [0, 2], {0: "K_0", 2: "K_1/2"}, period=[[4]])
    assert len(orbit_split(one)) == 1
    both = DecompositionData(L2, [0, 1, 2, 3], {0: "K_0", 1: "K_1/16", 2: "K_1/2", 3: "K_1/16"}, period=[[4]])
    parts = orbit_split(both)
    assert len(parts) == 2
    assert {tuple(sorted(p.reps)) for p in parts} == {((0,), (2,)), ((1,), (3,))}


def test_unit_fuse_is_identity():
    D = LoewyDiagram.diamond("a", "b", "c", "a")
    assert fuse_diagram(SimpleCurrentLabel("1"), D) == D


def test_missing_label():
    D = LoewyDiagram.diamond("a", "b", "c", "a")
    with pytest.raises(MissingLabel):
        fuse_diagram(SimpleCurrentLabel("J", (1,), (2,)), D, {"a": "x"})


def test_p0_diamond_transport():
    P0 = LoewyDiagram.diamond("M0", "sM-", "sM+", "M0")
    fac = {"M0": lambda m: ("C", m[0]), "sM-": lambda m: ("D-", m[0]), "sM+": lambda m: ("D+", m[0])}
    for mu in (-4, 0, 6):
        assert transport_diagram(P0, fac, (mu,)) == LoewyDiagram.diamond(("C", mu), ("D-", mu), ("D+", mu), ("C", mu))


def test_gl11_diamond_transport():
    ell, n = 1, F(1, 3)
    amb = Lattice.from_gram([[1, 0], [0, 1]])

    def A(np_):
        return DecompositionData(amb, [(-ell, m - np_) for m in range(-6, 7)],
                                 {(-ell, m - np_): ("M", m, 1) for m in range(-6, 7)})

    P = LoewyDiagram.diamond(("A", n), ("A", n + 1), ("A", n - 1), ("A", n))
    facs = {("A", n + j): A(n + j) for j in (-1, 0, 1)}
    for m in range(-3, 4):
        got = transport_diagram(P, facs, (-ell, m - n))
        assert got == LoewyDiagram.diamond(("M", m, 1), ("M", m + 1, 1), ("M", m - 1, 1), ("M", m, 1))


def test_exactness():
    L = Lattice.from_gram([[1]])
    sub = DecompositionData(L, [0], {0: "A"})
    quo = DecompositionData(L, [0], {0: "B"})
    mid = DecompositionData(L, [0], {0: LoewyDiagram([["B"], ["A"]])})
    assert exactness_transport((sub, mid, quo))["lengths"][(0,)] == (1, 2, 1)
    bad = DecompositionData(L, [0], {0: "B"})
    with pytest.raises(LengthMismatch):
        exactness_transport((sub, bad, quo))


def test_diagram_json():
    D = LoewyDiagram.diamond(("M", 1), ("M", 2), "x", ("M", 1))
    assert LoewyDiagram.from_dict(D.to_dict()) == D


@st.composite
def diagrams(draw):
    nlayers = draw(st.integers(1, 4))
    layers = [[draw(st.integers(0, 5)) for _ in range(draw(st.integers(1, 3)))] for _ in range(nlayers)]
    arrows = []
    for i in range(nlayers - 1):
        for a in range(len(layers[i])):
            for b in range(len(layers[i + 1])):
                if draw(st.booleans()):
                    arrows.append(((i, a), (i + 1, b)))
    return LoewyDiagram(layers, arrows)


@settings(max_examples=60)
@given(diagrams(), st.integers(0, 5))
def test_fuse_preserves_shape(D, shift):
    J = SimpleCurrentLabel("J", (shift,), (6,))
    out = fuse_diagram(J, D, lambda x: (x + shift) % 6)
    assert out.shape() == D.shape() and out.length == D.length


@pytest.mark.parametrize("inv", [g for g in abelian_groups(8) if g])
def test_toy_category_oracle(inv):
    elems = list(itertools.product(*[range(d) for d in inv]))
    rng = random.Random(len(elems))
    D = LoewyDiagram([[rng.choice(elems)], [rng.choice(elems), rng.choice(elems)], [rng.choice(elems)]])
    for g in elems:
        got = fuse_diagram(SimpleCurrentLabel("J", g, inv), D)
        assert [sorted(x) for x in got.layers] == toy_fuse_oracle(inv, g, D.layers)
    r = len(inv)
    Z = Lattice.from_gram([[int(i == j) for j in range(r)] for i in range(r)])
    data = DecompositionData(Z, elems, {e: e for e in elems},
                             period=[[d * int(i == j) for j in range(r)] for i, d in enumerate(inv)])
    res = sw_regroup(data)
    stab, ncls = toy_regroup_oracle(inv)
    assert res.order == ncls
    assert all(res.N.contains(list(p)) for p in stab)
