import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from voakit.exactmath import Phase
from voakit.lattice import (Lattice, NotIntegral, character_group_check, discriminant_group,
                            dual_lattice, extension_check, lattice_from_dict, lift_membership,
                            lifting_set, monodromy_character, orthogonal_complement, smith_normal_form,
                            solve_lift)


def _det(m):
    import itertools
    n = len(m)
    total = 0
    for p in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][p[i]]
        total += sign * prod
    return total


@st.composite
def grams(draw, max_rank=4):
    r = draw(st.integers(1, max_rank))
    g = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            g[i][j] = g[j][i] = draw(st.integers(-3, 3)) + (5 if i == j else 0)
    return g


def test_dual_examples():
    assert dual_lattice(Lattice.from_gram([[2]])).basis == [[F(1, 2)]]
    L = Lattice.from_gram([[1]])
    assert dual_lattice(L).same_as(L)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_n2_complement(k):
    amb = Lattice.from_gram([[2 * k, 0], [0, 1]])
    N = orthogonal_complement(amb, [[1, k]])
    assert N.same_as(Lattice(amb.ambient_gram, [[1, -2]]))
    assert amb.pair([1, k], [1, k]) == k * (k + 2)
    assert amb.pair([1, -2], [1, -2]) == 2 * (k + 2)


def test_complement_of_full_lattice_is_zero():
    amb = Lattice.from_gram([[2, 1], [1, 2]])
    assert orthogonal_complement(amb, [[1, 0], [0, 1]]).rank == 0


def test_discriminant_examples():
    assert discriminant_group(Lattice.from_gram([[2]])).invariants == [2]
    assert discriminant_group(Lattice.from_gram([[2, -1], [-1, 2]])).invariants == [3]
    assert discriminant_group(Lattice.from_gram([[1]])).order == 1
    with pytest.raises(NotIntegral):
        discriminant_group(Lattice.from_gram([[F(1, 2)]]))


def test_monodromy_examples():
    L = Lattice.from_gram([[2]])
    chi = monodromy_character(L, [F(1, 2)])
    assert chi[(1,)] == Phase(F(1, 2))
    assert all(p == Phase(0) for p in monodromy_character(L, [F(1)]).values())


def test_lift_examples():
    L = Lattice.from_gram([[1]])
    assert solve_lift(L, [0]).alpha == [0]
    assert solve_lift(L, [F(1, 3)]).alpha == [F(1, 3)]
    sol = solve_lift(L, [F(1, 3)])
    assert lift_membership(sol.alpha, sol)
    assert lift_membership([sol.alpha[0] + 1], sol)
    assert not lift_membership([sol.alpha[0] + F(1, 2)], sol)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_n2_lifting_set(k):
    amb = Lattice.from_gram([[2 * k, 0], [0, 1]])
    N = Lattice(amb.ambient_gram, [[1, -2]])
    twoNp = Lattice(amb.ambient_gram, [[2 * x for x in b] for b in dual_lattice(N).basis])
    reps = lifting_set(solve_lift(twoNp, [0]), N)
    assert len(reps) == 2
    assert any(N.contains([a - b for a, b in zip(r, [F(1, 2), -1])]) for r in reps)


def test_extension_examples():
    assert extension_check(Lattice.from_gram([[1]]), [[6]], [[1]]) == "voa"
    assert extension_check(Lattice.from_gram([[1]]), [[F(-3, 8)]], [[4]]) == "voa"
    assert extension_check(Lattice.from_gram([[1]]), [[1]], [[1]]) == "super_voa"
    assert extension_check(Lattice.from_gram([[1]]), [[F(1, 4)]], [[1]]) == "not_extension"


def test_lattice_file():
    L = lattice_from_dict({"rank": 2, "gram": [[2, -1], [-1, 2]], "basis_labels": ["a", "b"]})
    assert L.labels == ["a", "b"] and L.det() == 3
    assert lattice_from_dict(L.to_dict()).same_as(L)


@settings(max_examples=60)
@given(grams())
def test_discriminant_order_is_det(g):
    d = _det(g)
    if d == 0:
        return
    L = Lattice.from_gram(g)
    assert discriminant_group(L).order == abs(d)
    assert dual_lattice(dual_lattice(L)).same_as(L)


@settings(max_examples=25)
@given(grams(max_rank=3))
def test_character_group_isomorphism(g):
    if _det(g) == 0:
        return
    chk = character_group_check(Lattice.from_gram(g))
    assert chk["isomorphism"] and chk["characters"] == chk["order"]


@settings(max_examples=40)
@given(grams(max_rank=3), st.lists(st.fractions(-2, 2, max_denominator=5), min_size=3, max_size=3),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_lift_unique_mod_dual(g, targets, shifts):
    if _det(g) == 0:
        return
    L = Lattice.from_gram(g)
    r = targets[:L.rank]
    a = solve_lift(L, r)
    b = solve_lift(L, [x + s for x, s in zip(r, shifts)])
    assert a.dual.contains([x - y for x, y in zip(a.alpha, b.alpha)])


@settings(max_examples=40)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3), st.integers(1, 4))
def test_complement_is_orthogonal(v, k):
    if not any(v):
        return
    amb = Lattice.from_gram([[2 * k, 1, 0], [1, 2, 0], [0, 0, 3]])
    C = orthogonal_complement(amb, [v])
    assert all(amb.pair(b, v) == 0 for b in C.basis)
    assert C.rank == 2


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_normal_form(m):
    U, D, V = smith_normal_form(m)

    def mul(a, b):
        return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]

    assert mul(mul(U, m), V) == D
    diag = [D[i][i] for i in range(3)]
    assert all(D[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
