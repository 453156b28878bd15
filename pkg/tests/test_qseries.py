from fractions import Fraction as F
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from voakit.qseries import (BadParams, NotFockDivisible, TwoVariableSeries, affine_sl2_character,
                            affine_sl2_vacuum_bruteforce, bc_character, branching_extract, eta,
                            eta_inverse, fock_character, multfree_char_criterion,
                            multfree_weight_criterion, orbit_points, partitions, singlet_weight,
                            spectral_flow, standard_character, verify_decomposition)

W2 = [[F(1, 4)]]
W43 = [[F(-3, 8)]]
N = 20


@lru_cache(maxsize=None)
def M(omega, order=2 * N + 4):
    return affine_sl2_character(2, omega, order)


@lru_cache(maxsize=None)
def K(h, order=N + 1):
    return standard_character("ising", {"h": h}, order).series


def test_eta_inverse_coefficients():
    e = eta_inverse(10)
    assert e.lowest_exponent() == F(-1, 24)
    assert e.q_list((), F(-1, 24), 1, 7) == [1, 1, 2, 3, 5, 7, 11]
    assert partitions(6) == [1, 1, 2, 3, 5, 7, 11]
    assert len(eta_inverse(0).terms) == 1


def test_eta_times_inverse():
    p = eta(15) * eta_inverse(15)
    assert p.agrees(TwoVariableSeries.one(0), 15)


def test_fock_leading_exponents():
    assert fock_character(W2, [2], 10).lowest_exponent() == F(1, 2) - F(1, 24)
    assert fock_character(W43, [2], 10).lowest_exponent() == F(-3, 4) - F(1, 24)
    assert fock_character(W2, [0], 10).slice((0,)).agrees(eta_inverse(10), 10)


def test_ising_characters_two_ways():
    from voakit.qseries import ising_fermion_character
    for h in ("0", "1/2", "1/16"):
        assert K(h, 20).agrees(ising_fermion_character(F(h), 20), 20)


def test_weyl_kac_matches_bruteforce():
    brute = affine_sl2_vacuum_bruteforce(2, 4)
    ch = affine_sl2_character(2, 0, 10)
    low = ch.lowest_exponent()
    for (n, charge), dim in brute.items():
        assert ch.coefficient((charge,), low + n) == dim


def test_decompositions():
    pairs0 = [((W2, l), K("0")) for l in orbit_points(W2, 0, 4, N + 1, -1)]
    pairs0 += [((W2, l), K("1/2")) for l in orbit_points(W2, 2, 4, N + 1, -1)]
    assert verify_decomposition(M(0), pairs0, N).ok
    pairs1 = [((W2, l), K("1/16")) for l in orbit_points(W2, 1, 2, N + 1, -1)]
    assert verify_decomposition(M(1), pairs1, N).ok
    r = verify_decomposition(M(0), pairs0[1:], N)
    assert not r.ok and r.first_residual is not None


def test_branchings():
    assert branching_extract(M(0), W2, [0], 12).agrees(K("0", 13), 12)
    assert branching_extract(M(0), W2, [2], 12).agrees(K("1/2", 13), 12)
    assert branching_extract(M(1), W2, [1], 12).agrees(K("1/16", 13), 12)


def test_single_fock_branching_is_one():
    F0 = fock_character(W43, [2], 14)
    b = branching_extract(F0, W43, [2], 8)
    assert b.agrees(TwoVariableSeries.one(0), 8)


def test_branching_not_fock_divisible():
    bad = TwoVariableSeries({((F(0),), F(0)): 1}, F(10), 1)
    with pytest.raises(NotFockDivisible):
        branching_extract(bad, W2, [0], 5)


def test_bc_branchings_are_one():
    ch = bc_character(14)
    for mu in range(-2, 3):
        assert branching_extract(ch, [[1]], [mu], 8).agrees(TwoVariableSeries.one(0), 8)


def test_criterion():
    c0 = multfree_char_criterion(M(0), W2, [2], N)
    assert not c0.holds and c0.failure[1] == F(-1, 16)
    c1 = multfree_char_criterion(M(1), W2, [2], N)
    assert c1.holds and not c1.unverified_charges
    assert multfree_char_criterion(M(0), W2, [0], N).holds


def test_weight_criterion():
    assert multfree_weight_criterion(W43, [0], [2]) == "guaranteed"
    assert multfree_weight_criterion(W2, [0], [2]) == "inconclusive"
    with pytest.raises(ValueError):
        multfree_weight_criterion(W2, [0], [0])
    assert singlet_weight(4) == singlet_weight(-4) == 5


def test_flow_maps_vacuum_module():
    assert spectral_flow(M(0), 1, 2, N).agrees(M(2), N)
    assert spectral_flow(M(1), 0, 2, N).agrees(M(1), N)


def test_bad_params():
    with pytest.raises(BadParams):
        standard_character("ising", {"h": "1/3"}, 5)
    with pytest.raises(BadParams):
        standard_character("nope", {}, 5)


def test_json_roundtrip():
    s = K("1/16", 8)
    assert TwoVariableSeries.from_dict(s.to_dict("x")).agrees(s, 8)


# -- properties ----------------------------------------------------------------

@st.composite
def series(draw, rank=1):
    n = draw(st.integers(1, 6))
    terms = {}
    for _ in range(n):
        mu = tuple(F(draw(st.integers(-3, 3))) for _ in range(rank))
        e = F(draw(st.integers(0, 12)), draw(st.sampled_from([1, 2, 8])))
        terms[(mu, e)] = draw(st.integers(-3, 3))
    return TwoVariableSeries(terms, F(draw(st.integers(3, 10))), rank)


@settings(max_examples=60)
@given(series(), series(), series())
def test_series_ring_laws(a, b, c):
    n = min(x.order for x in (a * b, b * a))
    assert (a * b).agrees(b * a, n)
    abc, abc2 = (a * b) * c, a * (b * c)
    assert abc.agrees(abc2, min(abc.order, abc2.order))
    s = a * (b + c)
    t = a * b + a * c
    assert s.agrees(t, min(s.order, t.order))


@settings(max_examples=30)
@given(st.integers(-2, 2), st.integers(-2, 2))
def test_flow_group_action(a, b):
    ch = M(1, 30)
    lhs = spectral_flow(spectral_flow(ch, a, 2), b, 2)
    rhs = spectral_flow(ch, a + b, 2)
    n = min(lhs.order, rhs.order, F(12))
    assert lhs.agrees(rhs, n)


@settings(max_examples=10)
@given(st.sampled_from([0, 1]))
def test_branching_roundtrip(omega):
    order = 10
    ch = M(omega, 30)
    pairs = []
    for mu in orbit_points(W2, omega, 2, order + 1, -1):
        b = branching_extract(ch, W2, mu, order + 1)
        assert all(charge == () for charge, _ in b.terms)
        pairs.append(((W2, mu), b))
    assert verify_decomposition(ch, pairs, order).ok
