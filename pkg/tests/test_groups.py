from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from artifact.groups import (
    GmElement,
    GroupElement,
    HeisenbergElement,
    HmElement,
    ModulusData,
    QmElement,
    commutator,
    embed_N,
    euclid_pair,
    gauss_cocycle,
    gauss_residue,
    heisenberg_mul,
    nL_cocycle,
    nM_cocycle,
    nN_cocycle,
    qm_lift,
    section_H,
    section_sm,
)


def ints(n, lo=-6, hi=6):
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n)


@st.composite
def heis(draw, r=3):
    g = draw(ints(r))
    central = {}
    for j in range(1, r + 1):
        for k in range(j + 1, r + 1):
            central[(j, k)] = draw(st.integers(-5, 5))
    return HeisenbergElement(central, GroupElement(g))


# --- residues and the carry cocycle ---------------------------------------

def test_gauss_residue_examples():
    assert gauss_residue(7, 5) == 2
    assert gauss_residue(0, 5) == 0
    assert gauss_residue(-1, 5) == 4


def test_gauss_residue_rejects_small_modulus():
    with pytest.raises(ValueError):
        gauss_residue(3, 1)


def test_gauss_cocycle_examples():
    assert gauss_cocycle(3, 4, 5) == 5
    assert gauss_cocycle(1, 2, 5) == 0
    for j in range(-7, 8):
        assert gauss_cocycle(0, j, 5) == 0


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(2, 9))
def test_gauss_cocycle_values_and_cocycle_identity(i, j, k, p):
    eta = lambda x, y: gauss_cocycle(x, y, p)
    assert eta(i, j) in (0, p)
    # floor form of the carry
    assert eta(i, j) == p * ((i % p + j % p) // p)
    assert eta(j, k) - eta(i + j, k) + eta(i, j + k) - eta(i, j) == 0


# --- Bezout data -----------------------------------------------------------

def brute_euclid(p, q):
    d = gcd(p, q)
    best = None
    for u in range(1, q + 2):
        if (p * u - d) % q == 0 if q else p * u == d:
            v = (p * u - d) // q if q else 0
            best = (d, u, v)
            break
    return best


@pytest.mark.parametrize("p,q,expected", [((4), 2, (2, 1, 1)), (3, 2, (1, 1, 1)), (7, 0, (7, 1, 0))])
def test_euclid_pair_examples(p, q, expected):
    assert euclid_pair(p, q) == expected


@given(st.integers(1, 40), st.integers(0, 40))
def test_euclid_pair_is_least_positive_solution(p, q):
    d, u, v = euclid_pair(p, q)
    assert d == gcd(p, q)
    assert p * u - q * v == d
    assert (d, u, v) == brute_euclid(p, q)


# --- Heisenberg group ------------------------------------------------------

def test_heisenberg_basis_product():
    a1 = section_H(GroupElement((1, 0)))
    a2 = section_H(GroupElement((0, 1)))
    prod = heisenberg_mul(a1, a2)
    assert prod.central_dict == {(1, 2): 1}
    assert prod.g == GroupElement((1, 1))


def test_heisenberg_central_product_is_entrywise():
    x = HeisenbergElement({(1, 2): 3, (1, 3): -1}, GroupElement((0, 0, 0)))
    y = HeisenbergElement({(1, 2): 2, (2, 3): 5}, GroupElement((0, 0, 0)))
    assert heisenberg_mul(x, y).central_dict == {(1, 2): 5, (1, 3): -1, (2, 3): 5}


@settings(max_examples=60)
@given(heis(), heis(), heis())
def test_heisenberg_group_axioms(x, y, z):
    assert heisenberg_mul(heisenberg_mul(x, y), z) == heisenberg_mul(x, heisenberg_mul(y, z))
    e = HeisenbergElement.identity(3)
    assert heisenberg_mul(x, x.inverse()) == e
    assert heisenberg_mul(x.inverse(), x) == e


@settings(max_examples=60)
@given(heis(), heis())
def test_commutator_is_central_and_matches_formula(x, y):
    c = commutator(x, y)
    assert c.g == GroupElement.zero(3)
    g, h = x.g.coords, y.g.coords
    want = {}
    for j in range(1, 4):
        for k in range(j + 1, 4):
            val = g[j - 1] * h[k - 1] - h[j - 1] * g[k - 1]
            if val:
                want[(j, k)] = val
    assert c.central_dict == want
    # the conjugation rule y^-1 x y = (x^y) x
    lhs = heisenberg_mul(heisenberg_mul(y.inverse(), x), y)
    assert lhs == heisenberg_mul(c, x)


def test_commutator_examples():
    a1 = section_H(GroupElement((1, 0)))
    a2 = section_H(GroupElement((0, 1)))
    assert commutator(a1, a2).central_dict == {(1, 2): 1}
    assert commutator(a1, a1) == HeisenbergElement.identity(2)
    two = section_H(GroupElement((2, 0)))
    three = section_H(GroupElement((0, 3)))
    assert commutator(two, three).central_dict == {(1, 2): 6}


@given(ints(3), ints(3), ints(3))
def test_nM_is_a_two_cocycle(g, h, k):
    g, h, k = GroupElement(g), GroupElement(h), GroupElement(k)
    lhs = _add(nM_cocycle(g, h), nM_cocycle(g + h, k))
    rhs = _add(nM_cocycle(h, k), nM_cocycle(g, h + k))
    assert lhs == rhs


def _add(a, b):
    out = dict(a)
    for key, v in b.items():
        out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


def test_rank_mismatch_rejected():
    with pytest.raises(ValueError):
        heisenberg_mul(HeisenbergElement.identity(2), HeisenbergElement.identity(3))


# --- modulus extensions ----------------------------------------------------

def test_modulus_validation():
    with pytest.raises(ValueError):
        ModulusData((0,), (0,))
    with pytest.raises(ValueError):
        ModulusData((3,), (3,))
    with pytest.raises(ValueError):
        ModulusData((3, 2), (1,))


def test_section_sm_examples():
    m = ModulusData((4,), (2,))
    assert section_sm(GroupElement((0,)), m).s == 0
    z1 = section_sm(GroupElement((1,)), m)
    assert z1.s == Fraction(1, 2) and z1.e0 == 0
    b1 = embed_N(GroupElement((4,)), m)
    assert b1.e0 == -2
    # b_1 = p_1 z_1 - q_1 z_0
    z0 = GmElement(GroupElement((0,)), Fraction(1), m)
    assert b1 == z1 ** 4 * z0 ** -2


def test_gm_congruence_enforced():
    m = ModulusData((4,), (2,))
    with pytest.raises(ValueError):
        GmElement(GroupElement((1,)), Fraction(1, 3), m)


def test_hm_product_and_inverse():
    m = ModulusData((2, 3), (1, 2))
    x = HmElement({(1, 2): 1}, GroupElement((1, 2)), Fraction(1, 2) + Fraction(4, 3) + 2, m)
    y = HmElement({}, GroupElement((-1, 1)), -Fraction(1, 2) + Fraction(2, 3), m)
    xy = x * y
    assert xy.central_dict == {(1, 2): 1 + 1 * 1}
    assert xy.e0 == x.e0 + y.e0
    assert x * x.inverse() == HmElement.identity(m)


def test_nN_examples():
    m = ModulusData((2,), (1,))
    q = QmElement((1,), Fraction(1, 2), m)
    assert nN_cocycle(q, q, m) == GroupElement((2,))
    zero = QmElement((0,), Fraction(0), m)
    assert nN_cocycle(zero, q, m) == GroupElement((0,))
    m2 = ModulusData((2, 3), (0, 0))
    q2 = QmElement((1, 2), Fraction(0), m2)
    assert nN_cocycle(q2, q2, m2) == GroupElement((2, 3))


def _all_qm(m, shifts=(0, 1)):
    from itertools import product
    for res in product(*[range(p) for p in m.p]):
        base = sum(Fraction(r * q, p) for r, q, p in zip(res, m.q, m.p))
        for t in shifts:
            yield QmElement(res, base + t, m)


@pytest.mark.parametrize("p,q", [((2,), (1,)), ((3, 2), (2, 1)), ((4, 2), (2, 0))])
def test_section_boundary_is_nN(p, q):
    m = ModulusData(p, q)
    for x in _all_qm(m):
        for y in _all_qm(m):
            lhs = qm_lift(x) * qm_lift(y)
            rhs = embed_N(nN_cocycle(x, y, m), m) * qm_lift(x * y)
            assert lhs == rhs


@pytest.mark.parametrize("p,q", [((2, 2), (1, 0)), ((3, 2, 2), (1, 1, 0))])
def test_nL_matches_heisenberg_products(p, q):
    m = ModulusData(p, q)
    for x in _all_qm(m, shifts=(0,)):
        for y in _all_qm(m, shifts=(0,)):
            sx, sy, sxy = (section_H(GroupElement(t.q)) for t in (x, y, x * y))
            oracle = heisenberg_mul(heisenberg_mul(sx, sy), sxy.inverse())
            assert nL_cocycle(x, y, m) == oracle


def test_nL_examples():
    m = ModulusData((2, 2), (0, 0))
    x = QmElement((1, 0), Fraction(0), m)
    y = QmElement((0, 1), Fraction(0), m)
    got = nL_cocycle(x, y, m)
    assert got.central_dict == {(1, 2): 1} and got.g == GroupElement((0, 0))
    zero = QmElement((0, 0), Fraction(0), m)
    assert nL_cocycle(zero, y, m) == HeisenbergElement.identity(2)
    m1 = ModulusData((3,), (1,))
    one = QmElement((2,), Fraction(2, 3), m1)
    got = nL_cocycle(one, one, m1)
    assert got.central_dict == {} and got.g == GroupElement((3,))


def test_qm_congruence_and_bounds():
    m = ModulusData((3,), (1,))
    with pytest.raises(ValueError):
        QmElement((3,), Fraction(0), m)
    with pytest.raises(ValueError):
        QmElement((1,), Fraction(0), m)
