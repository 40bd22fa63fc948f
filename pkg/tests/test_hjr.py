import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from artifact.cochains import ParameterA, ParameterB
from artifact.coboundary import multicharacter_class
from artifact.errors import PreconditionError
from artifact.groups import GroupElement, ModulusData, QmElement
from artifact.hjr import (
    H2Class,
    d_part,
    delta_map,
    h2_class,
    nu_b,
    obstruction_c_a_eval,
    obstruction_c_b_eval,
    partial_Qm,
    res_map,
)
from artifact.invariants import Circle, Cyclic, class_coordinates, membership_Z
from artifact.resolution import third_cocycle_c_a
from artifact.sampling import random_parameter_a, random_parameter_b

F = Fraction


def qm_grid(m, s_values=(-1, 0, 1)):
    """All residue vectors with a few z_0 offsets."""
    out = []
    for res in product(*(range(p) for p in m.p)):
        base = m.n(GroupElement(res))
        for k in s_values:
            out.append(QmElement(res, base + k, m))
    return out


def coboundary3(c, x, y, z, w):
    return c(y, z, w) - c(x * y, z, w) + c(x, y * z, w) - c(x, y, z * w) + c(x, y, z)


# --- second cohomology of H ------------------------------------------------

def test_h2_class_examples():
    cls = h2_class(ParameterA({(2, 1, 3): F(1, 2), (1, 2, 3): F(1, 2)}), rank=3)
    assert cls.triples[(1, 2, 3)] == (Circle(F(1, 2)), Circle(0))
    assert cls.pairs[(1, 2)] == (Circle(0, 2), Circle(0, 2))
    zero = h2_class(ParameterA({(1, 2, 3): F(3), (1, 1, 2): F(2), (3, 1, 3): F(-4)}), rank=3)
    assert zero.is_zero()
    assert not h2_class(ParameterA({(1, 1, 2): F(1)}), rank=2).is_zero()


def test_h2_class_needs_integer_asymmetrization():
    with pytest.raises(PreconditionError):
        h2_class(ParameterA({(1, 2, 3): F(1, 2)}), rank=3)


# --- Res -------------------------------------------------------------------

def test_res_map_kills_cyclic_part_and_keeps_circles():
    m = ModulusData((2, 2, 2), (0, 1, 1))
    a = ParameterA({(1, 2, 3): F(1, 3), (2, 1, 3): F(1, 3), (3, 1, 2): F(0)})
    cls = res_map(a, m)
    cyc, c2, c3 = cls.a_triples[(1, 2, 3)]
    assert cyc == Cyclic(2, 0) and c2 == Circle(F(1, 3)) and c3 == Circle(0)
    assert res_map(ParameterA({}), m).is_zero()


def test_res_cokernel_is_cyclic_of_order_D():
    """p = (2,2,2): Res reaches exactly {0} ⊕ T², and the quotient has two cosets."""
    m = ModulusData((2, 2, 2), (1, 1, 0))
    grid = [F(k, 4) for k in range(-4, 5)]
    reached, all_cyclic = set(), set()
    for x, y, z in product(grid, repeat=3):
        a = ParameterA({(1, 2, 3): x, (2, 1, 3): y, (3, 1, 2): z})
        if not membership_Z(a, ParameterB({}), m):
            continue
        cyc = class_coordinates(a, ParameterB({}), m).a_triples[(1, 2, 3)][0]
        all_cyclic.add(cyc.value)
        if a.AS(1, 2, 3).denominator == 1:
            reached.add(res_map(a, m).a_triples[(1, 2, 3)][0].value)
    assert reached == {0}
    assert all_cyclic == {0, 1}


# --- δ ---------------------------------------------------------------------

def test_delta_map_examples():
    m = ModulusData((2, 2, 2), (0, 0, 0))
    a = ParameterA({(1, 2, 3): F(1, 2)})
    ob = delta_map(a, ParameterB({}), m)
    assert ob.a_sector[(1, 2, 3)] == Cyclic(2, 1)
    assert not ob.is_zero()
    # kernel: circle coordinates alone never obstruct
    ker = delta_map(ParameterA({(2, 1, 3): F(1, 3), (3, 1, 2): F(1, 3), (1, 1, 2): F(1, 5)}), ParameterB({}), m)
    assert ker.is_zero()


def test_delta_nu_example():
    m = ModulusData((2,), (1,))
    b = ParameterB({(1, 0): F(1, 2), (1, 1): F(1, 4)})
    ob = delta_map(ParameterA({}), b, m)
    assert ob.nu == {1: F(1, 2)}
    assert nu_b(b, GroupElement((2,)), m) == F(1, 2)
    assert nu_b(ParameterB({(1, 1): F(1)}), GroupElement((2,)), m) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_delta_depends_only_on_asymmetrization(seed):
    rng = random.Random(seed)
    p = rng.choice([(2, 2, 2), (2, 4, 6), (3, 3, 3), (2, 3, 4)])
    m = ModulusData(p, tuple(rng.randrange(x) for x in p))
    a = random_parameter_a(rng, 3, p=p)
    b = random_parameter_b(rng, m)
    assert delta_map(a, b, m) == delta_map(a.hat(), b, m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_exactness_at_lambda(seed):
    """δ = 0 iff the Λ-class has zero cyclic a-parts and zero b-sector."""
    rng = random.Random(seed)
    r = rng.randint(1, 3)
    p = tuple(rng.randint(1, 4) for _ in range(r))
    m = ModulusData(p, tuple(rng.randrange(x) for x in p))
    a = random_parameter_a(rng, r, p=p)
    b = random_parameter_b(rng, m, max_den=2)
    if rng.random() < 0.5:
        b = ParameterB({k: F(round(v)) for k, v in b.items()})
    if not membership_Z(a, b, m):
        return
    cls = class_coordinates(a, b, m)
    from_res = all(c[0].is_zero() for c in cls.a_triples.values()) and all(
        all(x.is_zero() for x in v) for d in (cls.b_diag, cls.b_pairs) for v in d.values()
    )
    assert delta_map(a, b, m).is_zero() == from_res


def test_delta_is_injective_on_b_sector():
    m = ModulusData((4, 2), (2, 1))
    b = ParameterB({(1, 1): F(1, 4), (1, 2): F(1, 4), (1, 0): F(1, 2)})
    assert membership_Z(ParameterA({}), b, m)
    assert not delta_map(ParameterA({}), b, m).is_zero()


# --- the closed-form obstructions ------------------------------------------

def test_c_a_examples():
    m = ModulusData((2, 2, 2), (0, 0, 0))
    ah = ParameterA({(1, 2, 3): F(1, 2)})
    one = QmElement((1, 1, 1), F(0), m)
    zero_first = QmElement((0, 1, 1), F(0), m)
    assert obstruction_c_a_eval(ah, one, one, one, m) == F(1, 2)
    assert obstruction_c_a_eval(ah, zero_first, one, one, m) == 0
    # independent of s-components
    shifted = QmElement((1, 1, 1), F(5), m)
    assert obstruction_c_a_eval(ah, shifted, one, one, m) == F(1, 2)


def test_c_a_rejects_non_hat_parameters():
    m = ModulusData((2, 2, 2), (0, 0, 0))
    one = QmElement((1, 1, 1), F(0), m)
    with pytest.raises(PreconditionError):
        obstruction_c_a_eval(ParameterA({(2, 1, 3): F(1, 2)}), one, one, one, m)
    with pytest.raises(PreconditionError):
        obstruction_c_a_eval(ParameterA({(1, 2, 3): F(1, 3)}), one, one, one, m)


@pytest.mark.parametrize("p", [(2, 2, 2), (2, 3, 3), (3, 3, 3)])
def test_c_a_is_a_3_cocycle_exhaustively(p):
    m = ModulusData(p, (0,) * 3)
    D = 1
    from math import gcd
    D = gcd(*p)
    ah = ParameterA({(1, 2, 3): F(1, D) if D > 1 else F(0)})
    grid = qm_grid(m, s_values=(0,))
    c = lambda x, y, z: obstruction_c_a_eval(ah, x, y, z, m)
    rng = random.Random(1)
    quads = list(product(grid, repeat=4)) if len(grid) ** 4 <= 20000 else [tuple(rng.choice(grid) for _ in range(4)) for _ in range(20000)]
    for x, y, z, w in quads:
        assert coboundary3(c, x, y, z, w).denominator == 1


@pytest.mark.parametrize("p,q", [((2,), (1,)), ((3,), (1,)), ((2, 2), (1, 0)), ((2, 3), (1, 2)), ((3, 3), (2, 1))])
def test_c_b_is_a_3_cocycle_exhaustively(p, q):
    m = ModulusData(p, q)
    rng = random.Random(sum(p) + sum(q))
    grid = qm_grid(m, s_values=(0, 1))
    for _ in range(3):
        b = random_parameter_b(rng, m)
        c = lambda x, y, z: obstruction_c_b_eval(b, x, y, z, m)
        for x, y, z, w in product(grid, repeat=4) if len(grid) ** 4 <= 4096 else (
            tuple(rng.choice(grid) for _ in range(4)) for _ in range(4000)
        ):
            assert coboundary3(c, x, y, z, w).denominator == 1


def test_d_part_example():
    m = ModulusData((2,), (1,))
    b = ParameterB({(1, 0): F(1, 2), (1, 1): F(1, 4)})
    one = QmElement((1,), F(1, 2), m)
    assert d_part(b, one, one, m) == F(1, 2)
    zero = QmElement((0,), F(0), m)
    assert d_part(b, one, zero, m) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_d_part_is_c_b_on_z0(seed):
    """The z_0-linear part of c_b: c_b(z_0 q1, q2, q3) − c_b(q1, q2, q3) = d_part(q2, q3)."""
    rng = random.Random(seed)
    r = rng.randint(1, 2)
    p = tuple(rng.randint(2, 4) for _ in range(r))
    m = ModulusData(p, tuple(rng.randrange(x) for x in p))
    b = random_parameter_b(rng, m)
    grid = qm_grid(m)
    z0 = QmElement((0,) * r, F(1), m)
    for _ in range(30):
        x, y, z = (rng.choice(grid) for _ in range(3))
        lhs = obstruction_c_b_eval(b, z0 * x, y, z, m) - obstruction_c_b_eval(b, x, y, z, m)
        assert (lhs - d_part(b, y, z, m)) % 1 == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_nu_b_is_additive(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 3)
    p = tuple(rng.randint(1, 4) for _ in range(r))
    m = ModulusData(p, tuple(rng.randrange(x) for x in p))
    b = random_parameter_b(rng, m)
    g = GroupElement(tuple(x * rng.randint(-5, 5) for x in p))
    h = GroupElement(tuple(x * rng.randint(-5, 5) for x in p))
    assert nu_b(b, g + h, m) == (nu_b(b, g, m) + nu_b(b, h, m)) % 1
    assert 0 <= nu_b(b, g, m) < 1


def test_nu_b_rejects_elements_outside_N():
    m = ModulusData((2,), (1,))
    with pytest.raises(PreconditionError):
        nu_b(ParameterB({}), GroupElement((1,)), m)


# --- ∂_{Q_m} ---------------------------------------------------------------

def test_partial_Qm_examples():
    assert partial_Qm(ParameterA({(1, 2, 3): F(2)}), rank=3).is_zero()
    cls = partial_Qm(ParameterA({(1, 2, 3): F(1, 2)}), rank=3)
    assert cls.entries == {(1, 2, 3): F(1, 2)}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_partial_Qm_matches_engine_class(seed):
    rng = random.Random(seed)
    r = rng.randint(3, 4)
    p = tuple(rng.randint(1, 4) for _ in range(r))
    a = random_parameter_a(rng, r, p=p)
    hat = a.hat()
    engine = multicharacter_class(third_cocycle_c_a(hat, r))
    assert partial_Qm(a, rank=r).entries == engine.entries
    from math import gcd
    for (i, j, k), v in partial_Qm(a, rank=r).entries.items():
        assert (v * gcd(p[i - 1], p[j - 1], p[k - 1])).denominator == 1
