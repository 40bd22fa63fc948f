import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from artifact.cochains import ParameterA, PolyCochain, boundary, mono
from artifact.coboundary import find_witness, is_cocycle, verify_witness
from artifact.errors import PreconditionError
from artifact.groups import GroupElement, heisenberg_mul, section_H
from artifact.resolution import resolve_third_cocycle, third_cocycle_c_a, verify_resolution
from artifact.sampling import random_heisenberg, random_rational

F = Fraction


def triple_param(rng, r, max_den=6):
    return ParameterA({t: random_rational(rng, max_den) for t in combinations(range(1, r + 1), 3)})


def b_by_hand(a, x, y):
    """Σ a(i,j,k) e_i(π_0 x) e_{j,k}(m_0 y), read straight off the coordinates."""
    return sum(
        (v * x.g.coords[i - 1] * y.central_dict.get((j, k), 0) for (i, j, k), v in a.items()),
        F(0),
    )


def test_c_a_examples():
    assert third_cocycle_c_a(ParameterA({}), 3).is_zero()
    a = ParameterA({(1, 2, 3): F(1, 3)})
    c = third_cocycle_c_a(a, 3)
    units = [GroupElement.basis(i, 3) for i in (1, 2, 3)]
    assert c.evaluate(units) == F(1, 3)
    assert is_cocycle(c)


def test_c_a_rejects_non_triple_patterns():
    with pytest.raises(PreconditionError):
        third_cocycle_c_a(ParameterA({(2, 1, 3): F(1, 2)}), 3)
    with pytest.raises(PreconditionError):
        third_cocycle_c_a(ParameterA({(1, 2, 4): F(1, 2)}), 3)


def test_resolution_zero_and_example():
    assert resolve_third_cocycle(ParameterA({}), 3).is_zero()
    a = ParameterA({(1, 2, 3): F(1, 3)})
    b = resolve_third_cocycle(a, 3)
    xs = [section_H(GroupElement.basis(i, 3)) for i in (1, 2, 3)]
    lhs = third_cocycle_c_a(a, 3).evaluate(xs)
    assert lhs == F(1, 3)
    assert boundary(b).evaluate(xs) == lhs


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_resolution_is_symbolic_identity(seed):
    rng = random.Random(seed)
    r = rng.randint(3, 4)
    a = triple_param(rng, r)
    c = third_cocycle_c_a(a, r)
    b = resolve_third_cocycle(a, r)
    assert (boundary(b) - c).is_zero()
    for _ in range(20):
        x, y = random_heisenberg(rng, r), random_heisenberg(rng, r)
        assert b.evaluate([x, y]) == b_by_hand(a, x, y)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_resolution_identity_through_group_law(seed):
    """Independent of the symbolic boundary: expand ∂b with explicit H products."""
    rng = random.Random(seed)
    r = rng.randint(3, 4)
    a = triple_param(rng, r)
    c = third_cocycle_c_a(a, r)
    b = resolve_third_cocycle(a, r)
    for _ in range(20):
        x, y, z = (random_heisenberg(rng, r) for _ in range(3))
        db = b.evaluate([y, z]) - b.evaluate([heisenberg_mul(x, y), z]) \
            + b.evaluate([x, heisenberg_mul(y, z)]) - b.evaluate([x, y])
        assert db == c.evaluate([x, y, z])


def test_verify_resolution_reports():
    a = ParameterA({(1, 2, 3): F(1, 3), (2, 3, 4): F(-5, 6)})
    good = verify_resolution(a, resolve_third_cocycle(a, 4), rank=4, sample_count=100, seed=7)
    assert good.ok and good.failures == 0 and good.max_deviation == 0 and good.symbolic_zero
    bad = verify_resolution(a, PolyCochain(4, 2, "H", {}), rank=4, sample_count=100, seed=7)
    assert not bad.ok and bad.failures > 0 and bad.max_deviation > 0
    again = verify_resolution(a, PolyCochain(4, 2, "H", {}), rank=4, sample_count=100, seed=7)
    assert again == bad


def test_verify_resolution_checks_arities():
    a = ParameterA({(1, 2, 3): F(1, 3)})
    with pytest.raises(PreconditionError):
        verify_resolution(a, mono(3, [1]).with_flavor("H"), rank=3)


@pytest.mark.parametrize("r", [3, 4])
def test_every_generator_becomes_a_coboundary_on_H(r):
    """The pulled-back generator cocycles have witnesses found by the generic solver."""
    for i, j, k in combinations(range(1, r + 1), 3):
        c = mono(r, [i], [j], [k]).with_flavor("H")
        f = find_witness(c)
        assert f is not None and verify_witness(c, f)
        # a fractional multiple also dies on H
        c2 = F(1, 5) * c
        f2 = find_witness(c2)
        assert f2 is not None and verify_witness(c2, f2)
