"""Seeded random generators for cochains and group elements.

Every generator takes an explicit ``random.Random`` so suites are
reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cochains import PolyCochain, slot_basis, ParameterA, ParameterB
from .groups import GroupElement, HeisenbergElement, HmElement, ModulusData, QmElement

F = Fraction


def random_rational(rng: random.Random, max_den: int, span: int = 3) -> Fraction:
    den = rng.randint(1, max_den)
    return F(rng.randint(-span * den, span * den), den)


def random_cochain(rng, rank, arity, flavor="G", n_terms=4, max_den=6) -> PolyCochain:
    slots = slot_basis(rank, flavor)
    terms = {}
    for _ in range(n_terms):
        key = tuple(rng.choice(slots) for _ in range(arity))
        terms[key] = terms.get(key, F(0)) + random_rational(rng, max_den)
    return PolyCochain(rank, arity, flavor, terms)


def random_group_element(rng, rank, bound=5) -> GroupElement:
    return GroupElement(tuple(rng.randint(-bound, bound) for _ in range(rank)))


def _random_central(rng, rank, bound):
    return {(j, k): rng.randint(-bound, bound) for j in range(1, rank + 1) for k in range(j + 1, rank + 1)}


def random_heisenberg(rng, rank, bound=5) -> HeisenbergElement:
    return HeisenbergElement(_random_central(rng, rank, bound), random_group_element(rng, rank, bound))


def random_hm(rng, m: ModulusData, bound=5) -> HmElement:
    g = random_group_element(rng, m.rank, bound)
    return HmElement(_random_central(rng, m.rank, bound), g, m.n(g) + rng.randint(-bound, bound), m)


def random_L(rng, m: ModulusData, bound=3) -> HmElement:
    t = [rng.randint(-bound, bound) for _ in range(m.rank)]
    return HmElement.from_L(_random_central(rng, m.rank, bound), t, m)


def random_M(rng, m: ModulusData, bound=5) -> HmElement:
    return HmElement.central_element(_random_central(rng, m.rank, bound), m)


def random_qm(rng, m: ModulusData, bound=3) -> QmElement:
    q = tuple(rng.randrange(p) for p in m.p)
    return QmElement(q, m.n(GroupElement(q)) + rng.randint(-bound, bound), m)


def random_parameter_a(rng, rank, max_den=6, cocycle_den=None, p=None) -> ParameterA:
    """Random a on all patterns; with ``p`` given, AS a is forced into (1/gcd)Z."""
    from itertools import combinations
    from math import gcd
    entries = {}
    for i, j, k in combinations(range(1, rank + 1), 3):
        x, y, z = (random_rational(rng, max_den, 2) for _ in range(3))
        if p is not None:
            D = gcd(p[i - 1], p[j - 1], p[k - 1])
            target = F(rng.randint(-2 * D, 2 * D), D)
            x = target + y - z
        entries[(i, j, k)], entries[(j, i, k)], entries[(k, i, j)] = x, y, z
    for i, k in combinations(range(1, rank + 1), 2):
        entries[(i, i, k)] = random_rational(rng, max_den, 2)
        entries[(k, i, k)] = random_rational(rng, max_den, 2)
    return ParameterA(entries)


def random_parameter_b(rng, m: ModulusData, max_den=4) -> ParameterB:
    """Random b satisfying b(i,j)p_j - b(i,0)q_j in Z for all j >= 1."""
    entries = {}
    for i in range(1, m.rank + 1):
        u = random_rational(rng, max_den, 2)
        entries[(i, 0)] = u
        for j in range(1, m.rank + 1):
            pj, qj = m.p[j - 1], m.q[j - 1]
            entries[(i, j)] = (qj * u + rng.randint(-2 * pj, 2 * pj)) / pj
    return ParameterB(entries)
