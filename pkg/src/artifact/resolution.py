"""Resolving a third cocycle of Z^r by a 2-cochain on the Heisenberg group.

For c_a = Σ a(i,j,k) e_i⊗e_j⊗e_k (i<j<k) the 2-cochain
b_a(x; y) = Σ a(i,j,k) e_i(π_0 x) e_{j,k}(m_0 y) on H satisfies ∂b_a = π_0* c_a
exactly, since e_{j,k}(m_0(yz)) − e_{j,k}(m_0 y) − e_{j,k}(m_0 z) = e_j(y)e_k(z).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cochains import ParameterA, PolyCochain, b_eta_zeta, boundary, mono
from .errors import PreconditionError
from .groups import heisenberg_mul
from .sampling import random_heisenberg

F = Fraction


def _check_triples(a: ParameterA, rank: int):
    for x, y, z in a.keys():
        if not x < y:
            raise PreconditionError(f"third cocycle parameters must sit on i<j<k; got a{(x, y, z)}")
        if z > rank:
            raise PreconditionError(f"index {z} exceeds rank {rank}")


def third_cocycle_c_a(a: ParameterA, rank: int) -> PolyCochain:
    _check_triples(a, rank)
    c = PolyCochain(rank, 3, "G", {})
    for (i, j, k), v in a.items():
        c += v * mono(rank, [i], [j], [k])
    return c


def _unit(i, rank):
    return [1 if n == i else 0 for n in range(1, rank + 1)]


def resolve_third_cocycle(a: ParameterA, rank: int) -> PolyCochain:
    _check_triples(a, rank)
    b = PolyCochain(rank, 2, "H", {})
    for (i, j, k), v in a.items():
        B = b_eta_zeta(_unit(j, rank), _unit(k, rank))
        b += v * mono(rank, [i]).with_flavor("H").tensor(B)
    return b


@dataclass(frozen=True)
class ResolutionReport:
    samples: int
    failures: int
    max_deviation: Fraction  # distance of π_0*c_a − ∂b from Z, maximised over samples
    symbolic_zero: bool  # ∂b − π_0*c_a is the zero polynomial
    seed: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _dist(x: Fraction) -> Fraction:
    x %= 1
    return min(x, 1 - x)


def verify_resolution(a: ParameterA, b: PolyCochain, rank: int, sample_count: int = 100, seed: int = 0) -> ResolutionReport:
    """Compare π_0*c_a with ∂_H b on seeded random H-triples, via explicit products."""
    if b.arity != 2 or b.rank != rank:
        raise PreconditionError(f"need a rank-{rank} 2-cochain, got arity {b.arity} rank {b.rank}")
    c = third_cocycle_c_a(a, rank)
    rng = random.Random(seed)
    failures, worst = 0, F(0)
    for _ in range(sample_count):
        x, y, z = (random_heisenberg(rng, rank) for _ in range(3))
        db = b.evaluate([y, z]) - b.evaluate([heisenberg_mul(x, y), z]) \
            + b.evaluate([x, heisenberg_mul(y, z)]) - b.evaluate([x, y])
        d = _dist(c.evaluate([x, y, z]) - db)
        if d:
            failures += 1
            worst = max(worst, d)
    symbolic = (boundary(b) - c.with_flavor("H")).is_zero()
    return ResolutionReport(sample_count, failures, worst, symbolic, seed)
