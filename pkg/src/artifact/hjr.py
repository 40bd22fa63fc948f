"""Second cohomology of H, the restriction Res, the modified HJR map δ and ∂_{Q_m}.

Torus values are returned as exponents (rationals, read mod 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .cochains import ParameterA, ParameterB
from .coboundary import MultiCharacterClass
from .errors import PreconditionError
from .groups import GroupElement, ModulusData, QmElement, nN_cocycle
from .invariants import (
    Circle,
    ClassCoordinates,
    Cyclic,
    class_a_ijk,
    class_coordinates,
    membership_Z,
)

F = Fraction


def _rank_of(a: ParameterA, rank: int | None) -> int:
    r = a.max_index() if rank is None else rank
    try:
        a.check_rank(r)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    return r


# --- H²(H, T) --------------------------------------------------------------

@dataclass(frozen=True)
class H2Class:
    triples: dict = field(default_factory=dict)  # (i,j,k) -> (Circle, Circle)
    pairs: dict = field(default_factory=dict)  # (i,k) -> (Circle/2, Circle/2)

    def is_zero(self) -> bool:
        return all(c.is_zero() for d in (self.triples, self.pairs) for v in d.values() for c in v)

    def to_json(self) -> dict:
        return {
            "triples": [{"pattern": list(k), "class": [c.to_json() for c in v]} for k, v in sorted(self.triples.items())],
            "pairs": [{"pattern": list(k), "class": [c.to_json() for c in v]} for k, v in sorted(self.pairs.items())],
        }


def _require_integer_AS(a: ParameterA, r: int):
    for i, j, k in combinations(range(1, r + 1), 3):
        if a.AS(i, j, k).denominator != 1:
            raise PreconditionError(f"second-cocycle condition at (i,j,k)=({i},{j},{k}): AS a = {a.AS(i, j, k)} not in Z")


def h2_class(a: ParameterA, rank: int | None = None) -> H2Class:
    """Per-pattern class of μ_a in H²(H, T): ([a(j,i,k)], [a(k,i,j)]) and ([a(i,i,k)]_2, [a(k,i,k)]_2)."""
    r = _rank_of(a, rank)
    _require_integer_AS(a, r)
    triples = {
        (i, j, k): (Circle(a.get(j, i, k)), Circle(a.get(k, i, j)))
        for i, j, k in combinations(range(1, r + 1), 3)
    }
    pairs = {
        (i, k): (Circle(a.get(i, i, k), 2), Circle(a.get(k, i, k), 2))
        for i, k in combinations(range(1, r + 1), 2)
    }
    return H2Class(triples, pairs)


def res_map(a: ParameterA, m: ModulusData) -> ClassCoordinates:
    """Λ-class of Res(μ_a) = (λ_a, μ_a); the cyclic a-coordinates vanish."""
    _require_integer_AS(a, _rank_of(a, m.rank))
    return class_coordinates(a, ParameterB({}), m)


# --- δ ---------------------------------------------------------------------

@dataclass(frozen=True)
class ModularObstruction:
    """δ of a characteristic class: c_{AS a} per triple, the b-sector class and ν_b on generators of N."""

    a_sector: dict  # (i,j,k) -> Cyclic(D, D·AS a)
    b_diag: dict
    b_pairs: dict
    nu: dict  # j -> ν_b(b_j) / T, in [0, 1)

    def is_zero(self) -> bool:
        return (
            all(c.is_zero() for c in self.a_sector.values())
            and all(c.is_zero() for d in (self.b_diag, self.b_pairs) for v in d.values() for c in v)
        )

    def to_json(self) -> dict:
        def enc(d):
            return [
                {"pattern": list(k) if isinstance(k, tuple) else [k, k], "class": [c.to_json() for c in v]}
                for k, v in sorted(d.items())
            ]

        return {
            "a_sector": [{"pattern": list(k), "class": v.to_json()} for k, v in sorted(self.a_sector.items())],
            "b_diag": enc(self.b_diag),
            "b_pairs": enc(self.b_pairs),
            "nu": [{"generator": j, "value": f"{v.numerator}/{v.denominator}", "symbolic": f"{v.numerator}/{v.denominator}·T"}
                   for j, v in sorted(self.nu.items())],
        }


def delta_map(a: ParameterA, b: ParameterB, m: ModulusData) -> ModularObstruction:
    res = membership_Z(a, b, m)
    if not res:
        raise PreconditionError(res.reason)
    r = m.rank
    a_sector = {t: class_a_ijk(a, *t, m)[0] for t in combinations(range(1, r + 1), 3)}
    coords = class_coordinates(ParameterA({}), b, m)
    nu = {j: b.get(j, 0) % 1 for j in range(1, r + 1)}
    return ModularObstruction(a_sector, coords.b_diag, coords.b_pairs, nu)


# --- closed-form obstruction cocycles on Q_m -------------------------------

def _check_hat(ah: ParameterA, m: ModulusData):
    if not ah.triples_only():
        raise PreconditionError("the obstruction c_a needs a parameter supported on increasing triples i<j<k")
    try:
        ah.check_rank(m.rank)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    for (i, j, k), v in ah.items():
        D = gcd(m.p[i - 1], m.p[j - 1], m.p[k - 1])
        if (D * v).denominator != 1:
            raise PreconditionError(f"a-cocycle condition at (i,j,k)=({i},{j},{k}): {v} not in (1/{D})Z")


def obstruction_c_a_eval(ah: ParameterA, q1: QmElement, q2: QmElement, q3: QmElement, m: ModulusData) -> Fraction:
    """Σ â(i,j,k) {e_i(q1)}_{p_i} {e_j(q2)}_{p_j} {e_k(q3)}_{p_k}."""
    _check_hat(ah, m)
    return _c_a(ah, q1, q2, q3)


def _c_a(ah, q1, q2, q3) -> Fraction:
    # unchecked; callers validate the parameter once
    return sum((v * q1.residue(i) * q2.residue(j) * q3.residue(k) for (i, j, k), v in ah.items()), F(0))


def _check_b(b: ParameterB, m: ModulusData):
    res = membership_Z(ParameterA({}), b, m)
    if not res:
        raise PreconditionError(res.reason)


def _carries(q2: QmElement, q3: QmElement, m: ModulusData) -> list[int]:
    """e_{i,N}(n_N(q2; q3)), each 0 or 1."""
    n = nN_cocycle(q2, q3, m)
    return [c // p for c, p in zip(n.coords, m.p)]


def obstruction_c_b_eval(b: ParameterB, q1: QmElement, q2: QmElement, q3: QmElement, m: ModulusData) -> Fraction:
    """Σ b(i,j) e_{i,N}(n_N(q2;q3)) e~_j(s(q1)), with e~_0(s(q1)) = e~_0(q1)."""
    _check_b(b, m)
    return _c_b(b, q1, q2, q3, m)


def _c_b(b, q1, q2, q3, m) -> Fraction:
    kappa = _carries(q2, q3, m)
    total = F(0)
    for (i, j), v in b.items():
        if kappa[i - 1]:
            total += v * kappa[i - 1] * (q1.e0 if j == 0 else q1.residue(j))
    return total


def d_part(b: ParameterB, q2: QmElement, q3: QmElement, m: ModulusData) -> Fraction:
    """Σ_j b(j,0) η_j(q2, q3)/p_j: the z_0-linear part of c_b."""
    _check_b(b, m)
    kappa = _carries(q2, q3, m)
    return sum((b.get(j, 0) * kappa[j - 1] for j in range(1, m.rank + 1)), F(0))


def nu_b(b: ParameterB, g: GroupElement, m: ModulusData) -> Fraction:
    """ν_b(g)/T = Σ b(j,0) e_{j,N}(g) mod 1, for g in N."""
    if not m.in_N(g):
        raise PreconditionError(f"{g.coords} is not in N")
    return sum((b.get(j, 0) * e for j, e in enumerate(m.n_coords(g), start=1)), F(0)) % 1


# --- ∂_{Q_m} ---------------------------------------------------------------

def partial_Qm(a: ParameterA, rank: int | None = None) -> MultiCharacterClass:
    """Class of c_â^G = Σ AS a(i,j,k) e_i⊗e_j⊗e_k in H³(G, T); b and ν are annihilated."""
    r = _rank_of(a, rank)
    entries = {}
    for t in combinations(range(1, r + 1), 3):
        v = a.AS(*t) % 1
        if v:
            entries[t] = v
    return MultiCharacterClass(3, entries)
