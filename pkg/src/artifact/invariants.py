"""Characteristic cocycles (λ_{a,b}, μ_a) on (H_m, L, M) and their class coordinates.

Parameters (a, b) are checked against the cocycle lattice Z and the
coboundary lattice B; classes are reported per index pattern as cyclic and
circle components.  ``characteristic_witness`` is an independent decision
procedure: it searches for f on L with λ ≡ f(h⁻¹gh) − f(g) and μ ≡ ∂_L f.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import gcd, lcm

from .cochains import (
    ParameterA,
    ParameterB,
    PolyCochain,
    binomial_form,
    family_XYZUV,
    mono,
    substitute_slot,
)
from .errors import PreconditionError
from .groups import ModulusData, bezout, euclid_pair
from .lattice import ModOneSystem

F = Fraction


# --- class components ------------------------------------------------------

@dataclass(frozen=True)
class Cyclic:
    """An element of Z/mod, stored as its representative in {0..mod-1}."""

    mod: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.mod)

    def __add__(self, other: "Cyclic") -> "Cyclic":
        if self.mod != other.mod:
            raise ValueError("cyclic components with different moduli")
        return Cyclic(self.mod, self.value + other.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def to_json(self) -> dict:
        return {"mod": self.mod, "value": str(self.value)}


@dataclass(frozen=True)
class Circle:
    """An element of R/(period Z), stored in [0, period)."""

    value: Fraction
    period: int = 1

    def __post_init__(self):
        object.__setattr__(self, "value", F(self.value) % self.period)

    def __add__(self, other: "Circle") -> "Circle":
        if self.period != other.period:
            raise ValueError("circle components with different periods")
        return Circle(self.value + other.value, self.period)

    def is_zero(self) -> bool:
        return self.value == 0

    def to_json(self) -> dict:
        out = {"circle": f"{self.value.numerator}/{self.value.denominator}"}
        if self.period != 1:
            out["period"] = self.period
        return out


def _zero(components) -> bool:
    return all(c.is_zero() for c in components)


@dataclass
class ClassCoordinates:
    a_triples: dict = field(default_factory=dict)  # (i,j,k) -> (Cyclic, Circle, Circle)
    a_pairs: dict = field(default_factory=dict)  # (i,k) -> (Circle/2, Circle/2)
    b_diag: dict = field(default_factory=dict)  # i -> (Cyclic, Circle)
    b_pairs: dict = field(default_factory=dict)  # (i,j) -> (Cyclic, Circle, Circle)

    def is_zero(self) -> bool:
        return all(_zero(v) for d in (self.a_triples, self.a_pairs, self.b_diag, self.b_pairs) for v in d.values())

    def to_json(self) -> dict:
        def enc(d):
            return [
                {"pattern": list(k) if isinstance(k, tuple) else [k, k], "class": [c.to_json() for c in v]}
                for k, v in sorted(d.items())
            ]

        return {
            "a_triples": enc(self.a_triples),
            "a_pairs": enc(self.a_pairs),
            "b_diag": enc(self.b_diag),
            "b_pairs": enc(self.b_pairs),
        }


# --- lattice membership ----------------------------------------------------

@dataclass(frozen=True)
class Membership:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def _check_rank(a: ParameterA, b: ParameterB, m: ModulusData):
    try:
        a.check_rank(m.rank)
        b.check_rank(m.rank)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None


def _is_int(x: Fraction) -> bool:
    return F(x).denominator == 1


def membership_Z(a: ParameterA, b: ParameterB, m: ModulusData) -> Membership:
    """Cocycle lattice: AS a in (1/gcd(p_i,p_j,p_k))Z and b(i,j)p_j − b(i,0)q_j in Z."""
    _check_rank(a, b, m)
    r, p, q = m.rank, m.p, m.q
    for i, j, k in combinations(range(1, r + 1), 3):
        D = gcd(p[i - 1], p[j - 1], p[k - 1])
        if not _is_int(D * a.AS(i, j, k)):
            return Membership(False, f"a-cocycle condition at (i,j,k)=({i},{j},{k}): AS a = {a.AS(i, j, k)} not in (1/{D})Z")
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            val = b.get(i, j) * p[j - 1] - b.get(i, 0) * q[j - 1]
            if not _is_int(val):
                return Membership(False, f"b-cocycle condition at (i,j)=({i},{j}): b(i,j)p_j - b(i,0)q_j = {val} not in Z")
    return Membership(True)


def _membership_B_a(a: ParameterA, r: int) -> Membership:
    for i, j, k in combinations(range(1, r + 1), 3):
        for key in ((i, j, k), (j, i, k), (k, i, j)):
            if not _is_int(a.get(*key)):
                return Membership(False, f"a-coboundary condition: a{key} not in Z")
    for i, k in combinations(range(1, r + 1), 2):
        for key in ((i, i, k), (k, i, k)):
            if not _is_int(a.get(*key) / 2):
                return Membership(False, f"a-coboundary condition: a{key} not in 2Z")
    return Membership(True)


def membership_B(a: ParameterA, b: ParameterB, m: ModulusData) -> Membership:
    """Coboundary lattice, with the b-part written as b(i,j)/p_i + b(j,i)/p_j in (1/lcm)Z."""
    z = membership_Z(a, b, m)
    if not z:
        return z
    res = _membership_B_a(a, m.rank)
    if not res:
        return res
    p = m.p
    for i in range(1, m.rank + 1):
        for j in (0, i):
            if not _is_int(b.get(i, j)):
                return Membership(False, f"b-coboundary condition: b({i},{j}) not in Z")
    for i, j in combinations(range(1, m.rank + 1), 2):
        L = lcm(p[i - 1], p[j - 1])
        if not _is_int(L * (b.get(i, j) / p[i - 1] + b.get(j, i) / p[j - 1])):
            return Membership(False, f"b-coboundary condition at (i,j)=({i},{j})")
    return Membership(True)


def membership_B_pairwise(a: ParameterA, b: ParameterB, m: ModulusData) -> Membership:
    """Coboundary lattice, with the b-part written as p_j x + p_i y in gcd(p_i,p_j)Z, u, v in Z."""
    z = membership_Z(a, b, m)
    if not z:
        return z
    res = _membership_B_a(a, m.rank)
    if not res:
        return res
    p = m.p
    for i in range(1, m.rank + 1):
        if not (_is_int(b.get(i, i)) and _is_int(b.get(i, 0))):
            return Membership(False, f"b-coboundary condition at (i,i)=({i},{i})")
    for i, j in combinations(range(1, m.rank + 1), 2):
        D = gcd(p[i - 1], p[j - 1])
        if not _is_int((p[j - 1] * b.get(i, j) + p[i - 1] * b.get(j, i)) / D):
            return Membership(False, f"b-coboundary condition at (i,j)=({i},{j})")
    return Membership(True)


def _require_Z(a, b, m):
    res = membership_Z(a, b, m)
    if not res:
        raise PreconditionError(res.reason)


# --- characteristic cocycles -----------------------------------------------

@dataclass(frozen=True)
class CharacteristicCocycle:
    """λ on L × H_m and μ on L × L, both in exponent form."""

    a: ParameterA
    b: ParameterB
    modulus: ModulusData
    lam_poly: PolyCochain
    mu_poly: PolyCochain

    def lam(self, g, h) -> Fraction:
        return self.lam_poly.evaluate([g, h])

    def mu(self, g, h) -> Fraction:
        return self.mu_poly.evaluate([g, h])


def _b_poly(b: ParameterB, m: ModulusData) -> PolyCochain:
    r = m.rank
    out = PolyCochain(r, 2, "Hm", {})
    for (i, j), v in b.items():
        out += (v / m.p[i - 1]) * mono(r, [i], [j], flavor="Hm")
    return out


def build_characteristic(a: ParameterA, b: ParameterB, m: ModulusData) -> CharacteristicCocycle:
    _require_Z(a, b, m)
    r = m.rank
    fam = family_XYZUV(a, r)
    x_as = family_XYZUV(a.asymmetrized(), r)["X"]
    lam = (fam["Y"] + x_as).with_flavor("Hm") + _b_poly(b, m)
    return CharacteristicCocycle(a, b, m, lam, fam["V"])


# --- the a-sector classes --------------------------------------------------

def class_a_ijk(a: ParameterA, i: int, j: int, k: int, m: ModulusData) -> tuple:
    """([D·AS a]_D, [a(j,i,k)]_1, [a(k,i,j)]_1) with D = gcd(p_i, p_j, p_k)."""
    if not 1 <= i < j < k <= m.rank:
        raise PreconditionError(f"need 1 <= i < j < k <= rank, got ({i},{j},{k})")
    D = gcd(m.p[i - 1], m.p[j - 1], m.p[k - 1])
    A = a.AS(i, j, k)
    if not _is_int(D * A):
        raise PreconditionError(f"a-cocycle condition at (i,j,k)=({i},{j},{k}): AS a = {A} not in (1/{D})Z")
    return (Cyclic(D, int(D * A)), Circle(a.get(j, i, k)), Circle(a.get(k, i, j)))


def class_a_ik(a: ParameterA, i: int, k: int) -> tuple:
    if not 1 <= i < k:
        raise PreconditionError(f"need 1 <= i < k, got ({i},{k})")
    return (Circle(a.get(i, i, k), 2), Circle(a.get(k, i, k), 2))


# --- the b-sector classes --------------------------------------------------

def class_b_ii(x, u, i: int, m: ModulusData) -> tuple:
    """([p x − q u]_{D_i}, [−v_i x + u_i u]_1) with (D_i, u_i, v_i) = euclid_pair(p_i, q_i)."""
    x, u = F(x), F(u)
    p, q = m.p[i - 1], m.q[i - 1]
    k = p * x - q * u
    if not _is_int(k):
        raise PreconditionError(f"b-cocycle condition at (i,j)=({i},{i}): p_i x - q_i u = {k} not in Z")
    D, ui, vi = euclid_pair(p, q)
    return (Cyclic(D, int(k)), Circle(-vi * x + ui * u))


@dataclass(frozen=True)
class PairConstants:
    D: int
    D_ij: int
    E: int
    r_ij: int
    r_ji: int
    s_ij: int
    s_ji: int
    m_ij: int
    n_ij: int
    w_ij: int
    w_ji: int
    x_ij: int
    y_ij: int


@lru_cache(maxsize=None)
def _pair_constants(pi: int, pj: int, qi: int, qj: int) -> PairConstants:
    D_ij = gcd(pi, pj)
    if qi == 0 and qj == 0:
        # E = 0: choose s, w so that the second and third coordinates read u and v
        E, s_ij, s_ji, w_ij, w_ji = 0, 0, 1, 0, 1
    else:
        E, w_ij, w_ji = bezout(qi, qj)
        s_ij, s_ji = qi // E, qj // E
    D, x_ij, y_ij = bezout(D_ij, E)
    return PairConstants(
        D=D, D_ij=D_ij, E=E,
        r_ij=pi // D_ij, r_ji=pj // D_ij,
        s_ij=s_ij, s_ji=s_ji,
        m_ij=D_ij // D, n_ij=E // D,
        w_ij=w_ij, w_ji=w_ji, x_ij=x_ij, y_ij=y_ij,
    )


def pair_constants(m: ModulusData, i: int, j: int) -> PairConstants:
    return _pair_constants(m.p[i - 1], m.p[j - 1], m.q[i - 1], m.q[j - 1])


def class_b_ij(x, u, y, v, i: int, j: int, m: ModulusData) -> tuple:
    """Class of z = (b(i,j), b(i,0), b(j,i), b(j,0)) in (1/D)Z/Z ⊕ R/Z ⊕ R/Z.

    The first component is returned as Cyclic(D, D·t1).
    """
    x, u, y, v = (F(t) for t in (x, u, y, v))
    if not 1 <= i < j <= m.rank:
        raise PreconditionError(f"need 1 <= i < j <= rank, got ({i},{j})")
    pi, pj, qi, qj = m.p[i - 1], m.p[j - 1], m.q[i - 1], m.q[j - 1]
    if not _is_int(pj * x - qj * u):
        raise PreconditionError(f"b-cocycle condition at (i,j)=({i},{j}): p_j x - q_j u not in Z")
    if not _is_int(pi * y - qi * v):
        raise PreconditionError(f"b-cocycle condition at (i,j)=({j},{i}): p_i y - q_i v not in Z")
    c = _pair_constants(pi, pj, qi, qj)
    A = x * c.r_ji + y * c.r_ij
    B = u * c.s_ji + v * c.s_ij
    t1 = c.m_ij * A - c.n_ij * B
    t2 = c.y_ij * A + c.x_ij * B
    t3 = -u * c.w_ij + v * c.w_ji
    return (Cyclic(c.D, int(c.D * t1)), Circle(t2), Circle(t3))


def class_coordinates(a: ParameterA, b: ParameterB, m: ModulusData) -> ClassCoordinates:
    _require_Z(a, b, m)
    r = m.rank
    out = ClassCoordinates()
    for i, j, k in combinations(range(1, r + 1), 3):
        out.a_triples[(i, j, k)] = class_a_ijk(a, i, j, k, m)
    for i, k in combinations(range(1, r + 1), 2):
        out.a_pairs[(i, k)] = class_a_ik(a, i, k)
    for i in range(1, r + 1):
        out.b_diag[i] = class_b_ii(b.get(i, i), b.get(i, 0), i, m)
    for i, j in combinations(range(1, r + 1), 2):
        out.b_pairs[(i, j)] = class_b_ij(b.get(i, j), b.get(i, 0), b.get(j, i), b.get(j, 0), i, j, m)
    return out


# --- fiber consistency -----------------------------------------------------

def _u_from_diag(cls, p: int, q: int) -> Fraction:
    D, _, vi = euclid_pair(p, q)
    k, t = cls
    return (F(vi * k.value, D) + (p // D) * t.value) % 1


def _uv_from_pair(cls, c: PairConstants):
    t1, t2, t3 = cls
    t1v = F(t1.value, t1.mod)
    B = c.m_ij * t2.value - c.y_ij * t1v
    u = c.w_ji * B - c.s_ij * t3.value
    v = c.w_ij * B + c.s_ji * t3.value
    return u % 1, v % 1


def fiber_consistent(coords: ClassCoordinates, m: ModulusData) -> bool:
    """Every pattern containing i must determine the same circle value [b(i,0)]."""
    seen: dict = defaultdict(set)
    for i, cls in coords.b_diag.items():
        seen[i].add(_u_from_diag(cls, m.p[i - 1], m.q[i - 1]))
    for (i, j), cls in coords.b_pairs.items():
        u, v = _uv_from_pair(cls, pair_constants(m, i, j))
        seen[i].add(u)
        seen[j].add(v)
    return all(len(s) <= 1 for s in seen.values())


def fiber_consistency(b: ParameterB, m: ModulusData) -> bool:
    coords = class_coordinates(ParameterA({}), b, m)
    if not fiber_consistent(coords, m):
        return False
    return all(
        _u_from_diag(coords.b_diag[i], m.p[i - 1], m.q[i - 1]) == b.get(i, 0) % 1
        for i in range(1, m.rank + 1)
    )


# --- the witness oracle ----------------------------------------------------

def _l_labels(r: int):
    return [(i,) for i in range(1, r + 1)], [(j, k) for j, k in combinations(range(1, r + 1), 2)]


def _l_basis(r: int) -> list:
    """Monomials for f on L: t-monomials of degree <= 3, central coordinates times 1 or t_i."""
    ts, cs = _l_labels(r)
    out = [()]
    for d in (1, 2, 3):
        out += [tuple(c) for c in combinations_with_replacement(ts, d)]
    for c in cs:
        out.append((c,))
        out += [tuple(sorted((c, t))) for t in ts]
    return out


def _mul2(P: dict, Q: dict) -> dict:
    out: dict = defaultdict(F)
    for (a0, a1), v in P.items():
        for (b0, b1), w in Q.items():
            out[(tuple(sorted(a0 + b0)), tuple(sorted(a1 + b1)))] += v * w
    return out


def _expand(monomial, rules) -> dict:
    acc = {((), ()): F(1)}
    for lab in monomial:
        acc = _mul2(acc, rules[lab])
    return acc


@lru_cache(maxsize=None)
def _char_system(p: tuple):
    r = len(p)
    ts, cs = _l_labels(r)
    conj = {t: {((t,), ()): F(1)} for t in ts}
    prod = {t: {((t,), ()): F(1), ((), (t,)): F(1)} for t in ts}
    for j, k in cs:
        c = (j, k)
        # e_jk(h^-1 g h) = e_jk(g) + e_j(g)e_k(h) - e_k(g)e_j(h), with e_i(g) = p_i t_i on L
        conj[c] = {((c,), ()): F(1), (((j,),), ((k,),)): F(p[j - 1]), (((k,),), ((j,),)): F(-p[k - 1])}
        prod[c] = {((c,), ()): F(1), ((), (c,)): F(1), (((j,),), ((k,),)): F(p[j - 1] * p[k - 1])}
    basis = _l_basis(r)
    columns = []
    for mon in basis:
        part_a = _expand(mon, conj)
        part_a[(tuple(sorted(mon)), ())] = part_a.get((tuple(sorted(mon)), ()), F(0)) - 1
        part_b = {k: -v for k, v in _expand(mon, prod).items()}
        part_b[(tuple(sorted(mon)), ())] = part_b.get((tuple(sorted(mon)), ()), F(0)) + 1
        part_b[((), tuple(sorted(mon)))] = part_b.get(((), tuple(sorted(mon))), F(0)) + 1
        col = {("lam",) + k: v for k, v in binomial_form(part_a).items()}
        col.update({("mu",) + k: v for k, v in binomial_form(part_b).items()})
        columns.append(col)
    return basis, ModOneSystem(columns)


def _restrict_to_L(c: PolyCochain, slots, m: ModulusData) -> dict:
    rules = {(i,): {((i,),): F(m.p[i - 1])} for i in range(1, m.rank + 1)}
    rules[(0,)] = {((i,),): F(-m.q[i - 1]) for i in range(1, m.rank + 1) if m.q[i - 1]}
    terms = dict(c.items())
    for s in slots:
        terms = substitute_slot(PolyCochain(c.rank, c.arity, c.flavor, terms, check=False), s, rules)
    return terms


def characteristic_witness(a: ParameterA, b: ParameterB, m: ModulusData) -> dict | None:
    """f on L (a polynomial in t_i = e_{i,N} and e_{j,k}) with ∂f = (λ_{a,b}, μ_a) mod Z, or None."""
    ch = build_characteristic(a, b, m)
    basis, system = _char_system(m.p)
    target = {("lam",) + k: v for k, v in binomial_form(_restrict_to_L(ch.lam_poly, [0], m)).items()}
    target.update({("mu",) + k: v for k, v in binomial_form(_restrict_to_L(ch.mu_poly, [0, 1], m)).items()})
    x = system.solve(target)
    if x is None:
        return None
    return {mon: v for mon, v in zip(basis, x) if v}


def is_characteristic_coboundary(a: ParameterA, b: ParameterB, m: ModulusData) -> bool:
    return characteristic_witness(a, b, m) is not None


# --- one automorphism: rank 1 ----------------------------------------------

@dataclass(frozen=True)
class SingleAutomorphismRecord:
    p1: int
    q1: int
    D1: int
    u1: int
    v1: int
    r1: int
    s1: int
    w0: tuple  # coordinates in the basis (z_0, z_1)
    w1: tuple
    z0_in_w: tuple  # z_0 = r1 w_0 + v1 w_1
    b1_in_w: tuple  # b_1 = D_1 w_1
    quotient: tuple  # Q_m ≅ Z ⊕ Z_{D1}
    lambda_group: tuple  # Λ(G_m, N, T) ≅ T ⊕ Z_{D1}

    def to_json(self) -> dict:
        return {
            "D1": self.D1, "u1": self.u1, "v1": self.v1, "r1": self.r1, "s1": self.s1,
            "w0": list(self.w0), "w1": list(self.w1),
            "z0_in_w": list(self.z0_in_w), "b1_in_w": list(self.b1_in_w),
            "quotient": f"Z + Z/{self.D1}", "lambda_group": f"T + Z/{self.D1}",
        }


def single_automorphism_invariants(p1: int, q1: int) -> SingleAutomorphismRecord:
    if not (p1 >= 1 and 0 <= q1 < p1):
        raise PreconditionError(f"need p1 >= 1 and 0 <= q1 < p1, got ({p1}, {q1})")
    D1, u1, v1 = euclid_pair(p1, q1)
    r1, s1 = p1 // D1, q1 // D1
    w0 = (u1, -v1)
    w1 = (-s1, r1)
    return SingleAutomorphismRecord(
        p1, q1, D1, u1, v1, r1, s1, w0, w1,
        z0_in_w=(r1, v1), b1_in_w=(0, D1),
        quotient=("Z", D1), lambda_group=("T", D1),
    )


def outer_period(x, y, p1: int, q1: int) -> int:
    """p_1 times the order of χ(z_0) = exp(2πi(x r_1 + y v_1))."""
    rec = single_automorphism_invariants(p1, q1)
    value = F(x) * rec.r1 + F(y) * rec.v1
    return p1 * value.denominator


# --- two automorphisms -----------------------------------------------------

def pair_invariants(m: ModulusData, b: ParameterB) -> ClassCoordinates:
    """b-sector class coordinates at rank 2."""
    if m.rank != 2:
        raise PreconditionError(f"pair invariants need rank 2, got rank {m.rank}")
    coords = class_coordinates(ParameterA({}), b, m)
    return ClassCoordinates(b_diag=coords.b_diag, b_pairs=coords.b_pairs)
