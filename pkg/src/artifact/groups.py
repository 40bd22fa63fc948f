"""Exact group models: Z^r, the modulus extensions G_m and Q_m, the
Heisenberg resolution group H and its extension H_m.

Real components are stored in units of the period T', so the central
generator z_0 of G_m is ``(0, 1)`` and every group law is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

Central = dict  # (j, k) -> int, 1 <= j < k <= r


def gauss_residue(i: int, p: int) -> int:
    """Least nonnegative residue {i}_p."""
    if p < 2:
        raise ValueError(f"modulus must be at least 2, got {p}")
    return i % p


def gauss_cocycle(i: int, j: int, p: int) -> int:
    """Carry term {i}_p + {j}_p - {i+j}_p, always 0 or p."""
    return gauss_residue(i, p) + gauss_residue(j, p) - gauss_residue(i + j, p)


def _carry(i: int, j: int, p: int) -> int:
    # same as gauss_cocycle but also defined for p = 1
    return i % p + j % p - (i + j) % p


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), a, b >= 0.

    Canonical choice: 0 <= x < b/g when b > 0, otherwise (a, 1, 0).
    """
    if a < 0 or b < 0:
        raise ValueError("bezout expects nonnegative input")
    g = gcd(a, b)
    if b == 0:
        return (a, 1, 0)
    if a == 0:
        return (b, 0, 1)
    period = b // g
    x = pow(a // g, -1, period) if period > 1 else 0
    y = (g - a * x) // b
    return (g, x, y)


def euclid_pair(p: int, q: int) -> tuple[int, int, int]:
    """Return (d, u, v) with d = gcd(p, q) and p*u - q*v = d.

    u is the least positive solution (u = 1, v = 0 when q = 0); this is
    the normal form used by every class-coordinate formula.
    """
    if p < 1 or q < 0:
        raise ValueError(f"euclid_pair needs p >= 1, q >= 0, got ({p}, {q})")
    d = gcd(p, q)
    if q == 0:
        return (p, 1, 0)
    period = q // d
    u = pow(p // d, -1, period) if period > 1 else 1
    if u == 0:
        u = period
    v = (p * u - d) // q
    return (d, u, v)


# --- Z^r -------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @staticmethod
    def zero(r: int) -> "GroupElement":
        return GroupElement((0,) * r)

    @staticmethod
    def basis(i: int, r: int) -> "GroupElement":
        """The generator a_i (1-based)."""
        return GroupElement(tuple(1 if k == i - 1 else 0 for k in range(r)))

    def _check(self, other):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, k: int) -> "GroupElement":
        return GroupElement(tuple(k * a for a in self.coords))

    __mul__ = __add__

    def inverse(self) -> "GroupElement":
        return -self

    def __pow__(self, k: int) -> "GroupElement":
        return self.scale(k)

    def coordinate(self, label):
        if len(label) == 1 and label[0] >= 1:
            return self.coords[label[0] - 1]
        raise ValueError(f"coordinate {label} is not defined on Z^r")


# --- the modulus -----------------------------------------------------------

@dataclass(frozen=True)
class ModulusData:
    """Diagonal data N = PG and m(a_i) = q_i T'/p_i."""

    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        q = tuple(int(x) for x in self.q)
        if len(p) != len(q) or not p:
            raise ValueError("p and q must be nonempty and of equal length")
        for i, (pi, qi) in enumerate(zip(p, q), start=1):
            if pi < 1:
                raise ValueError(f"p_{i} = {pi} must be >= 1")
            if not 0 <= qi < pi:
                raise ValueError(f"q_{i} = {qi} must satisfy 0 <= q_{i} < p_{i} = {pi}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def rank(self) -> int:
        return len(self.p)

    def n(self, g: GroupElement) -> Fraction:
        """Sum of e_i(g) q_i / p_i, the T'-unit lift of m(g)."""
        if g.rank != self.rank:
            raise ValueError("rank mismatch")
        return sum((Fraction(e * q, p) for e, p, q in zip(g.coords, self.p, self.q)), Fraction(0))

    def in_N(self, g: GroupElement) -> bool:
        return all(e % p == 0 for e, p in zip(g.coords, self.p))

    def n_coords(self, g: GroupElement) -> tuple[int, ...]:
        """Coordinates e_{i,N} of an element of N = PG."""
        if not self.in_N(g):
            raise ValueError(f"{g.coords} is not in N")
        return tuple(e // p for e, p in zip(g.coords, self.p))


def _frac(s) -> Fraction:
    return s if isinstance(s, Fraction) else Fraction(s)


# --- G_m -------------------------------------------------------------------

@dataclass(frozen=True)
class GmElement:
    g: GroupElement
    s: Fraction
    modulus: ModulusData

    def __post_init__(self):
        object.__setattr__(self, "s", _frac(self.s))
        if self.g.rank != self.modulus.rank:
            raise ValueError("rank mismatch")
        if (self.s - self.modulus.n(self.g)).denominator != 1:
            raise ValueError(f"s = {self.s} is not congruent to n(g) mod 1")

    @property
    def rank(self) -> int:
        return self.g.rank

    @property
    def e0(self) -> int:
        return int(self.s - self.modulus.n(self.g))

    def coordinate(self, label):
        if label == (0,):
            return self.e0
        return self.g.coordinate(label)

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")

    def __mul__(self, other: "GmElement") -> "GmElement":
        self._check(other)
        return GmElement(self.g + other.g, self.s + other.s, self.modulus)

    def inverse(self) -> "GmElement":
        return GmElement(-self.g, -self.s, self.modulus)

    def __pow__(self, k: int) -> "GmElement":
        return GmElement(self.g.scale(k), self.s * k, self.modulus)

    @staticmethod
    def identity(m: ModulusData) -> "GmElement":
        return GmElement(GroupElement.zero(m.rank), Fraction(0), m)

    @staticmethod
    def z0(m: ModulusData, k: int = 1) -> "GmElement":
        return GmElement(GroupElement.zero(m.rank), Fraction(k), m)


def section_sm(g, m: ModulusData):
    """The section s_m: G -> G_m (or H -> H_m), with e~_0 = 0."""
    if isinstance(g, HeisenbergElement):
        return HmElement(g.central_dict, g.g, m.n(g.g), m)
    return GmElement(g, m.n(g), m)


def embed_N(g: GroupElement, m: ModulusData) -> GmElement:
    """N = PG inside G_m: b_j = p_j z_j - q_j z_0 sits at s = 0."""
    if not m.in_N(g):
        raise ValueError(f"{g.coords} is not in N")
    return GmElement(g, Fraction(0), m)


# --- Q_m = G_m / N ---------------------------------------------------------

@dataclass(frozen=True)
class QmElement:
    """Residues q_i in {0..p_i-1} plus the T'-unit real part s."""

    q: tuple[int, ...]
    s: Fraction
    modulus: ModulusData

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        object.__setattr__(self, "s", _frac(self.s))
        m = self.modulus
        if len(self.q) != m.rank:
            raise ValueError("rank mismatch")
        for i, (x, p) in enumerate(zip(self.q, m.p), start=1):
            if not 0 <= x < p:
                raise ValueError(f"residue q_{i} = {x} out of range for p_{i} = {p}")
        if (self.s - m.n(GroupElement(self.q))).denominator != 1:
            raise ValueError(f"s = {self.s} is not congruent to n(residues) mod 1")

    @property
    def e0(self) -> int:
        """e~_0 of the residue lift."""
        return int(self.s - self.modulus.n(GroupElement(self.q)))

    def residue(self, i: int) -> int:
        return self.q[i - 1]

    def __mul__(self, other: "QmElement") -> "QmElement":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        q = tuple((a + b) % p for a, b, p in zip(self.q, other.q, self.modulus.p))
        return QmElement(q, self.s + other.s, self.modulus)

    def inverse(self) -> "QmElement":
        q = tuple((-a) % p for a, p in zip(self.q, self.modulus.p))
        return QmElement(q, -self.s, self.modulus)

    @staticmethod
    def identity(m: ModulusData) -> "QmElement":
        return QmElement((0,) * m.rank, Fraction(0), m)

    @staticmethod
    def project(x: GmElement) -> "QmElement":
        m = x.modulus
        return QmElement(tuple(e % p for e, p in zip(x.g.coords, m.p)), x.s, m)


def qm_lift(x: QmElement) -> GmElement:
    """The section Q_m -> G_m through residue representatives."""
    return GmElement(GroupElement(x.q), x.s, x.modulus)


def nN_cocycle(x: QmElement, y: QmElement, m: ModulusData) -> GroupElement:
    """s(x)s(y)s(xy)^-1 in N, as an element of G."""
    if x.modulus != m or y.modulus != m:
        raise ValueError("modulus mismatch")
    return GroupElement(tuple(_carry(a, b, p) for a, b, p in zip(x.q, y.q, m.p)))


# --- H and H_m -------------------------------------------------------------

def _clean_central(central: Mapping, r: int) -> tuple:
    items = []
    for (j, k), v in central.items():
        if not 1 <= j < k <= r:
            raise ValueError(f"central key {(j, k)} is not strictly upper triangular for rank {r}")
        if v:
            items.append(((int(j), int(k)), int(v)))
    return tuple(sorted(items))


def nM_cocycle(g: GroupElement, h: GroupElement) -> dict:
    """n_M(g; h) with e_{j,k} = e_j(g) e_k(h)."""
    if g.rank != h.rank:
        raise ValueError("rank mismatch")
    r = g.rank
    out = {}
    for j in range(r):
        gj = g.coords[j]
        if not gj:
            continue
        for k in range(j + 1, r):
            v = gj * h.coords[k]
            if v:
                out[(j + 1, k + 1)] = v
    return out


def _central_sum(*parts) -> dict:
    out: dict = {}
    for part in parts:
        for key, v in part.items():
            out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


def _central_neg(c: Mapping) -> dict:
    return {k: -v for k, v in c.items()}


@dataclass(frozen=True)
class HeisenbergElement:
    """(m, g) in H = M x_{n_M} G."""

    central: tuple
    g: GroupElement

    def __init__(self, central, g: GroupElement):
        if not isinstance(g, GroupElement):
            g = GroupElement(g)
        if isinstance(central, tuple):
            central = dict(central)
        object.__setattr__(self, "central", _clean_central(central, g.rank))
        object.__setattr__(self, "g", g)

    @property
    def rank(self) -> int:
        return self.g.rank

    @property
    def central_dict(self) -> dict:
        return dict(self.central)

    @staticmethod
    def identity(r: int) -> "HeisenbergElement":
        return HeisenbergElement({}, GroupElement.zero(r))

    def coordinate(self, label):
        if len(label) == 2:
            return self.central_dict.get(label, 0)
        return self.g.coordinate(label)

    def __mul__(self, other):
        return heisenberg_mul(self, other)

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(
            _central_sum(_central_neg(self.central_dict), nM_cocycle(self.g, self.g)), -self.g
        )

    def __pow__(self, k: int):
        return _power(self, k, HeisenbergElement.identity(self.rank))


def section_H(g: GroupElement) -> HeisenbergElement:
    """s_H(g) = (0, g)."""
    return HeisenbergElement({}, g)


def heisenberg_mul(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    if x.rank != y.rank:
        raise ValueError(f"rank mismatch: {x.rank} vs {y.rank}")
    central = _central_sum(x.central_dict, y.central_dict, nM_cocycle(x.g, y.g))
    return HeisenbergElement(central, x.g + y.g)


def commutator(x, y):
    """x^y := the central element with y^-1 x y = (x^y) x.

    Its e_{j,k} entry is e_j(x)e_k(y) - e_j(y)e_k(x).  Works on H and H_m.
    """
    if x.rank != y.rank:
        raise ValueError(f"rank mismatch: {x.rank} vs {y.rank}")
    a, b = nM_cocycle(x.g, y.g), nM_cocycle(y.g, x.g)
    central = _central_sum(a, _central_neg(b))
    if isinstance(x, HmElement):
        return HmElement(central, GroupElement.zero(x.rank), Fraction(0), x.modulus)
    return HeisenbergElement(central, GroupElement.zero(x.rank))


def _power(x, k: int, identity):
    if k < 0:
        x, k = x.inverse(), -k
    out = identity
    while k:
        if k & 1:
            out = out * x
        x = x * x
        k >>= 1
    return out


@dataclass(frozen=True)
class HmElement:
    """(m, g, s) in H_m with s - n(g) in Z."""

    central: tuple
    g: GroupElement
    s: Fraction
    modulus: ModulusData = field(compare=True)

    def __init__(self, central, g: GroupElement, s, modulus: ModulusData):
        if not isinstance(g, GroupElement):
            g = GroupElement(g)
        if isinstance(central, tuple):
            central = dict(central)
        s = _frac(s)
        if g.rank != modulus.rank:
            raise ValueError("rank mismatch")
        if (s - modulus.n(g)).denominator != 1:
            raise ValueError(f"s = {s} is not congruent to n(g) mod 1")
        object.__setattr__(self, "central", _clean_central(central, g.rank))
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "modulus", modulus)

    @property
    def rank(self) -> int:
        return self.g.rank

    @property
    def central_dict(self) -> dict:
        return dict(self.central)

    @property
    def e0(self) -> int:
        return int(self.s - self.modulus.n(self.g))

    @staticmethod
    def identity(m: ModulusData) -> "HmElement":
        return HmElement({}, GroupElement.zero(m.rank), Fraction(0), m)

    @staticmethod
    def central_element(central: Mapping, m: ModulusData) -> "HmElement":
        return HmElement(dict(central), GroupElement.zero(m.rank), Fraction(0), m)

    @staticmethod
    def from_L(central: Mapping, n_coords, m: ModulusData) -> "HmElement":
        """The element (m, Pg, 0) of L, given e_{i,N}-coordinates of Pg."""
        g = GroupElement(tuple(p * t for p, t in zip(m.p, n_coords)))
        return HmElement(dict(central), g, Fraction(0), m)

    def in_L(self) -> bool:
        return self.modulus.in_N(self.g) and self.s == 0

    def coordinate(self, label):
        if label == (0,):
            return self.e0
        if len(label) == 2:
            return self.central_dict.get(label, 0)
        return self.g.coordinate(label)

    def heisenberg(self) -> HeisenbergElement:
        return HeisenbergElement(self.central_dict, self.g)

    def __mul__(self, other: "HmElement") -> "HmElement":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        central = _central_sum(self.central_dict, other.central_dict, nM_cocycle(self.g, other.g))
        return HmElement(central, self.g + other.g, self.s + other.s, self.modulus)

    def inverse(self) -> "HmElement":
        central = _central_sum(_central_neg(self.central_dict), nM_cocycle(self.g, self.g))
        return HmElement(central, -self.g, -self.s, self.modulus)

    def __pow__(self, k: int):
        return _power(self, k, HmElement.identity(self.modulus))


def nL_cocycle(x: QmElement, y: QmElement, m: ModulusData) -> HeisenbergElement:
    """s(x)s(y)s(xy)^-1 in L, computed through residue sections in H."""
    if x.modulus != m or y.modulus != m:
        raise ValueError("modulus mismatch")
    r = m.rank
    xy = x * y
    eta = [_carry(a, b, p) for a, b, p in zip(x.q, y.q, m.p)]
    central = {}
    for j in range(r):
        for k in range(j + 1, r):
            v = x.q[j] * y.q[k] - eta[j] * xy.q[k]
            if v:
                central[(j + 1, k + 1)] = v
    return HeisenbergElement(central, GroupElement(eta))
