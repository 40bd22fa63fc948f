"""Cocycle and coboundary decisions for torus-valued cochains on free abelian groups.

A cocycle on Z^r is a coboundary iff its asymmetrization vanishes mod 1; the
asymmetrization is then an alternating multi-character, read off on unit
vectors.  The flavor ``Gm`` is treated as Z^{r+1} with coordinates
(e~_0, e_1, .., e_r); index 0 then stands for z_0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .cochains import (
    FLAVORS,
    PolyCochain,
    asymmetrize,
    binomial_form,
    boundary,
    cochain_basis,
    is_integer_valued,
)
from .errors import PreconditionError, SolverFailure
from .lattice import ModOneSystem

F = Fraction


def _check_abelian(c: PolyCochain):
    if FLAVORS[c.flavor][1]:
        raise PreconditionError(
            f"the asymmetrization test needs a free abelian domain; got flavor {c.flavor}"
        )


def is_cocycle(c: PolyCochain) -> bool:
    """True iff the exponent of ∂c is integer-valued everywhere."""
    return is_integer_valued(boundary(c))


def _indices(c: PolyCochain) -> list[int]:
    start = 0 if FLAVORS[c.flavor][0] else 1
    return list(range(start, c.rank + 1))


def _unit_value(key, idxs) -> Fraction:
    """Monomial value at the unit vectors (a_{idxs[0]}, .., a_{idxs[n-1]})."""
    for slot, i in zip(key, idxs):
        for lab in slot:
            if lab != (i,):
                return F(0)
    return F(1)


@dataclass(frozen=True)
class MultiCharacterClass:
    """Alternating multi-character coefficients on increasing index tuples, in [0,1)."""

    arity: int
    entries: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, idx) -> Fraction:
        return self.entries.get(tuple(idx), F(0))


def multicharacter_class(c: PolyCochain) -> MultiCharacterClass:
    """The cohomology class of a cocycle, as the values of AS c on unit vectors mod 1."""
    _check_abelian(c)
    if not is_cocycle(c):
        raise PreconditionError("not a cocycle: the boundary is not integer-valued")
    asc = asymmetrize(c)
    entries = {}
    for idxs in combinations(_indices(c), c.arity):
        v = sum((coef * _unit_value(key, idxs) for key, coef in asc.items()), F(0)) % 1
        if v:
            entries[idxs] = v
    return MultiCharacterClass(c.arity, entries)


def is_coboundary(c: PolyCochain) -> bool:
    return multicharacter_class(c).is_zero()


@lru_cache(maxsize=None)
def _witness_system(rank: int, arity: int, flavor: str):
    basis = cochain_basis(rank, arity - 1, flavor)
    columns = []
    for key in basis:
        f = PolyCochain(rank, arity - 1, flavor, {key: F(1)})
        columns.append(binomial_form(boundary(f).items()))
    return basis, ModOneSystem(columns)


def find_witness(c: PolyCochain) -> PolyCochain | None:
    """Search the capped basis for f with ∂f − c integer-valued (any flavor); None if absent."""
    if c.arity == 0:
        return None if not is_integer_valued(c) else PolyCochain(c.rank, 0, c.flavor, {})
    basis, system = _witness_system(c.rank, c.arity, c.flavor)
    x = system.solve(binomial_form(c.items()))
    if x is None:
        return None
    return PolyCochain(c.rank, c.arity - 1, c.flavor, dict(zip(basis, x)))


def witness_exists(c: PolyCochain) -> bool:
    """Independent oracle: is ∂f ≡ c solvable with f in the capped monomial basis?"""
    return c.arity >= 1 and find_witness(c) is not None


def verify_witness(c: PolyCochain, f: PolyCochain) -> bool:
    return f.arity + 1 == c.arity and is_integer_valued(boundary(f) - c)


def coboundary_witness(c: PolyCochain) -> PolyCochain:
    """A cochain f with ∂f − c integer-valued; verified before it is returned."""
    if not is_coboundary(c):
        raise PreconditionError("the cocycle has a nonzero class, so no witness exists")
    if c.is_zero():
        return PolyCochain(c.rank, max(c.arity - 1, 0), c.flavor, {})
    f = find_witness(c)
    if f is None or not verify_witness(c, f):
        raise SolverFailure("no witness found in the capped basis for a cocycle with zero class")
    return f


# --- standard form ---------------------------------------------------------

@dataclass(frozen=True)
class StandardForm:
    """c ≃ representative, where representative(z_0^k g_idx, ..) = k d_c(rest) + c_s(g)."""

    c_s: PolyCochain
    d_c: PolyCochain
    representative: PolyCochain
    witness: PolyCochain
    z0_slot: str


def _slot_index(arity: int, z0_slot: str) -> int:
    if z0_slot == "first":
        return 0
    if z0_slot == "last":
        return arity - 1
    raise ValueError(f"z0_slot must be 'first' or 'last', got {z0_slot!r}")


def _is_standard(c: PolyCochain, slot: int) -> bool:
    for key, _ in c.items():
        for s, mono in enumerate(key):
            if (0,) in mono and not (s == slot and mono == ((0,),)):
                return False
    return True


def _split(c: PolyCochain, slot: int):
    d_terms, s_terms = {}, {}
    for key, coef in c.items():
        if key[slot] == ((0,),):
            d_terms[key[:slot] + key[slot + 1:]] = coef
        else:
            s_terms[key] = coef
    return (
        PolyCochain(c.rank, c.arity, "G", s_terms),
        PolyCochain(c.rank, c.arity - 1, "G", d_terms),
    )


def standard_form(c: PolyCochain, z0_slot: str = "first") -> StandardForm:
    """Split a cocycle on G_m = Z z_0 ⊕ s_m(G) into its z_0-linear and base parts.

    If e~_0 already occurs only as a lone linear factor of the chosen slot, c
    is used as is.  Otherwise c is replaced by the multi-character
    representative of its class, with 0 placed in the chosen slot, and the
    witness records ∂f ≡ c − representative.
    """
    _check_abelian(c)
    if c.arity < 1:
        raise PreconditionError("standard form needs arity >= 1")
    if not is_cocycle(c):
        raise PreconditionError("not a cocycle: the boundary is not integer-valued")
    slot = _slot_index(c.arity, z0_slot)
    flavor = "Gm"
    if _is_standard(c, slot):
        rep = c.with_flavor(flavor)
        witness = PolyCochain(c.rank, c.arity - 1, flavor, {})
    else:
        cls = multicharacter_class(c)
        terms = {}
        for idxs, xi in cls.entries.items():
            order = list(idxs)
            if z0_slot == "last" and order[0] == 0:
                order = order[1:] + [0]
                xi = xi * (-1) ** (c.arity - 1)
            terms[tuple(((i,),) for i in order)] = xi
        rep = PolyCochain(c.rank, c.arity, flavor, terms)
        witness = coboundary_witness((c - rep).with_flavor(flavor))
    c_s, d_c = _split(rep, slot)
    return StandardForm(c_s, d_c, rep, witness, z0_slot)
