"""Torus-valued cochains in exponent form.

A cochain of arity n is a rational polynomial in per-slot coordinate
functionals; its torus value at (g_1..g_n) is exp(2 pi i * polynomial).
Coordinate labels are tuples: ``(i,)`` is e_i (``(0,)`` is e~_0 on the
modulus extensions) and ``(j, k)`` is the central coordinate e_{j,k}.
A term key is a tuple of slot monomials, each a sorted tuple of labels.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Mapping

from .groups import GmElement, GroupElement, HeisenbergElement, HmElement

F = Fraction

# flavor -> (has e~_0, has central coordinates)
FLAVORS = {"G": (False, False), "Gm": (True, False), "H": (False, True), "Hm": (True, True)}
_FLAVOR_OF = {v: k for k, v in FLAVORS.items()}

_ELEMENT_CAPS = {
    GroupElement: (False, False),
    GmElement: (True, False),
    HeisenbergElement: (False, True),
    HmElement: (True, True),
}


def join_flavor(*flavors: str) -> str:
    e0 = any(FLAVORS[f][0] for f in flavors)
    central = any(FLAVORS[f][1] for f in flavors)
    return _FLAVOR_OF[(e0, central)]


def label_name(label) -> str:
    return "e" + "_".join(str(x) for x in label)


def _label_ok(label, rank: int, flavor: str) -> bool:
    e0, central = FLAVORS[flavor]
    if len(label) == 1:
        i = label[0]
        return 1 <= i <= rank or (i == 0 and e0)
    if len(label) == 2:
        j, k = label
        return central and 1 <= j < k <= rank
    return False


def _slot_ok(mono) -> bool:
    central = sum(1 for lab in mono if len(lab) == 2)
    return central <= 1 and len(mono) <= 2


def perm_sign(perm) -> int:
    sign, seen = 1, set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length, j = 0, start
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class PolyCochain:
    """Sparse rational polynomial cochain (exponent form)."""

    __slots__ = ("rank", "arity", "flavor", "_terms", "_hash")

    def __init__(self, rank: int, arity: int, flavor: str, terms: Mapping = (), *, check: bool = True):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        if arity < 0 or rank < 1:
            raise ValueError("need arity >= 0 and rank >= 1")
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coef in items:
            coef = coef if isinstance(coef, Fraction) else F(coef)
            if not coef:
                continue
            key = tuple(tuple(sorted(tuple(lab) for lab in slot)) for slot in key)
            if check:
                if len(key) != arity:
                    raise ValueError(f"term {key} does not have arity {arity}")
                for slot in key:
                    if not _slot_ok(slot):
                        raise ValueError(f"slot monomial {slot} exceeds the degree caps")
                    for lab in slot:
                        if not _label_ok(lab, rank, flavor):
                            raise ValueError(f"coordinate {label_name(lab)} not allowed on flavor {flavor} rank {rank}")
            clean[key] = clean.get(key, F(0)) + coef
        self.rank = rank
        self.arity = arity
        self.flavor = flavor
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    # -- basic protocol ----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_items(self):
        return sorted(self._terms.items())

    def __eq__(self, other):
        if not isinstance(other, PolyCochain):
            return NotImplemented
        return self.rank == other.rank and self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.arity, tuple(self.sorted_items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"PolyCochain(rank={self.rank}, arity={self.arity}, 0)"
        return f"PolyCochain(rank={self.rank}, arity={self.arity}, {format_cochain(self)})"

    def _like(self, other: "PolyCochain"):
        if self.rank != other.rank or self.arity != other.arity:
            raise ValueError(
                f"cochain shape mismatch: rank {self.rank}/{other.rank}, arity {self.arity}/{other.arity}"
            )
        return join_flavor(self.flavor, other.flavor)

    def __add__(self, other):
        flavor = self._like(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, F(0)) + v
        return PolyCochain(self.rank, self.arity, flavor, out, check=False)

    def __neg__(self):
        return PolyCochain(self.rank, self.arity, self.flavor, {k: -v for k, v in self._terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, PolyCochain):
            return NotImplemented
        s = F(scalar)
        return PolyCochain(self.rank, self.arity, self.flavor, {k: v * s for k, v in self._terms.items()}, check=False)

    __rmul__ = __mul__

    def tensor(self, other: "PolyCochain") -> "PolyCochain":
        """(c ⊗ d)(g_1..g_{n+m}) = c(g_1..g_n) d(g_{n+1}..)."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        out: dict = defaultdict(F)
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                out[k1 + k2] += v1 * v2
        return PolyCochain(self.rank, self.arity + other.arity, join_flavor(self.flavor, other.flavor), out)

    __matmul__ = tensor

    def slot_product(self, other: "PolyCochain") -> "PolyCochain":
        """Pointwise product of two cochains of the same arity."""
        flavor = self._like(other)
        out: dict = defaultdict(F)
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                out[_mul_keys(k1, k2)] += v1 * v2
        return PolyCochain(self.rank, self.arity, flavor, out)

    def with_flavor(self, flavor: str) -> "PolyCochain":
        """Reinterpret on a larger group (pull-back along the projection)."""
        return PolyCochain(self.rank, self.arity, flavor, self._terms)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, elements) -> Fraction:
        elements = list(elements)
        if len(elements) != self.arity:
            raise ValueError(f"expected {self.arity} group elements, got {len(elements)}")
        need = FLAVORS[self.flavor]
        for x in elements:
            caps = _ELEMENT_CAPS.get(type(x))
            if caps is None:
                raise ValueError(f"cannot evaluate a cochain on {type(x).__name__}")
            if (need[0] and not caps[0]) or (need[1] and not caps[1]):
                raise ValueError(f"flavor mismatch: {self.flavor} cochain on {type(x).__name__}")
            if x.rank != self.rank:
                raise ValueError("rank mismatch")
        cache = [dict() for _ in elements]
        total = F(0)
        for key, coef in self._terms.items():
            val = coef
            for s, slot in enumerate(key):
                for lab in slot:
                    c = cache[s].get(lab)
                    if c is None:
                        c = cache[s][lab] = elements[s].coordinate(lab)
                    val *= c
                    if not val:
                        break
                if not val:
                    break
            total += val
        return total

    def torus_value(self, elements) -> Fraction:
        return self.evaluate(elements) % 1

    def __call__(self, *elements) -> Fraction:
        return self.evaluate(elements)


def _mul_keys(k1, k2):
    return tuple(tuple(sorted(a + b)) for a, b in zip(k1, k2))


def _as_label(x):
    if isinstance(x, int):
        return (x,)
    return tuple(x)


def mono(rank: int, *slots: Iterable, coeff=1, flavor: str | None = None) -> PolyCochain:
    """A single monomial cochain; ``mono(3, [1], [2, 3])`` is e_1 ⊗ (e_2 e_3).

    Integers are abelian indices (0 is e~_0); pairs are central coordinates.
    """
    key = tuple(tuple(_as_label(x) for x in slot) for slot in slots)
    if flavor is None:
        e0 = any(lab == (0,) for slot in key for lab in slot)
        central = any(len(lab) == 2 for slot in key for lab in slot)
        flavor = _FLAVOR_OF[(e0, central)]
    return PolyCochain(rank, len(key), flavor, {key: F(coeff)})


def zero_cochain(rank: int, arity: int, flavor: str = "G") -> PolyCochain:
    return PolyCochain(rank, arity, flavor, {})


def constant(rank: int, arity: int, value, flavor: str = "G") -> PolyCochain:
    return PolyCochain(rank, arity, flavor, {((),) * arity: F(value)})


# --- boundary and asymmetrization ------------------------------------------

def _split_label(lab):
    """e(xy) for a single coordinate, as pairs (part on x, part on y)."""
    if len(lab) == 1:
        return [(((lab,)), ()), ((), (lab,))]
    j, k = lab
    return [((lab,), ()), ((), (lab,)), (((j,),), ((k,),))]


def _split_mono(slot) -> dict:
    out = {((), ()): 1}
    for lab in slot:
        nxt: dict = defaultdict(int)
        for (a, b), v in out.items():
            for pa, pb in _split_label(lab):
                nxt[(a + pa, b + pb)] += v
        out = nxt
    return {(tuple(sorted(a)), tuple(sorted(b))): v for (a, b), v in out.items() if v}


def boundary(c: PolyCochain) -> PolyCochain:
    """Bar-complex coboundary with trivial coefficient action.

    (dc)(g_1..g_{n+1}) = c(g_2..) + sum_k (-1)^k c(..g_k g_{k+1}..) + (-1)^{n+1} c(g_1..g_n).
    On H-flavors the product is expanded through e_{j,k}(gh) = e_{j,k}(g) + e_{j,k}(h) + e_j(g)e_k(h).
    """
    n = c.arity
    out: dict = defaultdict(F)
    split_cache: dict = {}
    for key, coef in c.items():
        out[((),) + key] += coef
        for k in range(n):
            sign = -1 if k % 2 == 0 else 1
            slot = key[k]
            parts = split_cache.get(slot)
            if parts is None:
                parts = split_cache[slot] = _split_mono(slot)
            for (a, b), v in parts.items():
                out[key[:k] + (a, b) + key[k + 1:]] += sign * v * coef
        out[key + ((),)] += (-1) ** (n + 1) * coef
    return PolyCochain(c.rank, n + 1, c.flavor, out)


def permute_slots(c: PolyCochain, perm) -> PolyCochain:
    """c∘perm: (g_1..g_n) -> c(g_{perm[0]+1}, ..., g_{perm[n-1]+1})."""
    out: dict = defaultdict(F)
    for key, coef in c.items():
        new = [()] * c.arity
        for s, slot in enumerate(key):
            new[perm[s]] = slot
        out[tuple(new)] += coef
    return PolyCochain(c.rank, c.arity, c.flavor, out, check=False)


def asymmetrize(c: PolyCochain) -> PolyCochain:
    """Signed sum of c over all permutations of its arguments."""
    out: dict = defaultdict(F)
    for perm in permutations(range(c.arity)):
        sign = perm_sign(perm)
        for key, coef in c.items():
            new = [()] * c.arity
            for s, slot in enumerate(key):
                new[perm[s]] = slot
            out[tuple(new)] += sign * coef
    return PolyCochain(c.rank, c.arity, c.flavor, out, check=False)


def restrict_slot_to_center(c: PolyCochain, slot: int) -> PolyCochain:
    """Restrict one argument to the center M: abelian coordinates vanish there."""
    out = {
        key: coef
        for key, coef in c.items()
        if all(len(lab) == 2 for lab in key[slot])
    }
    return PolyCochain(c.rank, c.arity, c.flavor, out, check=False)


def substitute_slot(c: PolyCochain, slot: int, rules: Mapping) -> dict:
    """Replace coordinates of one slot by polynomials in that slot.

    ``rules`` maps a label to {slot monomial: coefficient}; labels without a
    rule are kept.  Returns raw terms (caps are not re-checked).
    """
    out: dict = defaultdict(F)
    for key, coef in c.items():
        acc = {(): F(1)}
        for lab in key[slot]:
            sub = rules.get(lab)
            if sub is None:
                sub = {(lab,): F(1)}
            nxt: dict = defaultdict(F)
            for m1, v1 in acc.items():
                for m2, v2 in sub.items():
                    nxt[tuple(sorted(m1 + tuple(m2)))] += v1 * v2
            acc = nxt
        for m, v in acc.items():
            if v:
                out[key[:slot] + (m,) + key[slot + 1:]] += coef * v
    return {k: v for k, v in out.items() if v}


# --- integrality -----------------------------------------------------------

def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def _power_to_binomial(d: int):
    """x^d = sum_k S(d,k) k! C(x,k)."""
    return [(k, _stirling2(d, k) * factorial(k)) for k in range(d + 1) if _stirling2(d, k)]


def binomial_form(terms) -> dict:
    """Coefficients in the binomial basis prod C(x_v, k_v).

    A polynomial takes integer values on all integer points iff every such
    coefficient is an integer.  For per-variable degree <= 2 this is the same
    as integrality on the grid {0,1,2}^vars (the change of basis is
    unitriangular over Z there).
    Keys have the same shape as term keys: label multiplicity = k_v.
    """
    items = terms.items() if isinstance(terms, Mapping) else terms
    out: dict = defaultdict(F)
    for key, coef in items:
        acc = {(): coef}
        for s, slot in enumerate(key):
            counts: dict = defaultdict(int)
            for lab in slot:
                counts[lab] += 1
            choices = [(lab, _power_to_binomial(d)) for lab, d in counts.items()]
            slot_acc = {(): 1}
            for lab, opts in choices:
                nxt: dict = {}
                for m, v in slot_acc.items():
                    for k, w in opts:
                        nm = tuple(sorted(m + (lab,) * k))
                        nxt[nm] = nxt.get(nm, 0) + v * w
                slot_acc = nxt
            new_acc: dict = {}
            for prefix, v in acc.items():
                for m, w in slot_acc.items():
                    if w:
                        nk = prefix + (m,)
                        new_acc[nk] = new_acc.get(nk, F(0)) + v * w
            acc = new_acc
        for k, v in acc.items():
            out[k] += v
    return {k: v for k, v in out.items() if v}


def is_integer_valued(c) -> bool:
    """True iff the exponent is an integer at every tuple of group elements."""
    terms = c.items() if isinstance(c, PolyCochain) else c
    return all(v.denominator == 1 for v in binomial_form(dict(terms)).values())


# --- parameters ------------------------------------------------------------

def _to_frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else F(v)


class ParameterA:
    """a(x, y, z) on index patterns with y < z; zero elsewhere.

    Patterns for i < j < k: (i,j,k), (j,i,k), (k,i,j); for i < k: (i,i,k), (k,i,k).
    """

    def __init__(self, entries: Mapping = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean = {}
        for key, v in items:
            key = tuple(int(x) for x in key)
            v = _to_frac(v)
            if len(key) != 3:
                raise ValueError(f"a-index {key} must have three entries")
            x, y, z = key
            if min(key) < 1:
                raise ValueError(f"a-index {key}: indices start at 1")
            if not y < z:
                raise ValueError(f"a-index {key}: a(x,y,z) vanishes unless y < z")
            if v:
                clean[key] = clean.get(key, F(0)) + v
        self._e = {k: v for k, v in clean.items() if v}

    def items(self):
        return sorted(self._e.items())

    def keys(self):
        return sorted(self._e)

    def get(self, x, y, z) -> Fraction:
        return self._e.get((x, y, z), F(0))

    def AS(self, i, j, k) -> Fraction:
        """a(i,j,k) - a(j,i,k) + a(k,i,j)."""
        return self.get(i, j, k) - self.get(j, i, k) + self.get(k, i, j)

    def max_index(self) -> int:
        return max((max(k) for k in self._e), default=0)

    def check_rank(self, rank: int):
        if self.max_index() > rank:
            raise ValueError(f"a-parameter uses index {self.max_index()} > rank {rank}")

    def asymmetrized(self) -> "ParameterA":
        """The parameter whose X-cochain is X_{AS a}: entries (A, -A, A) on each triple."""
        out = {}
        r = self.max_index()
        for i, j, k in combinations(range(1, r + 1), 3):
            A = self.AS(i, j, k)
            if A:
                out[(i, j, k)], out[(j, i, k)], out[(k, i, j)] = A, -A, A
        return ParameterA(out)

    def hat(self) -> "ParameterA":
        """Increasing-triple part carrying AS a; every other pattern zeroed."""
        r = self.max_index()
        return ParameterA({(i, j, k): self.AS(i, j, k) for i, j, k in combinations(range(1, r + 1), 3)})

    def triples_only(self) -> bool:
        return all(x < y for x, y, _ in self._e)

    def __eq__(self, other):
        return isinstance(other, ParameterA) and self._e == other._e

    def __repr__(self):
        return f"ParameterA({dict(self.items())})"


class ParameterB:
    """b(i, j) with i >= 1 and j >= 0 (j = 0 pairs with e~_0)."""

    def __init__(self, entries: Mapping = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean = {}
        for key, v in items:
            i, j = (int(x) for x in key)
            if i < 1 or j < 0:
                raise ValueError(f"b-index {(i, j)}: need i >= 1 and j >= 0")
            v = _to_frac(v)
            if v:
                clean[(i, j)] = clean.get((i, j), F(0)) + v
        self._e = {k: v for k, v in clean.items() if v}

    def items(self):
        return sorted(self._e.items())

    def get(self, i, j) -> Fraction:
        return self._e.get((i, j), F(0))

    def max_index(self) -> int:
        return max((max(k) for k in self._e), default=0)

    def check_rank(self, rank: int):
        if self.max_index() > rank:
            raise ValueError(f"b-parameter uses index {self.max_index()} > rank {rank}")

    def __eq__(self, other):
        return isinstance(other, ParameterB) and self._e == other._e

    def __repr__(self):
        return f"ParameterB({dict(self.items())})"


# --- named cochains --------------------------------------------------------

def _slot_poly_B(j: int, k: int) -> dict:
    if j < k:
        return {(((j, k)),): F(-1)}
    if j == k:
        return {((j,), (j,)): F(-1, 2)}
    return {(((k, j)),): F(1), tuple(sorted(((j,), (k,)))): F(-1)}


def cochain_B(j: int, k: int, rank: int) -> PolyCochain:
    """The 1-cochain B_{j,k} on H with dB_{j,k} = e_j ⊗ e_k."""
    return PolyCochain(rank, 1, "H", {(m,): v for m, v in _slot_poly_B(j, k).items()})


def b_eta_zeta(eta, zeta) -> PolyCochain:
    """B_{η,ζ}(g) = sum_{j<k} η(a_j) ζ(a_k) e_{j,k}(m_0(g))."""
    if len(eta) != len(zeta):
        raise ValueError("rank mismatch")
    r = len(eta)
    terms = {}
    for j in range(1, r + 1):
        for k in range(j + 1, r + 1):
            v = F(eta[j - 1]) * F(zeta[k - 1])
            if v:
                terms[(((j, k),),)] = v
    return PolyCochain(r, 1, "H", terms)


def _check_ijk(i, j, k, rank):
    if not 1 <= i < j < k <= rank:
        raise ValueError(f"need 1 <= i < j < k <= rank, got ({i}, {j}, {k}) at rank {rank}")


def f_ijk(i: int, j: int, k: int, rank: int) -> PolyCochain:
    _check_ijk(i, j, k, rank)
    return (
        2 * mono(rank, [i, j], [k])
        - 3 * mono(rank, [i], [j, k])
        + mono(rank, [j], [i, k])
        - 2 * mono(rank, [i, k], [j])
        - mono(rank, [k], [i, j])
    )


def det_ijk(i: int, j: int, k: int, rank: int) -> PolyCochain:
    """The alternating tri-character e_i ∧ e_j ∧ e_k."""
    _check_ijk(i, j, k, rank)
    return asymmetrize(mono(rank, [i], [j], [k]))


def _two(rank, left: dict, right: dict, scale) -> dict:
    out: dict = defaultdict(F)
    s = F(scale)
    if not s:
        return out
    for m1, v1 in left.items():
        for m2, v2 in right.items():
            out[(m1, m2)] += s * v1 * v2
    return out


def _e(i) -> dict:
    return {((i,),): F(1)}


def _ec(j, k) -> dict:
    return {(((j, k)),): F(1)}


def _ee(i, j) -> dict:
    return {tuple(sorted(((i,), (j,)))): F(1)}


def _acc(target: dict, part: dict):
    for k, v in part.items():
        target[k] += v


def family_XYZUV(a: ParameterA, rank: int) -> dict:
    """The five 2-cochains X_a, Y_a, Z_a, U_a, V_a at the given rank."""
    a.check_rank(rank)
    B = _slot_poly_B
    X: dict = defaultdict(F)
    Y: dict = defaultdict(F)
    U: dict = defaultdict(F)
    for i, j, k in combinations(range(1, rank + 1), 3):
        x, y, z = a.get(i, j, k), a.get(j, i, k), a.get(k, i, j)
        _acc(X, _two(rank, _ec(j, k), _e(i), x))
        _acc(X, _two(rank, _ec(i, k), _e(j), y))
        _acc(X, _two(rank, _ec(i, j), _e(k), z))

        def y_block(coef, p, q, s):
            # B_pq⊗e_s + e_s⊗B_qp - B_ps⊗e_q - e_q⊗B_sp
            _acc(Y, _two(rank, B(p, q), _e(s), coef))
            _acc(Y, _two(rank, _e(s), B(q, p), coef))
            _acc(Y, _two(rank, B(p, s), _e(q), -coef))
            _acc(Y, _two(rank, _e(q), B(s, p), -coef))

        y_block(x, i, j, k)
        y_block(y, j, i, k)
        # third block: B_ki⊗e_j + e_j⊗B_ik - B_kj⊗e_i - e_i⊗B_jk
        _acc(Y, _two(rank, B(k, i), _e(j), z))
        _acc(Y, _two(rank, _e(j), B(i, k), z))
        _acc(Y, _two(rank, B(k, j), _e(i), -z))
        _acc(Y, _two(rank, _e(i), B(j, k), -z))

        A = a.AS(i, j, k)
        for coef, (p, q, s) in ((x, (i, j, k)), (y, (j, i, k)), (z, (k, i, j)), (-A, (i, j, k))):
            _acc(U, _f_terms(rank, p, q, s, coef / 6))

    for i, k in combinations(range(1, rank + 1), 2):
        x, y = a.get(i, i, k), a.get(k, i, k)
        _acc(X, _two(rank, _ec(i, k), _e(i), x))
        _acc(X, _two(rank, _ec(i, k), _e(k), y))
        _acc(Y, _two(rank, B(i, i), _e(k), x))
        _acc(Y, _two(rank, _e(k), B(i, i), x))
        _acc(Y, _two(rank, B(i, k), _e(i), -x))
        _acc(Y, _two(rank, _e(i), B(k, i), -x))
        _acc(Y, _two(rank, B(k, i), _e(k), y))
        _acc(Y, _two(rank, _e(k), B(i, k), y))
        _acc(Y, _two(rank, B(k, k), _e(i), -y))
        _acc(Y, _two(rank, _e(i), B(k, k), -y))
        _acc(U, _two(rank, B(i, i), _e(k), -x))
        _acc(U, _two(rank, B(k, k), _e(i), y))
        _acc(U, _two(rank, _e(k), _ee(i, k), -y))

    Xc = PolyCochain(rank, 2, "H", X)
    Yc = PolyCochain(rank, 2, "H", Y)
    Uc = PolyCochain(rank, 2, "G", U)
    Zc = permute_slots(restrict_slot_to_center(Yc, 0), (1, 0))
    Vc = Zc + Uc.with_flavor("H")
    return {"X": Xc, "Y": Yc, "Z": Zc, "U": Uc, "V": Vc}


def _f_terms(rank, i, j, k, scale) -> dict:
    """Terms of scale * f_{ijk} for an arbitrary index order."""
    out: dict = defaultdict(F)
    _acc(out, _two(rank, _ee(i, j), _e(k), 2 * scale))
    _acc(out, _two(rank, _e(i), _ee(j, k), -3 * scale))
    _acc(out, _two(rank, _e(j), _ee(i, k), scale))
    _acc(out, _two(rank, _ee(i, k), _e(j), -2 * scale))
    _acc(out, _two(rank, _e(k), _ee(i, j), -scale))
    return out


# --- formatting ------------------------------------------------------------

def format_rational(x: Fraction) -> str:
    x = F(x)
    return f"{x.numerator}/{x.denominator}"


def format_cochain(c: PolyCochain) -> str:
    parts = []
    for key, coef in c.sorted_items():
        slots = []
        for slot in key:
            slots.append("*".join(label_name(l) for l in slot) if slot else "1")
        parts.append(f"{format_rational(coef)} " + " ⊗ ".join(slots))
    return " + ".join(parts) if parts else "0"


# --- capped monomial basis -------------------------------------------------

def slot_basis(rank: int, flavor: str, max_degree: int = 2) -> list:
    """All slot monomials within the degree caps, in a fixed order."""
    e0, central = FLAVORS[flavor]
    labels = ([(0,)] if e0 else []) + [(i,) for i in range(1, rank + 1)]
    if central:
        labels += [(j, k) for j, k in combinations(range(1, rank + 1), 2)]
    out = [()]
    for d in range(1, max_degree + 1):
        for combo in _multisets(labels, d):
            if _slot_ok(combo):
                out.append(combo)
    return out


def _multisets(labels, d):
    from itertools import combinations_with_replacement
    for combo in combinations_with_replacement(sorted(labels), d):
        yield tuple(combo)


def cochain_basis(rank: int, arity: int, flavor: str, max_degree: int = 2) -> list:
    """Term keys of the capped basis for arity-n cochains."""
    from itertools import product
    slots = slot_basis(rank, flavor, max_degree)
    return [tuple(k) for k in product(slots, repeat=arity)]
