"""Named verification suites: seeded property checks and exhaustive small grids.

Each suite returns a SuiteReport; ``atlas verify`` and the acceptance tests
both run these.  Every check compares two independent code paths or a
closed-form identity, in exact arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd

import numpy as np

from .cochains import ParameterA, ParameterB, PolyCochain, asymmetrize, boundary, mono
from .coboundary import is_cocycle, multicharacter_class, witness_exists
from .groups import GroupElement, HeisenbergElement, ModulusData, QmElement, commutator
from .hjr import _c_a, _c_b, _check_b, _check_hat, delta_map, nu_b, partial_Qm, res_map
from .invariants import (
    build_characteristic,
    characteristic_witness,
    class_coordinates,
    membership_B,
    membership_B_pairwise,
    membership_Z,
    outer_period,
    single_automorphism_invariants,
)
from .resolution import resolve_third_cocycle, third_cocycle_c_a, verify_resolution
from .sampling import (
    random_cochain,
    random_group_element,
    random_heisenberg,
    random_hm,
    random_L,
    random_parameter_a,
    random_parameter_b,
    random_rational,
)

F = Fraction


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def to_json(self) -> dict:
        return {"property": self.name, "passed": self.passed, "checked": self.checked, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    results: list = field(default_factory=list)
    findings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name, failures, checked, detail=""):
        self.results.append(PropertyResult(name, failures == 0, checked, detail or f"{failures} failures"))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.ok,
            "results": [r.to_json() for r in self.results],
            "findings": list(self.findings),
        }


def _mul(x, y):
    return x + y if isinstance(x, GroupElement) else x * y


def _bar(fn, n):
    """Numerical bar boundary of an n-ary function, built only from the group law."""

    def d(*g):
        total = fn(*g[1:])
        for k in range(n):
            merged = g[:k] + (_mul(g[k], g[k + 1]),) + g[k + 2:]
            total += (-1) ** (k + 1) * fn(*merged)
        return total + (-1) ** (n + 1) * fn(*g[:n])

    return d


def _scaled_evaluator(c: PolyCochain):
    """(L, fn) with fn = L·c in integer arithmetic, read straight off the coordinates."""
    L = 1
    for _, v in c.items():
        L = L * v.denominator // gcd(L, v.denominator)
    terms = [(int(v * L), key) for key, v in c.items()]

    def fn(*g):
        total = 0
        for coef, key in terms:
            for s, slot in enumerate(key):
                for lab in slot:
                    coef *= g[s].coordinate(lab)
            total += coef
        return total

    return L, fn


# --- cochain calculus ------------------------------------------------------

def boundary_squared(seed=0, samples=200):
    rep = SuiteReport("boundary-squared", seed)
    rng = random.Random(seed)
    sym_fail = num_fail = 0
    for idx in range(samples):
        n = rng.randint(1, 3)
        r = rng.randint(1, 4)
        flavor = "H" if (idx % 2 and r >= 2) else "G"
        c = random_cochain(rng, r, n, flavor, max_den=6)
        if not boundary(boundary(c)).is_zero():
            sym_fail += 1
        L, fn = _scaled_evaluator(c)
        dd = _bar(_bar(fn, n), n + 1)
        draw = (lambda: random_heisenberg(rng, r, 3)) if flavor == "H" else (lambda: random_group_element(rng, r, 3))
        for _ in range(50):
            if dd(*(draw() for _ in range(n + 2))) % L:
                num_fail += 1
                break
    rep.add("boundary of a boundary is the zero polynomial", sym_fail, samples)
    rep.add("bar formula applied twice vanishes mod 1 on 50 tuples", num_fail, samples)
    return rep


def as_kills_boundaries(seed=0, samples=100):
    rep = SuiteReport("as-kills-boundaries", seed)
    rng = random.Random(seed)
    fail = 0
    for _ in range(samples):
        c = random_cochain(rng, rng.randint(1, 4), rng.randint(1, 3), "G", max_den=6)
        if not asymmetrize(boundary(c)).is_zero():
            fail += 1
    rep.add("asymmetrization of a boundary is the zero polynomial", fail, samples)
    return rep


# --- coboundary engine -----------------------------------------------------

EXACT_SEQUENCE_SUPPORTS = {
    (2, 2): [([1], [1]), ([1], [2]), ([2], [1]), ([2], [2]), ([1, 1], [2]), ([1, 2], [])],
    (2, 3): [([1], [1], [2]), ([1], [2], [1]), ([2], [1], [1]), ([1], [2], [2]), ([2], [1], [2]), ([1, 1], [2], [])],
    (3, 2): [([1], [2]), ([2], [1]), ([2], [3]), ([3], [2]), ([1], [3]), ([1, 1], [3])],
    (3, 3): [([1], [2], [3]), ([2], [1], [3]), ([3], [1], [2]), ([1], [3], [2]), ([1], [1], [2]), ([2], [3], [3])],
}


def grid_values(max_den: int) -> list:
    """Rationals in [0, 1) with denominator at most max_den."""
    return sorted({F(k, d) for d in range(1, max_den + 1) for k in range(d)})


def exact_sequence(seed=0, samples=None, grid_bound=3):
    """AS-class test versus the witness solver on every grid instance."""
    rep = SuiteReport("exact-sequence", seed)
    values = grid_values(grid_bound)
    for (r, n), support in sorted(EXACT_SEQUENCE_SUPPORTS.items()):
        monos = [mono(r, *s) for s in support]
        fail = checked = trivial = 0
        for coefs in product(values, repeat=len(monos)):
            c = PolyCochain(r, n, "G", {})
            for cf, mm in zip(coefs, monos):
                if cf:
                    c += cf * mm
            cls_zero = is_cocycle(c) and multicharacter_class(c).is_zero()
            trivial += cls_zero
            if cls_zero != witness_exists(c):
                fail += 1
            checked += 1
        rep.add(f"Z^{r} arity {n}: class test agrees with witness solver", fail, checked,
                f"{fail} disagreements, {trivial} coboundaries among {checked}")
    return rep


def class_dimension(seed=0, samples=None, max_rank=5, max_arity=3):
    """Generators e_I are realized and separated; the class map has C(r,n) coordinates."""
    rep = SuiteReport("class-dimension", seed)
    fail = checked = 0
    for r in range(1, max_rank + 1):
        for n in range(1, max_arity + 1):
            tuples = list(combinations(range(1, r + 1), n))
            for I in tuples:
                cls = multicharacter_class(F(1, 2) * mono(r, *([i] for i in I)))
                fail += cls.entries != {I: F(1, 2)}
                checked += 1
            # all generators at once, with distinct coefficients
            P = 1009
            c = PolyCochain(r, n, "G", {})
            for idx, I in enumerate(tuples, start=1):
                c += F(idx, P) * mono(r, *([i] for i in I))
            want = {I: F(idx, P) for idx, I in enumerate(tuples, start=1)}
            got = multicharacter_class(c).entries if tuples else {}
            fail += got != want or len(got) != comb(r, n)
            checked += 1
    rep.add("each generator has a single class coordinate; C(r,n) coordinates are independent", fail, checked)
    return rep


# --- resolution ------------------------------------------------------------

def resolution_identity(seed=0, samples=100, parameters=10):
    rep = SuiteReport("resolution-identity", seed)
    rng = random.Random(seed)
    sym_fail = num_fail = 0
    for _ in range(parameters):
        r = rng.randint(3, 4)
        a = ParameterA({t: random_rational(rng, 6) for t in combinations(range(1, r + 1), 3)})
        res = verify_resolution(a, resolve_third_cocycle(a, r), r, sample_count=samples, seed=rng.randrange(2 ** 32))
        sym_fail += not res.symbolic_zero
        num_fail += res.failures
    rep.add("resolving cochain has boundary equal to the pulled-back cocycle (symbolic)", sym_fail, parameters)
    rep.add("same identity through explicit products on random H-triples", num_fail, parameters * samples)
    return rep


# --- characteristic cocycles -----------------------------------------------

CHARACTERISTIC_MODULI = [((2,), (1,)), ((4, 2), (1, 1)), ((2, 3, 4), (1, 2, 3))]


def _conj(h, g):
    return h.inverse() * g * h


def characteristic_identities(seed=0, samples=100, parameters=20):
    rep = SuiteReport("characteristic-identities", seed)
    rng = random.Random(seed)
    fails = {"a": 0, "b": 0, "c": 0, "mu": 0}
    for idx in range(parameters):
        p, q = CHARACTERISTIC_MODULI[idx % len(CHARACTERISTIC_MODULI)]
        m = ModulusData(p, q)
        a = random_parameter_a(rng, m.rank, p=m.p)
        b = random_parameter_b(rng, m)
        ch = build_characteristic(a, b, m)
        lam, mu = ch.lam, ch.mu
        for _ in range(samples):
            g1, g2, g = random_L(rng, m), random_L(rng, m), random_L(rng, m)
            h, h1, h2 = random_hm(rng, m), random_hm(rng, m), random_hm(rng, m)
            lhs = lam(g1, h) + lam(g2, h) - lam(g1 * g2, h)
            if (lhs - lam(commutator(g2, h), g1)) % 1 or (lhs - (mu(_conj(h, g1), _conj(h, g2)) - mu(g1, g2))) % 1:
                fails["a"] += 1
            lhs = lam(g, h1) + lam(g, h2) - lam(g, h1 * h2)
            if (lhs + lam(commutator(g, h1), h2)) % 1 or (lhs - lam(commutator(h1, g), h2)) % 1:
                fails["b"] += 1
            hL = random_L(rng, m)
            if (lam(g, hL) - (mu(hL, _conj(hL, g)) - mu(g, hL))) % 1:
                fails["c"] += 1
            if (mu(g2, g) - mu(g1 * g2, g) + mu(g1, g2 * g) - mu(g1, g2)) % 1:
                fails["mu"] += 1
    n = parameters * samples
    rep.add("(a) λ is a twisted character in its first slot", fails["a"], n)
    rep.add("(b) λ is a twisted character in its second slot", fails["b"], n)
    rep.add("(c) λ on L×L is the conjugation difference of μ", fails["c"], n)
    rep.add("μ is a 2-cocycle on L", fails["mu"], n)
    return rep


def _b_rows(m: ModulusData, i: int, values) -> list:
    rows = []
    for u in values:
        per_j = [[x for x in values if (m.p[j - 1] * x - m.q[j - 1] * u).denominator == 1] for j in range(1, m.rank + 1)]
        for xs in product(*per_j):
            rows.append((u, xs))
    return rows


def b_grid(m: ModulusData, max_den: int):
    """Every b with entries in [0,1), denominators <= max_den, satisfying the b-cocycle condition."""
    values = grid_values(max_den)
    rows = [_b_rows(m, i, values) for i in range(1, m.rank + 1)]
    for choice in product(*rows):
        e = {}
        for i, (u, xs) in enumerate(choice, start=1):
            e[(i, 0)] = u
            for j, x in enumerate(xs, start=1):
                e[(i, j)] = x
        yield ParameterB(e)


def classification(seed=0, samples=None, grid_bound=4, max_rank=2, max_p=4):
    """class = 0 ⟺ B-membership ⟺ witness found, over exhaustive b-grids."""
    rep = SuiteReport("classification", seed)
    a0 = ParameterA({})
    fail = checked = forms_disagree = zeros = 0
    for r in range(1, max_rank + 1):
        for p in product(range(1, max_p + 1), repeat=r):
            for q in product(*(range(x) for x in p)):
                m = ModulusData(p, q)
                for b in b_grid(m, grid_bound):
                    cls_zero = class_coordinates(a0, b, m).is_zero()
                    in_B = bool(membership_B(a0, b, m))
                    wit = characteristic_witness(a0, b, m) is not None
                    if in_B != bool(membership_B_pairwise(a0, b, m)):
                        forms_disagree += 1
                        if len(rep.findings) < 5:
                            rep.findings.append(f"lattice forms disagree at p={p} q={q} b={dict(b.items())}")
                    if not (cls_zero == in_B == wit):
                        fail += 1
                    zeros += cls_zero
                    checked += 1
    rep.add("class zero ⟺ coboundary lattice ⟺ witness found", fail, checked,
            f"{fail} disagreements, {zeros} coboundaries among {checked}")
    rep.findings.insert(0, f"coboundary-lattice formulations disagree on {forms_disagree} of {checked} instances")
    return rep


# --- one automorphism ------------------------------------------------------

def single_automorphism(seed=0, samples=None):
    rep = SuiteReport("single-automorphism", seed)
    rec = single_automorphism_invariants(4, 2)
    fail = 0
    fail += rec.D1 != 2
    fail += 4 * rec.u1 - 2 * rec.v1 != 2
    # basis check: w0, w1 have determinant ±1 and b1 = p1 z1 - q1 z0 equals D1 w1
    (a0, a1), (c0, c1) = rec.w0, rec.w1
    fail += abs(a0 * c1 - a1 * c0) != 1
    fail += (-2, 4) != (rec.D1 * c0, rec.D1 * c1)
    fail += (rec.r1 * a0 + rec.v1 * c0, rec.r1 * a1 + rec.v1 * c1) != (1, 0)
    fail += rec.lambda_group != ("T", 2)
    rep.add("rank one invariants at (p1, q1) = (4, 2)", fail, 6)
    per = 0
    cases = [((F(1, 3), F(0), 2, 0), 6), ((F(2, 3), F(0), 2, 0), 6), ((F(0), F(0), 4, 2), 4), ((F(1), F(0), 4, 2), 4),
             ((F(1, 3), F(0), 4, 2), 4 * 3), ((F(0), F(1, 5), 4, 2), 4 * 5)]
    for (x, y, p1, q1), want in cases:
        per += outer_period(x, y, p1, q1) != want
    rep.add("outer period follows the denominator rule", per, len(cases))
    return rep


# --- obstructions ----------------------------------------------------------

def _qm_grid(m: ModulusData, offsets=(-1, 0, 1)):
    out = []
    for res in product(*(range(p) for p in m.p)):
        base = m.n(GroupElement(res))
        out.extend(QmElement(res, base + k, m) for k in offsets)
    return out


def _cocycle_failures(c, grid) -> int:
    """Exhaustive 3-cocycle identity, with c tabulated once on grid^3."""
    idx = {x: n for n, x in enumerate(grid)}
    N = len(grid)
    table = {}
    for i, x in enumerate(grid):
        for j, y in enumerate(grid):
            for k, z in enumerate(grid):
                table[(i, j, k)] = c(x, y, z)
    den = 1
    for v in table.values():
        den = den * v.denominator // gcd(den, v.denominator)
    T = np.zeros((N, N, N), dtype=np.int64)
    for key, v in table.items():
        T[key] = int(v * den)
    # products stay inside the grid only up to the offsets; map through a lookup with -1 for misses
    mul = np.full((N, N), -1, dtype=np.int64)
    for i, x in enumerate(grid):
        for j, y in enumerate(grid):
            mul[i, j] = idx.get(x * y, -1)
    I = np.arange(N)
    x, y, z, w = np.meshgrid(I, I, I, I, indexing="ij")
    xy, yz, zw = mul[x, y], mul[y, z], mul[z, w]
    ok = (xy >= 0) & (yz >= 0) & (zw >= 0)
    xy, yz, zw = np.where(ok, xy, 0), np.where(ok, yz, 0), np.where(ok, zw, 0)
    d = T[y, z, w] - T[xy, z, w] + T[x, yz, w] - T[x, y, zw] + T[x, y, z]
    return int(np.count_nonzero((d % den != 0) & ok)), int(np.count_nonzero(ok))


def obstruction_cocycles(seed=0, samples=3, max_p=3, max_rank=2):
    rep = SuiteReport("obstruction-cocycles", seed)
    rng = random.Random(seed)
    fail_b = checked_b = 0
    for r in range(1, max_rank + 1):
        for p in product(range(1, max_p + 1), repeat=r):
            for q in product(*(range(x) for x in p)):
                m = ModulusData(p, q)
                grid = _qm_grid(m)
                for _ in range(samples):
                    b = random_parameter_b(rng, m)
                    _check_b(b, m)
                    f, n = _cocycle_failures(lambda x, y, z: _c_b(b, x, y, z, m), grid)
                    fail_b += f
                    checked_b += n
    rep.add("c_b satisfies the 3-cocycle identity on Q_m (exhaustive residues, three z_0 offsets)", fail_b, checked_b)
    fail_a = checked_a = 0
    for p in product(range(1, max_p + 1), repeat=3):
        D = gcd(*p)
        m = ModulusData(p, (0, 0, 0))
        ah = ParameterA({(1, 2, 3): F(1, D)})
        _check_hat(ah, m)
        f, n = _cocycle_failures(lambda x, y, z: _c_a(ah, x, y, z), _qm_grid(m, (0,)))
        fail_a += f
        checked_a += n
    rep.add("c_a satisfies the 3-cocycle identity on Q_m (rank 3, exhaustive residues)", fail_a, checked_a)
    nu_fail = 0
    for _ in range(100):
        r = rng.randint(1, 3)
        p = tuple(rng.randint(1, 4) for _ in range(r))
        m = ModulusData(p, tuple(rng.randrange(x) for x in p))
        b = random_parameter_b(rng, m)
        g = GroupElement(tuple(x * rng.randint(-5, 5) for x in p))
        h = GroupElement(tuple(x * rng.randint(-5, 5) for x in p))
        nu_fail += nu_b(b, g + h, m) != (nu_b(b, g, m) + nu_b(b, h, m)) % 1
    rep.add("nu_b is additive on N", nu_fail, 100)
    cons = 0
    for _ in range(50):
        r = rng.randint(3, 5)
        p = tuple(rng.randint(1, 4) for _ in range(r))
        a = random_parameter_a(rng, r, p=p)
        m = ModulusData(p, tuple(rng.randrange(x) for x in p))
        ob = delta_map(a, ParameterB({}), m)
        via_delta = {t: F(c.value, c.mod) for t, c in ob.a_sector.items() if c.value}
        engine = multicharacter_class(third_cocycle_c_a(a.hat(), r)).entries
        cons += not (partial_Qm(a, rank=r).entries == engine == via_delta)
    rep.add("∂_{Q_m} after δ matches the engine class of the asymmetrized cocycle", cons, 50)
    return rep


def res_cokernel(seed=0, samples=None, grid_bound=4):
    """p = (2,2,2): Res reaches {0} ⊕ T² in Λ_a(1,2,3); the quotient is Z_2."""
    rep = SuiteReport("res-cokernel", seed)
    m = ModulusData((2, 2, 2), (0, 0, 0))
    values = [F(k, grid_bound) for k in range(-grid_bound, grid_bound + 1)]
    reached, seen, circles = set(), set(), set()
    fail = 0
    for x, y, z in product(values, repeat=3):
        a = ParameterA({(1, 2, 3): x, (2, 1, 3): y, (3, 1, 2): z})
        if not membership_Z(a, ParameterB({}), m):
            continue
        cyc, c2, c3 = class_coordinates(a, ParameterB({}), m).a_triples[(1, 2, 3)]
        seen.add(cyc.value)
        if a.AS(1, 2, 3).denominator == 1:
            rc, r2, r3 = res_map(a, m).a_triples[(1, 2, 3)]
            reached.add(rc.value)
            circles.add((r2.value, r3.value))
            fail += (r2.value, r3.value) != (y % 1, z % 1)
    rep.add("Res image has zero cyclic part", int(reached != {0}), 1, f"cyclic values reached: {sorted(reached)}")
    rep.add("Res image covers the circle grid", int(len(circles) != len({v % 1 for v in values}) ** 2) + fail, 1,
            f"{len(circles)} circle pairs reached")
    rep.add("quotient has exactly two cosets", int(seen != {0, 1}), 1, f"cyclic values realized: {sorted(seen)}")
    a_half = ParameterA({(1, 2, 3): F(1, 2)})
    rep.add("nonzero coset realized by a(1,2,3) = 1/2",
            int(class_coordinates(a_half, ParameterB({}), m).a_triples[(1, 2, 3)][0].value != 1), 1)
    return rep


SUITES = {
    "boundary-squared": boundary_squared,
    "as-kills-boundaries": as_kills_boundaries,
    "exact-sequence": exact_sequence,
    "class-dimension": class_dimension,
    "resolution-identity": resolution_identity,
    "characteristic-identities": characteristic_identities,
    "classification": classification,
    "single-automorphism": single_automorphism,
    "obstruction-cocycles": obstruction_cocycles,
    "res-cokernel": res_cokernel,
}

GRID_SUITES = {"exact-sequence", "classification", "res-cokernel"}


def run_suite(name: str, seed: int = 0, samples: int | None = None, grid_bound: int | None = None) -> SuiteReport:
    fn = SUITES[name]
    kwargs = {"seed": seed}
    if samples is not None:
        kwargs["samples"] = samples
    if grid_bound is not None and name in GRID_SUITES:
        kwargs["grid_bound"] = grid_bound
    return fn(**kwargs)
