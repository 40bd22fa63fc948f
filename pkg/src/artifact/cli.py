"""``atlas``: command-line front end.

Exit codes: 0 success, 2 input error, 3 precondition error, 4 property failure.
"""

from __future__ import annotations

import functools
import sys
from itertools import combinations

import click

from .coboundary import coboundary_witness, find_witness, is_cocycle, multicharacter_class, verify_witness
from .cochains import FLAVORS, ParameterA, PolyCochain, format_cochain
from .errors import AtlasError, InputError, PreconditionError, PropertyFailure
from .hjr import delta_map, h2_class, partial_Qm, res_map
from .invariants import (
    class_coordinates,
    fiber_consistency,
    membership_B,
    membership_B_pairwise,
    membership_Z,
    outer_period,
    single_automorphism_invariants,
)
from .resolution import resolve_third_cocycle, third_cocycle_c_a, verify_resolution
from .schema import Problem, dump_report, format_rational, load_problem, make_report, parse_rational, validate_report
from .suites import SUITES, run_suite

A_PAIR_KIND = "parameter class (R/2Z); integer values already give coboundaries"


# --- encoding helpers ------------------------------------------------------

def _cochain_terms(c: PolyCochain) -> list:
    return [
        {"monomial": [[list(lab) for lab in slot] for slot in key], "coefficient": format_rational(v)}
        for key, v in c.sorted_items()
    ]


def _cochain_json(c: PolyCochain) -> dict:
    return {"rank": c.rank, "arity": c.arity, "flavor": c.flavor, "terms": _cochain_terms(c), "text": format_cochain(c)}


def _mc_json(cls) -> list:
    return [{"index": list(k), "circle": format_rational(v)} for k, v in sorted(cls.entries.items())]


def _class_json(coords) -> dict:
    out = coords.to_json()
    for entry in out["a_pairs"]:
        entry["kind"] = A_PAIR_KIND
    out["is_zero"] = coords.is_zero()
    return out


def _all_AS_integer(a: ParameterA, r: int) -> bool:
    return all(a.AS(*t).denominator == 1 for t in combinations(range(1, r + 1), 3))


def _seed(prob: Problem | None, seed):
    if seed is not None:
        return seed
    return (prob.options.get("seed", 0) if prob else 0)


def _samples(prob: Problem | None, samples, default):
    if samples is not None:
        return samples
    return (prob.options.get("samples", default) if prob else default)


# --- rendering -------------------------------------------------------------

def _coord_text(node) -> str | None:
    if not isinstance(node, dict):
        return None
    if set(node) == {"mod", "value"}:
        return f"Z/{node['mod']}:{node['value']}"
    if "circle" in node and set(node) <= {"circle", "period"}:
        per = node.get("period", 1)
        return f"{'R/Z' if per == 1 else f'R/{per}Z'}:{node['circle']}"
    return None


def _inline(node) -> str | None:
    """One-line text for coordinates, index lists and class entries; None if not inline-able."""
    c = _coord_text(node)
    if c is not None:
        return c
    if node == []:
        return "none"
    if isinstance(node, list) and all(isinstance(x, (int, str)) for x in node):
        return "(" + ", ".join(str(x) for x in node) + ")"
    if isinstance(node, dict) and "class" in node and ("pattern" in node or "index" in node):
        cls = node["class"]
        parts = [_coord_text(x) for x in cls] if isinstance(cls, list) else [_coord_text(cls)]
        line = f"{_inline(node.get('pattern', node.get('index')))}: {', '.join(parts)}"
        return line + (f"  [{node['kind']}]" if "kind" in node else "")
    if isinstance(node, dict) and set(node) == {"index", "circle"}:
        return f"{_inline(node['index'])}: R/Z:{node['circle']}"
    return None


def _render_text(node, prefix="") -> list[str]:
    if isinstance(node, dict):
        lines = []
        for k in sorted(node):
            v = node[k]
            if k == "terms":  # the "text" field already shows the cochain
                continue
            one = _inline(v)
            if one is not None:
                lines.append(f"{prefix}{k}: {one}")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{prefix}{k}:")
                lines.extend(_render_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {_scalar(v)}")
        return lines
    if isinstance(node, list):
        lines = []
        for item in node:
            one = _inline(item)
            if one is not None:
                lines.append(f"{prefix}- {one}")
                continue
            sub = _render_text(item, prefix + "  ")
            if sub:
                sub[0] = prefix + "- " + sub[0][len(prefix) + 2:]
            lines.extend(sub)
        return lines
    return [f"{prefix}{_scalar(node)}"]


def _scalar(v) -> str:
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if v is None:
        return "-"
    if v == [] or v == {}:
        return "none"
    return str(v)


def _emit(command: str, result: dict, as_json: bool):
    report = make_report(command, result)
    validate_report(report)
    if as_json:
        click.echo(dump_report(report), nl=False)
    else:
        click.echo("\n".join([f"atlas {command}"] + _render_text(result)))


def _command(fn):
    """Turn AtlasError into the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except AtlasError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.exit_code)

    return wrapper


def _common(fn):
    fn = click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")(fn)
    fn = click.option("--witness", is_flag=True, help="Include a coboundary witness when one exists.")(fn)
    fn = click.option("--grid-bound", type=int, default=None, help="Grid bound for exhaustive suites.")(fn)
    fn = click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Random seed (default 0).")(fn)
    fn = click.option("--samples", type=click.IntRange(1), default=None, help="Sample count for randomized checks.")(fn)
    return fn


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact torus-valued cohomology of Z^r, its modulus extensions and Heisenberg groups."""


# --- commands --------------------------------------------------------------

@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@_common
@_command
def coboundary(file, as_json, witness, grid_bound, seed, samples):
    """Cocycle test, class and (optionally) a witness for a cochain or for c_a."""
    prob = load_problem(file)
    if prob.cochain is not None:
        c, source = prob.cochain, "cochain"
    elif prob.has_a:
        c, source = third_cocycle_c_a(prob.a, prob.require_rank()), "c_a"
    else:
        raise InputError("coboundary needs a 'cochain' section or 'a' parameters")
    result = {"source": source, "cochain": _cochain_json(c), "is_cocycle": is_cocycle(c)}
    abelian = not FLAVORS[c.flavor][1]
    f = None
    if not result["is_cocycle"]:
        result.update({"class": None, "is_coboundary": False, "method": "cocycle test"})
    elif abelian:
        cls = multicharacter_class(c)
        result.update({"class": _mc_json(cls), "is_coboundary": cls.is_zero(), "method": "asymmetrization class"})
        if witness and cls.is_zero():
            f = coboundary_witness(c)
    else:
        f = find_witness(c)
        result.update({"class": None, "is_coboundary": f is not None, "method": "capped-basis witness search"})
    if witness:
        if f is not None and not verify_witness(c, f):
            raise PropertyFailure("witness failed verification")
        result["witness"] = _cochain_json(f) if f is not None else None
    _emit("coboundary", result, as_json)


def _Z(prob: Problem):
    m = prob.require_modulus()
    z = membership_Z(prob.a, prob.b, m)
    if not z:
        raise PreconditionError(z.reason)
    return m


@main.command("class")
@click.argument("file", type=click.Path(dir_okay=False))
@_common
@_command
def class_(file, as_json, witness, grid_bound, seed, samples):
    """Canonical class coordinates of the characteristic cocycle of (a, b)."""
    prob = load_problem(file)
    m = _Z(prob)
    _emit("class", {"class": _class_json(class_coordinates(prob.a, prob.b, m))}, as_json)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@_common
@_command
def invariants(file, as_json, witness, grid_bound, seed, samples):
    """Lattice memberships, class coordinates, the modular obstruction and rank-one data."""
    prob = load_problem(file)
    m = _Z(prob)
    coords = class_coordinates(prob.a, prob.b, m)
    result = {
        "modulus": {"p": list(m.p), "q": list(m.q)},
        "membership": {
            "cocycle_lattice": True,
            "coboundary_lattice": bool(membership_B(prob.a, prob.b, m)),
            "coboundary_lattice_pairwise": bool(membership_B_pairwise(prob.a, prob.b, m)),
        },
        "class": _class_json(coords),
        "fiber_consistent": fiber_consistency(prob.b, m),
        "obstruction": delta_map(prob.a, prob.b, m).to_json(),
        "partial_Qm": _mc_json(partial_Qm(prob.a, rank=m.rank)),
    }
    if m.rank == 1:
        rec = single_automorphism_invariants(m.p[0], m.q[0])
        result["rank_one"] = rec.to_json()
        ch = prob.options.get("character")
        if ch:
            result["rank_one"]["outer_period"] = outer_period(parse_rational(ch["x"]), parse_rational(ch["y"]), m.p[0], m.q[0])
    _emit("invariants", result, as_json)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@_common
@_command
def resolve(file, as_json, witness, grid_bound, seed, samples):
    """Resolve c_a on Z^r by a 2-cochain b_a on H and check ∂b_a = π_0*c_a."""
    prob = load_problem(file)
    r = prob.require_rank()
    b = resolve_third_cocycle(prob.a, r)
    rep = verify_resolution(prob.a, b, r, sample_count=_samples(prob, samples, 100), seed=_seed(prob, seed))
    result = {
        "third_cocycle": _cochain_json(third_cocycle_c_a(prob.a, r)),
        "resolving_cochain": _cochain_json(b),
        "symbolic_zero": rep.symbolic_zero,
        "samples": rep.samples,
        "failures": rep.failures,
        "seed": rep.seed,
    }
    _emit("resolve", result, as_json)
    if not (rep.ok and rep.symbolic_zero):
        raise PropertyFailure("resolution identity failed")


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@_common
@_command
def hjr(file, as_json, witness, grid_bound, seed, samples):
    """H²(H,T) class, Res, the modular obstruction δ and ∂_{Q_m}."""
    prob = load_problem(file)
    r = prob.require_rank()
    integral = _all_AS_integer(prob.a, r)
    result = {"partial_Qm": _mc_json(partial_Qm(prob.a, rank=r))}
    result["h2"] = h2_class(prob.a, rank=r).to_json() if integral else None
    if prob.modulus is not None:
        m = _Z(prob)
        if integral:
            res = res_map(prob.a, m)
            result["res"] = _class_json(res)
        else:
            result["res"] = None
        result["delta"] = delta_map(prob.a, prob.b, m).to_json()
    if not integral:
        result["note"] = "AS a is not integral, so μ_a is not a cocycle on H; h2 and res are omitted"
    _emit("hjr", result, as_json)


@main.command()
@click.argument("suite")
@_common
@_command
def verify(suite, as_json, witness, grid_bound, seed, samples):
    """Run a named verification suite."""
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; known suites: {', '.join(sorted(SUITES))}")
    rep = run_suite(suite, seed=_seed(None, seed), samples=samples, grid_bound=grid_bound)
    _emit("verify", rep.to_json(), as_json)
    if not rep.ok:
        raise PropertyFailure(f"suite {suite} failed")


if __name__ == "__main__":
    main()
