import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from click.testing import CliRunner
from hypothesis import given, strategies as st

from artifact import cli, suites
from artifact.coboundary import verify_witness
from artifact.errors import InputError
from artifact.schema import dump_report, make_report, parse_problem, parse_rational, validate_report

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
F = Fraction


def run(*args):
    res = CliRunner().invoke(cli.main, [str(a) for a in args])
    return res.exit_code, res.output


def run_json(*args):
    code, out = run(*args, "--json")
    assert code == 0, out
    report = json.loads(out)
    validate_report(report)
    return report["result"]


# --- parsing ---------------------------------------------------------------

@pytest.mark.parametrize("text,value", [("1/2", F(1, 2)), ("-3/6", F(-1, 2)), ("4", F(4)), ("0/5", F(0))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "a/b", "", "1/-2", 3])
def test_parse_rational_rejects(text):
    with pytest.raises(InputError):
        parse_rational(text)


@given(st.fractions(max_denominator=50))
def test_rational_text_round_trip(x):
    assert parse_rational(f"{x.numerator}/{x.denominator}") == x


def test_rank_and_modulus_must_agree():
    with pytest.raises(InputError):
        parse_problem({"schema": "atlas/v1", "rank": 2, "modulus": {"p": [2], "q": [1]}})


def test_bad_parameter_index_is_an_input_error():
    with pytest.raises(InputError):
        parse_problem({"schema": "atlas/v1", "rank": 3, "a": [{"index": [1, 3, 2], "value": "1/2"}]})


def test_report_schema_rejects_a_malformed_class():
    bad = make_report("class", {"class": {"b_diag": [{"pattern": [1, 1], "class": [{"circle": 0.5}]}]}})
    with pytest.raises(InputError):
        validate_report(bad)


# --- commands --------------------------------------------------------------

def test_manifest_exit_codes():
    manifest = json.loads((CORPUS / "manifest.json").read_text())
    for entry in manifest["runs"]:
        args = [CORPUS / a if a.endswith(".json") else a for a in entry["args"]]
        code, out = run(*args)
        assert code == entry["exit"], (entry, out)


def test_zero_cochain():
    r = run_json("coboundary", CORPUS / "zero_cochain.json", "--witness")
    assert r["is_cocycle"] and r["is_coboundary"] and r["class"] == []
    assert r["witness"]["terms"] == []


def test_third_cocycle_with_half_is_not_a_coboundary():
    r = run_json("coboundary", CORPUS / "third_cocycle_half.json")
    assert r["is_cocycle"] is True
    assert r["class"] == [{"index": [1, 2, 3], "circle": "1/2"}]
    assert r["is_coboundary"] is False


@pytest.mark.parametrize("name", ["symmetric_coboundary.json", "heisenberg_cochain.json"])
def test_emitted_witness_reparses_and_verifies(name):
    r = run_json("coboundary", CORPUS / name, "--witness")
    assert r["is_coboundary"]
    c = parse_problem({"schema": "atlas/v1", "cochain": {k: r["cochain"][k] for k in ("rank", "arity", "flavor", "terms")}}).cochain
    f = parse_problem({"schema": "atlas/v1", "cochain": {k: r["witness"][k] for k in ("rank", "arity", "flavor", "terms")}}).cochain
    assert verify_witness(c, f)


def test_rank_one_class():
    r = run_json("invariants", CORPUS / "rank_one.json")
    assert r["class"]["b_diag"] == [{"pattern": [1, 1], "class": [{"mod": 2, "value": "0"}, {"circle": "1/2"}]}]
    assert r["rank_one"]["D1"] == 2
    # χ(z_0) has order 3 when x = 1/3, r_1 = 2
    assert r["rank_one"]["outer_period"] == 12


def test_empty_parameters_give_zero_invariants():
    r = run_json("invariants", CORPUS / "empty_parameters.json")
    assert r["class"]["is_zero"]
    assert r["membership"] == {"cocycle_lattice": True, "coboundary_lattice": True, "coboundary_lattice_pairwise": True}
    assert r["partial_Qm"] == []
    assert all(v["value"] == "0/1" for v in r["obstruction"]["nu"])


def test_a_pairs_are_labelled_as_parameter_classes():
    r = run_json("class", CORPUS / "rank_three.json")
    assert all(e["kind"] == cli.A_PAIR_KIND for e in r["class"]["a_pairs"])
    assert r["class"]["a_triples"][0]["class"][0] == {"mod": 2, "value": "1"}


def test_resolve_reports_both_checks():
    r = run_json("resolve", CORPUS / "resolve_rank_four.json")
    assert r["symbolic_zero"] and r["failures"] == 0
    assert (r["samples"], r["seed"]) == (50, 7)
    r2 = run_json("resolve", CORPUS / "resolve_rank_four.json", "--seed", "9", "--samples", "5")
    assert (r2["samples"], r2["seed"]) == (5, 9)


def test_hjr_skips_h2_when_AS_is_not_integral():
    r = run_json("hjr", CORPUS / "rank_three.json")
    assert r["h2"] is None and r["res"] is None
    assert r["delta"]["a_sector"] == [{"pattern": [1, 2, 3], "class": {"mod": 2, "value": "1"}}]
    r = run_json("hjr", CORPUS / "hjr_integral.json")
    assert r["h2"] is not None and r["res"]["a_triples"][0]["class"][0] == {"mod": 2, "value": "0"}


def test_precondition_message_names_the_condition():
    code, out = run("invariants", CORPUS / "invalid" / "not_a_cocycle.json")
    assert code == 3 and "b-cocycle condition at (i,j)=(1,1)" in out


def test_text_output_mentions_the_class():
    code, out = run("coboundary", CORPUS / "third_cocycle_half.json")
    assert code == 0 and "(1, 2, 3): R/Z:1/2" in out


def test_failing_suite_exits_4(monkeypatch):
    def broken(seed=0, samples=None):
        rep = suites.SuiteReport("broken", seed)
        rep.add("always fails", 1, 1)
        return rep

    monkeypatch.setitem(suites.SUITES, "broken", broken)
    code, out = run("verify", "broken", "--json")
    assert code == 4
    assert json.loads(out.split("error:")[0])["result"]["passed"] is False


def test_unknown_suite_exits_2():
    assert run("verify", "identities-by-number")[0] == 2


def test_verify_is_seeded():
    a = run("verify", "boundary-squared", "--samples", "5", "--seed", "11", "--json")
    b = run("verify", "boundary-squared", "--samples", "5", "--seed", "11", "--json")
    assert a == b and a[0] == 0


def test_dump_report_is_sorted_and_stable():
    rep = make_report("class", {"b": 1, "a": [2]})
    assert dump_report(rep) == dump_report(json.loads(dump_report(rep)))
    assert dump_report(rep).index('"a"') < dump_report(rep).index('"b"')


def test_console_script_runs_in_a_fresh_process():
    out1 = subprocess.run([sys.executable, "-m", "artifact.cli", "class", str(CORPUS / "rank_two.json"), "--json"],
                          capture_output=True, check=True).stdout
    out2 = subprocess.run([sys.executable, "-m", "artifact.cli", "class", str(CORPUS / "rank_two.json"), "--json"],
                          capture_output=True, check=True).stdout
    assert out1 == out2
    validate_report(json.loads(out1))
