import json
from fractions import Fraction
from pathlib import Path

import pytest

from parchern import corpus
from parchern.errors import ModelMismatchError, SchemaError
from parchern.parabolic import NormalCrossingsDivisor, line, trivial
from parchern.scenarios import (SCENARIOS, LedgerEntry, ScenarioError, lefschetz_ledger,
                                main_theorem_instance, run_scenario)

INPUTS = Path(__file__).resolve().parent.parent / "inputs"
BUILTIN = sorted(n for n, s in SCENARIOS.items() if not s.needs_input)


def load(name):
    return json.loads((INPUTS / name).read_text())


@pytest.mark.parametrize("name", BUILTIN)
def test_builtin_scenarios_pass(name):
    rep = run_scenario(name)
    assert rep.ok, rep.to_text()
    assert rep.checks


@pytest.mark.parametrize("name", ["chow-models", "parabolic-calculus", "steenbrink", "blowup-family"])
def test_reruns_are_byte_identical(name):
    assert run_scenario(name).to_json() == run_scenario(name).to_json()


def test_pointed_curves_with_five_sections():
    rep = run_scenario("pointed-curves", {"r": "5"})
    first = rep.to_dict()["checks"][0]
    assert first["check"] == "log de Rham Euler class of O is -3"
    assert first["witness"]["value"] == {"1": "-3/1"}
    assert rep.ok


def test_steenbrink_trap_takes_the_hypothesis_path():
    rep = run_scenario("steenbrink-trap")
    checks = {c["check"]: c for c in rep.to_dict()["checks"]}
    assert checks["verdict is HYPOTHESIS_FAILED"]["status"] == "PASS"
    assert checks["residue is not nilpotent"]["witness"]["eigenvalues"] == [["0/1"], ["-1/1"]]


def test_report_schema():
    d = run_scenario("classical").to_dict()
    assert list(d) == ["schema", "scenario", "params", "status", "summary", "checks", "notes"]
    assert d["schema"] == 1 and d["status"] == "PASS"
    assert d["summary"] == {"checks": len(d["checks"]), "failed": 0}
    assert set(d["checks"][0]) == {"check", "status", "witness"}


def test_text_report_ends_with_a_tally():
    text = run_scenario("classical").to_text()
    assert text.splitlines()[-1] == "PASS: 4/4 checks passed"


class TestParameters:
    def test_unknown_scenario(self):
        with pytest.raises(ScenarioError):
            run_scenario("nope")

    def test_unknown_parameter(self):
        with pytest.raises(ScenarioError, match="no parameter"):
            run_scenario("classical", {"r": "3"})

    def test_badly_typed_parameter(self):
        with pytest.raises(ScenarioError, match="expects int"):
            run_scenario("pointed-curves", {"r": "three"})

    def test_r_out_of_range(self):
        with pytest.raises(ScenarioError):
            run_scenario("pointed-curves", {"r": "11"})

    def test_input_is_required_or_refused(self):
        with pytest.raises(ScenarioError, match="needs --input"):
            run_scenario("ledger")
        with pytest.raises(ScenarioError, match="takes no --input"):
            run_scenario("classical", input_data={})


class TestInputScenarios:
    def test_product_ledger(self):
        assert run_scenario("ledger", input_data=load("ledger_product.json")).ok

    def test_unbalanced_ledger_fails(self):
        rep = run_scenario("ledger", input_data=load("ledger_unbalanced.json"))
        assert not rep.ok

    def test_weight_half_ledger(self):
        rep = run_scenario("main-theorem", input_data=load("weight_half_ledger.json"))
        assert rep.ok
        assert rep.to_dict()["checks"][0]["witness"]["total"] == {}

    def test_gauge_complex(self):
        assert run_scenario("complex", input_data=load("complex_gauge.json")).ok

    def test_family_file(self):
        rep = run_scenario("family", input_data=load("family_identity.json"))
        assert rep.ok

    def test_schema_errors_carry_paths(self):
        data = load("weight_half_ledger.json")
        data["degrees"][1]["terms"][0]["mult"] = "one"
        with pytest.raises(SchemaError) as exc:
            run_scenario("main-theorem", input_data=data, input_name="w.json")
        assert exc.value.path == "$.degrees[1].terms[0].mult"


class TestLedger:
    S = corpus.p1("S", {"x": {"pt": 1}})

    def entry(self, sign, rank, pt=0, label="e"):
        return LedgerEntry(sign, label, rank, self.S.element({"1": rank, "pt": pt}))

    def test_identical_sides(self):
        side = [self.entry(1, 2, Fraction(1, 2)), self.entry(-1, 1)]
        assert lefschetz_ledger(side, side).equal

    def test_splitting_an_entry(self):
        lhs = [self.entry(1, 2, 1)]
        rhs = [self.entry(1, 1, Fraction(1, 4)), self.entry(1, 1, Fraction(3, 4))]
        assert lefschetz_ledger(lhs, rhs).equal

    def test_imbalance_and_rank_mismatch(self):
        bad = LedgerEntry(1, "liar", 3, self.S.scalar(2))
        res = lefschetz_ledger([bad], [self.entry(1, 3)])
        assert not res.equal and res.rank_mismatches == ("liar",)

    def test_models_must_agree(self):
        with pytest.raises(ModelMismatchError):
            lefschetz_ledger([self.entry(1, 1)], [LedgerEntry(1, "p", 1, corpus.p2().one())])


def test_main_theorem_instance_on_a_product():
    S = corpus.p1("S", {"x": {"pt": 1}})
    D = NormalCrossingsDivisor.from_registry(S)
    inst = main_theorem_instance([trivial(D, 1), trivial(D, 0), trivial(D, 2)])
    assert inst.in_ch0 and inst.total == 3


def test_main_theorem_instance_detects_a_positive_degree_part():
    S = corpus.p1("S", {"x": {"pt": 1}})
    D = NormalCrossingsDivisor.from_registry(S)
    inst = main_theorem_instance([trivial(D, 1) + line(D, {"x": Fraction(1, 2)}), trivial(D, 2)])
    assert not inst.in_ch0 and inst.total["pt"] == Fraction(1, 2)
