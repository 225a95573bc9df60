import json

import pytest

from nilring.errors import BudgetExhausted
from nilring.registry import (
    BY_ID,
    EXISTENCE_IDS,
    OUT_OF_SCOPE,
    PROBES,
    REGISTRY,
    Tally,
    hunt_counterexample,
    run_check,
    run_suite,
    summarize,
)
from nilring.reports import CheckReport, Fact, replay_witness
from nilring.specs import build_ring

# numbered statements 201-224; 221 does not exist
STATEMENT_NUMBERS = [n for n in range(201, 225) if n != 221]

EXPECTED_IDS = [
    "P201", "C202", "X202", "C203", "C204", "C205", "X205", "P206", "P207", "C208", "C209", "C210",
    "R211a", "L212", "L213", "P214", "P215", "P216", "D217", "P218", "P219", "R220", "P222", "C223",
    "X223", "E224",
]


def test_registry_ids_and_order():
    assert [c.check_id for c in REGISTRY] == EXPECTED_IDS
    assert EXISTENCE_IDS == ("X202", "X205", "X223")


def test_every_statement_is_registered():
    covered = {int(cid[1:4]) for cid in list(BY_ID) + list(OUT_OF_SCOPE)}
    assert set(STATEMENT_NUMBERS) <= covered
    assert "R211b" in OUT_OF_SCOPE and "R211b" not in BY_ID


def test_p201_on_z12():
    r = run_check("P201", "cyclic:12")
    assert r.status == "verified" and r.statistics["instances"] > 0


def test_x205_on_ut2():
    r = run_check("X205", "ut3:2")
    assert r.status == "confirmed"
    w = r.witness_json()
    assert w["ideals"]["I"]["generators"] == ["E13"] and w["ideals"]["P"]["members"] == ["0"]
    assert replay_witness(r.to_json())


def test_x202_on_ut2():
    r = run_check("X202", "ut3:2")
    w = r.witness_json()
    assert r.status == "confirmed"
    assert w["ideals"]["I"]["generators"] == ["E13"] and w["ideals"]["J"]["generators"] == ["E12"]
    assert w["ideals"]["X"]["members"] == ["0"]


def test_c209_on_z6():
    r = run_check("C209", "cyclic:6")
    assert r.status == "verified"
    assert r.statistics["semisimple"] and r.statistics["no_proper_nil_essential"]


def test_p215_instance_on_z12():
    from nilring.ideals import generate_ideal, ideal_sum
    from nilring.predicates import is_nil_essential
    ring = build_ring("cyclic:12")
    I1 = J1 = generate_ideal(ring, [4])
    I2, J2 = generate_ideal(ring, [6]), generate_ideal(ring, [3])
    assert ideal_sum(I1, I2).label() == "(2)" and ideal_sum(J1, J2).is_whole
    assert is_nil_essential(ideal_sum(I1, I2), ideal_sum(J1, J2))
    assert run_check("P215", ring).status == "verified"


def test_r220_on_ut2():
    r = run_check("R220", "ut3:2")
    assert r.status == "verified"
    assert r.statistics["left_ideals"] == 9
    assert r.statistics["trivial_meet_with_I3"] == ["I2", "I4", "I7"]
    assert any("I4, I7" in note for note in r.notes)


def test_r220_prime_modulus_three():
    r = run_check("R220", "ut3:3")
    assert r.status == "verified" and r.statistics["left_ideals"] == 11


@pytest.mark.parametrize("cid,spec,reason", [
    ("L212", "ut3:2", "commutative"),
    ("R220", "cyclic:12", "upper-triangular"),
    ("E224", "cyclic:12", "prime power"),
    ("R211a", "cyclic:1", "zero ring"),
])
def test_hypothesis_skips(cid, spec, reason):
    r = run_check(cid, spec)
    assert r.status == "skipped" and reason in r.reason


def test_cap_skip(monkeypatch):
    from nilring import config
    monkeypatch.setattr(config, "HOM_MAX_CANDIDATES", 2)
    r = run_check("P218", "cyclic:12")
    assert r.status == "skipped" and r.reason.startswith("cap")


def test_noetherian_note():
    r = run_check("L212", "cyclic:12")
    assert any("noetherian" in n for n in r.notes)


def test_e224_prime_powers():
    for spec in ("cyclic:8", "cyclic:27"):
        r = run_check("E224", spec)
        assert r.status == "verified" and r.statistics["all_sets_are_units"]


def test_p219_reports_nonunital_separately():
    r = run_check("P219", "product:cyclic:2+cyclic:2")
    assert r.status == "verified"
    assert r.statistics["nonunital_endomorphisms"] > r.statistics["unital_endomorphisms"]


def test_refuted_report_needs_facts():
    with pytest.raises(ValueError):
        CheckReport("P201", "cyclic:2", "refuted")
    with pytest.raises(ValueError):
        CheckReport("P201", "cyclic:2", "bogus")


def test_replay_detects_false_fact():
    r = run_check("X205", "ut3:2").to_json()
    r["witness"]["facts"][0][2] = False
    assert not replay_witness(r)


def test_all_witnesses_replay():
    for spec in ("cyclic:6", "ut3:2", "product:cyclic:2+cyclic:4"):
        for report in run_suite([spec]):
            if report["witness"]:
                assert replay_witness(report), (report["check_id"], spec)


def test_hunt_x223():
    result = hunt_counterexample("X223", ["cyclic:2", "cyclic:4", "cyclic:6"], budget=100_000)
    w = result.witness
    assert w["ring"] == "cyclic:6"
    assert w["witness"]["data"]["sets"]["S"] == ["1", "3"]
    assert w["witness"]["ideals"]["I"]["generators"] == ["3"]
    assert replay_witness(w)
    assert result.budget_consumed <= 100_000


def test_hunt_over_fields_exhausts():
    result = hunt_counterexample("X223", ["cyclic:2", "cyclic:3", "cyclic:5", "cyclic:7"])
    assert result.exhausted and result.witness is None


def test_hunting_a_theorem_exhausts():
    result = hunt_counterexample("P201", ["cyclic:12", "ut3:2"])
    assert result.exhausted and result.witness is None


def test_hunt_budget():
    result = hunt_counterexample("P201", ["cyclic:12", "ut3:2"], budget=5)
    assert not result.exhausted and result.witness is None and result.budget_consumed == 5


def test_converse_probe_finds_transitivity_failure():
    # 0 is nil-essential in (6), (6) in (3), yet 0 is not in (3) since (3) is idempotent
    assert "P206-converse" in PROBES
    result = hunt_counterexample("P206-converse", ["cyclic:12", "ut3:2"])
    w = result.witness
    assert w["ring"] == "cyclic:12"
    assert [w["witness"]["ideals"][k]["generators"] for k in "IJK"] == [[], ["6"], ["3"]]
    assert replay_witness(w)


def test_tally():
    t = Tally(2)
    t.tick()
    t.tick()
    with pytest.raises(BudgetExhausted):
        t.tick()


def test_unknown_id():
    with pytest.raises(KeyError):
        run_check("P999", "cyclic:2")


def test_suite_ordering_and_summary():
    reports = run_suite(["cyclic:4", "cyclic:6"], ["X223", "P201"])
    assert [(r["ring"], r["check_id"]) for r in reports] == [
        ("cyclic:4", "P201"), ("cyclic:4", "X223"), ("cyclic:6", "P201"), ("cyclic:6", "X223"),
    ]
    summary = summarize(reports)
    assert summary["success"] and summary["confirmed_existence_checks"] == ["X223"]


def test_empty_suite():
    assert run_suite([]) == []
    assert summarize([])["success"]


def test_suite_parallel_matches_serial():
    specs = ["cyclic:6", "cyclic:8", "ut3:2"]
    strip = lambda rs: json.dumps([{k: v for k, v in r.items() if k != "elapsed_seconds"} for r in rs], sort_keys=True)
    assert strip(run_suite(specs, jobs=1)) == strip(run_suite(specs, jobs=3))


def test_fact_json():
    assert Fact("nil_essential", ("I",), True).to_json() == ["nil_essential", ["I"], True]
