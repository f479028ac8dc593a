import json
import os
import subprocess

import pytest

import eprm


def mass(space, *entries):
    return {"space": space, "entries": [{"event": e, "mass": m} for e, m in entries]}


def test_dempster_classifier_table():
    r = eprm.dempster(mass(["4", "6"], (["4"], 0.925), (["6"], 0.075)), mass(["4", "6"], (["4"], 1.0)))
    assert r["conflict"] == pytest.approx(0.075, abs=1e-12)
    assert r["fused"]["entries"] == [{"event": ["4"], "mass": pytest.approx(1.0, abs=1e-12)}]


def test_fuse_matches_dempster_and_reports_step_conflicts():
    a = mass(["A", "B", "C"], (["A"], 0.5), (["A", "B"], 0.3), (["C"], 0.2))
    b = mass(["A", "B", "C"], (["B"], 0.4), (["A", "C"], 0.6))
    fused = eprm.fuse([a, b])
    want = eprm.dempster(a, b)
    assert fused["conflicts"] == [pytest.approx(want["conflict"])]
    got = {tuple(e["event"]): e["mass"] for e in fused["fused"]["entries"]}
    ref = {tuple(e["event"]): e["mass"] for e in want["fused"]["entries"]}
    assert got.keys() == ref.keys()
    for k in got:
        assert got[k] == pytest.approx(ref[k], abs=1e-12)
    assert sum(got.values()) == pytest.approx(1.0, abs=1e-9)


def test_pignistic_decision():
    p = eprm.decide(mass(["4", "6"], (["4", "6"], 0.95), (["4"], 0.05)))
    assert p["4"] == pytest.approx(0.525, abs=1e-9)
    assert p["6"] == pytest.approx(0.475, abs=1e-9)


def test_total_conflict_and_bad_input():
    with pytest.raises(eprm.TotalConflict):
        eprm.dempster(mass(["A", "B"], (["A"], 1.0)), mass(["A", "B"], (["B"], 1.0)))
    with pytest.raises(ValueError):
        eprm.fuse([mass(["A"], (["A"], 0.5))])
    with pytest.raises(ValueError):
        eprm.fuse([mass(["A"], (["A"], 1.0))], po="xor")


def test_permutation_and_graph_algebras():
    assert eprm.pattern_operators("perm") == ["rps-right"]
    a = mass(["x", "y", "z"], (["x", "y", "z"], 1.0))
    b = mass(["x", "y", "z"], (["z", "x"], 1.0))
    fused = eprm.fuse([a, b], algebra="perm", po="rps-right")
    assert fused["fused"]["entries"][0]["event"] == ["z", "x"]

    g = mass(["a", "b", "c"], ({"nodes": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}, 1.0))
    assert eprm.decide(g, algebra="graph", dmo="crd") == [["a", "b", "c"]]


def test_graph_operations():
    assert eprm.longest_path_reduce([(0, 1), (1, 2), (0, 2)]) == [(0, 1), (1, 2)]
    assert eprm.speed_graph_po([(0, 1)], [(1, 0)]) == []
    out = eprm.remove_cycles([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)])
    assert len(out) == 4
    assert eprm.separate_chains([(0, 1), (1, 3), (0, 2), (2, 3)]) == [[0, 1, 3], [0, 2, 3]]


def test_generated_case_and_decisions():
    case = eprm.generate_case(42, 510)
    assert case["seed"] == eprm.case_seed(42, 510)
    assert case["truth"] == [2, 0, 1]
    m = eprm.mvd(case)
    c = eprm.crd(case)
    assert m["state"] == "Conflict"
    assert c == {"chains": [[2, 0, 1]], "state": "True"}
    kinds = [r["record"] for r in eprm.trace(case)]
    assert kinds[0] == "case"
    assert kinds.count("decision") == 2
    with pytest.raises(ValueError):
        eprm.generate_case(1, 0, radius=0.7)
    with pytest.raises(ValueError):
        eprm.generate_case(1, 0, wingspan=3)


def test_noise_free_corpus_never_disagrees():
    s = eprm.run_corpus(3, 50, sigma2=0.0)
    assert s["total"] == 50
    assert s["mvd_error_or_conflict_rate"] == 0.0
    assert s["dominance_violations"] == 0


@pytest.mark.skipif("EPRM_CLI" not in os.environ, reason="command-line tool path not provided")
def test_summary_matches_command_line(tmp_path):
    subprocess.run([os.environ["EPRM_CLI"], "run-all", "--seed", "7", "--cases", "40", "--out", str(tmp_path)],
                   check=True, capture_output=True)
    cli = json.loads((tmp_path / "report" / "summary.json").read_text())
    py = eprm.run_corpus(7, 40)
    for key in ("total", "mvd_error_or_conflict_rate", "crd_improvement_rate", "both_wrong_rate",
                "dominance_violations"):
        assert py[key] == cli[key]
    assert py["crosstab_csv"] == (tmp_path / "report" / "crosstab.csv").read_text()
