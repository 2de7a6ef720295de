import json

import pytest

from indcx import campaign
from indcx.campaign import (
    InstanceRecord,
    SweepSpec,
    expand_template,
    hunt_torsion,
    instance_key,
    parse_range,
    read_log,
    report_emit,
    torsion_hunt_spec,
    verify_sweep,
)
from indcx.errors import ParameterError


def kn_km():
    return SweepSpec(expand_template("K{n}xK{m}", {"n": [2, 5], "m": [2, 5]}))


def test_complete_products_sweep(tmp_path):
    recs = verify_sweep(kn_km(), tmp_path / "r.jsonl")
    assert len(recs) == 16
    assert all(r.match is True and r.status == "match" for r in recs)
    assert len(read_log(tmp_path / "r.jsonl")) == 16


def test_cycle_k2_sweep():
    recs = verify_sweep(SweepSpec([f"C{k}xK2" for k in range(3, 13)]))
    assert len(recs) == 10 and all(r.match for r in recs)
    assert {r.predicted_profile.source for r in recs if r.spec != "C5xK2"} == {"C_k x K_2 table"}


def test_c5_discrepancy_records():
    recs = verify_sweep(SweepSpec([f"C5xK{n}" for n in (2, 3, 4)]))
    by = {r.spec: r for r in recs}
    for n in (2, 3, 4):
        d = by[f"C5xK{n}"].checks["discrepancy"]
        assert d["measured"] == n - 1
        assert d["matches"] == ["induction"]
        assert by[f"C5xK{n}"].match


def test_resume_does_no_recomputation(tmp_path, monkeypatch):
    log = tmp_path / "r.jsonl"
    first = verify_sweep(kn_km(), log)

    def boom(*a, **kw):
        raise AssertionError("recomputed")

    monkeypatch.setattr(campaign, "_compute", boom)
    again = verify_sweep(kn_km(), log)
    assert [r.to_json() for r in again] == [r.to_json() for r in first]
    assert len(log.read_text().splitlines()) == 16


def test_parallel_and_serial_reports_identical(tmp_path):
    spec = SweepSpec(["K3xK3", "C6xK3", "C5xK3", "P5xK3", "W(4,3)", "C7xK3"])
    serial = verify_sweep(spec, tmp_path / "a.jsonl", jobs=1)
    parallel = verify_sweep(spec, tmp_path / "b.jsonl", jobs=3)
    for fmt in ("json", "csv", "text"):
        assert report_emit(serial, fmt) == report_emit(parallel, fmt)
    assert report_emit(read_log(tmp_path / "b.jsonl"), "csv") == report_emit(serial, "csv")


def test_resource_error_recorded_and_sweep_continues():
    recs = verify_sweep(SweepSpec(["C6xK3", "K2xK3"], max_faces=200))
    by = {r.spec: r for r in recs}
    assert by["C6xK3"].status == "error" and "resource" in by["C6xK3"].error
    assert by["K2xK3"].status == "match"
    assert "1 error" in report_emit(recs)


def test_instance_key_depends_on_graph_and_options():
    a = instance_key("C6xK3", {"reduce": True, "max_dim": None})
    assert a == instance_key("cycle-x-complete:k=6,n=3", {"reduce": True, "max_dim": None})
    assert a != instance_key("C6xK3", {"reduce": False, "max_dim": None})
    assert a != instance_key("C6xK4", {"reduce": True, "max_dim": None})
    assert len(a) == 64


def test_hunt_records_window():
    recs = hunt_torsion(torsion_hunt_spec((7, 8), (3, 3)))
    assert [r.spec for r in sorted(recs, key=lambda r: r.spec)] == ["C7xK3", "C8xK3"]
    for r in recs:
        assert r.status == "window-ok" and not r.torsion_found
        assert r.checks["window_ok"] and r.checks["both_nonzero"]
    c7 = next(r for r in recs if r.spec == "C7xK3")
    assert c7.checks["window"] == [3, 4] and c7.checks["window_betti"] == {"3": 1, "4": 3}


def test_hunt_skips_multiples_of_three_and_rejects_bad_input():
    spec = torsion_hunt_spec((5, 7), (3, 3))
    assert spec.specs == ["C5xK3", "C7xK3"]
    with pytest.raises(ParameterError):
        torsion_hunt_spec((6, 6), (3, 3))
    with pytest.raises(ParameterError):
        hunt_torsion(SweepSpec(["C6xK3"]))
    with pytest.raises(ParameterError):
        hunt_torsion(SweepSpec(["K3xK3"]))


def test_falsification_is_recorded(monkeypatch):
    from indcx.homology import HomologyRun, HomologyProfile

    def fake(g, **kw):
        return HomologyRun(HomologyProfile({2: 1}, {4: (2,)}), None)

    monkeypatch.setattr(campaign, "run_graph_homology", fake)
    (rec,) = hunt_torsion(SweepSpec(["C7xK3"]))
    assert rec.status == "falsified" and rec.torsion_found
    assert "falsification" in rec.checks and rec.checks["torsion"] == {"4": [2]}
    assert "FALSIFICATION" in report_emit([rec])


def test_mismatch_record_keeps_both_profiles(monkeypatch):
    from indcx.homology import HomologyRun, HomologyProfile

    monkeypatch.setattr(campaign, "run_graph_homology",
                        lambda g, **kw: HomologyRun(HomologyProfile({1: 5}), None))
    (rec,) = verify_sweep(SweepSpec(["K3xK4"]))
    assert rec.status == "mismatch" and rec.match is False
    assert rec.computed == HomologyProfile({1: 5}).to_json()
    assert rec.predicted_profile.sphere_counts == {1: 6}
    assert "0/1 match, 1 mismatch" in report_emit([rec])


# -- reports ---------------------------------------------------------------------------

def test_report_three_matches():
    recs = verify_sweep(SweepSpec(["K2xK2", "K2xK3", "K3xK3"]))
    text = report_emit(recs, "text")
    assert text.splitlines()[0].startswith("summary: 3/3 match")


def test_report_empty():
    text = report_emit([], "text")
    assert text.startswith("summary: 0/0 match, 0 mismatch, 0 error, 0 conjecture")
    assert json.loads(report_emit([], "json"))["summary"]["records"] == 0
    assert report_emit([], "csv").count("\n") == 1


def test_report_conjecture_band():
    recs = verify_sweep(SweepSpec(["K3xK3xK3", "K2xK3"], allow_conjecture=True))
    text = report_emit(recs, "text")
    lines = text.splitlines()
    band = lines.index("== CONJECTURE ==")
    assert any(l.startswith("K2xK3") for l in lines[:band])
    assert any(l.startswith("K3xK3xK3") for l in lines[band:])
    assert "1/1 match" in lines[0] and "1 conjecture" in lines[0]
    doc = json.loads(report_emit(recs, "json"))
    assert [r["spec"] for r in doc["conjecture"]] == ["K3xK3xK3"]


def test_report_unknown_format():
    with pytest.raises(ParameterError):
        report_emit([], "xml")


def test_report_sorted_by_key_without_timings():
    recs = verify_sweep(SweepSpec(["K3xK3", "K2xK2", "K2xK3"]))
    rows = report_emit(list(reversed(recs)), "csv").splitlines()[1:]
    keys = [r.split(",")[0] for r in rows]
    assert keys == sorted(keys)
    assert "timings" not in report_emit(recs, "json")


# -- sweep files --------------------------------------------------------------------------

def test_sweep_file_roundtrip(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({
        "sweeps": [{"template": "C{k}xK{n}", "ranges": {"k": [3, 4], "n": [2, 3]}}],
        "specs": ["cycle-x-complete:k=9,n=3"],
        "options": {"reduce": False, "max_dim": 3},
        "budget": {"max_faces": 1000, "timeout_s": 5},
    }))
    spec = SweepSpec.load(path)
    assert spec.specs == ["C9xK3", "C3xK2", "C3xK3", "C4xK2", "C4xK3"]
    assert (spec.reduce, spec.max_dim, spec.max_faces, spec.timeout_s) == (False, 3, 1000, 5)


@pytest.mark.parametrize("bad", [{"k": [0, 3]}, {"k": [5, 3]}, {"k": [1.5, 3]}])
def test_bad_ranges(bad):
    with pytest.raises(ParameterError):
        expand_template("C{k}", bad)


def test_bad_budget():
    with pytest.raises(ParameterError):
        SweepSpec(["K2xK2"], max_faces=0)


def test_parse_range():
    assert parse_range("7..10") == (7, 10)
    assert parse_range("4") == (4, 4)
    for bad in ("a..b", "5..3", "0..2"):
        with pytest.raises(ParameterError):
            parse_range(bad)


def test_record_json_roundtrip():
    (rec,) = verify_sweep(SweepSpec(["C5xK3"]))
    assert InstanceRecord.from_json(json.loads(json.dumps(rec.to_json()))) == rec
