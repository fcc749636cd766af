import json
import os
import threading

import pytest

from moscow_dss import Case, CaseNotFound, CaseStore, RevisionConflict
from moscow_dss.engine import Priority, Requirement


def mk_case(case_id="c1", priority="should"):
    return Case(
        id=case_id,
        name="test case",
        requirements=(Requirement("f1", Priority(priority)),),
    )


def test_create_get_round_trip(tmp_path):
    store = CaseStore(tmp_path)
    revision = store.create(mk_case())
    assert revision == 1
    case, rev = store.get("c1")
    assert rev == 1
    assert case == mk_case()


def test_get_unknown_case(tmp_path):
    with pytest.raises(CaseNotFound):
        CaseStore(tmp_path).get("ghost")


def test_create_refuses_existing_id(tmp_path):
    store = CaseStore(tmp_path)
    store.create(mk_case())
    with pytest.raises(RevisionConflict):
        store.create(mk_case())


def test_update_bumps_revision_and_checks_base(tmp_path):
    store = CaseStore(tmp_path)
    store.create(mk_case())
    rev = store.update("c1", 1, mk_case(priority="could"))
    assert rev == 2
    with pytest.raises(RevisionConflict):
        store.update("c1", 1, mk_case(priority="must"))
    case, rev = store.get("c1")
    assert rev == 2
    assert case.requirements[0].priority is Priority.COULD


def test_concurrent_updates_one_wins(tmp_path):
    store = CaseStore(tmp_path)
    store.create(mk_case())
    results = []

    def writer(priority):
        try:
            results.append(("ok", store.update("c1", 1, mk_case(priority=priority))))
        except RevisionConflict:
            results.append(("conflict", None))

    threads = [threading.Thread(target=writer, args=(p,)) for p in ("must", "could")]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    outcomes = sorted(r[0] for r in results)
    assert outcomes == ["conflict", "ok"]
    _, rev = store.get("c1")
    assert rev == 2


def test_crash_during_write_leaves_old_document(tmp_path, monkeypatch):
    store = CaseStore(tmp_path)
    store.create(mk_case())
    original = store.get("c1")

    real_replace = os.replace

    def explode(src, dst):
        raise OSError("simulated crash before rename")

    monkeypatch.setattr(os, "replace", explode)
    with pytest.raises(OSError):
        store.update("c1", 1, mk_case(priority="must"))
    monkeypatch.setattr(os, "replace", real_replace)

    assert store.get("c1") == original
    # no temp debris that a reader could mistake for a case
    assert sorted(p.name for p in tmp_path.iterdir()) == ["c1.json"]
    # and the surviving file is intact JSON
    json.loads((tmp_path / "c1.json").read_text())


def test_written_files_are_valid_json_documents(tmp_path):
    store = CaseStore(tmp_path)
    store.create(mk_case())
    doc = json.loads((tmp_path / "c1.json").read_text())
    assert doc["revision"] == 1
    assert doc["case"]["id"] == "c1"


def test_list_ids(tmp_path):
    store = CaseStore(tmp_path)
    store.create(mk_case("b"))
    store.create(mk_case("a"))
    assert store.list_ids() == ["a", "b"]
