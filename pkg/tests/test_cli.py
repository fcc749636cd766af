import io
import json

import pytest

from moscow_dss import feature_coverage
from moscow_dss.cli import main

from conftest import CASE_PATHS, MINI_KB_PATH, SAMPLE_KB_PATH, STUDIES_PATH


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kb_validate_ok(capsys):
    code, out, _ = run(capsys, "kb", "validate", str(MINI_KB_PATH))
    assert code == 0
    assert "ok:" in out


def test_kb_validate_broken_totality_names_cell(capsys, tmp_path, mini_kb_doc):
    doc = json.loads(json.dumps(mini_kb_doc))
    del doc["bfp"]["revenue-sharing"]["daostack"]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "kb", "validate", str(path))
    assert code == 1
    assert "bfp/revenue-sharing/daostack" in err


def test_kb_validate_missing_file_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "kb", "validate", str(tmp_path / "nope.json"))
    assert code == 2


def test_kb_validate_malformed_json_is_io_error(capsys, tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "kb", "validate", str(path))
    assert code == 2
    assert "parse error" in err


def test_kb_coverage_matches_library_values(capsys, mini_kb):
    code, out, _ = run(capsys, "kb", "coverage", str(MINI_KB_PATH))
    assert code == 0
    lines = [l for l in out.splitlines()[1:] if l.strip()]
    got = {}
    for line in lines:
        fid, pct = line.rsplit(None, 1)
        got[fid.strip()] = float(pct)
    for f in mini_kb.boolean_features:
        assert got[f.id] == pytest.approx(feature_coverage(mini_kb, f.id), abs=0.05)
    # ascending coverage: most vulnerable first
    assert list(got.values()) == sorted(got.values())


def test_kb_coverage_single_feature(capsys):
    code, out, _ = run(capsys, "kb", "coverage", str(MINI_KB_PATH), "--feature", "delegable-voting")
    assert code == 0
    assert "33.3" in out


def test_evaluate_dorg_table_puts_colony_first(capsys):
    code, out, _ = run(capsys, "evaluate", "--kb", str(SAMPLE_KB_PATH),
                       "--case", str(CASE_PATHS["dorg"]))
    assert code == 0
    rows = [l for l in out.splitlines() if l.strip() and l.split()[0].isdigit()]
    assert rows[0].split()[1] == "colony"
    assert [r.split()[1] for r in rows] == ["colony", "aragon", "daostack"]


def test_evaluate_empty_requirements_all_at_100(capsys, tmp_path):
    case = tmp_path / "empty.json"
    case.write_text(json.dumps({"id": "e", "name": "e", "requirements": []}))
    code, out, _ = run(capsys, "evaluate", "--kb", str(MINI_KB_PATH), "--case", str(case))
    assert code == 0
    rows = [l for l in out.splitlines() if l.strip() and l.split()[0].isdigit()]
    assert len(rows) == 3
    assert all(row.split()[-1] == "100.0" for row in rows)


def test_evaluate_infeasible_exit_code_3(capsys):
    code, out, _ = run(capsys, "evaluate", "--kb", str(SAMPLE_KB_PATH),
                       "--case", str(CASE_PATHS["aratoo"]))
    assert code == 3
    assert "no feasible platforms" in out


def test_evaluate_case_from_stdin(capsys, monkeypatch):
    case = {"id": "s", "name": "s", "requirements": [
        {"featureId": "delegable-voting", "priority": "must"}]}
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(json.dumps(case).encode())))
    code, out, _ = run(capsys, "evaluate", "--kb", str(MINI_KB_PATH), "--case", "-")
    assert code == 0
    assert "daostack" in out


def test_evaluate_json_format_is_engine_shaped(capsys):
    code, out, _ = run(capsys, "evaluate", "--kb", str(SAMPLE_KB_PATH),
                       "--case", str(CASE_PATHS["secureseco"]), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [e["platformId"] for e in doc["feasible"]][0] == "colony"
    assert set(doc) == {"feasible", "infeasible", "weights", "timestamp"}


def test_relax_prints_plan_and_applies(capsys, tmp_path):
    case_path = tmp_path / "aratoo.json"
    case_path.write_text(CASE_PATHS["aratoo"].read_text())
    out_path = tmp_path / "relaxed.json"
    code, out, _ = run(capsys, "relax", "--kb", str(SAMPLE_KB_PATH),
                       "--case", str(case_path), "--apply", "--out", str(out_path))
    assert code == 0
    assert "intellectual-property must -> should" in out
    assert "membership-management wont -> none" in out
    # the applied case re-evaluates feasible end to end
    code, out, _ = run(capsys, "evaluate", "--kb", str(SAMPLE_KB_PATH), "--case", str(out_path))
    assert code == 0
    rows = [l for l in out.splitlines() if l.strip() and l.split()[0].isdigit()]
    assert [r.split()[1] for r in rows] == ["colony", "aragon", "daostack"]


def test_relax_zero_coverage_must_single_step(capsys, tmp_path):
    case = tmp_path / "impossible.json"
    case.write_text(json.dumps({"id": "i", "name": "i", "requirements": [
        {"featureId": "intellectual-property", "priority": "must"}]}))
    code, out, _ = run(capsys, "relax", "--kb", str(MINI_KB_PATH), "--case", str(case))
    assert code == 0
    assert out.count("step ") == 1
    assert "final feasible platforms: 3" in out


def test_relax_feasible_case_says_so(capsys, tmp_path):
    case = tmp_path / "fine.json"
    case.write_text(json.dumps({"id": "f", "name": "f", "requirements": [
        {"featureId": "token-distribution", "priority": "must"}]}))
    code, out, _ = run(capsys, "relax", "--kb", str(MINI_KB_PATH), "--case", str(case))
    assert code == 0
    assert "already feasible" in out


def test_analytics_coverage_flags_faqir(capsys):
    code, out, _ = run(capsys, "analytics", "coverage", "--studies", str(STUDIES_PATH))
    assert code == 0
    faqir_line = next(l for l in out.splitlines() if l.startswith("faqir2020"))
    assert "MISMATCH" in faqir_line
    assert "125" in faqir_line
    assert "mean of reported coverages: 75.60" in out
    clean = next(l for l in out.splitlines() if l.startswith("valiente2020 "))
    assert "MISMATCH" not in clean


def test_invalid_case_document_is_validation_error(capsys, tmp_path):
    case = tmp_path / "bad.json"
    case.write_text(json.dumps({"id": "b", "name": "b", "requirements": [
        {"featureId": "scalability", "priority": "wont", "requiredLevel": "L"}]}))
    code, _, err = run(capsys, "evaluate", "--kb", str(MINI_KB_PATH), "--case", str(case))
    assert code == 1
    assert "WontOnOrdinal" in err
