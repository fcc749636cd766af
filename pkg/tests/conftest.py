import json
from importlib import resources
from pathlib import Path

import pytest

from moscow_dss import Case, load_kb

TESTS_DIR = Path(__file__).resolve().parent
MINI_KB_PATH = TESTS_DIR / "data" / "mini_kb.json"

_DATA = resources.files("moscow_dss") / "data"
SAMPLE_KB_PATH = Path(str(_DATA / "dao_kb.json"))
MANIFEST_PATH = Path(str(_DATA / "dao_kb_manifest.json"))
STUDIES_PATH = Path(str(_DATA / "studies.json"))
CASE_PATHS = {
    name: Path(str(_DATA / "cases" / f"{name}.json"))
    for name in ("dorg", "secureseco", "aratoo")
}


@pytest.fixture(scope="session")
def mini_kb_doc():
    return json.loads(MINI_KB_PATH.read_text())


@pytest.fixture(scope="session")
def mini_kb():
    return load_kb(MINI_KB_PATH.read_bytes())


@pytest.fixture(scope="session")
def sample_kb_doc():
    return json.loads(SAMPLE_KB_PATH.read_text())


@pytest.fixture(scope="session")
def sample_kb():
    return load_kb(SAMPLE_KB_PATH.read_bytes())


@pytest.fixture(scope="session")
def sample_cases():
    return {
        name: Case.from_dict(json.loads(path.read_text()))
        for name, path in CASE_PATHS.items()
    }


@pytest.fixture(scope="session")
def manifest():
    return json.loads(MANIFEST_PATH.read_text())
