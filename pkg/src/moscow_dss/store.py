"""Directory-backed case storage with atomic writes and revision checks.

One JSON file per case, written via temp-file-then-rename so a reader (or a
crash) never sees a partial document. A per-case revision counter gives
optimistic concurrency: writers state the revision they built on, and a
stale revision is refused rather than silently overwritten.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path

from .engine import Case


class CaseNotFound(KeyError):
    pass


class RevisionConflict(ValueError):
    def __init__(self, case_id, expected, actual):
        super().__init__(
            f"case {case_id!r}: write based on revision {expected}, but store has {actual}"
        )
        self.expected = expected
        self.actual = actual


class CaseStore:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, case_id: str) -> threading.Lock:
        with self._locks_guard:
            lock = self._locks.get(case_id)
            if lock is None:
                lock = self._locks.setdefault(case_id, threading.Lock())
            return lock

    def _path(self, case_id: str) -> Path:
        safe = case_id.replace("/", "_")
        return self.directory / f"{safe}.json"

    def _read(self, case_id: str) -> dict:
        path = self._path(case_id)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise CaseNotFound(case_id) from None
        return json.loads(text)

    def _write(self, case_id: str, revision: int, case: Case) -> None:
        doc = {"revision": revision, "case": case.to_dict()}
        data = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        path = self._path(case_id)
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=self.directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(data)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    # -- public API -------------------------------------------------------

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def exists(self, case_id: str) -> bool:
        return self._path(case_id).exists()

    def get(self, case_id: str) -> tuple[Case, int]:
        doc = self._read(case_id)
        return Case.from_dict(doc["case"]), int(doc["revision"])

    def create(self, case: Case) -> int:
        """Store a new case at revision 1. The id must be unused."""
        with self._lock_for(case.id):
            if self.exists(case.id):
                raise RevisionConflict(case.id, expected=0, actual=self._read(case.id)["revision"])
            self._write(case.id, 1, case)
            return 1

    def update(self, case_id: str, base_revision: int, case: Case) -> int:
        """Replace the stored case iff base_revision is still current."""
        with self._lock_for(case_id):
            current = int(self._read(case_id)["revision"])
            if base_revision != current:
                raise RevisionConflict(case_id, expected=base_revision, actual=current)
            new_revision = current + 1
            self._write(case_id, new_revision, case)
            return new_revision
