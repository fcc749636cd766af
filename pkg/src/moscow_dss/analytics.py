"""Coverage arithmetic for comparing external studies' criteria sets.

Each study row records how many of its criteria (features plus quality
attributes) this model also covers. Coverage is the covered share as a
percentage, kept as an exact rational and rounded only for display. Rows
whose printed figure disagrees with the formula are flagged, never
silently corrected: the data documents its own inconsistencies.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .kb import Diagnostic, SchemaError


class ZeroCriteria(ValueError):
    """A study must propose at least one criterion."""


class EmptyList(ValueError):
    """Aggregation over zero studies is undefined."""


@dataclass(frozen=True)
class StudyCriteria:
    """One literature row: overlap counts against this model's criteria."""

    study_id: str
    year: int
    common_features: int
    common_qualities: int
    total_criteria: int
    reported_coverage: float | None = None

    @property
    def counts_inconsistent(self) -> bool:
        # More common criteria than criteria proposed: possible only when the
        # source row itself is inconsistent. Flagged downstream, not rejected.
        return self.common_features + self.common_qualities > self.total_criteria

    def to_dict(self) -> dict:
        doc = {
            "studyId": self.study_id,
            "year": self.year,
            "commonFeatures": self.common_features,
            "commonQualities": self.common_qualities,
            "totalCriteria": self.total_criteria,
        }
        if self.reported_coverage is not None:
            doc["reportedCoverage"] = self.reported_coverage
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "StudyCriteria":
        for key in ("studyId", "year", "commonFeatures", "commonQualities", "totalCriteria"):
            if key not in doc:
                raise SchemaError(f"study row missing field {key!r}")
        return cls(
            study_id=str(doc["studyId"]),
            year=int(doc["year"]),
            common_features=int(doc["commonFeatures"]),
            common_qualities=int(doc["commonQualities"]),
            total_criteria=int(doc["totalCriteria"]),
            reported_coverage=doc.get("reportedCoverage"),
        )


@dataclass(frozen=True)
class CoverageAggregate:
    computed_mean: Fraction
    reported_mean: Fraction | None  # over rows that carry a printed figure
    rows: int

    def to_dict(self) -> dict:
        return {
            "computedMean": float(self.computed_mean),
            "reportedMean": None if self.reported_mean is None else float(self.reported_mean),
            "rows": self.rows,
        }


def round_half_up(value: Fraction) -> int:
    return math.floor(value + Fraction(1, 2))


def study_coverage(study: StudyCriteria) -> Fraction:
    """Covered share of the study's criteria, as an exact percentage."""
    if study.total_criteria < 1:
        raise ZeroCriteria(study.study_id)
    return Fraction(100) * (study.common_qualities + study.common_features) / study.total_criteria


def aggregate_coverage(studies: list[StudyCriteria]) -> CoverageAggregate:
    """Arithmetic mean of computed coverages, plus the mean of printed ones.

    Both means are returned so a caller can see where the published column
    and the formula part ways.
    """
    if not studies:
        raise EmptyList("no studies to aggregate")
    computed = sum(study_coverage(s) for s in studies) / len(studies)
    reported = [Fraction(str(s.reported_coverage)) for s in studies if s.reported_coverage is not None]
    reported_mean = sum(reported) / len(reported) if reported else None
    return CoverageAggregate(computed_mean=computed, reported_mean=reported_mean, rows=len(studies))


def consistency_check(study: StudyCriteria) -> list[Diagnostic]:
    """Flag rows whose printed coverage disagrees with the formula.

    A row passes when the recomputed value, rounded to the nearest integer,
    is within one percentage point of the printed figure. Rows with no
    printed figure have nothing to disagree with.
    """
    if study.reported_coverage is None:
        return []
    computed = round_half_up(study_coverage(study))
    if abs(computed - study.reported_coverage) > 1:
        return [
            Diagnostic(
                "CoverageMismatch",
                study.study_id,
                f"computed {computed} but the source prints {study.reported_coverage:g}",
            )
        ]
    return []


def load_studies(source) -> list[StudyCriteria]:
    """Read a studies interchange document (same dialect as the KB)."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    doc = json.loads(source)
    if not isinstance(doc, dict) or "studies" not in doc or not isinstance(doc["studies"], list):
        raise SchemaError("studies document needs a top-level 'studies' list")
    return [StudyCriteria.from_dict(row) for row in doc["studies"]]
