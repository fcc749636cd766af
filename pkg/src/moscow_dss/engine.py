"""Feasibility filtering and weighted scoring of alternatives.

Requirements carry MoSCoW priorities. Must and Won't are hard constraints:
a platform missing any Must feature (or level), or supporting any Won't
feature, is excluded outright. Should and Could are soft constraints: they
never exclude, they only move a feasible platform's score, with Should
weighted above Could.

All scores are exact ``fractions.Fraction`` values in [0, 100]; rendering
to one decimal place happens only at the serialization boundary, so ties
and orderings are never at the mercy of floating point.
"""

from __future__ import annotations

import datetime
import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .kb import (
    Diagnostic,
    KnowledgeBase,
    Level,
    SchemaError,
    UnknownFeature,
    UnknownPlatform,
    feature_coverage,
)


class NotFeasible(ValueError):
    """Asked to score a platform that a hard constraint excludes."""


class CaseValidationError(ValueError):
    """Case does not validate against the knowledge base; carries diagnostics."""

    def __init__(self, diagnostics):
        super().__init__(
            "invalid case: " + "; ".join(f"{d.code}({d.subject})" for d in diagnostics)
        )
        self.diagnostics = list(diagnostics)


class Priority(enum.Enum):
    MUST = "must"
    SHOULD = "should"
    COULD = "could"
    WONT = "wont"
    NONE = "none"

    @classmethod
    def parse(cls, text: str) -> "Priority":
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"not a priority: {text!r}") from None


HARD_PRIORITIES = (Priority.MUST, Priority.WONT)
SOFT_PRIORITIES = (Priority.SHOULD, Priority.COULD)


class ViolationKind(enum.Enum):
    MISSING_MUST = "MissingMust"
    PRESENT_WONT = "PresentWont"
    LEVEL_BELOW_MUST = "LevelBelowMust"


@dataclass(frozen=True)
class Requirement:
    """One feature plus its MoSCoW priority.

    required_level is set exactly for ordinal features and means "at least
    this level". Priority NONE marks a feature that is deliberately not a
    requirement (the landing state of a relaxed Won't); the engine ignores it.
    """

    feature_id: str
    priority: Priority
    required_level: Level | None = None

    def to_dict(self) -> dict:
        doc = {"featureId": self.feature_id, "priority": self.priority.value}
        if self.required_level is not None:
            doc["requiredLevel"] = self.required_level.code
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Requirement":
        if not isinstance(doc, dict) or "featureId" not in doc or "priority" not in doc:
            raise SchemaError("requirement needs 'featureId' and 'priority'")
        level = doc.get("requiredLevel")
        return cls(
            feature_id=doc["featureId"],
            priority=Priority.parse(doc["priority"]),
            required_level=Level.from_code(level) if level is not None else None,
        )


def _parse_weight(value) -> Fraction:
    # Accept ints, rational strings like "3/2", and decimal floats/strings;
    # floats go through their decimal repr so 0.1 means exactly 1/10.
    if isinstance(value, bool):
        raise SchemaError(f"weight must be a positive number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"weight must be a positive number, got {value!r}") from None
    raise SchemaError(f"weight must be a positive number, got {value!r}")


@dataclass(frozen=True)
class WeightConfig:
    """Soft-constraint weights; Should must weigh at least as much as Could."""

    w_should: Fraction = Fraction(2)
    w_could: Fraction = Fraction(1)

    def to_dict(self) -> dict:
        return {"wShould": _number(self.w_should), "wCould": _number(self.w_could)}

    @classmethod
    def from_dict(cls, doc: dict) -> "WeightConfig":
        if not isinstance(doc, dict):
            raise SchemaError("weights must be an object")
        return cls(
            w_should=_parse_weight(doc.get("wShould", 2)),
            w_could=_parse_weight(doc.get("wCould", 1)),
        )


DEFAULT_WEIGHTS = WeightConfig()


def _number(value: Fraction):
    """Render an exact rational for JSON: int when integral, else float."""
    if value.denominator == 1:
        return int(value)
    return float(value)


@dataclass(frozen=True)
class Case:
    """A named requirement set; the unit of persistence and evaluation."""

    id: str
    name: str
    requirements: tuple[Requirement, ...] = ()
    weights: WeightConfig = DEFAULT_WEIGHTS
    organization_notes: str = ""
    kb_version: str = ""

    def requirement_for(self, feature_id: str) -> Requirement | None:
        for r in self.requirements:
            if r.feature_id == feature_id:
                return r
        return None

    def with_requirements(self, requirements) -> "Case":
        return replace(self, requirements=tuple(requirements))

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "organizationNotes": self.organization_notes,
            "requirements": [r.to_dict() for r in self.requirements],
            "weights": self.weights.to_dict(),
            "kbVersion": self.kb_version,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Case":
        if not isinstance(doc, dict):
            raise SchemaError("case must be an object")
        reqs = doc.get("requirements", [])
        if not isinstance(reqs, list):
            raise SchemaError("field 'requirements' must be a list")
        return cls(
            id=str(doc.get("id", "")),
            name=str(doc.get("name", "")),
            organization_notes=str(doc.get("organizationNotes", "")),
            requirements=tuple(Requirement.from_dict(r) for r in reqs),
            weights=WeightConfig.from_dict(doc.get("weights", {})),
            kb_version=str(doc.get("kbVersion", "")),
        )


@dataclass(frozen=True)
class Violation:
    platform_id: str
    requirement: Requirement
    kind: ViolationKind

    def to_dict(self) -> dict:
        return {
            "platformId": self.platform_id,
            "requirement": self.requirement.to_dict(),
            "kind": self.kind.value,
        }


@dataclass(frozen=True)
class FeasibleEntry:
    platform_id: str
    score: Fraction
    supported_soft: tuple[Requirement, ...]
    missing_soft: tuple[Requirement, ...]
    quality_subscores: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "platformId": self.platform_id,
            "score": render_score(self.score),
            "supportedSoft": [r.to_dict() for r in self.supported_soft],
            "missingSoft": [r.to_dict() for r in self.missing_soft],
            "qualitySubscores": {
                qid: render_score(s) for qid, s in sorted(self.quality_subscores.items())
            },
        }


@dataclass(frozen=True)
class Evaluation:
    """Outcome of one case against one KB: ranking plus exclusions.

    feasible and infeasible partition the platform set. An empty feasible
    list is a legal result, not an error; the relaxation advisor consumes it.
    """

    feasible: tuple[FeasibleEntry, ...]
    infeasible: dict
    weights: WeightConfig
    timestamp: str

    def feasible_ids(self) -> list[str]:
        return [e.platform_id for e in self.feasible]

    def to_dict(self) -> dict:
        return {
            "feasible": [e.to_dict() for e in self.feasible],
            "infeasible": {
                pid: [v.to_dict() for v in vios] for pid, vios in sorted(self.infeasible.items())
            },
            "weights": self.weights.to_dict(),
            "timestamp": self.timestamp,
        }


def render_score(score: Fraction) -> float:
    """Exact score -> one-decimal rendering, rounding halves up."""
    tenths = math.floor(score * 10 + Fraction(1, 2))
    return tenths / 10


# ---------------------------------------------------------------------------
# Case validation
# ---------------------------------------------------------------------------


def validate_case(kb: KnowledgeBase, case: Case) -> list[Diagnostic]:
    """Diagnostics for a case against a KB; empty means evaluable.

    Deterministic order (code, then subject), mirroring validate_kb.
    """
    out = []
    boolean_ids = kb.boolean_ids()
    ordinal_ids = kb.ordinal_ids()
    seen = set()
    for req in case.requirements:
        fid = req.feature_id
        if fid in seen:
            out.append(
                Diagnostic("DuplicateRequirement", fid, f"more than one requirement for feature {fid!r}")
            )
        seen.add(fid)
        if fid not in boolean_ids and fid not in ordinal_ids:
            out.append(Diagnostic("UnknownFeature", fid, f"requirement references undeclared feature {fid!r}"))
            continue
        ordinal = fid in ordinal_ids
        if ordinal and req.priority is Priority.WONT:
            out.append(
                Diagnostic(
                    "WontOnOrdinal",
                    fid,
                    f"Won't-Have cannot apply to ordinal feature {fid!r}: forbidding a level has no meaning",
                )
            )
        if ordinal and req.required_level is None:
            out.append(
                Diagnostic("MissingRequiredLevel", fid, f"ordinal feature {fid!r} needs a requiredLevel")
            )
        if not ordinal and req.required_level is not None:
            out.append(
                Diagnostic(
                    "UnexpectedRequiredLevel", fid, f"Boolean feature {fid!r} cannot carry a requiredLevel"
                )
            )
    if not (case.weights.w_should >= case.weights.w_could > 0):
        out.append(
            Diagnostic(
                "InvalidWeights",
                case.id or "case",
                "weights must satisfy wShould >= wCould > 0",
            )
        )
    if case.kb_version and case.kb_version != kb.version:
        out.append(
            Diagnostic(
                "KbVersionMismatch",
                case.id or "case",
                f"case pins KB version {case.kb_version!r} but the loaded KB is {kb.version!r}",
            )
        )
    out.sort(key=lambda d: (d.code, d.subject))
    return out


# ---------------------------------------------------------------------------
# Satisfaction, filtering, scoring
# ---------------------------------------------------------------------------


def satisfies(kb: KnowledgeBase, platform_id: str, requirement: Requirement) -> bool:
    """Does the platform support the requirement's feature?

    Boolean: the support cell is 1. Ordinal: the platform's level meets or
    exceeds the required level.
    """
    fid = requirement.feature_id
    if kb.is_ordinal(fid):
        if requirement.required_level is None:
            raise ValueError(f"requirement on ordinal feature {fid!r} lacks a requiredLevel")
        return kb.nfp_level(fid, platform_id) >= requirement.required_level
    return kb.bfp_value(fid, platform_id) == 1


def _violations_for(kb: KnowledgeBase, case: Case, platform_id: str) -> list[Violation]:
    found = []
    for req in case.requirements:
        if req.priority is Priority.MUST:
            if not satisfies(kb, platform_id, req):
                kind = (
                    ViolationKind.LEVEL_BELOW_MUST
                    if kb.is_ordinal(req.feature_id)
                    else ViolationKind.MISSING_MUST
                )
                found.append(Violation(platform_id, req, kind))
        elif req.priority is Priority.WONT:
            if satisfies(kb, platform_id, req):
                found.append(Violation(platform_id, req, ViolationKind.PRESENT_WONT))
    return found


def filter_feasible(kb: KnowledgeBase, case: Case):
    """Split platforms into feasible ids and an infeasible -> violations map.

    Infeasible platforms carry every violation, not just the first found.
    """
    feasible = []
    infeasible = {}
    for platform in kb.platforms:
        violations = _violations_for(kb, case, platform.id)
        if violations:
            infeasible[platform.id] = violations
        else:
            feasible.append(platform.id)
    return sorted(feasible), infeasible


def _soft_requirements(case: Case) -> list[Requirement]:
    return [r for r in case.requirements if r.priority in SOFT_PRIORITIES]


def _weight_of(weights: WeightConfig, priority: Priority) -> Fraction:
    return weights.w_should if priority is Priority.SHOULD else weights.w_could


def _weighted_score(kb, weights, soft_reqs, platform_id) -> Fraction:
    total = Fraction(0)
    got = Fraction(0)
    for req in soft_reqs:
        w = _weight_of(weights, req.priority)
        total += w
        if satisfies(kb, platform_id, req):
            got += w
    if total == 0:
        # No soft requirements: every feasible platform satisfies the case
        # vacuously, so all are equally maximal.
        return Fraction(100)
    return 100 * got / total


def score_platform(kb: KnowledgeBase, case: Case, platform_id: str) -> Fraction:
    """Weighted share of satisfied soft requirements, in [0, 100]."""
    if _violations_for(kb, case, platform_id):
        raise NotFeasible(platform_id)
    return _weighted_score(kb, case.weights, _soft_requirements(case), platform_id)


def quality_breakdown(kb: KnowledgeBase, case: Case, platform_id: str) -> dict:
    """Re-score per quality attribute over the soft requirements it maps to.

    Qualities mapped to none of the case's soft requirements are omitted,
    not reported as 0 or 100.
    """
    if _violations_for(kb, case, platform_id):
        raise NotFeasible(platform_id)
    soft = _soft_requirements(case)
    out = {}
    for quality in kb.qualities:
        mapped_row = kb.qf.get(quality.id, {})
        restricted = [r for r in soft if mapped_row.get(r.feature_id) == 1]
        if not restricted:
            continue
        out[quality.id] = _weighted_score(kb, case.weights, restricted, platform_id)
    return out


def evaluate(kb: KnowledgeBase, case: Case) -> Evaluation:
    """Filter, score, explain, and rank. Pure up to the timestamp field."""
    diagnostics = validate_case(kb, case)
    if diagnostics:
        raise CaseValidationError(diagnostics)
    feasible_ids, infeasible = filter_feasible(kb, case)
    soft = _soft_requirements(case)
    entries = []
    for pid in feasible_ids:
        supported = tuple(r for r in soft if satisfies(kb, pid, r))
        missing = tuple(r for r in soft if not satisfies(kb, pid, r))
        entries.append(
            FeasibleEntry(
                platform_id=pid,
                score=_weighted_score(kb, case.weights, soft, pid),
                supported_soft=supported,
                missing_soft=missing,
                quality_subscores=quality_breakdown(kb, case, pid),
            )
        )
    entries.sort(key=lambda e: (-e.score, e.platform_id))
    return Evaluation(
        feasible=tuple(entries),
        infeasible=infeasible,
        weights=case.weights,
        timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(),
    )
