"""Knowledge-base model: platforms, features, qualities, and their mappings.

The knowledge base is the curated decision model the engine consumes
read-only. Boolean feature support lives in a total 0/1 matrix (``bfp``),
ordinal feature levels in a total Low/Medium/High matrix (``nfp``), and the
quality-attribute explanation mapping in a sparse 0/1 adjacency (``qf``).

A loaded :class:`KnowledgeBase` is immutable by convention: nothing in this
package mutates one after construction, so instances are safe to share
across threads.
"""

from __future__ import annotations

import enum
import json
import warnings
from dataclasses import dataclass, field

ORDINAL_SCALE = ("Low", "Medium", "High")
SOURCE_MODELS = ("ISO-25010", "EXT-9126", "custom")

_TOP_LEVEL_REQUIRED = (
    "version",
    "platforms",
    "booleanFeatures",
    "ordinalFeatures",
    "qualities",
    "bfp",
    "nfp",
    "qf",
)
_TOP_LEVEL_OPTIONAL = ("provenance",)


class ParseError(ValueError):
    """Interchange document is not well-formed text (carries line/column)."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(ValueError):
    """Document parsed but does not satisfy the knowledge-base schema."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class UnknownFeature(KeyError):
    """Feature id is not declared (or not declared with the needed kind)."""


class UnknownPlatform(KeyError):
    """Platform id is not declared in the knowledge base."""


class Level(enum.IntEnum):
    """Ordinal feature level; ordering is the whole point."""

    LOW = 0
    MEDIUM = 1
    HIGH = 2

    @property
    def code(self) -> str:
        return {Level.LOW: "L", Level.MEDIUM: "M", Level.HIGH: "H"}[self]

    @classmethod
    def from_code(cls, code: str) -> "Level":
        try:
            return {"L": cls.LOW, "M": cls.MEDIUM, "H": cls.HIGH}[code]
        except KeyError:
            raise ValueError(f"not an ordinal level code: {code!r}") from None


@dataclass(frozen=True)
class Diagnostic:
    """One violated invariant. code identifies the rule, subject the culprit."""

    code: str
    subject: str
    message: str

    def to_dict(self) -> dict:
        return {"code": self.code, "subject": self.subject, "message": self.message}


@dataclass(frozen=True)
class Platform:
    id: str
    name: str
    links: tuple[str, ...] = ()
    notes: str = ""


@dataclass(frozen=True)
class BooleanFeature:
    id: str
    name: str
    category: str  # hierarchical path, "/"-separated, at most 3 segments
    description: str = ""


@dataclass(frozen=True)
class OrdinalFeature:
    id: str
    name: str
    parameters: tuple[str, ...] = ()
    scale: tuple[str, ...] = ORDINAL_SCALE


@dataclass(frozen=True)
class QualityAttribute:
    id: str
    name: str
    definition: str = ""
    source_model: str = "ISO-25010"


@dataclass(frozen=True)
class KnowledgeBase:
    """The full decision model. Matrices are nested maps keyed by ids.

    ``bfp[featureId][platformId]`` is 0 or 1, total over Boolean features x
    platforms. ``nfp[featureId][platformId]`` is an "L"/"M"/"H" code, total
    over ordinal features x platforms. ``qf[qualityId][featureId]`` is 0/1
    and sparse. ``provenance`` carries optional curator notes and is
    documentation only: the engine never reads it.
    """

    version: str
    platforms: tuple[Platform, ...]
    boolean_features: tuple[BooleanFeature, ...]
    ordinal_features: tuple[OrdinalFeature, ...]
    qualities: tuple[QualityAttribute, ...]
    bfp: dict = field(default_factory=dict)
    nfp: dict = field(default_factory=dict)
    qf: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    # -- lookups ---------------------------------------------------------

    def platform_ids(self) -> list[str]:
        return [p.id for p in self.platforms]

    def has_platform(self, platform_id: str) -> bool:
        return any(p.id == platform_id for p in self.platforms)

    def boolean_ids(self) -> set[str]:
        return {f.id for f in self.boolean_features}

    def ordinal_ids(self) -> set[str]:
        return {f.id for f in self.ordinal_features}

    def feature_ids(self) -> set[str]:
        return self.boolean_ids() | self.ordinal_ids()

    def is_ordinal(self, feature_id: str) -> bool:
        return feature_id in self.ordinal_ids()

    def feature_name(self, feature_id: str) -> str:
        for f in self.boolean_features:
            if f.id == feature_id:
                return f.name
        for f in self.ordinal_features:
            if f.id == feature_id:
                return f.name
        raise UnknownFeature(feature_id)

    def bfp_value(self, feature_id: str, platform_id: str) -> int:
        if feature_id not in self.boolean_ids():
            raise UnknownFeature(feature_id)
        if not self.has_platform(platform_id):
            raise UnknownPlatform(platform_id)
        return self.bfp[feature_id][platform_id]

    def nfp_level(self, feature_id: str, platform_id: str) -> Level:
        if feature_id not in self.ordinal_ids():
            raise UnknownFeature(feature_id)
        if not self.has_platform(platform_id):
            raise UnknownPlatform(platform_id)
        return Level.from_code(self.nfp[feature_id][platform_id])


@dataclass(frozen=True)
class KbSummary:
    platforms: int
    boolean_features: int
    ordinal_features: int
    qualities: int
    bfp_density: float  # fraction of 1-cells; 0.0 for an empty matrix

    def to_dict(self) -> dict:
        return {
            "platforms": self.platforms,
            "booleanFeatures": self.boolean_features,
            "ordinalFeatures": self.ordinal_features,
            "qualities": self.qualities,
            "bfpDensity": self.bfp_density,
        }


# ---------------------------------------------------------------------------
# Parsing / serialization
# ---------------------------------------------------------------------------


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise SchemaError(f"{where}: missing required field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{where}: field {key!r} has wrong type {type(value).__name__}")
    return value


def _string_list(obj: dict, key: str, where: str) -> tuple[str, ...]:
    value = obj.get(key, [])
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"{where}: field {key!r} must be a list of strings")
    return tuple(value)


def _parse_platform(obj: dict, index: int) -> Platform:
    where = f"platforms[{index}]"
    return Platform(
        id=_require(obj, "id", str, where),
        name=_require(obj, "name", str, where),
        links=_string_list(obj, "links", where),
        notes=str(obj.get("notes", "")),
    )


def _parse_boolean_feature(obj: dict, index: int) -> BooleanFeature:
    where = f"booleanFeatures[{index}]"
    return BooleanFeature(
        id=_require(obj, "id", str, where),
        name=_require(obj, "name", str, where),
        category=_require(obj, "category", str, where),
        description=str(obj.get("description", "")),
    )


def _parse_ordinal_feature(obj: dict, index: int) -> OrdinalFeature:
    where = f"ordinalFeatures[{index}]"
    scale = obj.get("scale", list(ORDINAL_SCALE))
    if not isinstance(scale, list) or not all(isinstance(v, str) for v in scale):
        raise SchemaError(f"{where}: field 'scale' must be a list of strings")
    return OrdinalFeature(
        id=_require(obj, "id", str, where),
        name=_require(obj, "name", str, where),
        parameters=_string_list(obj, "parameters", where),
        scale=tuple(scale),
    )


def _parse_quality(obj: dict, index: int) -> QualityAttribute:
    where = f"qualities[{index}]"
    return QualityAttribute(
        id=_require(obj, "id", str, where),
        name=_require(obj, "name", str, where),
        definition=str(obj.get("definition", "")),
        source_model=_require(obj, "sourceModel", str, where),
    )


def _parse_matrix(obj, name: str) -> dict:
    if not isinstance(obj, dict) or not all(isinstance(row, dict) for row in obj.values()):
        raise SchemaError(f"field {name!r} must be a map of maps keyed by ids")
    return {fid: dict(row) for fid, row in obj.items()}


def kb_from_dict(doc: dict, strict: bool = False) -> KnowledgeBase:
    """Build a KnowledgeBase from a parsed interchange document.

    Structural problems (missing fields, wrong types) raise SchemaError
    immediately. Unknown top-level fields raise in strict mode and warn
    otherwise. Semantic invariants are the job of validate_kb.
    """
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    unknown = sorted(set(doc) - set(_TOP_LEVEL_REQUIRED) - set(_TOP_LEVEL_OPTIONAL))
    if unknown:
        if strict:
            raise SchemaError(f"unknown top-level fields: {', '.join(unknown)}")
        warnings.warn(f"ignoring unknown top-level fields: {', '.join(unknown)}", stacklevel=2)
    for key in _TOP_LEVEL_REQUIRED:
        if key not in doc:
            raise SchemaError(f"missing required field {key!r}")
    if not isinstance(doc["version"], str):
        raise SchemaError("field 'version' must be a string")
    for key in ("platforms", "booleanFeatures", "ordinalFeatures", "qualities"):
        if not isinstance(doc[key], list):
            raise SchemaError(f"field {key!r} must be a list")
    provenance = doc.get("provenance", {})
    if not isinstance(provenance, dict):
        raise SchemaError("field 'provenance' must be an object")
    return KnowledgeBase(
        version=doc["version"],
        platforms=tuple(_parse_platform(p, i) for i, p in enumerate(doc["platforms"])),
        boolean_features=tuple(
            _parse_boolean_feature(f, i) for i, f in enumerate(doc["booleanFeatures"])
        ),
        ordinal_features=tuple(
            _parse_ordinal_feature(f, i) for i, f in enumerate(doc["ordinalFeatures"])
        ),
        qualities=tuple(_parse_quality(q, i) for i, q in enumerate(doc["qualities"])),
        bfp=_parse_matrix(doc["bfp"], "bfp"),
        nfp=_parse_matrix(doc["nfp"], "nfp"),
        qf=_parse_matrix(doc["qf"], "qf"),
        provenance=provenance,
    )


def kb_to_dict(kb: KnowledgeBase) -> dict:
    doc = {
        "version": kb.version,
        "platforms": [
            {"id": p.id, "name": p.name, "links": list(p.links), "notes": p.notes}
            for p in kb.platforms
        ],
        "booleanFeatures": [
            {"id": f.id, "name": f.name, "category": f.category, "description": f.description}
            for f in kb.boolean_features
        ],
        "ordinalFeatures": [
            {"id": f.id, "name": f.name, "parameters": list(f.parameters), "scale": list(f.scale)}
            for f in kb.ordinal_features
        ],
        "qualities": [
            {"id": q.id, "name": q.name, "definition": q.definition, "sourceModel": q.source_model}
            for q in kb.qualities
        ],
        "bfp": {fid: dict(row) for fid, row in kb.bfp.items()},
        "nfp": {fid: dict(row) for fid, row in kb.nfp.items()},
        "qf": {qid: dict(row) for qid, row in kb.qf.items()},
    }
    if kb.provenance:
        doc["provenance"] = kb.provenance
    return doc


def load_kb(source, strict: bool = False) -> KnowledgeBase:
    """Load and fully validate a KB interchange document.

    ``source`` may be bytes, text, or a readable file object. Malformed
    text raises ParseError with line/column; schema or invariant failures
    raise SchemaError (invariant failures carry the diagnostics list).
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"malformed document at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
        ) from exc
    kb = kb_from_dict(doc, strict=strict)
    diagnostics = validate_kb(kb)
    if diagnostics:
        raise SchemaError(
            "document violates knowledge-base invariants: "
            + "; ".join(f"{d.code}({d.subject})" for d in diagnostics[:5])
            + ("" if len(diagnostics) <= 5 else f" and {len(diagnostics) - 5} more"),
            diagnostics=diagnostics,
        )
    return kb


def save_kb(kb: KnowledgeBase) -> str:
    """Serialize to interchange text. save/load round-trips losslessly."""
    return json.dumps(kb_to_dict(kb), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_kb(kb: KnowledgeBase) -> list[Diagnostic]:
    """Check every knowledge-base invariant.

    Returns one diagnostic per violation; an empty list means valid. The
    order is deterministic: by code, then subject id.
    """
    out = []

    def bad(code, subject, message):
        out.append(Diagnostic(code, subject, message))

    seen_platforms = set()
    for p in kb.platforms:
        if not p.id:
            bad("EmptyPlatformId", p.name or "?", "platform with empty id")
        elif p.id in seen_platforms:
            bad("DuplicatePlatformId", p.id, f"platform id {p.id!r} declared more than once")
        seen_platforms.add(p.id)

    seen_features = set()
    for f in list(kb.boolean_features) + list(kb.ordinal_features):
        if not f.id:
            bad("EmptyFeatureId", f.name or "?", "feature with empty id")
        elif f.id in seen_features:
            bad("DuplicateFeatureId", f.id, f"feature id {f.id!r} declared more than once")
        seen_features.add(f.id)

    for f in kb.boolean_features:
        segments = [s for s in f.category.split("/") if s.strip()]
        if not segments:
            bad("EmptyCategoryPath", f.id, f"feature {f.id!r} has an empty category path")
        elif len(segments) > 3:
            bad(
                "CategoryPathTooDeep",
                f.id,
                f"feature {f.id!r} category path has {len(segments)} segments (max 3)",
            )

    for f in kb.ordinal_features:
        if tuple(f.scale) != ORDINAL_SCALE:
            bad(
                "InvalidOrdinalScale",
                f.id,
                f"feature {f.id!r} must use the fixed scale {list(ORDINAL_SCALE)}",
            )

    seen_qualities = set()
    for q in kb.qualities:
        if not q.id:
            bad("EmptyQualityId", q.name or "?", "quality with empty id")
        elif q.id in seen_qualities:
            bad("DuplicateQualityId", q.id, f"quality id {q.id!r} declared more than once")
        seen_qualities.add(q.id)
        if q.source_model not in SOURCE_MODELS:
            bad(
                "InvalidSourceModel",
                q.id,
                f"quality {q.id!r} sourceModel {q.source_model!r} is not one of {list(SOURCE_MODELS)}",
            )

    platform_ids = [p.id for p in kb.platforms]
    _validate_total_matrix(
        kb.bfp,
        rows={f.id for f in kb.boolean_features},
        cols=platform_ids,
        valid_cell=lambda v: v in (0, 1) and not isinstance(v, bool),
        label="bfp",
        invalid_code="InvalidBfpValue",
        bad=bad,
    )
    _validate_total_matrix(
        kb.nfp,
        rows={f.id for f in kb.ordinal_features},
        cols=platform_ids,
        valid_cell=lambda v: v in ("L", "M", "H"),
        label="nfp",
        invalid_code="InvalidOrdinalLevel",
        bad=bad,
    )

    quality_ids = {q.id for q in kb.qualities}
    feature_ids = seen_features
    for qid in sorted(kb.qf):
        if qid not in quality_ids:
            bad("UnknownQfQuality", qid, f"qf references undeclared quality {qid!r}")
            continue
        for fid in sorted(kb.qf[qid]):
            if fid not in feature_ids:
                bad("UnknownQfFeature", f"{qid}/{fid}", f"qf[{qid!r}] references undeclared feature {fid!r}")
            elif kb.qf[qid][fid] not in (0, 1) or isinstance(kb.qf[qid][fid], bool):
                bad("InvalidQfValue", f"{qid}/{fid}", f"qf[{qid!r}][{fid!r}] must be 0 or 1")

    out.sort(key=lambda d: (d.code, d.subject))
    return out


def _validate_total_matrix(matrix, rows, cols, valid_cell, label, invalid_code, bad):
    for fid in sorted(matrix):
        if fid not in rows:
            bad(
                "UnexpectedMatrixRow",
                f"{label}/{fid}",
                f"{label} has a row for undeclared feature {fid!r}",
            )
    for fid in sorted(rows):
        row = matrix.get(fid)
        if row is None:
            bad("MissingMatrixRow", f"{label}/{fid}", f"{label} is missing the row for feature {fid!r}")
            continue
        for pid in sorted(row):
            if pid not in cols:
                bad(
                    "UnexpectedMatrixCell",
                    f"{label}/{fid}/{pid}",
                    f"{label}[{fid!r}] has a cell for undeclared platform {pid!r}",
                )
        for pid in cols:
            if pid not in row:
                bad(
                    "MissingMatrixCell",
                    f"{label}/{fid}/{pid}",
                    f"{label} is missing the cell ({fid!r}, {pid!r})",
                )
            elif not valid_cell(row[pid]):
                bad(
                    invalid_code,
                    f"{label}/{fid}/{pid}",
                    f"{label}[{fid!r}][{pid!r}] has invalid value {row[pid]!r}",
                )


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def feature_coverage(kb: KnowledgeBase, feature_id: str) -> float:
    """Percentage of platforms whose Boolean support cell is 1."""
    if feature_id not in kb.boolean_ids():
        raise UnknownFeature(feature_id)
    if not kb.platforms:
        return 0.0
    ones = sum(1 for p in kb.platforms if kb.bfp[feature_id][p.id] == 1)
    return 100.0 * ones / len(kb.platforms)


def kb_summary(kb: KnowledgeBase) -> KbSummary:
    cells = len(kb.boolean_features) * len(kb.platforms)
    ones = sum(
        1 for f in kb.boolean_features for p in kb.platforms if kb.bfp[f.id][p.id] == 1
    )
    return KbSummary(
        platforms=len(kb.platforms),
        boolean_features=len(kb.boolean_features),
        ordinal_features=len(kb.ordinal_features),
        qualities=len(kb.qualities),
        bfp_density=(ones / cells) if cells else 0.0,
    )
