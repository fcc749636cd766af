"""HTTP JSON API over the engine, advisor, and case store.

The app core (:class:`DssApp`) maps (method, path, query, body) to a status
code and a JSON-able payload; the thin ``http.server`` glue around it does
nothing but transport. Errors use one envelope everywhere:
``{"code", "message", "diagnostics": []}``.

The knowledge base is loaded once at startup and never mutated; swapping it
means restarting with a new file. Cases are the only mutable state, and all
writes go through the revision-checked store.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import relaxation
from .engine import (
    Case,
    CaseValidationError,
    DEFAULT_WEIGHTS,
    Requirement,
    WeightConfig,
    evaluate,
    validate_case,
)
from .kb import KnowledgeBase, SchemaError, feature_coverage, kb_summary
from .store import CaseNotFound, CaseStore, RevisionConflict


class _ApiError(Exception):
    def __init__(self, status, code, message, diagnostics=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.diagnostics = diagnostics or []


def _envelope(error: _ApiError) -> dict:
    return {
        "code": error.code,
        "message": error.message,
        "diagnostics": [
            d.to_dict() if hasattr(d, "to_dict") else d for d in error.diagnostics
        ],
    }


_CASE_PATH = re.compile(r"^/cases/(?P<id>[^/]+)(?P<rest>/.*)?$")


class DssApp:
    """Routing and request semantics, independent of any socket."""

    def __init__(self, kb: KnowledgeBase | None, store: CaseStore,
                 default_weights: WeightConfig = DEFAULT_WEIGHTS,
                 kb_diagnostics=None):
        self.kb = kb
        self.store = store
        self.default_weights = default_weights
        self.kb_diagnostics = list(kb_diagnostics or [])

    @classmethod
    def from_paths(cls, kb_path, store_dir, default_weights=DEFAULT_WEIGHTS):
        """Build the app, keeping KB validation failures for 503 responses."""
        from .kb import load_kb

        try:
            with open(kb_path, "rb") as fh:
                kb = load_kb(fh)
            diagnostics = []
        except SchemaError as exc:
            kb = None
            diagnostics = exc.diagnostics or [
                {"code": "SchemaError", "subject": str(kb_path), "message": str(exc)}
            ]
        return cls(kb, CaseStore(store_dir), default_weights, diagnostics)

    # -- dispatch ----------------------------------------------------------

    def handle(self, method: str, path: str, query: dict, body: bytes | None):
        """Returns (status, payload). Payload is always JSON-serializable."""
        try:
            return self._route(method, path, query, body)
        except _ApiError as exc:
            return exc.status, _envelope(exc)

    def _route(self, method, path, query, body):
        self._require_kb()
        if path == "/kb" and method == "GET":
            return 200, self._kb_payload()
        if path == "/cases" and method == "GET":
            return 200, {"cases": self._case_index()}
        if path == "/cases" and method == "POST":
            return 201, self._create_case(self._json(body))
        match = _CASE_PATH.match(path)
        if match:
            case_id = match.group("id")
            rest = match.group("rest") or ""
            if rest == "" and method == "GET":
                return 200, self._case_payload(case_id)
            if rest == "/requirements" and method == "PUT":
                return 200, self._put_requirements(case_id, self._json(body))
            if rest == "/evaluate" and method == "POST":
                return 200, self._evaluate(case_id)
            if rest == "/relax" and method == "POST":
                return 200, self._relax(case_id, query)
        raise _ApiError(404, "not_found", f"no route for {method} {path}")

    def _require_kb(self):
        if self.kb is None or self.kb_diagnostics:
            raise _ApiError(
                503,
                "kb_unavailable",
                "knowledge base failed validation at startup",
                self.kb_diagnostics,
            )

    def _json(self, body):
        if not body:
            raise _ApiError(400, "bad_request", "request body must be JSON")
        try:
            return json.loads(body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise _ApiError(400, "bad_request", f"malformed JSON body: {exc}") from None

    # -- KB ----------------------------------------------------------------

    def _kb_payload(self):
        kb = self.kb
        summary = kb_summary(kb).to_dict()
        coverage = {f.id: round(feature_coverage(kb, f.id), 2) for f in kb.boolean_features}
        return {
            "version": kb.version,
            "summary": summary,
            "platforms": [
                {"id": p.id, "name": p.name, "links": list(p.links), "notes": p.notes}
                for p in kb.platforms
            ],
            "booleanFeatures": [
                {
                    "id": f.id,
                    "name": f.name,
                    "category": f.category,
                    "description": f.description,
                    "coverage": coverage[f.id],
                }
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
            "coverage": coverage,
        }

    # -- cases ---------------------------------------------------------------

    def _case_index(self):
        out = []
        for case_id in self.store.list_ids():
            try:
                case, revision = self.store.get(case_id)
            except (CaseNotFound, json.JSONDecodeError):
                continue
            out.append({"id": case.id, "name": case.name, "revision": revision})
        return out

    def _parse_requirements(self, raw):
        if not isinstance(raw, list):
            raise _ApiError(422, "validation_failed", "field 'requirements' must be a list")
        try:
            return tuple(Requirement.from_dict(r) for r in raw)
        except (SchemaError, ValueError) as exc:
            raise _ApiError(422, "validation_failed", str(exc)) from None

    def _validated_case(self, case: Case):
        diagnostics = validate_case(self.kb, case)
        if diagnostics:
            raise _ApiError(422, "validation_failed", "case does not validate", diagnostics)
        return case

    def _create_case(self, doc):
        if not isinstance(doc, dict):
            raise _ApiError(422, "validation_failed", "case body must be an object")
        case_id = str(doc.get("id") or uuid.uuid4().hex[:12])
        try:
            weights = (
                WeightConfig.from_dict(doc["weights"]) if "weights" in doc else self.default_weights
            )
        except SchemaError as exc:
            raise _ApiError(422, "validation_failed", str(exc)) from None
        case = Case(
            id=case_id,
            name=str(doc.get("name", case_id)),
            organization_notes=str(doc.get("organizationNotes", "")),
            requirements=self._parse_requirements(doc.get("requirements", [])),
            weights=weights,
            kb_version=str(doc.get("kbVersion") or self.kb.version),
        )
        self._validated_case(case)
        try:
            revision = self.store.create(case)
        except RevisionConflict:
            raise _ApiError(409, "conflict", f"case id {case_id!r} already exists") from None
        return {"case": case.to_dict(), "revision": revision}

    def _get_case(self, case_id) -> tuple[Case, int]:
        try:
            return self.store.get(case_id)
        except CaseNotFound:
            raise _ApiError(404, "not_found", f"no case {case_id!r}") from None

    def _case_payload(self, case_id):
        case, revision = self._get_case(case_id)
        return {"case": case.to_dict(), "revision": revision}

    def _put_requirements(self, case_id, doc):
        if not isinstance(doc, dict) or "requirements" not in doc:
            raise _ApiError(422, "validation_failed", "body needs 'revision' and 'requirements'")
        if "revision" not in doc or not isinstance(doc["revision"], int):
            raise _ApiError(422, "validation_failed", "field 'revision' must be an integer")
        case, _ = self._get_case(case_id)
        updated = self._validated_case(
            case.with_requirements(self._parse_requirements(doc["requirements"]))
        )
        try:
            revision = self.store.update(case_id, doc["revision"], updated)
        except RevisionConflict as exc:
            raise _ApiError(
                409, "conflict", f"revision {exc.expected} is stale; store has {exc.actual}"
            ) from None
        return {"case": updated.to_dict(), "revision": revision}

    # -- evaluation and relaxation -------------------------------------------

    def _evaluate(self, case_id):
        case, _ = self._get_case(case_id)
        try:
            return evaluate(self.kb, case).to_dict()
        except CaseValidationError as exc:
            raise _ApiError(422, "validation_failed", "case does not validate", exc.diagnostics) from None

    def _relax(self, case_id, query):
        mode = _single(query, "mode", "suggest")
        if mode not in ("suggest", "apply"):
            raise _ApiError(422, "invalid_query", f"mode must be 'suggest' or 'apply', got {mode!r}")
        k_raw = _single(query, "k", None)
        k = None
        if k_raw is not None:
            try:
                k = int(k_raw)
            except ValueError:
                k = -1
            if k < 1:
                raise _ApiError(422, "invalid_query", f"k must be a positive integer, got {k_raw!r}")
        case, revision = self._get_case(case_id)
        try:
            plan = relaxation.relax_until_feasible(self.kb, case)
        except CaseValidationError as exc:
            raise _ApiError(422, "validation_failed", "case does not validate", exc.diagnostics) from None
        except relaxation.EmptyKnowledgeBase as exc:
            raise _ApiError(422, "validation_failed", str(exc)) from None

        steps = list(plan.steps)
        final_case, final_eval = plan.final_case, plan.final_evaluation
        if k is not None and k < len(steps):
            steps = steps[:k]
            final_case = relaxation.apply_steps(case, steps)
            final_eval = evaluate(self.kb, final_case)

        payload = {
            "mode": mode,
            "steps": [s.to_dict() for s in steps],
            "finalCase": final_case.to_dict(),
            "finalEvaluation": final_eval.to_dict(),
            "feasibleReached": bool(final_eval.feasible),
        }
        if mode == "apply" and steps:
            payload["revision"] = self.store.update(case_id, revision, final_case)
        else:
            payload["revision"] = revision
        return payload


def _single(query: dict, key: str, default):
    values = query.get(key)
    if not values:
        return default
    return values[-1]


# ---------------------------------------------------------------------------
# http.server glue
# ---------------------------------------------------------------------------


class _Handler(BaseHTTPRequestHandler):
    app: DssApp = None  # set by make_server
    protocol_version = "HTTP/1.1"

    def _dispatch(self, method):
        parsed = urlparse(self.path)
        query = parse_qs(parsed.query)
        length = int(self.headers.get("Content-Length") or 0)
        body = self.rfile.read(length) if length else None
        status, payload = self.app.handle(method, parsed.path, query, body)
        data = json.dumps(payload, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_PUT(self):
        self._dispatch("PUT")

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def log_message(self, fmt, *args):  # quiet by default; tests drive traffic
        pass


def make_server(app: DssApp, host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"app": app})
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(app: DssApp, host: str, port: int):
    server = make_server(app, host, port)
    print(
        f"dss service listening on http://{server.server_address[0]}:{server.server_address[1]}",
        flush=True,
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def start_background(app: DssApp, host: str = "127.0.0.1", port: int = 0):
    """Start a server thread; returns (server, base_url). Used by tests."""
    server = make_server(app, host, port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    return server, f"http://{host}:{port}"
