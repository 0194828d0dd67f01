"""Local JSON-over-HTTP service backing the evidence explorer UI.

The compiled network is immutable shared state; every request carries its
own evidence, so concurrent queries need no locking."""

from __future__ import annotations

import os

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .dsep import active_paths, d_separated
from .errors import (
    CausalBnError,
    ImpossibleEvidenceError,
    OverlappingSetsError,
    TargetInEvidenceError,
    UnknownStateError,
    UnknownVariableError,
)
from .inference import marginals, posterior
from .network import Network
from .policing import scenario_evidence


class QueryRequest(BaseModel):
    evidence: dict[str, str] = Field(default_factory=dict)
    targets: list[str] = Field(default_factory=list)


class DsepRequest(BaseModel):
    x: str
    y: str
    given: list[str] = Field(default_factory=list)


def _error(kind: str, message: str, status: int = 400) -> JSONResponse:
    return JSONResponse({"error": message, "kind": kind}, status_code=status)


def create_app(
    network: Network,
    scenarios: dict[str, dict[str, str]] | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="causalbn", docs_url=None, redoc_url=None)
    if scenarios is None:
        try:
            scenarios = scenario_evidence() if network.name == "policing" else {}
        except Exception:
            scenarios = {}

    @app.get("/api/model")
    def get_model():
        return {
            "name": network.name,
            "variables": [
                {"name": v.name, "states": list(v.states)} for v in network.variables
            ],
            "edges": [[p, c] for p, c in network.edges],
        }

    @app.get("/api/scenarios")
    def get_scenarios():
        return [
            {"name": name, "evidence": dict(ev)} for name, ev in scenarios.items()
        ]

    @app.post("/api/query")
    def post_query(req: QueryRequest):
        overlap = set(req.targets) & set(req.evidence)
        if overlap:
            return _error(
                "target_in_evidence",
                f"targets {sorted(overlap)} are also assigned in evidence",
            )
        try:
            if req.targets:
                posts = [posterior(network, t, req.evidence) for t in req.targets]
            else:
                posts = marginals(network, req.evidence)
        except ImpossibleEvidenceError as exc:
            return _error("impossible_evidence", str(exc))
        except (UnknownVariableError, UnknownStateError, TargetInEvidenceError) as exc:
            return _error("bad_request", str(exc))
        except CausalBnError as exc:
            return _error("bad_request", str(exc))
        return {
            "posteriors": {
                p.variable: dict(p.distribution) for p in posts
            },
            "probEvidence": posts[0].prob_evidence if posts else 1.0,
        }

    @app.post("/api/dsep")
    def post_dsep(req: DsepRequest):
        try:
            separated = d_separated(network, {req.x}, {req.y}, set(req.given))
            paths = active_paths(network, req.x, req.y, set(req.given))
        except (UnknownVariableError, OverlappingSetsError) as exc:
            return _error("bad_request", str(exc))
        return {
            "separated": separated,
            "activePaths": [
                {
                    "nodes": list(p.nodes),
                    "colliders": sorted(p.unblocking_colliders),
                }
                for p in paths
            ],
        }

    if static_dir is None:
        static_dir = _default_static_dir()
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def _default_static_dir() -> str | None:
    """The built explorer UI, when a frontend/dist sits next to the repo."""
    here = os.path.dirname(os.path.abspath(__file__))
    for up in (2, 3):
        root = here
        for _ in range(up):
            root = os.path.dirname(root)
        candidate = os.path.join(root, "frontend", "dist")
        if os.path.isdir(candidate):
            return candidate
    return None


def run_server(network: Network, host: str = "127.0.0.1", port: int = 8321) -> int:
    import uvicorn

    app = create_app(network)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: cannot serve on {host}:{port}: {exc}")
        return 1
    return 0
