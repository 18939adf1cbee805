"""Read-only JSON API over a store of persisted run artifacts.

Every response carries ``schema_version`` "1". Unknown runs, domains or
cluster labels give a 404 with a ``{code, message}`` JSON body; paths that
cannot name an artifact at all (bad run id or label syntax) give a 400. The
service never writes to the store.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import uvicorn
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .pipeline import SCHEMA_VERSION

_RUN_ID = re.compile(r"^[0-9a-f]{8,64}$")
_DOMAIN = re.compile(r"^[a-z][a-z0-9_]*$")
_LABEL = re.compile(r"^C[1-9][0-9]*$")


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


def _not_found(what: str) -> ApiError:
    return ApiError(404, f"{what} not found")


def _bad_path(what: str) -> ApiError:
    return ApiError(400, f"malformed {what}")


class ArtifactStore:
    """Filesystem-backed, read-only view of the run directories."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def run_ids(self) -> list[str]:
        if not self.root.is_dir():
            return []
        return sorted(
            p.name for p in self.root.iterdir() if p.is_dir() and (p / "config.json").exists()
        )

    def run_dir(self, run_id: str) -> Path:
        if not _RUN_ID.match(run_id):
            raise _bad_path("run id")
        run_dir = self.root / run_id
        if not (run_dir / "config.json").exists():
            raise _not_found(f"run {run_id!r}")
        return run_dir

    def read(self, run_id: str, *relpath: str) -> dict:
        path = self.run_dir(run_id).joinpath(*relpath)
        if not path.exists():
            raise _not_found("/".join(relpath))
        return json.loads(path.read_text())

    def domains(self, run_id: str) -> list[str]:
        config = self.read(run_id, "config.json")
        return list(config["config"]["domains"])

    def domain_file(self, run_id: str, domain: str, filename: str) -> dict:
        if not _DOMAIN.match(domain):
            raise _bad_path("domain")
        if domain not in self.domains(run_id):
            raise _not_found(f"domain {domain!r}")
        return self.read(run_id, domain, filename)


def create_app(store_dir: str | Path) -> FastAPI:
    store = ArtifactStore(store_dir)
    app = FastAPI(title="vulnclust results API", version=SCHEMA_VERSION)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def on_api_error(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.status, "message": exc.message, "schema_version": SCHEMA_VERSION},
        )

    @app.get("/runs")
    def list_runs():
        runs = []
        for run_id in store.run_ids():
            config = store.read(run_id, "config.json")
            runs.append(
                {
                    "run_id": run_id,
                    "created_at": config["created_at"],
                    "config": config["config"],
                }
            )
        return {"schema_version": SCHEMA_VERSION, "runs": runs}

    @app.get("/runs/{run_id}/domains")
    def list_domains(run_id: str):
        return {
            "schema_version": SCHEMA_VERSION,
            "run_id": run_id,
            "domains": store.domains(run_id),
        }

    @app.get("/runs/{run_id}/domains/{domain}/selection")
    def selection(run_id: str, domain: str):
        return store.domain_file(run_id, domain, "selection.json")

    @app.get("/runs/{run_id}/domains/{domain}/clusters/{label}")
    def cluster(run_id: str, domain: str, label: str):
        if not _LABEL.match(label):
            raise _bad_path("cluster label")
        doc = store.domain_file(run_id, domain, "clusters.json")
        for entry in doc["clusters"]:
            if entry["label"] == label:
                return {"schema_version": SCHEMA_VERSION, "domain": domain, **entry}
        raise _not_found(f"cluster {label!r}")

    @app.get("/runs/{run_id}/domains/{domain}/comparison")
    def comparison(run_id: str, domain: str):
        return store.domain_file(run_id, domain, "comparison.json")

    @app.get("/runs/{run_id}/domains/{domain}/silhouette")
    def silhouette(run_id: str, domain: str):
        return store.domain_file(run_id, domain, "silhouette.json")

    @app.get("/runs/{run_id}/domains/{domain}/geojson")
    def geojson(run_id: str, domain: str):
        doc = store.domain_file(run_id, domain, "regions.geojson")
        return {"schema_version": SCHEMA_VERSION, **doc}

    return app


def serve(store_dir: str | Path, bind: str = "127.0.0.1:8787") -> None:
    """Run the API until interrupted. ``bind`` is host:port."""
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind must be host:port, got {bind!r}")
    uvicorn.run(create_app(store_dir), host=host, port=int(port))
