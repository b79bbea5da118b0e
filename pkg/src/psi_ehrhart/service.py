"""HTTP service wrapping the exact-computation handlers.

Error mapping: DomainError (bad arguments, unknown fixture, kappa_0,
unbounded polytope) -> 400; failed mathematical cross-checks -> 409;
cache parse/version/lock problems -> 400.  If PSI_EHRHART_CACHE points
at an existing file it is loaded into the memo tables at startup.

Run with:  uvicorn psi_ehrhart.service:app
"""

from __future__ import annotations

import os
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from . import handlers
from .cache_store import default_cache_path, install, load, save, snapshot
from .ehrhart_geom import FIXTURE_NAMES
from .errors import CacheError, DomainError, InconsistencyError
from .schemas import (
    CachePathRequest,
    CacheResponse,
    CountRequest,
    CountResponse,
    DVectorRequest,
    FixturesResponse,
    FStarResponse,
    HealthResponse,
    InterpolateRequest,
    InterpolateResponse,
    KappaRequest,
    KappaResponse,
    LPolyResponse,
    PsiRequest,
    PsiResponse,
    ScanRequest,
    ScanResponse,
    VerifyRequest,
    VerifyResponse,
)


@asynccontextmanager
async def _lifespan(app: FastAPI):
    path = default_cache_path()
    if path and os.path.exists(path):
        install(load(path))
    yield


app = FastAPI(title="psi-ehrhart", version=__version__, lifespan=_lifespan)


@app.exception_handler(InconsistencyError)
async def _inconsistency(request: Request, exc: InconsistencyError):
    return JSONResponse(status_code=409, content={"detail": str(exc)})


@app.exception_handler(DomainError)
async def _domain(request: Request, exc: DomainError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(CacheError)
async def _cache(request: Request, exc: CacheError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health", response_model=HealthResponse)
async def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.get("/fixtures", response_model=FixturesResponse)
async def fixtures() -> FixturesResponse:
    return FixturesResponse(fixtures=list(FIXTURE_NAMES))


@app.post("/psi", response_model=PsiResponse)
async def psi(req: PsiRequest):
    return handlers.run_psi(req.genus, req.d)


@app.post("/kappa", response_model=KappaResponse)
async def kappa(req: KappaRequest):
    return handlers.run_kappa(req.genus, req.kappa, req.d)


@app.post("/lpoly", response_model=LPolyResponse)
async def lpoly(req: DVectorRequest):
    return handlers.run_lpoly(req.d)


@app.post("/fstar", response_model=FStarResponse)
async def fstar(req: DVectorRequest):
    return handlers.run_fstar(req.d)


@app.post("/scan", response_model=ScanResponse)
async def scan(req: ScanRequest):
    return handlers.run_scan(req.max_total, req.max_parts)


@app.post("/count", response_model=CountResponse)
async def count(req: CountRequest):
    return handlers.run_count(req.fixture, req.g)


@app.post("/interpolate", response_model=InterpolateResponse)
async def interpolate(req: InterpolateRequest):
    return handlers.run_interpolate(req.fixture)


@app.post("/verify", response_model=VerifyResponse)
async def verify(req: VerifyRequest):
    return handlers.run_verify(req.fixture, req.gmax)


def _resolve_cache_path(req: CachePathRequest) -> str:
    path = req.path or default_cache_path()
    if not path:
        raise DomainError(
            "no cache path given and PSI_EHRHART_CACHE is not set")
    return path


@app.post("/cache/save", response_model=CacheResponse)
async def cache_save(req: CachePathRequest):
    path = _resolve_cache_path(req)
    written = save(snapshot(), path)
    return CacheResponse(path=written.path, entries=len(written.entries))


@app.post("/cache/load", response_model=CacheResponse)
async def cache_load(req: CachePathRequest):
    path = _resolve_cache_path(req)
    table = load(path)
    install(table)
    return CacheResponse(path=path, entries=len(table))
