"""FastAPI service exposing the verification pipeline over HTTP.

Sessions are cached per parameter set so repeated requests against the
same group reuse the enumerated table, triangle and geometry instead of
rebuilding them.  Domain errors map to 400 (bad parameters) and tier
violations to 409 (state too large for the requested tier).
"""

import threading

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import OvgeoError, TierExceededError
from ..exports import render
from ..reports import (
    Session,
    SUITES,
    chamber_info,
    export_data,
    field_info,
    group_info,
    run_suite,
)
from .models import (
    ChamberRequest,
    ExportRequest,
    ExportResponse,
    FieldRequest,
    GroupRequest,
    InfoResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="ovgeo", version=__version__)

_sessions: dict[tuple, Session] = {}
_lock = threading.Lock()


def _session(e: int, m: int, tier: str, point: int | None) -> Session:
    key = (e, m, tier, point)
    with _lock:
        if key not in _sessions:
            _sessions[key] = Session(e, m, tier, point)
        return _sessions[key]


def _reraise(exc: Exception):
    if isinstance(exc, TierExceededError):
        raise HTTPException(status_code=409, detail=str(exc))
    if isinstance(exc, (OvgeoError, ValueError)):
        raise HTTPException(status_code=400, detail=str(exc))
    raise exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/field", response_model=InfoResponse)
def field(req: FieldRequest) -> InfoResponse:
    try:
        return InfoResponse(info=field_info(req.e))
    except Exception as exc:
        _reraise(exc)


@app.post("/group", response_model=InfoResponse)
def group(req: GroupRequest) -> InfoResponse:
    try:
        return InfoResponse(
            info=group_info(req.e, enumerate_table=req.enumerate,
                            threshold=req.threshold)
        )
    except Exception as exc:
        _reraise(exc)


@app.post("/chamber", response_model=InfoResponse)
def chamber(req: ChamberRequest) -> InfoResponse:
    try:
        q = 2 ** (2 * req.e + 1)
        tier = "full" if (q * q + 1) * q * q * (q - 1) <= 10**6 else "spot"
        sess = _session(req.e, req.m, tier, req.point)
        return InfoResponse(info=chamber_info(sess))
    except Exception as exc:
        _reraise(exc)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    try:
        if req.suite not in SUITES:
            raise ValueError(f"unknown suite {req.suite!r}")
        sess = _session(req.e, req.m, req.tier, req.point)
        report = run_suite(sess, req.suite, req.seed)
        return VerifyResponse(
            report=report.canonical_dict(),
            text=report.text_lines(),
            passed=report.passed,
        )
    except Exception as exc:
        _reraise(exc)


@app.post("/export", response_model=ExportResponse)
def export(req: ExportRequest) -> ExportResponse:
    try:
        sess = _session(req.e, req.m, "full", None)
        data = export_data(sess, req.what)
        content = render(data, req.format)
        return ExportResponse(
            content=content,
            suggested_name=f"{req.what}-q{data['q']}.{req.format}",
            nodes=len(data["nodes"]),
            edges=len(data["edges"]),
        )
    except Exception as exc:
        _reraise(exc)
