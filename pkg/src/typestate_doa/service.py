"""Stateless HTTP facade over the conversions.

Domain failures (bad protocols, bad documents) are data for the client:
they come back as 200 with ``ok: false`` and the diagnostics, so an editor
can render them inline. Transport problems (malformed envelopes, oversized
bodies, wrong input kind for an endpoint) are 4xx.
"""

from __future__ import annotations

from typing import Literal, Union

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, ConfigDict, Field

from .automaton import validate_doa
from .checks import full_check
from .compiler import compile_ast
from .decompiler import decompile
from .diagnostics import Diagnostic, DiagnosticError, has_errors
from .interchange import ast_from_json, ast_to_json, doa_from_json, doa_to_json
from .syntax import parse, render, validate_ast
from .syntax.tokens import SourcePos

MAX_BODY_BYTES = 1 << 20  # protocols are small; anything bigger is a mistake
DEFAULT_PROTOCOL_NAME = "Protocol"


class PositionModel(BaseModel):
    line: int
    column: int
    offset: int


class DiagnosticModel(BaseModel):
    severity: str
    code: str
    message: str
    location: Union[PositionModel, str, None] = None


class ConvertOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str | None = None


class ConvertRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["typestate", "ast", "doa"]
    payload: str = Field(min_length=1)
    options: ConvertOptions = Field(default_factory=ConvertOptions)


class ConvertResponse(BaseModel):
    ok: bool
    result: str | None = None
    diagnostics: list[DiagnosticModel] = []


def _serialize(diagnostics: list[Diagnostic]) -> list[DiagnosticModel]:
    models = []
    for diag in diagnostics:
        location: PositionModel | str | None = None
        if isinstance(diag.location, SourcePos):
            location = PositionModel(line=diag.location.line,
                                     column=diag.location.column,
                                     offset=diag.location.offset)
        elif isinstance(diag.location, str):
            location = diag.location
        models.append(DiagnosticModel(severity=diag.severity.value, code=diag.code,
                                      message=diag.message, location=location))
    return models


def _failure(diagnostics: list[Diagnostic]) -> ConvertResponse:
    return ConvertResponse(ok=False, diagnostics=_serialize(diagnostics))


def _success(result: str, diagnostics: list[Diagnostic]) -> ConvertResponse:
    return ConvertResponse(ok=True, result=result, diagnostics=_serialize(diagnostics))


def _require_kind(request: ConvertRequest, *allowed: str) -> None:
    if request.kind not in allowed:
        raise HTTPException(
            status_code=400,
            detail=f"this endpoint accepts kind {' or '.join(allowed)},"
                   f" not {request.kind!r}")


def _load_protocol(request: ConvertRequest):
    """Protocol AST from a typestate or ast payload, or the diagnostics."""
    try:
        if request.kind == "typestate":
            protocol = parse(request.payload)
            diags = validate_ast(protocol)
            if has_errors(diags):
                return None, diags
            return protocol, diags
        return ast_from_json(request.payload), []
    except DiagnosticError as exc:
        return None, exc.diagnostics


def create_app(ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="typestate-doa", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_envelope(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.middleware("http")
    async def body_size_cap(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and length.isdigit() and int(length) > MAX_BODY_BYTES:
            return JSONResponse(status_code=413,
                                content={"detail": "request body too large"})
        return await call_next(request)

    @app.get("/healthz", response_class=PlainTextResponse)
    async def healthz() -> str:
        return "ok"

    @app.post("/api/compile", response_model=ConvertResponse,
              response_model_exclude_none=True)
    async def compile_endpoint(request: ConvertRequest) -> ConvertResponse:
        _require_kind(request, "typestate", "ast")
        protocol, diags = _load_protocol(request)
        if protocol is None:
            return _failure(diags)
        doa = compile_ast(protocol)
        return _success(doa_to_json(doa), diags + validate_doa(doa))

    @app.post("/api/decompile", response_model=ConvertResponse,
              response_model_exclude_none=True)
    async def decompile_endpoint(request: ConvertRequest) -> ConvertResponse:
        _require_kind(request, "doa")
        name = request.options.name or DEFAULT_PROTOCOL_NAME
        try:
            doa = doa_from_json(request.payload)
            protocol = decompile(name, doa)
        except DiagnosticError as exc:
            return _failure(exc.diagnostics)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return _success(render(protocol) + "\n", validate_doa(doa))

    @app.post("/api/ast", response_model=ConvertResponse,
              response_model_exclude_none=True)
    async def ast_endpoint(request: ConvertRequest) -> ConvertResponse:
        _require_kind(request, "typestate", "ast")
        protocol, diags = _load_protocol(request)
        if protocol is None:
            return _failure(diags)
        if request.kind == "typestate":
            return _success(ast_to_json(protocol), diags)
        return _success(render(protocol) + "\n", diags)

    @app.post("/api/validate", response_model=ConvertResponse,
              response_model_exclude_none=True)
    async def validate_endpoint(request: ConvertRequest) -> ConvertResponse:
        diagnostics = full_check(request.kind, request.payload)
        return ConvertResponse(ok=not has_errors(diagnostics),
                               diagnostics=_serialize(diagnostics))

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


app = create_app()
