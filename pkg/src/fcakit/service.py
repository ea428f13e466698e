"""HTTP session API over the exploration engine, plus static hosting of the
browser client.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .bitset import mask_of
from .concepts import concept_lattice
from .contexts import Context, write_burmeister
from .errors import ExplorationError, FcaError
from .exploration import NOT_FOUND, SessionStore, session_view
from .implications import format_implication


class SeedPayload(BaseModel):
    objects: list[str]
    rows: list[list[str]]


class CreatePayload(BaseModel):
    attributes: list[str]
    seed: SeedPayload | None = None


class AnswerPayload(BaseModel):
    kind: str
    object: str | None = None
    intent: list[str] | None = None


def _seed_context(attributes: list[str], seed: SeedPayload) -> Context:
    attrs = tuple(attributes)
    lookup = {m: i for i, m in enumerate(attrs)}
    try:
        rows = tuple(mask_of(lookup[m] for m in row) for row in seed.rows)
    except KeyError as e:
        raise FcaError(f"seed row uses unknown attribute {e.args[0]!r}") from None
    if len(rows) != len(seed.objects):
        raise FcaError("seed object and row counts differ")
    return Context(tuple(seed.objects), attrs, rows)


def create_app(state_dir: str | Path | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="fcakit exploration service")
    store = SessionStore(state_dir)
    app.state.store = store

    @app.exception_handler(ExplorationError)
    async def exploration_error(_: Request, exc: ExplorationError):
        status = 404 if exc.code == NOT_FOUND else 409
        return JSONResponse(status_code=status, content={"error": exc.code, "detail": exc.detail})

    @app.exception_handler(FcaError)
    async def domain_error(_: Request, exc: FcaError):
        return JSONResponse(status_code=400, content={"error": "BAD_REQUEST", "detail": str(exc)})

    @app.post("/sessions")
    def create_session(payload: CreatePayload):
        seed = _seed_context(payload.attributes, payload.seed) if payload.seed else None
        session = store.create(payload.attributes, seed)
        view = session_view(session)
        return {"id": session.id, "pending": view["pending"], "basisSoFar": view["accepted"]}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_view(store.get(session_id))

    @app.post("/sessions/{session_id}/answer")
    def answer(session_id: str, payload: AnswerPayload):
        session = store.answer(session_id, payload.kind, payload.object, payload.intent)
        return session_view(session)

    @app.get("/sessions/{session_id}/lattice")
    def lattice(session_id: str):
        session = store.get(session_id)
        lat = concept_lattice(session.examples)
        ctx = session.examples
        return {
            "concepts": [{"extent": list(ctx.object_names(c.extent)),
                          "intent": list(ctx.attribute_names(c.intent))}
                         for c in lat.concepts],
            "covers": [list(arc) for arc in lat.covers],
        }

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str):
        session = store.get(session_id)
        lines = [write_burmeister(session.examples)]
        for imp in session.accepted_set():
            lines.append(format_implication(imp, session.attributes))
        return PlainTextResponse("\n".join(lines) + "\n")

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app
