"""HTTP/JSON facade over the orchestrator.

Every mutating route appends to the append-only event log; restarting the
service replays that log, so no other storage exists.  Requests for the
same learner are serialized with a keyed lock (the per-learner single-writer
contract); distinct learners proceed in parallel.

Domain errors map to one structured body shape::

    {"code": "flow-violation", "message": "...", "state": "PRACTISING(2,1)"}

with the HTTP status chosen by error code.  Timestamps are ISO-8601 UTC in
responses; the log keeps raw floats so replay stays bit-exact.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Mapping

from fastapi import FastAPI, Header, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from .analytics import build_report, render_report_text, report_records
from .elo import EloConfig, ProbabilityModel
from .errors import ElosteerError
from .recommender import Catalog, RecommenderConfig, SeriesRecommendation, ingest_catalog
from .steering import dreyfus_label, mastery_history
from .study import (
    PRACTICE_EXPLAINER,
    StudyConfig,
    StudyOrchestrator,
    explanation_screens,
)

__all__ = ["ApiConfig", "create_app"]


_STATUS_BY_CODE = {
    "not-found": 404,
    "forbidden-control": 403,
    "flow-violation": 409,
    "duplicate-id": 409,
    "already-initialized": 409,
    "not-initialized": 409,
    "insufficient-pool": 409,
    "missing-groups": 409,
    "incomplete-questionnaire": 422,
    "invalid-answer": 400,
    "invalid-rating": 400,
    "out-of-range": 400,
    "malformed-entry": 400,
    "degenerate-sample": 400,
    "internal": 500,
}


@dataclass
class ApiConfig:
    """Service wiring; ``from_file`` reads the same shape as JSON."""

    host: str = "127.0.0.1"
    port: int = 8000
    data_dir: str | None = None
    admin_token: str = "dev-admin-token"
    cors_origins: tuple[str, ...] = ("*",)
    study: StudyConfig = dc_field(default_factory=StudyConfig)
    recommender: RecommenderConfig = dc_field(default_factory=RecommenderConfig)
    elo: EloConfig = dc_field(default_factory=EloConfig)

    @classmethod
    def from_mapping(cls, raw: Mapping) -> "ApiConfig":
        data = dict(raw)
        if "study" in data:
            data["study"] = StudyConfig(**data["study"])
        if "recommender" in data:
            data["recommender"] = RecommenderConfig(**data["recommender"])
        if "elo" in data:
            elo = dict(data["elo"])
            if "model" in elo:
                elo["model"] = ProbabilityModel(elo["model"])
            data["elo"] = EloConfig(**elo)
        if "cors_origins" in data:
            data["cors_origins"] = tuple(data["cors_origins"])
        return cls(**data)

    @classmethod
    def from_file(cls, path: str) -> "ApiConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(json.load(fh))


class _DomainError(Exception):
    """Carrier from endpoint code to the JSON error handler."""

    def __init__(self, exc: ElosteerError, state: str | None):
        self.status = _STATUS_BY_CODE.get(exc.code, 500)
        self.payload = {"code": exc.code, "message": str(exc), "state": state}


class _Locks:
    def __init__(self) -> None:
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def __call__(self, key: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(key, threading.Lock())


def _iso(ts: float) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).isoformat()


# -- request bodies ----------------------------------------------------------

class RegisterBody(BaseModel):
    learner_id: str | None = None


class MasteryBody(BaseModel):
    slider_position: float


class AttemptBody(BaseModel):
    exercise_id: str
    answer_index: int


class SteerBody(BaseModel):
    step: int


class QuestionnaireBody(BaseModel):
    answers: dict[str, int]
    free_text: dict[str, str] = Field(default_factory=dict)


class CatalogBody(BaseModel):
    entries: list[dict]


# -- app factory --------------------------------------------------------------

def _open_log(config: ApiConfig) -> tuple[StudyOrchestrator, IO[str] | None]:
    """Replay any existing log, then open it for appending."""
    kwargs = dict(study=config.study, recommender=config.recommender, elo=config.elo)
    if config.data_dir is None:
        return StudyOrchestrator(Catalog(), **kwargs), None  # in-memory log
    data_dir = Path(config.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    log_path = data_dir / "events.log"
    if log_path.exists():
        with log_path.open(encoding="utf-8") as fh:
            orch = StudyOrchestrator.replay(fh, **kwargs)
    else:
        orch = StudyOrchestrator(Catalog(), **kwargs)
    sink = log_path.open("a", encoding="utf-8")
    orch.attach_sink(sink)
    return orch, sink


def create_app(config: ApiConfig | None = None) -> FastAPI:
    config = config or ApiConfig()
    orch, _sink = _open_log(config)
    locks = _Locks()

    app = FastAPI(title="elosteer", docs_url=None, redoc_url=None)
    app.state.orchestrator = orch
    app.state.config = config
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(_DomainError)
    def _domain_error_handler(request: Request, exc: _DomainError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content=exc.payload)

    def _state_of(learner_id: str | None) -> str | None:
        if learner_id is None:
            return None
        try:
            return str(orch.state(learner_id))
        except ElosteerError:
            return None

    def _fail(exc: ElosteerError, learner_id: str | None) -> None:
        state = getattr(exc, "state", None) or _state_of(learner_id)
        raise _DomainError(exc, state) from exc

    def _profile_payload(learner_id: str) -> dict:
        profile = orch.profile(learner_id)
        rating = profile.rating
        return {
            "learner_id": profile.id,
            "group": profile.group.value,
            "rating": rating,
            "level": dreyfus_label(rating) if rating is not None else None,
            "state": str(orch.state(learner_id)),
            "screens": list(explanation_screens(profile.group)),
        }

    def _series_payload(learner_id: str, series: SeriesRecommendation) -> dict:
        pending = orch.pending_exercise_ids(learner_id)
        return {
            "topic": series.topic,
            "exercises": [
                {
                    "id": e.id,
                    "topic": e.topic,
                    "statement": e.statement,
                    "choices": list(e.choices),
                    "rating": e.rating,
                }
                for e in series.exercises
            ],
            "expected_p": list(series.expected_probabilities),
            "pending": pending,
            "answered": len(series.exercises) - len(pending),
            "state": str(orch.state(learner_id)),
            "practice_explainer": PRACTICE_EXPLAINER,
        }

    # -- routes ---------------------------------------------------------------

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "learners": len(orch.learner_ids())}

    @app.post("/learners", status_code=201)
    def register(body: RegisterBody) -> dict:
        try:
            with locks("_register"):
                profile = orch.register(body.learner_id)
        except ElosteerError as exc:
            _fail(exc, body.learner_id)
        return _profile_payload(profile.id)

    @app.get("/learners/{learner_id}")
    def get_learner(learner_id: str) -> dict:
        try:
            return _profile_payload(learner_id)
        except ElosteerError as exc:
            _fail(exc, learner_id)

    @app.post("/learners/{learner_id}/mastery")
    def set_mastery(learner_id: str, body: MasteryBody) -> dict:
        try:
            with locks(learner_id):
                event = orch.set_mastery(learner_id, body.slider_position)
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {
            "rating": event.post_rating,
            "level": dreyfus_label(event.post_rating),
            "state": str(orch.state(learner_id)),
        }

    @app.post("/learners/{learner_id}/explanation-ack")
    def ack_explanation(learner_id: str) -> dict:
        try:
            with locks(learner_id):
                state = orch.ack_explanation(learner_id)
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {"state": str(state)}

    @app.get("/learners/{learner_id}/series")
    def get_series(learner_id: str, topic: str | None = None) -> dict:
        """Current series if one is open, otherwise compose the next one."""
        try:
            with locks(learner_id):
                state = orch.state(learner_id)
                series = orch.current_series(learner_id)
                if not (state.series_active and series is not None):
                    series = orch.request_series(learner_id, topic)
                return _series_payload(learner_id, series)
        except ElosteerError as exc:
            _fail(exc, learner_id)

    @app.post("/learners/{learner_id}/attempts")
    def submit_attempt(learner_id: str, body: AttemptBody) -> dict:
        try:
            with locks(learner_id):
                record = orch.submit_answer(
                    learner_id, body.exercise_id, body.answer_index
                )
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {
            "exercise_id": record.exercise_id,
            "correct": record.correct,
            "expected_p": record.expected_p,
            "learner_pre": record.learner_pre,
            "learner_post": record.learner_post,
            "delta": record.delta,
            "level": dreyfus_label(record.learner_post),
            "state": str(orch.state(learner_id)),
        }

    @app.post("/learners/{learner_id}/steer")
    def steer(learner_id: str, body: SteerBody) -> dict:
        try:
            with locks(learner_id):
                event = orch.steer(learner_id, body.step)
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {
            "step": body.step,
            "pre": event.pre_rating,
            "post": event.post_rating,
            "level": dreyfus_label(event.post_rating),
            "state": str(orch.state(learner_id)),
        }

    @app.post("/learners/{learner_id}/impact-ack")
    def ack_impact(learner_id: str) -> dict:
        try:
            with locks(learner_id):
                state = orch.ack_impact(learner_id)
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {"state": str(state)}

    @app.get("/learners/{learner_id}/history")
    def history(learner_id: str) -> dict:
        try:
            profile = orch.profile(learner_id)
            points = mastery_history(profile)
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {
            "learner_id": learner_id,
            "rating": profile.rating,
            "points": [
                {
                    "kind": p.kind,
                    "pre": p.pre_rating,
                    "post": p.post_rating,
                    "level": p.level,
                    "detail": p.detail,
                    "ts": _iso(p.timestamp),
                }
                for p in points
            ],
        }

    @app.get("/learners/{learner_id}/screens")
    def screens(learner_id: str) -> dict:
        try:
            profile = orch.profile(learner_id)
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {
            "screens": list(explanation_screens(profile.group)),
            "practice_explainer": PRACTICE_EXPLAINER,
        }

    @app.post("/learners/{learner_id}/questionnaire")
    def questionnaire(learner_id: str, body: QuestionnaireBody) -> dict:
        try:
            with locks(learner_id):
                orch.submit_questionnaire(learner_id, body.answers, body.free_text)
        except ElosteerError as exc:
            _fail(exc, learner_id)
        return {"stored": True, "state": str(orch.state(learner_id))}

    @app.get("/study/report")
    def report(format: str = "json"):
        try:
            built = build_report(orch.analytics_dataset())
        except ElosteerError as exc:
            _fail(exc, None)
        if format == "text":
            return PlainTextResponse(render_report_text(built))
        return {
            "group_sizes": {g.value: n for g, n in built.group_sizes.items()},
            "rows": report_records(built),
        }

    @app.get("/study/dataset")
    def dataset(include_post_study: bool = False) -> dict:
        rows = orch.export_dataset(include_post_study=include_post_study)
        return {"rows": rows}

    @app.post("/admin/catalog")
    def admin_catalog(
        body: CatalogBody, x_admin_token: str | None = Header(default=None)
    ):
        if x_admin_token != config.admin_token:
            return JSONResponse(
                status_code=401,
                content={
                    "code": "unauthorized",
                    "message": "missing or wrong admin token",
                    "state": None,
                },
            )
        try:
            with locks("_admin"):
                count = orch.ingest(ingest_catalog(body.entries))
        except ElosteerError as exc:
            _fail(exc, None)
        return {"ingested": count, "topics": orch.catalog.topics}

    return app
