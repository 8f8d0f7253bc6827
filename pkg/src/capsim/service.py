"""HTTP/JSON facade over scenario management and runs.

Runs are content-addressed: a run id is the digest of (scenario id, norm
overrides, aggregation, seed, horizon, schedule), so re-posting an identical
request returns the same immutable run. Execution happens on a bounded worker
pool; requests beyond queue capacity get 429. All payload values mirror the
CLI's report/metrics serializers bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .decision import Lexicographic, NeedConstrained, Weighted
from .dynamics import RunReport, report_to_json, run as run_simulation, trajectory_csv
from .errors import CapsimError, ParseError, ValidationError
from .evaluation import compare, compute_metrics, metrics_to_json
from .scenario import (
    ScenarioSpec,
    bundled_scenario_names,
    bundled_scenario_path,
    load_scenario,
    parse_scenario,
)

import yaml


class ScenarioUpload(BaseModel):
    text: str
    name: Optional[str] = None


class AggregationBody(BaseModel):
    mode: str = "lexicographic"
    epsilon: float = 1e-9
    w: float = 0.5


class RunRequest(BaseModel):
    scenario_id: str
    seed: int
    horizon: Optional[int] = None
    norm_overrides: dict[str, bool] = {}
    aggregation: Optional[AggregationBody] = None
    schedule: Optional[str] = None


class CompareRequest(BaseModel):
    run_a: str
    run_b: str


@dataclass
class RunRecord:
    run_id: str
    scenario_id: str
    request: dict
    status: str = "queued"  # queued | running | done | error
    report: Optional[RunReport] = None
    metrics_payload: Optional[dict] = None
    report_payload: Optional[dict] = None
    error: Optional[str] = None


@dataclass
class ServiceState:
    scenarios: dict[str, tuple[str, ScenarioSpec]] = field(default_factory=dict)
    runs: dict[str, RunRecord] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)
    pending: int = 0


def _mode_from_body(body: Optional[AggregationBody]):
    if body is None:
        return None
    if body.mode == "weighted":
        return Weighted(w=body.w)
    if body.mode == "need_constrained":
        return NeedConstrained(epsilon=body.epsilon)
    if body.mode == "lexicographic":
        return Lexicographic(epsilon=body.epsilon)
    raise HTTPException(status_code=400, detail=f"unknown aggregation mode {body.mode!r}")


def _scenario_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


def _run_digest(req: RunRequest) -> str:
    canonical = json.dumps(
        {
            "scenario_id": req.scenario_id,
            "seed": req.seed,
            "horizon": req.horizon,
            "norm_overrides": dict(sorted(req.norm_overrides.items())),
            "aggregation": req.aggregation.model_dump() if req.aggregation else None,
            "schedule": req.schedule,
        },
        sort_keys=True,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def _scenario_summary(scenario_id: str, text: str, spec: ScenarioSpec) -> dict:
    return {
        "scenario_id": scenario_id,
        "name": spec.name,
        "format_version": spec.format_version,
        "horizon": spec.simulation.horizon,
        "n_agents": spec.population.n,
        "aggregation": spec.simulation.aggregation.to_dict(),
        "resources": [
            {
                "name": r.name,
                "capacity": r.capacity,
                "unit_cost": r.unit_cost,
                "payer": r.payer.value,
            }
            for r in spec.resources
        ],
        "actions": [
            {
                "name": a.name,
                "enables": sorted(c.value for c in a.enables),
                "base_short_reward": a.base_short_reward,
                "base_long_reward": a.base_long_reward,
            }
            for a in spec.actions
        ],
        "norms": [
            {
                "id": n.id,
                "kind": n.kind.value,
                "applies_to": n.applies_to,
                "effect": n.effect.kind.value,
                "promotes": sorted(d.value for d in n.promotes),
                "demotes": sorted(d.value for d in n.demotes),
                "enabled": True,
            }
            for n in spec.norms
        ],
        "text": text,
    }


def create_app(
    workers: int = 2,
    queue_capacity: int = 16,
    persist_dir: Optional[str] = None,
    preload_bundled: bool = True,
) -> FastAPI:
    """Build the service app; state is per-instance, so tests can run isolated apps."""
    app = FastAPI(title="capsim service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    state = ServiceState()
    executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="capsim-run")
    app.state.capsim = state

    if preload_bundled:
        for name in bundled_scenario_names():
            path = bundled_scenario_path(name)
            text = path.read_text(encoding="utf-8")
            spec = load_scenario(path)
            state.scenarios[_scenario_digest(text)] = (text, spec)

    def _get_scenario(scenario_id: str) -> tuple[str, ScenarioSpec]:
        entry = state.scenarios.get(scenario_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"unknown scenario {scenario_id!r}")
        return entry

    def _get_run(run_id: str) -> RunRecord:
        record = state.runs.get(run_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown run {run_id!r}")
        return record

    def _execute(record: RunRecord, spec: ScenarioSpec, req: RunRequest) -> None:
        try:
            record.status = "running"
            report = run_simulation(
                spec,
                seed=req.seed,
                horizon=req.horizon,
                aggregation=_mode_from_body(req.aggregation),
                norm_overrides=req.norm_overrides,
                schedule=req.schedule,
            )
            metrics = compute_metrics(report, spec)
            record.report = report
            record.report_payload = report.to_dict()
            record.metrics_payload = metrics.to_dict()
            if persist_dir:
                target = Path(persist_dir) / record.run_id
                target.mkdir(parents=True, exist_ok=True)
                (target / "report.json").write_text(report_to_json(report), encoding="utf-8")
                (target / "trajectory.csv").write_text(trajectory_csv(report), encoding="utf-8")
                (target / "metrics.json").write_text(metrics_to_json(metrics), encoding="utf-8")
            record.status = "done"
        except CapsimError as exc:
            record.status = "error"
            record.error = str(exc)
        except Exception as exc:  # engine bug: keep the service alive, surface the cause
            record.status = "error"
            record.error = f"{type(exc).__name__}: {exc}"
        finally:
            with state.lock:
                state.pending -= 1

    @app.get("/scenarios")
    def list_scenarios() -> list[dict]:
        with state.lock:
            return [
                {"scenario_id": sid, "name": spec.name}
                for sid, (_, spec) in sorted(state.scenarios.items(), key=lambda kv: kv[1][1].name)
            ]

    @app.post("/scenarios")
    def upload_scenario(body: ScenarioUpload) -> dict:
        try:
            doc = yaml.safe_load(body.text)
            if doc is None:
                raise ParseError("empty scenario document")
            spec = parse_scenario(doc, body.name or "uploaded")
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail={"violations": exc.violations})
        except ParseError as exc:
            raise HTTPException(status_code=400, detail={"violations": [str(exc)]})
        except yaml.YAMLError as exc:
            raise HTTPException(status_code=400, detail={"violations": [f"invalid YAML: {exc}"]})
        scenario_id = _scenario_digest(body.text)
        with state.lock:
            state.scenarios[scenario_id] = (body.text, spec)
        return {"scenario_id": scenario_id, "name": spec.name, "violations": []}

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str) -> dict:
        text, spec = _get_scenario(scenario_id)
        return _scenario_summary(scenario_id, text, spec)

    @app.post("/runs")
    def post_run(req: RunRequest, response: Response) -> dict:
        _, spec = _get_scenario(req.scenario_id)
        unknown = sorted(set(req.norm_overrides) - {n.id for n in spec.norms})
        if unknown:
            raise HTTPException(status_code=400, detail=f"unknown norm ids: {unknown}")
        if req.schedule is not None and req.schedule not in ("ascending", "shuffled"):
            raise HTTPException(status_code=400, detail=f"unknown schedule {req.schedule!r}")
        _mode_from_body(req.aggregation)  # validates the mode name
        run_id = _run_digest(req)
        with state.lock:
            existing = state.runs.get(run_id)
            if existing is not None:
                return {"run_id": run_id, "status": existing.status}
            if state.pending >= queue_capacity:
                raise HTTPException(status_code=429, detail="run queue is full")
            record = RunRecord(run_id=run_id, scenario_id=req.scenario_id, request=req.model_dump())
            state.runs[run_id] = record
            state.pending += 1
        executor.submit(_execute, record, spec, req)
        response.status_code = 202
        return {"run_id": run_id, "status": record.status}

    @app.get("/runs/{run_id}")
    def get_run(run_id: str) -> dict:
        record = _get_run(run_id)
        payload: dict[str, Any] = {
            "run_id": record.run_id,
            "scenario_id": record.scenario_id,
            "status": record.status,
            "request": record.request,
        }
        if record.status == "error":
            payload["error"] = record.error
        if record.status == "done" and record.report_payload is not None:
            rp = record.report_payload
            payload["summary"] = {
                "n_agents": rp["n_agents"],
                "horizon": rp["horizon"],
                "n_events": len(rp["events"]),
                "expenses": rp["expenses"],
                "state_series": rp["state_series"],
                "capability_series": rp["capability_series"],
            }
        return payload

    @app.get("/runs/{run_id}/metrics")
    def get_metrics(run_id: str) -> dict:
        record = _get_run(run_id)
        if record.status in ("queued", "running"):
            raise HTTPException(status_code=409, detail=f"run {run_id} still executing")
        if record.status == "error":
            raise HTTPException(status_code=500, detail=record.error)
        return record.metrics_payload

    @app.get("/runs/{run_id}/report")
    def get_report(run_id: str) -> dict:
        record = _get_run(run_id)
        if record.status in ("queued", "running"):
            raise HTTPException(status_code=409, detail=f"run {run_id} still executing")
        if record.status == "error":
            raise HTTPException(status_code=500, detail=record.error)
        return record.report_payload

    @app.post("/compare")
    def post_compare(req: CompareRequest) -> dict:
        record_a = _get_run(req.run_a)
        record_b = _get_run(req.run_b)
        for record in (record_a, record_b):
            if record.status in ("queued", "running"):
                raise HTTPException(status_code=409, detail=f"run {record.run_id} still executing")
            if record.status == "error":
                raise HTTPException(status_code=500, detail=record.error)
        try:
            delta = compare(record_a.metrics_payload, record_b.metrics_payload)
        except CapsimError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return delta.to_dict()

    return app
