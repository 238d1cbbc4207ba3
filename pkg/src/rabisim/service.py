"""HTTP facade over the sweep engine.

Sweeps run as background jobs in an in-memory registry (one worker thread
per job); quick spectral queries are synchronous. The CSV endpoint returns
exactly what sweep.to_csv produces, so files fetched through the service
are byte-identical to ones written by the library directly.
"""
from __future__ import annotations

import itertools
import threading
from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from . import __version__
from .params import (
    ConfigurationError,
    CrossingNotFoundError,
    NumericControls,
    RabiParams,
)
from .spectrum import detect_parity_crossing
from .sweep import SweepResult, SweepSpec, run_sweep, to_csv, to_json


class ControlsModel(BaseModel):
    n_fock: int | None = Field(default=None, ge=4)
    n_levels: int = Field(default=12, ge=2)
    t_relax: float | None = Field(default=None, gt=0)
    n_avg_periods: int = Field(default=10, ge=5)
    samples_per_period: int = Field(default=64, ge=32)
    integrator_tol: float = Field(default=1e-8, gt=0)
    refine: bool = True

    def to_controls(self) -> NumericControls:
        return NumericControls(**self.model_dump())


class SweepRequest(BaseModel):
    mode: Literal[
        "grid",
        "cut_second_transition",
        "cut_first_transition",
        "freq_scan",
        "rates_vs_g",
        "anharmonicity_vs_g",
        "spectrum_vs_g",
    ]
    g_min: float = Field(default=0.1, ge=0)
    g_max: float = Field(default=3.0, ge=0)
    g_steps: int = Field(default=60, ge=1)
    wd_min: float = Field(default=0.2, gt=0)
    wd_max: float = Field(default=2.2, gt=0)
    wd_steps: int = Field(default=60, ge=1)
    gamma: float = Field(default=1e-2, gt=0)
    kappa: float = Field(default=1e-2, ge=0)
    drive_ratio: float = Field(default=0.1, ge=0)
    omega_a: float = 1.0
    controls: ControlsModel = ControlsModel()
    threads: int = Field(default=1, ge=1)

    def to_spec(self) -> SweepSpec:
        gs = tuple(np.linspace(self.g_min, self.g_max, self.g_steps).tolist())
        wds = None
        if self.mode in ("grid", "freq_scan"):
            wds = tuple(np.linspace(self.wd_min, self.wd_max, self.wd_steps).tolist())
        if self.mode == "freq_scan":
            gs = (self.g_min,)  # fixed-g scan
        return SweepSpec(
            mode=self.mode,
            g_values=gs,
            wd_values=wds,
            gamma=self.gamma,
            kappa=self.kappa,
            drive_ratio=self.drive_ratio,
            omega_a=self.omega_a,
            controls=self.controls.to_controls(),
        )


class JobInfo(BaseModel):
    job_id: str
    mode: str
    status: Literal["queued", "running", "done", "failed"]
    rows_done: int = 0
    rows_total: int = 0
    error: str | None = None


class _Job:
    def __init__(self, job_id: str, request: SweepRequest):
        self.job_id = job_id
        self.request = request
        self.status = "queued"
        self.rows_done = 0
        self.rows_total = 0
        self.result: SweepResult | None = None
        self.error: str | None = None

    def info(self) -> JobInfo:
        return JobInfo(
            job_id=self.job_id,
            mode=self.request.mode,
            status=self.status,
            rows_done=self.rows_done,
            rows_total=self.rows_total,
            error=self.error,
        )


def create_app() -> FastAPI:
    app = FastAPI(title="rabisim", version=__version__)
    jobs: dict[str, _Job] = {}
    lock = threading.Lock()
    counter = itertools.count(1)

    def get_job(job_id: str) -> _Job:
        with lock:
            job = jobs.get(job_id)
        if job is None:
            raise HTTPException(404, f"no job {job_id}")
        return job

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.post("/sweeps", status_code=202)
    def submit_sweep(request: SweepRequest) -> JobInfo:
        try:
            spec = request.to_spec()
        except ConfigurationError as exc:
            raise HTTPException(422, str(exc))
        with lock:
            job_id = f"job-{next(counter):06d}"
            job = _Job(job_id, request)
            jobs[job_id] = job

        def on_row(done: int, total: int) -> None:
            job.rows_done, job.rows_total = done, total

        def worker() -> None:
            job.status = "running"
            try:
                job.result = run_sweep(spec, threads=request.threads, on_row=on_row)
                job.status = "done"
            except Exception as exc:  # engine-level failure, not per-point
                job.error = f"{type(exc).__name__}: {exc}"
                job.status = "failed"

        threading.Thread(target=worker, daemon=True).start()
        return job.info()

    @app.get("/sweeps")
    def list_sweeps() -> list[JobInfo]:
        with lock:
            return [job.info() for job in jobs.values()]

    @app.get("/sweeps/{job_id}")
    def sweep_status(job_id: str) -> JobInfo:
        return get_job(job_id).info()

    def _finished(job: _Job) -> SweepResult:
        if job.status == "failed":
            raise HTTPException(409, f"job failed: {job.error}")
        if job.status != "done" or job.result is None:
            raise HTTPException(409, f"job is {job.status}, results not ready")
        return job.result

    @app.get("/sweeps/{job_id}/csv")
    def sweep_csv(job_id: str) -> PlainTextResponse:
        result = _finished(get_job(job_id))
        return PlainTextResponse(to_csv(result), media_type="text/csv")

    @app.get("/sweeps/{job_id}/json")
    def sweep_json(job_id: str) -> PlainTextResponse:
        result = _finished(get_job(job_id))
        return PlainTextResponse(to_json(result), media_type="application/json")

    @app.get("/gc")
    def parity_crossing(
        g_lo: float = 0.3, g_hi: float = 0.6, tol: float = 1e-4, omega_a: float = 1.0
    ):
        try:
            g_c = detect_parity_crossing(
                RabiParams(omega_a=omega_a), g_lo, g_hi, tol_g=tol
            )
        except CrossingNotFoundError as exc:
            raise HTTPException(404, str(exc))
        except ConfigurationError as exc:
            raise HTTPException(422, str(exc))
        return {"g_c": g_c, "g_lo": g_lo, "g_hi": g_hi, "tol": tol}

    return app


app = create_app()
