"""FastAPI application wrapping the task runner."""

from __future__ import annotations

from fastapi import FastAPI

from .. import __version__
from .runner import run_task
from .schemas import HealthResponse, RunConfig, RunResult

app = FastAPI(
    title="shocklab",
    version=__version__,
    description=("Weighted relative-entropy stability analysis of discontinuities "
                 "in 1-D systems of conservation laws"),
)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/run", response_model=RunResult)
def run(config: RunConfig) -> RunResult:
    return run_task(config)
