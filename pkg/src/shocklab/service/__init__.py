"""HTTP service surface: pydantic schemas, task runner, FastAPI app."""

from .app import app
from .runner import run_task
from .schemas import RunConfig, RunResult

__all__ = ["app", "run_task", "RunConfig", "RunResult"]
