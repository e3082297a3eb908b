"""Pydantic request/response models for the run service.

The run configuration is the single reproducibility contract: it is schema
validated (unknown keys rejected), resolved with per-task defaults, and its
canonical JSON is hashed into every output file.  Identical configurations
with the same tool version produce byte-identical outputs.
"""

from __future__ import annotations

import hashlib
import json
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

Task = Literal["identities", "trace", "classify", "check-res", "no-contraction",
               "weight-range", "simulate"]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModelSpec(StrictModel):
    name: Literal["burgers", "isentropic-euler", "euler", "mhd"]
    gamma: float | None = None
    kappa: float | None = None
    beta: float | None = None
    rho_floor: float | None = None
    e_floor: float | None = None
    v_floor: float | None = None
    b_floor: float | None = None

    def build_kwargs(self) -> dict:
        out = {}
        for key in ("gamma", "kappa", "beta", "rho_floor", "e_floor", "v_floor",
                    "b_floor"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


class ExplicitPair(StrictModel):
    u_l: list[float]
    u_r: list[float]
    sigma: float | None = None
    family: int | None = None


class CurvePoint(StrictModel):
    base: list[float]
    family: int = Field(ge=1)
    s0: float = Field(gt=0.0)
    liu_sign: Literal[-1, 1] | None = None
    span_factor: float = Field(default=1.5, gt=1.0)
    step_fraction: float = Field(default=0.01, gt=0.0)


class DiscontinuitySpec(StrictModel):
    explicit: ExplicitPair | None = None
    from_curve: CurvePoint | None = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.explicit is None) == (self.from_curve is None):
            raise ValueError("specify exactly one of 'explicit' or 'from_curve'")
        return self


class LogGrid(StrictModel):
    lo: float = Field(gt=0.0)
    hi: float = Field(gt=0.0)
    n: int = Field(ge=2, le=200)


class WeightsSpec(StrictModel):
    a: float | None = Field(default=None, gt=0.0)
    values: list[float] | None = None
    log_grid: LogGrid | None = None

    @model_validator(mode="after")
    def _exactly_one(self):
        given = [x is not None for x in (self.a, self.values, self.log_grid)]
        if sum(given) != 1:
            raise ValueError("specify exactly one of 'a', 'values', 'log_grid'")
        if self.values is not None and any(v <= 0.0 for v in self.values):
            raise ValueError("all weights must be positive")
        return self

    def resolve(self) -> list[float]:
        if self.a is not None:
            return [self.a]
        if self.values is not None:
            return [float(v) for v in self.values]
        import numpy as np
        return [float(x) for x in np.geomspace(self.log_grid.lo, self.log_grid.hi,
                                               self.log_grid.n)]


class SurfaceOptions(StrictModel):
    n_samples: int = Field(default=64, ge=2, le=4096)
    box_margin: float = Field(default=3.0, gt=0.0)


class H2Options(StrictModel):
    families: list[int] | None = None
    curve_span: float | None = Field(default=None, gt=0.0)
    samples_per_curve: int = Field(default=40, ge=4, le=2000)
    tube_radius: float | None = Field(default=None, gt=0.0)
    tube_offsets: int = Field(default=3, ge=1, le=21)
    max_seed_samples: int = Field(default=24, ge=1, le=1024)
    mode: Literal["res", "sres"] = "res"


class IdentitiesOptions(StrictModel):
    n_triples: int = Field(default=1000, ge=1)
    n_compatibility: int = Field(default=100, ge=1)
    n_nonnegativity: int = Field(default=10000, ge=1)


class TraceOptions(StrictModel):
    kind: Literal["hugoniot", "rarefaction"] = "hugoniot"
    family: int = Field(default=1, ge=1)
    span: float = Field(default=1.0, gt=0.0)
    step: float = Field(default=0.02, gt=0.0)
    direction: Literal["forward", "backward"] = "backward"
    liu_sign: Literal[-1, 1] | None = None
    base: list[float] | None = None


class NoContractionOptions(StrictModel):
    theorem: Literal["auto", "gnl-intersection", "degenerate-neighbor",
                     "mhd-intermediate", "euler-contact"] = "auto"
    family: int | None = Field(default=None, ge=1)
    direction: Literal["forward", "backward"] | None = None
    max_span: float | None = Field(default=None, gt=0.0)


class WeightRangeOptions(StrictModel):
    side: Literal["below", "above"] = "below"
    bracket: tuple[float, float] = (1e-3, 1.0)
    budget: int = Field(default=40, ge=1, le=200)
    grid_points: int = Field(default=13, ge=3, le=99)
    surface_samples: int = Field(default=48, ge=2, le=4096)


class PerturbationSpec(StrictModel):
    kind: Literal["none", "bump"] = "none"
    amplitude: float = 0.0
    component: int = Field(default=0, ge=0)
    x0: float = -3.0
    x1: float = -1.0


class SimulateOptions(StrictModel):
    n_cells: int = Field(default=400, ge=8, le=100000)
    t_final: float = Field(default=1.0, gt=0.0)
    x_min: float = -10.0
    x_max: float = 10.0
    cfl: float = Field(default=0.45, gt=0.0, le=0.45)
    epsilon: float | None = Field(default=None, gt=0.0)
    c_scheme: float = Field(default=1.0, gt=0.0)
    perturbation: PerturbationSpec = PerturbationSpec()


class RunConfig(StrictModel):
    task: Task
    model: ModelSpec
    discontinuity: DiscontinuitySpec | None = None
    weights: WeightsSpec | None = None
    seed: int = 0
    threads: int = Field(default=1, ge=1, le=64)
    surface: SurfaceOptions = SurfaceOptions()
    h2: H2Options = H2Options()
    identities: IdentitiesOptions = IdentitiesOptions()
    trace: TraceOptions = TraceOptions()
    no_contraction: NoContractionOptions = NoContractionOptions()
    weight_range: WeightRangeOptions = WeightRangeOptions()
    simulate: SimulateOptions = SimulateOptions()

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True,
                          separators=(",", ":"))

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


class OutputFile(StrictModel):
    name: str
    kind: Literal["json", "csv"]
    text: str


class RunResult(StrictModel):
    status: Literal["pass", "violation", "not-applicable", "error"]
    message: str = ""
    config_sha256: str = ""
    seed: int = 0
    outputs: list[OutputFile] = []
    summary: dict = {}

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "violation": 2, "not-applicable": 3, "error": 1}[self.status]


class HealthResponse(StrictModel):
    status: str
    version: str
