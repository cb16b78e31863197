"""Pydantic request/response models for the service API.

The trajectory payload shape is shared with the JSON file format, so a
response body written to disk equals what the CLI produces locally.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class GenerateGraphRequest(BaseModel):
    n: int = Field(gt=2)
    edge_prob: float
    seed: int = Field(ge=0)


class GenerateGraphResponse(BaseModel):
    n: int
    edge_count: int
    edge_list: str


class RankRequest(BaseModel):
    graph: str
    alpha: float = 0.15
    tol: float = 1e-13
    dangling: Literal["uniform", "selfloop", "reject"] = "uniform"


class RankResponse(BaseModel):
    n: int
    iterations: int
    x: list[float]


class RunMetaModel(BaseModel):
    graph_source: str
    alpha: float
    beta: float | None = None
    seed: int
    steps: int
    protocol: str
    schedule: str
    version: str


class TrajectorySampleModel(BaseModel):
    k: int
    err_l1: float
    err_l2: float
    sigma: int


class TrajectoryModel(BaseModel):
    meta: RunMetaModel
    samples: list[TrajectorySampleModel]
    final_x_bar: list[float]


class SingleRunRequest(BaseModel):
    graph: str
    alpha: float = 0.15
    steps: int = Field(ge=1)
    seed: int = Field(ge=0)
    schedule: str = "geometric"
    graph_source: str = "inline"


class MultiRunRequest(BaseModel):
    graph: str
    alpha: float = 0.15
    beta: float = 0.5
    steps: int = Field(ge=1)
    seed: int = Field(ge=0)
    schedule: str = "geometric"
    graph_source: str = "inline"


class VerifyRequest(BaseModel):
    graph: str
    alpha: float = 0.15
    beta: float = 0.5


class CheckModel(BaseModel):
    name: str
    residual: float | None
    tolerance: float | None
    passed: bool
    skipped: bool
    note: str


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]


class McMeanRequest(BaseModel):
    graph: str
    alpha: float = 0.15
    k: int = Field(ge=0)
    runs: int = Field(ge=1)
    seed: int = Field(ge=0)
    protocol: Literal["single", "multi"] = "single"
    beta: float = 0.5


class McMeanResponse(BaseModel):
    k: int
    runs: int
    protocol: str
    beta: float | None
    max_z: float
    mean: list[float]
    predicted: list[float]
    std_err: list[float]


class RateRequest(BaseModel):
    samples: list[TrajectorySampleModel]
    k_min: int = 10_000
    k_max: int = 1_000_000


class RateResponse(BaseModel):
    slope: float
    intercept: float
    r_squared: float
    k_min: int
    k_max: int
    n_points: int
    zeros_excluded: int


class SaawetSampleModel(BaseModel):
    k: int
    z: float
    sigma: int


class SaawetDemoRequest(BaseModel):
    steps: int = Field(ge=1)
    seed: int = Field(ge=0)


class SaawetDemoResponse(BaseModel):
    target: float
    initial: float
    bound0: float
    final_z: float
    truncations: int
    samples: list[SaawetSampleModel]


class HealthResponse(BaseModel):
    status: str
    version: str
