"""FastAPI service wrapping the core package.

Each endpoint mirrors one CLI subcommand; the CLI is a thin client of
the handler functions below (in process by default, over HTTP with
--server).  Handlers are plain functions so both frontends share one
code path.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .._version import ARTIFACT_VERSION
from ..centralized import power_method
from ..drpa_multi import run_drpa_multi
from ..drpa_single import run_drpa_single
from ..errors import PageRankLabError
from ..graph import DanglingPolicy, build_link_matrix, generate_random_graph, parse_edge_list, serialize_edge_list
from ..montecarlo import monte_carlo_mean
from ..rate import estimate_rate
from ..saawet import SaawetConfig, LinearRootProblem, geometric_bounds, harmonic_gains, run_saawet
from ..trajectory import TrajectorySample, trajectory_to_payload
from ..verify import verify_suite
from . import models

DEMO_TARGET = 3.0
DEMO_INITIAL = 100.0
DEMO_NOISE_SCALE = 1.0
DEMO_BOUND0 = 10.0


def generate_graph(req: models.GenerateGraphRequest) -> models.GenerateGraphResponse:
    g = generate_random_graph(req.n, req.edge_prob, req.seed)
    return models.GenerateGraphResponse(
        n=g.n, edge_count=g.edge_count, edge_list=serialize_edge_list(g)
    )


def rank(req: models.RankRequest) -> models.RankResponse:
    g = parse_edge_list(req.graph)
    A = build_link_matrix(g, DanglingPolicy(req.dangling))
    x, iterations = power_method(A, req.alpha, tol=req.tol)
    return models.RankResponse(n=g.n, iterations=iterations, x=[float(v) for v in x])


def run_single(req: models.SingleRunRequest) -> models.TrajectoryModel:
    g = parse_edge_list(req.graph)
    traj = run_drpa_single(
        g, req.alpha, req.steps, req.seed,
        schedule=req.schedule, graph_source=req.graph_source,
    )
    return models.TrajectoryModel.model_validate(trajectory_to_payload(traj))


def run_multi(req: models.MultiRunRequest) -> models.TrajectoryModel:
    g = parse_edge_list(req.graph)
    traj = run_drpa_multi(
        g, req.alpha, req.beta, req.steps, req.seed,
        schedule=req.schedule, graph_source=req.graph_source,
    )
    return models.TrajectoryModel.model_validate(trajectory_to_payload(traj))


def verify(req: models.VerifyRequest) -> models.VerifyResponse:
    g = parse_edge_list(req.graph)
    report = verify_suite(g, req.alpha, req.beta)
    checks = [
        models.CheckModel(
            name=c.name,
            residual=None if np.isnan(c.residual) else c.residual,
            tolerance=None if np.isnan(c.tolerance) else c.tolerance,
            passed=c.passed,
            skipped=c.skipped,
            note=c.note,
        )
        for c in report.checks
    ]
    return models.VerifyResponse(passed=report.passed, checks=checks)


def mc_mean(req: models.McMeanRequest) -> models.McMeanResponse:
    g = parse_edge_list(req.graph)
    rep = monte_carlo_mean(
        g, req.alpha, req.k, req.runs, req.seed,
        protocol=req.protocol, beta=req.beta,
    )
    return models.McMeanResponse(
        k=rep.k,
        runs=rep.runs,
        protocol=rep.protocol,
        beta=rep.beta,
        max_z=rep.max_z,
        mean=[float(v) for v in rep.mean],
        predicted=[float(v) for v in rep.predicted],
        std_err=[float(v) for v in rep.std_err],
    )


def fit_rate(req: models.RateRequest) -> models.RateResponse:
    samples = [
        TrajectorySample(k=s.k, err_l1=s.err_l1, err_l2=s.err_l2, sigma=s.sigma)
        for s in req.samples
    ]
    fit = estimate_rate(samples, req.k_min, req.k_max)
    return models.RateResponse(
        slope=fit.slope,
        intercept=fit.intercept,
        r_squared=fit.r_squared,
        k_min=fit.k_min,
        k_max=fit.k_max,
        n_points=fit.n_points,
        zeros_excluded=fit.zeros_excluded,
    )


def saawet_demo(req: models.SaawetDemoRequest) -> models.SaawetDemoResponse:
    """Toy 1-d root finding started outside the first truncation bound."""
    problem = LinearRootProblem.from_seed(
        np.array([DEMO_TARGET]), DEMO_NOISE_SCALE, req.seed
    )
    config = SaawetConfig(
        gains=harmonic_gains(1.0),
        bounds=geometric_bounds(m0=DEMO_BOUND0),
        reset_point=np.zeros(1),
        initial=np.array([DEMO_INITIAL]),
    )
    trace = run_saawet(problem, config, req.steps)
    return models.SaawetDemoResponse(
        target=DEMO_TARGET,
        initial=DEMO_INITIAL,
        bound0=DEMO_BOUND0,
        final_z=float(trace.final.z[0]),
        truncations=trace.truncations,
        samples=[
            models.SaawetSampleModel(k=k, z=float(z[0]), sigma=sigma)
            for k, z, sigma in trace.points
        ],
    )


app = FastAPI(title="pagerank-lab", version=ARTIFACT_VERSION)


@app.exception_handler(PageRankLabError)
async def _lab_error(request: Request, exc: PageRankLabError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": "ValueError", "detail": str(exc)},
    )


@app.get("/health", response_model=models.HealthResponse)
def health() -> models.HealthResponse:
    return models.HealthResponse(status="ok", version=ARTIFACT_VERSION)


@app.post("/graph/generate", response_model=models.GenerateGraphResponse)
def post_generate(req: models.GenerateGraphRequest) -> models.GenerateGraphResponse:
    return generate_graph(req)


@app.post("/rank", response_model=models.RankResponse)
def post_rank(req: models.RankRequest) -> models.RankResponse:
    return rank(req)


@app.post("/run/single", response_model=models.TrajectoryModel)
def post_run_single(req: models.SingleRunRequest) -> models.TrajectoryModel:
    return run_single(req)


@app.post("/run/multi", response_model=models.TrajectoryModel)
def post_run_multi(req: models.MultiRunRequest) -> models.TrajectoryModel:
    return run_multi(req)


@app.post("/verify", response_model=models.VerifyResponse)
def post_verify(req: models.VerifyRequest) -> models.VerifyResponse:
    return verify(req)


@app.post("/mc-mean", response_model=models.McMeanResponse)
def post_mc_mean(req: models.McMeanRequest) -> models.McMeanResponse:
    return mc_mean(req)


@app.post("/rate", response_model=models.RateResponse)
def post_rate(req: models.RateRequest) -> models.RateResponse:
    return fit_rate(req)


@app.post("/saawet-demo", response_model=models.SaawetDemoResponse)
def post_saawet_demo(req: models.SaawetDemoRequest) -> models.SaawetDemoResponse:
    return saawet_demo(req)
