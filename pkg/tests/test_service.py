import json

import pytest
from fastapi.testclient import TestClient

from pagerank_lab.service.app import app

client = TestClient(app)

CYCLE = "# n=3\n0 1\n1 2\n2 0\n"


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok"


def test_generate_then_rank_pipeline():
    r = client.post("/graph/generate", json={"n": 6, "edge_prob": 0.5, "seed": 42})
    assert r.status_code == 200
    edge_list = r.json()["edge_list"]
    assert edge_list.startswith("# n=6\n")

    r2 = client.post("/rank", json={"graph": edge_list})
    assert r2.status_code == 200
    x = r2.json()["x"]
    assert len(x) == 6
    assert abs(sum(x) - 1.0) < 1e-9


def test_generate_is_deterministic():
    payload = {"n": 8, "edge_prob": 0.3, "seed": 5}
    a = client.post("/graph/generate", json=payload)
    b = client.post("/graph/generate", json=payload)
    assert a.content == b.content


def test_single_run_returns_trajectory():
    r = client.post(
        "/run/single",
        json={"graph": CYCLE, "steps": 1000, "seed": 3, "graph_source": "cycle"},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["meta"]["protocol"] == "single"
    assert body["meta"]["graph_source"] == "cycle"
    assert body["samples"][0]["k"] == 1
    assert body["samples"][-1]["k"] == 1000
    assert len(body["final_x_bar"]) == 3


def test_multi_run_deterministic():
    payload = {"graph": CYCLE, "beta": 0.5, "steps": 500, "seed": 9}
    a = client.post("/run/multi", json=payload)
    b = client.post("/run/multi", json=payload)
    assert a.status_code == 200
    assert a.content == b.content
    assert a.json()["meta"]["beta"] == 0.5


def test_verify_endpoint():
    r = client.post("/verify", json={"graph": CYCLE})
    assert r.status_code == 200
    body = r.json()
    assert body["passed"] is True
    assert any(c["name"] == "single-page expected-update closed form" for c in body["checks"])


def test_mc_mean_endpoint():
    r = client.post(
        "/mc-mean",
        json={"graph": CYCLE, "k": 1, "runs": 500, "seed": 2, "protocol": "single"},
    )
    assert r.status_code == 200
    assert r.json()["max_z"] <= 5.0


def test_rate_endpoint():
    samples = [
        {"k": k, "err_l1": k**-0.5, "err_l2": 0.0, "sigma": 0}
        for k in (10, 20, 40, 80, 160)
    ]
    r = client.post("/rate", json={"samples": samples, "k_min": 1, "k_max": 1000})
    assert r.status_code == 200
    assert abs(r.json()["slope"] + 0.5) < 1e-9


def test_saawet_demo_endpoint():
    r = client.post("/saawet-demo", json={"steps": 2000, "seed": 7})
    assert r.status_code == 200
    body = r.json()
    assert body["truncations"] >= 1  # start lies outside the first bound
    assert abs(body["final_z"] - body["target"]) < 1.0


def test_domain_errors_map_to_400():
    r = client.post("/rank", json={"graph": "0 1\n"})  # only two pages
    assert r.status_code == 400
    assert r.json()["error"] == "TooFewPages"


def test_validation_errors_map_to_422():
    r = client.post("/run/single", json={"graph": CYCLE, "steps": 0, "seed": 1})
    assert r.status_code == 422
