import time

import pytest
from fastapi.testclient import TestClient

from rabisim.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def wait_done(client, job_id, timeout=60.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        info = client.get(f"/sweeps/{job_id}").json()
        if info["status"] in ("done", "failed"):
            return info
        time.sleep(0.05)
    raise TimeoutError(f"job {job_id} still running")


def test_healthz(client):
    body = client.get("/healthz").json()
    assert body["status"] == "ok"
    assert "version" in body


def test_spectral_sweep_roundtrip(client):
    req = {
        "mode": "anharmonicity_vs_g",
        "g_min": 0.1,
        "g_max": 0.3,
        "g_steps": 3,
    }
    r = client.post("/sweeps", json=req)
    assert r.status_code == 202
    job_id = r.json()["job_id"]
    info = wait_done(client, job_id)
    assert info["status"] == "done"
    assert info["rows_done"] == 3

    csv_text = client.get(f"/sweeps/{job_id}/csv").text
    lines = csv_text.strip().split("\n")
    assert lines[0] == "g,eta"
    assert len(lines) == 4

    doc = client.get(f"/sweeps/{job_id}/json").json()
    assert doc["meta"]["mode"] == "anharmonicity_vs_g"
    assert len(doc["rows"]) == 3

    listed = client.get("/sweeps").json()
    assert any(j["job_id"] == job_id for j in listed)


def test_dynamic_sweep_roundtrip(client):
    req = {
        "mode": "cut_second_transition",
        "g_min": 0.4,
        "g_max": 0.4,
        "g_steps": 1,
        "gamma": 0.05,
        "kappa": 0.05,
        "controls": {"n_fock": 22, "n_levels": 8, "refine": False,
                     "samples_per_period": 32, "n_avg_periods": 5},
    }
    job_id = client.post("/sweeps", json=req).json()["job_id"]
    info = wait_done(client, job_id)
    assert info["status"] == "done"
    header, row = client.get(f"/sweeps/{job_id}/csv").text.strip().split("\n")
    assert header.startswith("g,omega_d,i_out,g2,")
    fields = row.split(",")
    assert float(fields[2]) > 0
    assert fields[4] == "true"


def test_results_not_ready_conflict(client):
    req = {
        "mode": "cut_second_transition",
        "g_min": 0.3,
        "g_max": 0.5,
        "g_steps": 2,
        "gamma": 0.05,
        "kappa": 0.05,
        "controls": {"n_fock": 22, "n_levels": 8, "refine": False,
                     "samples_per_period": 32, "n_avg_periods": 5},
    }
    job_id = client.post("/sweeps", json=req).json()["job_id"]
    r = client.get(f"/sweeps/{job_id}/csv")
    # integration takes ~1 s; an immediate fetch conflicts unless the
    # machine somehow finished already
    assert r.status_code in (409, 200)
    if r.status_code == 409:
        assert "not ready" in r.json()["detail"]
    wait_done(client, job_id)
    assert client.get(f"/sweeps/{job_id}/csv").status_code == 200


def test_unknown_job_404(client):
    assert client.get("/sweeps/job-999999").status_code == 404


def test_request_validation_422(client):
    r = client.post("/sweeps", json={"mode": "grid", "drive_ratio": -1.0})
    assert r.status_code == 422
    r = client.post("/sweeps", json={"mode": "nonsense"})
    assert r.status_code == 422


def test_gc_endpoint(client):
    body = client.get("/gc", params={"tol": 1e-3}).json()
    assert abs(body["g_c"] - 0.433) < 2e-3
    r = client.get("/gc", params={"g_lo": 0.01, "g_hi": 0.1})
    assert r.status_code == 404
    r = client.get("/gc", params={"g_lo": 0.5, "g_hi": 0.2})
    assert r.status_code == 422
