"""HTTP endpoints: payload shapes and the error-code contract."""

import numpy as np
import pytest
from fastapi.testclient import TestClient

from hadamard_frac.service.app import create_app
from hadamard_frac.service.schemas import TableResponse


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


APPROX_REQ = {
    "kind": "integral", "alpha": 0.5, "n": 2, "N": 3,
    "fn": "ln", "b": 2.0, "points": 6,
}


class TestEndpoints:
    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}

    def test_approx(self, client):
        resp = client.post("/approx", json=APPROX_REQ)
        assert resp.status_code == 200
        body = resp.json()
        assert body["columns"] == ["t", "approx", "bound"]
        assert len(body["rows"]) == 6
        assert body["metadata"]["kind"] == "integral"

    def test_compare(self, client):
        resp = client.post("/compare", json=APPROX_REQ)
        assert resp.status_code == 200
        body = resp.json()
        assert body["columns"] == ["t", "exact", "approx", "abs_err", "bound"]
        assert body["violations"] == 0
        assert body["dist"] < 1e-12
        assert body["metadata"]["reference"] == "closed"

    def test_compare_quad_reference(self, client):
        resp = client.post("/compare", json=APPROX_REQ | {"reference": "quad"})
        assert resp.status_code == 200
        assert resp.json()["metadata"]["reference"] == "quad"

    def test_sweep(self, client):
        resp = client.post("/sweep", json={
            "kind": "integral", "alpha": 0.5, "b": 2.0, "points": 20,
            "n_list": [1, 2], "N_list": [3, 5], "fn": "pow4",
        })
        assert resp.status_code == 200
        body = resp.json()
        assert body["columns"] == ["n", "N", "dist"]
        assert [row[:2] for row in body["rows"]] == [
            [1.0, 3.0], [1.0, 5.0], [2.0, 3.0], [2.0, 5.0],
        ]

    def test_fde(self, client):
        resp = client.post("/fde", json={"steps": 200})
        assert resp.status_code == 200
        body = resp.json()
        assert body["columns"] == ["t", "x_numeric", "x_exact", "abs_err"]
        assert len(body["rows"]) == 201
        assert body["dist"] < 2e-3

    def test_fde_dump_states(self, client):
        resp = client.post("/fde", json={"steps": 50, "N": 4,
                                         "dump_states": True})
        assert resp.json()["columns"][-3:] == ["v2", "v3", "v4"]

    def test_table_response_round_trip(self, client):
        resp = client.post("/approx", json=APPROX_REQ)
        table = TableResponse.model_validate(resp.json()).to_table()
        assert table.n_rows == 6
        assert np.all(np.diff(table.column("t")) > 0)


class TestErrorContract:
    def test_validation_code(self, client):
        resp = client.post("/approx", json=APPROX_REQ | {"alpha": 1.0})
        assert resp.status_code == 400
        detail = resp.json()["detail"]
        assert detail["code"] == "validation"
        assert "non-integer" in detail["message"]

    def test_orders_validation(self, client):
        resp = client.post("/approx", json=APPROX_REQ | {"N": 2})
        assert resp.status_code == 400
        assert resp.json()["detail"]["code"] == "validation"

    def test_domain_code(self, client):
        resp = client.post("/approx", json=APPROX_REQ | {"a": -2.0})
        assert resp.status_code == 400
        assert resp.json()["detail"]["code"] == "domain"

    def test_non_finite_code(self, client):
        resp = client.post("/fde", json={"c": -200.0})
        assert resp.status_code == 400
        assert resp.json()["detail"]["code"] == "non_finite"

    def test_schema_violation_is_422(self, client):
        resp = client.post("/approx", json=APPROX_REQ | {"points": "many"})
        assert resp.status_code == 422
        resp = client.post("/approx", json={"kind": "integral"})
        assert resp.status_code == 422
        resp = client.post("/approx", json=APPROX_REQ | {"kind": "caputo"})
        assert resp.status_code == 422

    def test_closed_reference_unavailable(self, client):
        resp = client.post("/compare", json=APPROX_REQ | {
            "side": "right", "reference": "closed",
        })
        assert resp.status_code == 400
        assert resp.json()["detail"]["code"] == "validation"

    def test_function_source_exclusivity(self, client):
        resp = client.post("/approx", json=APPROX_REQ | {"fn": None})
        assert resp.status_code == 400
        assert "exactly one" in resp.json()["detail"]["message"]
