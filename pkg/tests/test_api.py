"""
Tests for the HTTP service.
"""

import pytest
from fastapi.testclient import TestClient

from main import app


@pytest.fixture
def client():
    """FastAPI test client"""
    return TestClient(app)


@pytest.fixture
def kb_text(fixtures_dir):
    """Text of an example knowledge base by name"""

    def read(name: str) -> str:
        return (fixtures_dir / f"{name}.cl").read_text(encoding="utf-8")

    return read


class TestHealth:
    """Tests for the health endpoint"""

    def test_health(self, client):
        """Test the health check"""
        response = client.get("/health")

        assert response.status_code == 200
        assert response.json() == {"status": "healthy", "service": "condsplit"}


class TestOperators:
    """Tests for listing operators"""

    def test_list(self, client):
        """Test that every operator is listed with a description"""
        response = client.get("/operators")

        names = [item["name"] for item in response.json()["operators"]]
        assert "systemw" in names
        assert "crep:lexmin" in names


class TestInfer:
    """Tests for POST /infer"""

    def test_accept(self, client, kb_text):
        """Test an accepted query"""
        # Execute
        response = client.post(
            "/infer", json={"kb": kb_text("birds"), "operator": "systemw", "query": "(w | p,b)"}
        )

        # Assert
        assert response.status_code == 200
        assert response.json() == {"operator": "systemw", "query": "(w|p,b)", "verdict": "ACCEPT"}

    def test_c_inference_unknown(self, client, kb_text):
        """Test c-inference with a bound below the completeness threshold"""
        response = client.post(
            "/infer",
            json={"kb": kb_text("birds"), "operator": "cinf", "query": "(b | p)", "bound": 2},
        )

        assert response.json()["verdict"] == "UNKNOWN"

    def test_unknown_operator(self, client, kb_text):
        """Test that library errors map to 422"""
        response = client.post(
            "/infer", json={"kb": kb_text("birds"), "operator": "systemq", "query": "(w | b)"}
        )

        assert response.status_code == 422
        assert response.json()["error"] == "UnknownOperator"

    def test_syntax_error(self, client):
        """Test a knowledge base that does not parse"""
        response = client.post(
            "/infer", json={"kb": "signature: a\n(a |\n", "operator": "lex", "query": "(a)"}
        )

        assert response.status_code == 422
        assert response.json()["error"] == "KbSyntaxError"


class TestSplittings:
    """Tests for POST /splittings"""

    def test_genuine_only(self, client, kb_text):
        """Test the genuine splittings of Δ^k"""
        response = client.post("/splittings", json={"kb": kb_text("kiwi"), "only": "genuine"})

        body = response.json()
        assert body["counts"] == {"total": 37, "safe": 5, "gensafe": 14, "genuine": 5}
        assert len(body["splittings"]) == 5
        assert not any(record["safe"] for record in body["splittings"])


class TestCore:
    """Tests for POST /crep/core"""

    def test_birds(self, client, kb_text):
        """Test η^mc and κη of Δ^b"""
        response = client.post("/crep/core", json={"kb": kb_text("birds")})

        body = response.json()
        assert body["impacts"] == [1, 2, 2, 1]
        assert len(body["ranks"]) == 16
        assert min(body["ranks"]) == 0
