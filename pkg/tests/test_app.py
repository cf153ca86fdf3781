import pytest

from app import app
from freefields import parse_stack


@pytest.fixture
def client():
    app.config["TESTING"] = True
    with app.test_client() as client:
        yield client


def test_health(client) -> None:
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json() == {"status": "healthy"}


def test_campaign_listing(client) -> None:
    data = client.get("/api/campaigns").get_json()
    names = [entry["name"] for entry in data["campaigns"]]
    assert "appendix-sl4" in names
    assert data["variants"] == ["standard", "bar"]


def test_ope(client) -> None:
    response = client.post("/api/ope", json={"a": "c", "b": "d", "stack": "pi"})
    assert response.status_code == 200
    assert response.get_json() == {"success": True, "poles": {"2": "2"}}


def test_ope_missing_fields(client) -> None:
    response = client.post("/api/ope", json={"a": "c"})
    assert response.status_code == 400
    assert "b, stack" in response.get_json()["error"]


def test_ope_bad_expression(client) -> None:
    response = client.post("/api/ope", json={"a": "no(c", "b": "d", "stack": "pi"})
    assert response.status_code == 400
    assert response.get_json()["success"] is False


def test_verify(client) -> None:
    response = client.post("/api/verify/central-charges", json={"timing": True})
    assert response.status_code == 200
    body = response.get_json()
    assert body["success"] is True
    assert body["report"]["config"]["timing"] is True


def test_verify_unknown_campaign(client) -> None:
    assert client.post("/api/verify/everything", json={}).status_code == 404


def test_verify_bad_config(client) -> None:
    response = client.post("/api/verify/chain", json={"n": "three"})
    assert response.status_code == 400


def test_emit(client) -> None:
    response = client.get("/api/emit/grading?n=5&m=3")
    assert response.status_code == 200
    assert response.get_json()["object"]["zero_roots"] == [[1, 1], [1, 2], [2, 2]]
    assert client.get("/api/emit/lattice").status_code == 404
    assert client.get("/api/emit/grading?n=x").status_code == 400
    assert client.get("/api/emit/grading?n=3&m=7").status_code == 400


def test_ope_rejects_large_stacks(client) -> None:
    response = client.post("/api/ope", json={"a": "a1", "b": "a1", "stack": "heis:n=400"})
    assert response.status_code == 400
    assert "exceeds the limit" in response.get_json()["error"]
    assert client.get("/api/emit/grading?n=40&m=3").status_code == 400


def test_engine_memos_cleared_after_request(client) -> None:
    response = client.post("/api/ope", json={"a": "no(a1, a2)", "b": "no(a1, a1)", "stack": "heis:n=2"})
    assert response.status_code == 200
    engine = parse_stack("heis:n=2").presentation.engine
    assert not engine._bracket
    assert not engine._insert
