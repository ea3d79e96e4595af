from fastapi.testclient import TestClient

from ptsynth import models as bundled
from ptsynth.service.app import app

client = TestClient(app)

BRANCHING = bundled.read("branching.ptm")
BRANCHING_PROP = bundled.read("branching.prop")


def test_health():
    reply = client.get("/health")
    assert reply.status_code == 200
    assert reply.json()["status"] == "ok"


def test_parse_valid_model():
    reply = client.post("/parse", json={"model_text": BRANCHING,
                                        "property_text": BRANCHING_PROP})
    assert reply.status_code == 200
    body = reply.json()
    assert body["valid"] is True
    summary = body["summary"]
    assert summary["locations"] == 3 and summary["edges"] == 4
    assert summary["lu"]["is_lu"] is False
    assert summary["targets"] == ["l3"] and summary["minimize"] == "p1"


def test_parse_invalid_model_reports_diagnostics():
    reply = client.post("/parse", json={"model_text": "clocks x; params ;"})
    body = reply.json()
    assert body["valid"] is False
    assert body["diagnostics"]
    assert body["diagnostics"][0]["line"] >= 1


def test_synthesize_minparam():
    reply = client.post("/synthesize", json={
        "model_text": BRANCHING, "property_text": BRANCHING_PROP,
        "algorithm": "minparam"})
    assert reply.status_code == 200
    body = reply.json()
    assert body["optimum"] == {"value": "2", "strictness": "="}
    assert body["status"] == "complete"
    assert len(body["constraint"]) == 2
    assert body["parameters"] == ["p1", "p2", "p3"]


def test_synthesize_mintime_with_trace():
    reply = client.post("/synthesize", json={
        "model_text": BRANCHING, "targets": ["l3"], "algorithm": "mintime",
        "include_trace": True})
    body = reply.json()
    assert body["optimum"] == {"value": "2", "strictness": "="}
    assert body["trace"] and body["trace"][0].startswith("0 | l1 |")


def test_synthesize_unreachable_is_complete():
    reply = client.post("/synthesize", json={
        "model_text": bundled.read("unreachable.ptm"),
        "targets": ["goal"], "algorithm": "efsynth"})
    body = reply.json()
    assert body["status"] == "complete"
    assert body["constraint"] == [] and body["constraint_text"] == "false"


def test_synthesize_bad_model_is_400():
    reply = client.post("/synthesize", json={
        "model_text": "clocks x; params ; actions ;",
        "targets": ["a"], "algorithm": "efsynth"})
    assert reply.status_code == 400
    assert "detail" in reply.json()


def test_synthesize_missing_minimize_is_400():
    reply = client.post("/synthesize", json={
        "model_text": BRANCHING, "targets": ["l3"], "algorithm": "minparam"})
    assert reply.status_code == 400


def test_lu_fast_endpoint():
    reply = client.post("/synthesize", json={
        "model_text": bundled.read("lu_bounds.ptm"),
        "targets": ["goal"], "algorithm": "lu-fast"})
    body = reply.json()
    assert body["optimum"] == {"value": "3", "strictness": "="}
