import concurrent.futures

import pytest
from fastapi.testclient import TestClient

from causalbn import paper_network, posterior
from causalbn.server import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(paper_network()))


def test_get_model(client):
    body = client.get("/api/model").json()
    assert body["name"] == "policing"
    assert [v["name"] for v in body["variables"]] == [
        "Race",
        "Contraband",
        "Stopped",
        "Force",
    ]
    assert ["Race", "Contraband"] in body["edges"]
    assert ["Stopped", "Force"] in body["edges"]


def test_get_scenarios(client):
    body = client.get("/api/scenarios").json()
    by_name = {s["name"]: s["evidence"] for s in body}
    assert by_name["fig4"] == {"Stopped": "True"}
    assert by_name["fig5_white"] == {"Race": "white", "Stopped": "True"}


def test_query_matches_library_exactly(client):
    resp = client.post(
        "/api/query",
        json={"evidence": {"Race": "black", "Stopped": "True"}, "targets": ["Force"]},
    )
    assert resp.status_code == 200
    body = resp.json()
    expected = posterior(paper_network(), "Force", {"Race": "black", "Stopped": "True"})
    assert body["posteriors"]["Force"] == expected.distribution
    assert body["probEvidence"] == expected.prob_evidence
    assert body["posteriors"]["Force"]["True"] == pytest.approx(0.4, abs=1e-9)


def test_query_without_targets_returns_all_unassigned(client):
    body = client.post("/api/query", json={"evidence": {"Stopped": "True"}}).json()
    assert set(body["posteriors"]) == {"Race", "Contraband", "Force"}
    assert body["posteriors"]["Race"]["black"] == pytest.approx(0.6, abs=1e-9)


def test_query_target_also_in_evidence_is_400(client):
    resp = client.post(
        "/api/query",
        json={"evidence": {"Force": "True"}, "targets": ["Force"]},
    )
    assert resp.status_code == 400
    body = resp.json()
    assert body["kind"] == "target_in_evidence"
    assert "error" in body


def test_query_unknown_state_is_400(client):
    resp = client.post("/api/query", json={"evidence": {"Race": "green"}})
    assert resp.status_code == 400
    assert resp.json()["kind"] == "bad_request"


def test_query_impossible_evidence_is_400(client):
    resp = client.post(
        "/api/query",
        json={"evidence": {"Force": "True", "Stopped": "False"}, "targets": ["Race"]},
    )
    assert resp.status_code == 400
    assert resp.json()["kind"] == "impossible_evidence"


def test_dsep_endpoint(client):
    body = client.post(
        "/api/dsep", json={"x": "Race", "y": "Contraband", "given": ["Stopped"]}
    ).json()
    assert body["separated"] is False
    paths = {tuple(p["nodes"]): p["colliders"] for p in body["activePaths"]}
    assert paths[("Race", "Stopped", "Contraband")] == ["Stopped"]


def test_concurrent_queries_share_immutable_network(client):
    def one(race):
        r = client.post(
            "/api/query", json={"evidence": {"Race": race}, "targets": ["Force"]}
        )
        return r.json()["posteriors"]["Force"]["True"]

    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(one, ["white", "black"] * 20))
    assert all(
        abs(v - (0.16 if race == "white" else 0.24)) <= 1e-9
        for v, race in zip(results, ["white", "black"] * 20)
    )
