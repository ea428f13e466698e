

import pytest
from fastapi.testclient import TestClient

import fcakit as f
from fcakit.service import create_app

from conftest import shapes

SEED_51 = {"objects": ["1", "2", "3", "4"],
           "rows": [["a", "d"], ["a", "c"], ["b", "c"], ["b", "c", "d"]]}


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(state_dir=tmp_path))


def start_51(client):
    r = client.post("/sessions", json={"attributes": ["a", "b", "c", "d"], "seed": SEED_51})
    assert r.status_code == 200
    return r.json()


class TestSessions:
    def test_create_and_get_round_trip(self, client):
        created = start_51(client)
        assert created["pending"] == {"premise": ["c", "d"], "conclusion": ["b"]}
        got = client.get(f"/sessions/{created['id']}").json()
        assert got["status"] == "running"
        assert got["pending"] == created["pending"]
        assert got["examples"]["objects"] == ["1", "2", "3", "4"]

    def test_not_found(self, client):
        r = client.get("/sessions/zzz")
        assert r.status_code == 404
        assert r.json()["error"] == "NOT_FOUND"

    def test_accept_to_finish(self, client):
        created = start_51(client)
        state = created
        sid = created["id"]
        seen = []
        status = "running"
        while status == "running":
            r = client.post(f"/sessions/{sid}/answer", json={"kind": "accept"})
            assert r.status_code == 200
            state = r.json()
            if state["pending"]:
                seen.append(state["pending"])
            status = state["status"]
        premises = {tuple(imp["premise"]) for imp in state["accepted"]}
        assert premises == {("c", "d"), ("b",), ("a", "b", "c")}
        r = client.post(f"/sessions/{sid}/answer", json={"kind": "accept"})
        assert r.status_code == 409
        assert r.json()["error"] == "SESSION_FINISHED"

    def test_reject_error_codes(self, client):
        sid = start_51(client)["id"]
        r = client.post(f"/sessions/{sid}/answer",
                        json={"kind": "reject", "object": "x", "intent": ["a"]})
        assert r.status_code == 409
        assert r.json()["error"] == "DOES_NOT_REFUTE"
        r = client.post(f"/sessions/{sid}/answer",
                        json={"kind": "reject", "object": "4", "intent": ["c", "d"]})
        assert r.status_code == 409
        assert r.json()["error"] == "DUPLICATE_OBJECT"
        r = client.post(f"/sessions/{sid}/answer",
                        json={"kind": "reject", "object": "x", "intent": ["c", "d"]})
        assert r.status_code == 200
        assert "x" in r.json()["examples"]["objects"]

    def test_violates_accepted_code(self, client):
        sid = start_51(client)["id"]
        client.post(f"/sessions/{sid}/answer", json={"kind": "accept"})  # cd -> b
        r = client.post(f"/sessions/{sid}/answer",
                        json={"kind": "reject", "object": "x", "intent": ["c", "d"]})
        assert r.status_code == 409
        assert r.json()["error"] == "VIOLATES_ACCEPTED"

    def test_lattice_endpoint(self, client, shapes):
        sid = start_51(client)["id"]
        r = client.get(f"/sessions/{sid}/lattice")
        payload = r.json()
        assert len(payload["concepts"]) == 9
        lat = f.concept_lattice(shapes)
        assert len(payload["covers"]) == len(lat.covers)

    def test_export_contains_context_and_basis(self, client):
        sid = start_51(client)["id"]
        client.post(f"/sessions/{sid}/answer", json={"kind": "accept"})
        text = client.get(f"/sessions/{sid}/export").text
        assert text.startswith("B\n")
        assert "c d -> b" in text

    def test_restart_replays_identical_state(self, tmp_path):
        app = create_app(state_dir=tmp_path)
        c1 = TestClient(app)
        sid = c1.post("/sessions", json={"attributes": ["a", "b", "c", "d"],
                                         "seed": SEED_51}).json()["id"]
        c1.post(f"/sessions/{sid}/answer", json={"kind": "accept"})
        c1.post(f"/sessions/{sid}/answer",
                json={"kind": "reject", "object": "5", "intent": ["b"]})
        before = c1.get(f"/sessions/{sid}").json()

        c2 = TestClient(create_app(state_dir=tmp_path))
        after = c2.get(f"/sessions/{sid}").json()
        assert before == after

    def test_seed_validation(self, client):
        r = client.post("/sessions", json={
            "attributes": ["a"], "seed": {"objects": ["x"], "rows": [["zzz"]]}})
        assert r.status_code == 400

    def test_bad_answer_kind(self, client):
        sid = start_51(client)["id"]
        r = client.post(f"/sessions/{sid}/answer", json={"kind": "maybe"})
        assert r.status_code == 400
