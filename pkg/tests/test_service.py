"""Live-socket checks of the session service.

A real server is bound to an ephemeral port for each test class and
exercised through urllib, so routing, status codes, headers, and JSON
bodies are all tested end to end.  The deliberately weak identity
duplicator is injected where a scripted first-player win is needed.
"""

from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request

import pytest

from uggap.service import SessionStore, build_server, curated_presets
from uggap.strategy import IdentityDuplicator


@pytest.fixture
def server_url():
    server = build_server("127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    yield f"http://{host}:{port}"
    server.shutdown()
    server.server_close()


@pytest.fixture
def weak_server_url():
    server = build_server(
        "127.0.0.1", 0, duplicator_factory=lambda preset: IdentityDuplicator(1)
    )
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    yield f"http://{host}:{port}"
    server.shutdown()
    server.server_close()


def call(url, method="GET", body=None, raw=None):
    data = raw
    headers = {}
    if body is not None:
        data = json.dumps(body).encode()
    if data is not None:
        headers["Content-Type"] = "application/json"
    req = urllib.request.Request(url, data=data, headers=headers, method=method)
    try:
        with urllib.request.urlopen(req) as resp:
            payload = resp.read()
            doc = json.loads(payload) if payload else None
            return resp.status, doc, dict(resp.headers)
    except urllib.error.HTTPError as exc:
        payload = exc.read()
        doc = json.loads(payload) if payload else None
        return exc.code, doc, dict(exc.headers)


def start(url, preset="fig2-lifted", k=2):
    status, doc, _ = call(f"{url}/api/sessions", "POST", {"preset": preset, "k": k})
    assert status == 201
    return doc["session_id"], doc["state"]


class TestSessionLifecycle:
    def test_create_returns_fresh_state(self, server_url):
        sid, state = start(server_url)
        assert sid
        assert state["round"] == 0
        assert state["phase"] == "pickup"
        assert state["winner"] is None
        assert state["preset"] == "fig2-lifted"
        assert len(state["universe_a"]) == 6
        assert len(state["universe_b"]) == 6
        assert state["transcript"] == []

    def test_fig3_sizes(self, server_url):
        _, state = start(server_url, "fig3-lifted", 3)
        assert len(state["universe_a"]) == 16
        assert state["k"] == 3

    def test_get_round_trips(self, server_url):
        sid, created = start(server_url)
        status, doc, _ = call(f"{server_url}/api/sessions/{sid}")
        assert status == 200
        assert doc["state"] == created

    def test_delete_then_gone(self, server_url):
        sid, _ = start(server_url)
        status, doc, _ = call(f"{server_url}/api/sessions/{sid}", "DELETE")
        assert status == 204
        assert doc is None
        status, _, _ = call(f"{server_url}/api/sessions/{sid}")
        assert status == 404

    def test_cors_headers_and_preflight(self, server_url):
        sid, _ = start(server_url)
        status, _, headers = call(f"{server_url}/api/sessions/{sid}")
        assert headers.get("Access-Control-Allow-Origin") == "*"
        status, _, headers = call(f"{server_url}/api/sessions", "OPTIONS")
        assert status == 204
        assert "POST" in headers.get("Access-Control-Allow-Methods", "")


class TestMoves:
    def test_pickup_returns_bijection_with_table(self, server_url):
        sid, _ = start(server_url)
        status, doc, _ = call(
            f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": 0}
        )
        assert status == 200
        bijection = doc["bijection"]
        assert bijection["kind"] == "gstar"
        assert set(bijection["gstar"]) == {"v1", "v2", "v3"}
        # universe has 6 <= 64 elements, so an explicit table rides along
        assert len(bijection["table"]) == 6
        assert doc["state"]["phase"] == "place"
        assert doc["state"]["round"] == 1

    def test_place_pins_the_pair(self, server_url):
        sid, _ = start(server_url)
        _, doc, _ = call(f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": 0})
        image = doc["bijection"]["table"]["v1#0"]
        status, doc, _ = call(
            f"{server_url}/api/sessions/{sid}/place", "POST", {"a": "v1#0"}
        )
        assert status == 200
        state = doc["state"]
        assert state["phase"] == "pickup"
        assert state["placements"] == {"0": ["v1#0", image]}
        assert state["winner"] is None
        assert state["transcript"][-1]["place"] == "v1#0"

    def test_tree_duplicator_survives_a_probing_exchange(self, server_url):
        sid, _ = start(server_url, "fig3-lifted", 3)
        moves = [(0, "v1#00"), (1, "v3#01"), (2, "v4#11"), (0, "v2#10")]
        for pair, place in moves:
            _, doc, _ = call(
                f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": pair}
            )
            assert doc["state"]["phase"] == "place"
            status, doc, _ = call(
                f"{server_url}/api/sessions/{sid}/place", "POST", {"a": place}
            )
            assert status == 200
            assert doc["state"]["winner"] is None
        assert doc["state"]["round"] == 4

    def test_scripted_loss_against_weak_duplicator(self, weak_server_url):
        # identity answers let the first player complete a mismatched edge
        sid, _ = start(weak_server_url)
        script = [(0, "v2#0"), (1, "v3#0")]
        for pair, place in script:
            call(f"{weak_server_url}/api/sessions/{sid}/pickup", "POST", {"pair": pair})
            status, doc, _ = call(
                f"{weak_server_url}/api/sessions/{sid}/place", "POST", {"a": place}
            )
            assert status == 200
        state = doc["state"]
        assert state["winner"] == "spoiler"
        assert state["transcript"][-1]["winner"] == "spoiler"

    def test_replaying_a_recorded_sequence_matches(self, server_url):
        def drive():
            sid, _ = start(server_url, "fig3-lifted", 2)
            doc = None
            for pair, place in [(0, "v1#01"), (1, "v2#11"), (0, "v4#00")]:
                call(f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": pair})
                _, doc, _ = call(
                    f"{server_url}/api/sessions/{sid}/place", "POST", {"a": place}
                )
            state = doc["state"]
            state.pop("session_id")
            return state

        assert drive() == drive()


class TestErrorCatalog:
    def test_unknown_session_is_404(self, server_url):
        for method, path, body in (
            ("GET", "/api/sessions/deadbeef", None),
            ("POST", "/api/sessions/deadbeef/pickup", {"pair": 0}),
            ("POST", "/api/sessions/deadbeef/place", {"a": "v1#0"}),
            ("DELETE", "/api/sessions/deadbeef", None),
        ):
            status, doc, _ = call(f"{server_url}{path}", method, body)
            assert status == 404
            assert "deadbeef" in doc["error"]

    def test_unknown_route_is_404(self, server_url):
        status, _, _ = call(f"{server_url}/api/nonsense", "GET")
        assert status == 404

    def test_wrong_phase_is_409(self, server_url):
        sid, _ = start(server_url)
        status, doc, _ = call(
            f"{server_url}/api/sessions/{sid}/place", "POST", {"a": "v1#0"}
        )
        assert status == 409
        assert "phase" in doc["error"]
        call(f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": 0})
        status, _, _ = call(
            f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": 1}
        )
        assert status == 409

    def test_finished_game_is_409(self, weak_server_url):
        sid, _ = start(weak_server_url)
        for pair, place in [(0, "v2#0"), (1, "v3#0")]:
            call(f"{weak_server_url}/api/sessions/{sid}/pickup", "POST", {"pair": pair})
            call(f"{weak_server_url}/api/sessions/{sid}/place", "POST", {"a": place})
        status, doc, _ = call(
            f"{weak_server_url}/api/sessions/{sid}/pickup", "POST", {"pair": 0}
        )
        assert status == 409
        assert "spoiler" in doc["error"]

    def test_illegal_values_are_422(self, server_url):
        status, doc, _ = call(
            f"{server_url}/api/sessions", "POST", {"preset": "fig9-lifted", "k": 2}
        )
        assert status == 422
        assert "fig2-lifted" in doc["error"]
        status, doc, _ = call(
            f"{server_url}/api/sessions", "POST", {"preset": "fig2-lifted", "k": 0}
        )
        assert status == 422
        sid, _ = start(server_url)
        status, doc, _ = call(
            f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": 99}
        )
        assert status == 422
        assert "99" in doc["error"]
        call(f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": 0})
        status, doc, _ = call(
            f"{server_url}/api/sessions/{sid}/place", "POST", {"a": "nowhere#0"}
        )
        assert status == 422
        assert "nowhere" in doc["error"]

    def test_malformed_bodies_are_400(self, server_url):
        status, doc, _ = call(
            f"{server_url}/api/sessions", "POST", raw=b"not json"
        )
        assert status == 400
        status, doc, _ = call(
            f"{server_url}/api/sessions", "POST", {"preset": 5, "k": "two"}
        )
        assert status == 400
        status, doc, _ = call(f"{server_url}/api/sessions", "POST", raw=b"")
        assert status == 400
        sid, _ = start(server_url)
        status, doc, _ = call(
            f"{server_url}/api/sessions/{sid}/pickup", "POST", {"pair": True}
        )
        assert status == 400


class TestStore:
    def test_curated_catalog(self):
        assert curated_presets() == ("fig2-lifted", "fig3-lifted")

    def test_idle_sessions_expire_lazily(self):
        now = [0.0]
        store = SessionStore(ttl=100.0, clock=lambda: now[0])
        session = store.create("fig2-lifted", 2)
        assert store.get(session.id) is session
        now[0] = 99.0
        assert store.get(session.id) is session  # touch refreshes the clock
        now[0] = 300.0
        assert store.get(session.id) is None
        assert len(store) == 0

    def test_touch_extends_lifetime(self):
        now = [0.0]
        store = SessionStore(ttl=100.0, clock=lambda: now[0])
        session = store.create("fig2-lifted", 2)
        for t in (90.0, 180.0, 270.0):
            now[0] = t
            assert store.get(session.id) is session

    def test_drop_is_idempotent(self):
        store = SessionStore()
        session = store.create("fig3-lifted", 3)
        assert store.drop(session.id) is True
        assert store.drop(session.id) is False
