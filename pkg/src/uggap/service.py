"""HTTP JSON service for interactive pebble-game sessions.

A remote client plays the first player against the automated tree
strategy: create a session from a curated preset, lift a pebble pair,
receive the bijection, place the pebble, repeat.  Sessions live in
memory, are mutated under a per-session lock, and expire after an idle
hour.  The wire protocol is plain JSON over stdlib HTTP; responses
carry permissive CORS headers so a local page can talk to it.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable, Dict, Optional, Tuple

from .game import Game, ProtocolError, external_transcript
from .presets import resolve_pair
from .strategy import TreeDuplicator

__all__ = ["SessionStore", "build_server", "curated_presets"]

DEFAULT_TTL_SECONDS = 3600.0
TABLE_LIMIT = 64


def curated_presets() -> Tuple[str, ...]:
    return ("fig2-lifted", "fig3-lifted")


def _default_duplicator(preset: str):
    pair = resolve_pair(preset.rsplit("-", 1)[0])
    return TreeDuplicator(pair.context())


@dataclass
class Session:
    id: str
    preset: str
    game: Game
    duplicator: object
    created: float
    last_touch: float
    lock: threading.Lock = field(default_factory=threading.Lock)

    def state(self) -> dict:
        board = self.game.board()
        board["preset"] = self.preset
        board["session_id"] = self.id
        board["transcript"] = external_transcript(self.game.transcript)
        return board


class SessionStore:
    """Thread-safe session registry with lazy idle expiry."""

    def __init__(
        self,
        duplicator_factory: Optional[Callable[[str], object]] = None,
        ttl: float = DEFAULT_TTL_SECONDS,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.duplicator_factory = duplicator_factory or _default_duplicator
        self.ttl = ttl
        self.clock = clock
        self._sessions: Dict[str, Session] = {}
        self._lock = threading.Lock()

    def _sweep(self) -> None:
        now = self.clock()
        stale = [
            sid
            for sid, s in self._sessions.items()
            if now - s.last_touch > self.ttl
        ]
        for sid in stale:
            del self._sessions[sid]

    def create(self, preset: str, k: int) -> Session:
        if preset not in curated_presets():
            raise ValueError(
                f"unknown preset {preset!r}; available: {', '.join(curated_presets())}"
            )
        if not 1 <= k <= 8:
            raise ValueError("k must lie between 1 and 8")
        pair = resolve_pair(preset.rsplit("-", 1)[0])
        a, b = pair.lifted()
        game = Game(a, b, k)
        duplicator = self.duplicator_factory(preset)
        if hasattr(duplicator, "reset"):
            duplicator.reset(game)
        now = self.clock()
        session = Session(secrets.token_hex(8), preset, game, duplicator, now, now)
        with self._lock:
            self._sweep()
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> Optional[Session]:
        with self._lock:
            self._sweep()
            session = self._sessions.get(sid)
            if session is not None:
                session.last_touch = self.clock()
            return session

    def drop(self, sid: str) -> bool:
        with self._lock:
            self._sweep()
            return self._sessions.pop(sid, None) is not None

    def __len__(self) -> int:
        with self._lock:
            self._sweep()
            return len(self._sessions)


class _ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _bijection_payload(game: Game) -> dict:
    described = game.bijection.describe()
    payload = dict(described)
    if len(game.a.vertices) <= TABLE_LIMIT:
        payload["table"] = {
            v: game.bijection.apply(v) for v in game.a.vertices
        }
    return payload


def _make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        server_version = "uggap-session"
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # quiet by default
            pass

        # -- plumbing ----------------------------------------------

        def _reply(self, status: int, body: Optional[dict]) -> None:
            raw = b""
            if body is not None:
                raw = (json.dumps(body, sort_keys=True) + "\n").encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(raw)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            if raw:
                self.wfile.write(raw)

        def _json_body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                raise _ApiError(400, "missing JSON body")
            try:
                body = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise _ApiError(400, f"malformed JSON: {exc}") from None
            if not isinstance(body, dict):
                raise _ApiError(400, "body must be a JSON object")
            return body

        def _session(self, sid: str) -> Session:
            session = store.get(sid)
            if session is None:
                raise _ApiError(404, f"no session {sid!r}")
            return session

        def _route(self) -> Tuple[str, ...]:
            path = self.path.split("?", 1)[0].strip("/")
            return tuple(p for p in path.split("/") if p)

        # -- verbs -------------------------------------------------

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

        def do_GET(self):
            try:
                parts = self._route()
                if len(parts) == 3 and parts[:2] == ("api", "sessions"):
                    session = self._session(parts[2])
                    with session.lock:
                        self._reply(200, {"state": session.state()})
                    return
                raise _ApiError(404, "unknown route")
            except _ApiError as exc:
                self._reply(exc.status, {"error": exc.message})

        def do_DELETE(self):
            try:
                parts = self._route()
                if len(parts) == 3 and parts[:2] == ("api", "sessions"):
                    if not store.drop(parts[2]):
                        raise _ApiError(404, f"no session {parts[2]!r}")
                    self._reply(204, None)
                    return
                raise _ApiError(404, "unknown route")
            except _ApiError as exc:
                self._reply(exc.status, {"error": exc.message})

        def do_POST(self):
            try:
                parts = self._route()
                if parts == ("api", "sessions"):
                    self._create()
                elif len(parts) == 4 and parts[:2] == ("api", "sessions"):
                    session = self._session(parts[2])
                    if parts[3] == "pickup":
                        self._pickup(session)
                    elif parts[3] == "place":
                        self._place(session)
                    else:
                        raise _ApiError(404, "unknown route")
                else:
                    raise _ApiError(404, "unknown route")
            except _ApiError as exc:
                self._reply(exc.status, {"error": exc.message})

        # -- handlers ----------------------------------------------

        def _create(self) -> None:
            body = self._json_body()
            preset = body.get("preset")
            k = body.get("k")
            if not isinstance(preset, str) or not isinstance(k, int) or isinstance(k, bool):
                raise _ApiError(400, "expected {preset: string, k: integer}")
            try:
                session = store.create(preset, k)
            except ValueError as exc:
                raise _ApiError(422, str(exc)) from None
            with session.lock:
                self._reply(
                    201, {"session_id": session.id, "state": session.state()}
                )

        def _pickup(self, session: Session) -> None:
            body = self._json_body()
            pair = body.get("pair")
            if not isinstance(pair, int) or isinstance(pair, bool):
                raise _ApiError(400, "expected {pair: integer}")
            with session.lock:
                game = session.game
                if game.winner is not None or game.phase != "pickup":
                    raise _ApiError(
                        409, f"cannot lift a pair now (phase {game.phase}, winner {game.winner})"
                    )
                try:
                    game.pickup(pair)
                except ProtocolError as exc:
                    raise _ApiError(422, str(exc)) from None
                try:
                    bijection = session.duplicator.propose(game)
                    game.propose_bijection(bijection)
                except ProtocolError as exc:
                    raise _ApiError(500, f"duplicator failed: {exc}") from None
                self._reply(
                    200,
                    {"bijection": _bijection_payload(game), "state": session.state()},
                )

        def _place(self, session: Session) -> None:
            body = self._json_body()
            a_name = body.get("a")
            if not isinstance(a_name, str):
                raise _ApiError(400, "expected {a: string}")
            with session.lock:
                game = session.game
                if game.winner is not None or game.phase != "place":
                    raise _ApiError(
                        409, f"cannot place now (phase {game.phase}, winner {game.winner})"
                    )
                try:
                    game.place(a_name)
                except ProtocolError as exc:
                    raise _ApiError(422, str(exc)) from None
                if hasattr(session.duplicator, "observe_placement") and game.winner is None:
                    session.duplicator.observe_placement(game)
                self._reply(200, {"state": session.state()})

    return Handler


def build_server(
    bind: str = "127.0.0.1",
    port: int = 8642,
    duplicator_factory: Optional[Callable[[str], object]] = None,
    ttl: float = DEFAULT_TTL_SECONDS,
) -> ThreadingHTTPServer:
    """A ready-to-serve HTTP server; caller runs serve_forever()."""
    store = SessionStore(duplicator_factory=duplicator_factory, ttl=ttl)
    server = ThreadingHTTPServer((bind, port), _make_handler(store))
    server.session_store = store  # exposed for tests and introspection
    return server
