"""Local HTTP game-session service for live human-vs-engine play.

Endpoints (JSON over localhost):
  POST   /games                 {graph:{n,edges}, bias:[m,b], human_role,
                                 engine, first?} -> session snapshot
  GET    /games/{id}            -> snapshot
  POST   /games/{id}/moves      {elements:[edge ids]} -> snapshot (the human
                                 turn validated and applied, engine reply
                                 included)
  GET    /games/{id}/stream     -> server-sent events; one delta per turn:
                                 {ply, player, elements, state_hash,
                                  maker_path_overlay?, winner?}
  DELETE /games/{id}

Error codes: 404 unknown session; 409 illegal move with reason "turn",
"count", "claimed" or "over"; 400 malformed payloads.

The canonical state hash is sha256 over the JSON object
  {"bias":[m,b],"breaker":[...sorted],"maker":[...sorted],"ply":N,
   "to_move":"Maker"|"Breaker"|"over"}
serialized with sorted keys and separators (",", ":") - the UI recomputes
it after every applied delta.  Sessions are in-memory, one writer each;
--persist appends deltas as JSON lines for transcript recovery.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from .dirac_strategy import (
    _PathMaker,
    breaker_greedy_block,
    breaker_random,
    hamiltonicity_goal_checker,
    maker_dirac_strategy,
)
from .errors import DomainError, GraphFormatError, PreconditionError
from .games import BREAKER, MAKER, GameState
from .graph import Graph
from .rotation import Budget

ENGINE_BUDGET = Budget(restarts=4, max_steps=100_000)


def canonical_state(maker, breaker, bias, ply, to_move) -> str:
    return json.dumps(
        {
            "bias": list(bias),
            "breaker": sorted(breaker),
            "maker": sorted(maker),
            "ply": ply,
            "to_move": to_move,
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def state_hash(maker, breaker, bias, ply, to_move) -> str:
    return hashlib.sha256(
        canonical_state(maker, breaker, bias, ply, to_move).encode()
    ).hexdigest()


@dataclass
class Session:
    id: str
    G: Graph
    bias: tuple[int, int]
    human_role: str
    engine_name: str
    state: GameState
    engine_strategy: object
    goal_checker: object
    rng_seed: int
    winner: Optional[str] = None
    certificate: Optional[tuple] = None
    deltas: list[dict] = field(default_factory=list)
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)
    cond: threading.Condition = field(default_factory=threading.Condition)

    @property
    def engine_role(self) -> str:
        return BREAKER if self.human_role == MAKER else MAKER

    def to_move_label(self) -> str:
        return "over" if self.winner else self.state.to_move

    def hash(self) -> str:
        return state_hash(
            self.state.maker,
            self.state.breaker,
            self.bias,
            len(self.state.history),
            self.to_move_label(),
        )

    def overlay(self) -> list[int]:
        pm = _PathMaker(self.G, None)
        pm.sync(self.state, self.G.edges())
        pm._advance(max_rounds=60)
        return list(pm.path)

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "n": self.G.n,
            "edges": [list(e) for e in self.G.edges()],
            "bias": list(self.bias),
            "human_role": self.human_role,
            "engine": self.engine_name,
            "maker": sorted(self.state.maker),
            "breaker": sorted(self.state.breaker),
            "to_move": self.to_move_label(),
            "ply": len(self.state.history),
            "winner": self.winner,
            "certificate": list(self.certificate) if self.certificate else None,
            "state_hash": self.hash(),
            "maker_path_overlay": self.overlay(),
            "created": self.created,
            "updated": self.updated,
        }


class ServiceError(Exception):
    def __init__(self, status: int, reason: str):
        super().__init__(reason)
        self.status = status
        self.reason = reason


class GameService:
    """Session registry; every mutation happens under the session lock."""

    def __init__(self, seed: int = 0, persist: Optional[str] = None):
        self.sessions: dict[str, Session] = {}
        self.seed = seed
        self.persist = persist
        if persist:
            os.makedirs(persist, exist_ok=True)

    # -- lifecycle ---------------------------------------------------------

    def create(self, payload: dict) -> Session:
        try:
            gobj = payload["graph"]
            G = Graph(int(gobj["n"]), [tuple(e) for e in gobj["edges"]])
            bias = tuple(int(x) for x in payload.get("bias", [1, 1]))
            human_role = payload.get("human_role", BREAKER)
            engine_name = payload.get("engine", "dirac")
            first = payload.get("first", MAKER)
        except (KeyError, TypeError, ValueError, GraphFormatError) as exc:
            raise ServiceError(400, f"malformed create payload: {exc}")
        if human_role not in (MAKER, BREAKER) or first not in (MAKER, BREAKER):
            raise ServiceError(400, "roles must be Maker or Breaker")
        if bias[0] < 1 or bias[1] < 1 or len(bias) != 2:
            raise ServiceError(400, "bias parts must be integers >= 1")
        sid = uuid.uuid4().hex
        seed = (self.seed * 1_000_003 + len(self.sessions)) & 0xFFFFFFFF
        engine_role = BREAKER if human_role == MAKER else MAKER
        try:
            if engine_role == MAKER and engine_name == "dirac":
                strategy = maker_dirac_strategy(G, bias[1], seed=seed)
            elif engine_name == "random":
                strategy = breaker_random()
            else:
                strategy = (
                    breaker_greedy_block(G)
                    if engine_role == BREAKER
                    else maker_dirac_strategy(G, bias[1], seed=seed)
                )
        except PreconditionError:
            # non-Dirac hosts still playable: block as Breaker, roam as Maker
            from .games import random_strategy

            strategy = (
                breaker_greedy_block(G) if engine_role == BREAKER else random_strategy()
            )
        session = Session(
            id=sid,
            G=G,
            bias=bias,
            human_role=human_role,
            engine_name=engine_name,
            state=GameState(board_size=G.m, bias=bias, to_move=first),
            engine_strategy=strategy,
            goal_checker=hamiltonicity_goal_checker(G, ENGINE_BUDGET),
            rng_seed=seed,
        )
        self.sessions[sid] = session
        self._persist_line(session, {"event": "create", "snapshot": session.snapshot()})
        with session.lock:
            self._engine_turns(session)
        return session

    def get(self, sid: str) -> Session:
        s = self.sessions.get(sid)
        if s is None:
            raise ServiceError(404, "unknown session")
        return s

    def delete(self, sid: str) -> None:
        s = self.get(sid)
        with s.cond:
            self.sessions.pop(sid, None)
            s.cond.notify_all()

    # -- play ----------------------------------------------------------------

    def _apply_turn(self, s: Session, player: str, elements: list[int]) -> dict:
        import random as _r

        owned = s.state.maker if player == MAKER else s.state.breaker
        for e in elements:
            owned.add(e)
            s.state.history.append((player, e, s.state.turn_index))
        s.state.turn_index += 1
        s.state.to_move = BREAKER if player == MAKER else MAKER
        if player == MAKER and s.winner is None:
            cert = s.goal_checker(s.state.maker)
            if cert is not None:
                s.winner = MAKER
                s.certificate = tuple(cert)
        if s.winner is None and s.state.unclaimed_count() == 0:
            s.winner = BREAKER
        s.updated = time.time()
        delta = {
            "ply": len(s.state.history),
            "player": player,
            "elements": sorted(elements),
            "state_hash": s.hash(),
            "maker_path_overlay": s.overlay(),
        }
        if s.winner:
            delta["winner"] = s.winner
            if s.certificate:
                delta["certificate"] = list(s.certificate)
        with s.cond:
            s.deltas.append(delta)
            s.cond.notify_all()
        self._persist_line(s, {"event": "turn", "delta": delta})
        return delta

    def _engine_turns(self, s: Session) -> None:
        import random as _r

        rng = _r.Random(s.rng_seed ^ len(s.state.history))
        while (
            s.winner is None
            and s.state.to_move == s.engine_role
            and s.state.unclaimed_count() > 0
        ):
            k = min(s.state.per_turn(s.engine_role), s.state.unclaimed_count())
            moves = list(s.engine_strategy(s.state, rng))[:k]
            taken = s.state.maker | s.state.breaker
            moves = [e for e in moves if e not in taken]
            if len(moves) < k:  # defensive: top up with lowest free ids
                for e in s.state.unclaimed():
                    if e not in moves:
                        moves.append(e)
                    if len(moves) == k:
                        break
            self._apply_turn(s, s.engine_role, moves)
            break  # engine plays exactly one turn per human move

    def human_moves(self, sid: str, payload: dict) -> Session:
        s = self.get(sid)
        with s.lock:
            try:
                elements = [int(e) for e in payload["elements"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise ServiceError(400, f"malformed move payload: {exc}")
            if s.winner is not None:
                raise ServiceError(409, "over")
            if s.state.to_move != s.human_role:
                raise ServiceError(409, "turn")
            want = min(s.state.per_turn(s.human_role), s.state.unclaimed_count())
            if len(elements) != want or len(set(elements)) != len(elements):
                raise ServiceError(409, "count")
            taken = s.state.maker | s.state.breaker
            if any(not 0 <= e < s.G.m for e in elements):
                raise ServiceError(400, "element off the board")
            if any(e in taken for e in elements):
                raise ServiceError(409, "claimed")
            self._apply_turn(s, s.human_role, elements)
            if s.winner is None:
                self._engine_turns(s)
        return s

    def _persist_line(self, s: Session, obj: dict) -> None:
        if not self.persist:
            return
        path = os.path.join(self.persist, f"{s.id}.jsonl")
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(obj, sort_keys=True) + "\n")


# -- HTTP plumbing -------------------------------------------------------------


def make_handler(service: GameService):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):
            pass

        def _send_json(self, status: int, obj: dict):
            body = json.dumps(obj, sort_keys=True).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _read_json(self) -> dict:
            try:
                length = int(self.headers.get("Content-Length", "0"))
                return json.loads(self.rfile.read(length) or b"{}")
            except (ValueError, json.JSONDecodeError) as exc:
                raise ServiceError(400, f"bad JSON: {exc}")

        def _route(self):
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            return parts

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET,POST,DELETE,OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

        def do_POST(self):
            try:
                parts = self._route()
                if parts == ["games"]:
                    s = service.create(self._read_json())
                    self._send_json(201, s.snapshot())
                elif len(parts) == 3 and parts[0] == "games" and parts[2] == "moves":
                    s = service.human_moves(parts[1], self._read_json())
                    self._send_json(200, s.snapshot())
                else:
                    self._send_json(404, {"error": "no such endpoint"})
            except ServiceError as exc:
                self._send_json(exc.status, {"error": str(exc), "reason": exc.reason})

        def do_GET(self):
            try:
                parts = self._route()
                if len(parts) == 2 and parts[0] == "games":
                    self._send_json(200, service.get(parts[1]).snapshot())
                elif len(parts) == 3 and parts[0] == "games" and parts[2] == "stream":
                    self._stream(service.get(parts[1]))
                else:
                    self._send_json(404, {"error": "no such endpoint"})
            except ServiceError as exc:
                self._send_json(exc.status, {"error": str(exc), "reason": exc.reason})

        def do_DELETE(self):
            try:
                parts = self._route()
                if len(parts) == 2 and parts[0] == "games":
                    service.delete(parts[1])
                    self._send_json(200, {"deleted": parts[1]})
                else:
                    self._send_json(404, {"error": "no such endpoint"})
            except ServiceError as exc:
                self._send_json(exc.status, {"error": str(exc), "reason": exc.reason})

        def _stream(self, s: Session):
            self.send_response(200)
            self.send_header("Content-Type", "text/event-stream")
            self.send_header("Cache-Control", "no-cache")
            self.send_header("Access-Control-Allow-Origin", "*")
            # the stream's end is signalled by closing the connection
            self.send_header("Connection", "close")
            self.close_connection = True
            self.end_headers()
            sent = 0
            try:
                while True:
                    with s.cond:
                        while sent >= len(s.deltas):
                            if s.id not in service.sessions:
                                return
                            if s.winner is not None and sent >= len(s.deltas):
                                return
                            s.cond.wait(timeout=15)
                        batch = s.deltas[sent:]
                        sent = len(s.deltas)
                    for delta in batch:
                        payload = json.dumps(delta, sort_keys=True)
                        self.wfile.write(f"data: {payload}\n\n".encode())
                        self.wfile.flush()
            except (BrokenPipeError, ConnectionResetError):
                return

    return Handler


def run_server(
    host: str = "127.0.0.1",
    port: int = 8123,
    persist: Optional[str] = None,
    seed: int = 0,
    ready_event: Optional[threading.Event] = None,
    server_box: Optional[list] = None,
):
    service = GameService(seed=seed, persist=persist)
    httpd = ThreadingHTTPServer((host, port), make_handler(service))
    print(f"serving on http://{host}:{httpd.server_address[1]}", flush=True)
    if server_box is not None:
        server_box.append(httpd)
        server_box.append(service)
    if ready_event is not None:
        ready_event.set()
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
