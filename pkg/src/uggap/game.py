"""Bijective pebble game engine over two constraint structures.

Each round has three phases: the first player lifts a pebble pair, the
second player answers with a bijection between the universes that must
agree with every pair still on the board, and the first player then
places the lifted pebble on a vertex, pinning that vertex together with
its image.  The first player wins the moment the pinned pairs stop
being a partial isomorphism: either the pairing is not injective, or
two pinned pairs see different shift sets on their edges.  The engine
enforces the protocol and keeps a replayable transcript.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .gf2 import to_bitstring
from .instances import GroupUgInstance, RelationalView
from .lifting import split_lifted_name

__all__ = [
    "Game",
    "GStarBijection",
    "MatchOutcome",
    "ProtocolError",
    "Structure",
    "TableBijection",
    "check_partial_isomorphism",
    "external_transcript",
    "run_match",
]


class ProtocolError(Exception):
    """A move that the game protocol does not allow right now."""


class Structure:
    """A game-side view of one instance: universe plus shift sets."""

    def __init__(self, inst: GroupUgInstance):
        self.instance = inst
        self.vertices: Tuple[str, ...] = inst.graph.vertices
        self.vertex_set = frozenset(self.vertices)
        self._view = RelationalView(inst)

    @property
    def m(self) -> int:
        return self.instance.m

    def shifts(self, a: str, b: str) -> frozenset:
        return self._view.shifts_between(a, b)


class GStarBijection:
    """Fan-preserving bijection x_v^g -> x_v^(g + gstar[v]).

    Vertices whose names do not carry a fan tag, and fans of base
    vertices absent from the table, are mapped to themselves.  The map
    is always an involution, so it inverts by re-application.
    """

    kind = "gstar"

    def __init__(self, gstar: Mapping[str, int], m: int):
        self.gstar = dict(gstar)
        self.m = m

    def apply(self, name: str) -> str:
        try:
            base, g, width = split_lifted_name(name)
        except ValueError:
            return name
        shift = self.gstar.get(base, 0)
        return f"{base}#{to_bitstring(g ^ shift, width)}"

    def invert(self, name: str) -> str:
        return self.apply(name)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "gstar": {
                v: to_bitstring(s, self.m) for v, s in sorted(self.gstar.items())
            },
        }


class TableBijection:
    """Bijection given by an explicit vertex table."""

    kind = "table"

    def __init__(self, table: Mapping[str, str]):
        self.table = dict(table)
        self._inverse = {b: a for a, b in self.table.items()}
        if len(self._inverse) != len(self.table):
            raise ValueError("table is not injective")

    def apply(self, name: str) -> str:
        try:
            return self.table[name]
        except KeyError:
            raise ProtocolError(f"bijection undefined on {name!r}") from None

    def invert(self, name: str) -> str:
        try:
            return self._inverse[name]
        except KeyError:
            raise ProtocolError(f"bijection misses {name!r}") from None

    def describe(self) -> dict:
        digest = hashlib.sha256(
            json.dumps(sorted(self.table.items())).encode()
        ).hexdigest()[:16]
        return {"kind": self.kind, "digest": digest}


def check_partial_isomorphism(
    a: Structure, b: Structure, pairs: Iterable[Tuple[str, str]]
) -> Optional[str]:
    """None when the pinned pairs form a partial isomorphism, else why not."""
    pairs = list(pairs)
    fwd: Dict[str, str] = {}
    rev: Dict[str, str] = {}
    for x, y in pairs:
        if fwd.setdefault(x, y) != y:
            return f"{x} is pinned to both {fwd[x]} and {y}"
        if rev.setdefault(y, x) != x:
            return f"{y} is the image of both {rev[y]} and {x}"
    for i, (x1, y1) in enumerate(pairs):
        for x2, y2 in pairs[i + 1 :]:
            sa = a.shifts(x1, x2)
            sb = b.shifts(y1, y2)
            if sa != sb:
                return (
                    f"shift sets differ on ({x1},{x2}) vs ({y1},{y2}): "
                    f"{sorted(sa)} vs {sorted(sb)}"
                )
    return None


class Game:
    """One running pebble game; mutated in place by the moves."""

    def __init__(self, a: GroupUgInstance, b: GroupUgInstance, k: int):
        if k < 1:
            raise ValueError("need at least one pebble pair")
        if len(a.graph.vertices) != len(b.graph.vertices):
            raise ValueError("structures must have universes of equal size")
        if a.m != b.m:
            raise ValueError("structures must share the group dimension")
        self.a = Structure(a)
        self.b = Structure(b)
        self.k = k
        self.placements: Dict[int, Tuple[str, str]] = {}
        self.round = 0
        self.phase = "pickup"
        self.winner: Optional[str] = None
        self.picked: Optional[int] = None
        self.bijection = None
        self.transcript: List[dict] = []

    # -- protocol ---------------------------------------------------

    def _require_phase(self, phase: str) -> None:
        if self.winner is not None:
            raise ProtocolError("the game is already decided")
        if self.phase != phase:
            raise ProtocolError(f"expected {self.phase} move, got {phase}")

    def pickup(self, pebble: int) -> None:
        self._require_phase("pickup")
        if not 0 <= pebble < self.k:
            raise ProtocolError(f"pebble index {pebble} out of range 0..{self.k - 1}")
        self.round += 1
        self.picked = pebble
        self.phase = "bijection"

    def propose_bijection(self, bijection) -> None:
        self._require_phase("bijection")
        remaining = {
            p: pair for p, pair in self.placements.items() if p != self.picked
        }
        image = set()
        for x in self.a.vertices:
            y = bijection.apply(x)
            if y not in self.b.vertex_set:
                raise ProtocolError(f"{x} maps outside the second universe: {y!r}")
            image.add(y)
        if len(image) != len(self.a.vertices):
            raise ProtocolError("proposed map is not injective")
        for x, y in remaining.values():
            if bijection.apply(x) != y:
                raise ProtocolError(
                    f"map moves the pinned pair ({x},{y}) to {bijection.apply(x)}"
                )
        self.bijection = bijection
        self.phase = "place"

    def place(self, a_name: str) -> Optional[str]:
        self._require_phase("place")
        if a_name not in self.a.vertex_set:
            raise ProtocolError(f"unknown vertex {a_name!r}")
        b_name = self.bijection.apply(a_name)
        self.placements[self.picked] = (a_name, b_name)
        reason = check_partial_isomorphism(
            self.a, self.b, self.placements.values()
        )
        entry = {
            "round": self.round,
            "pickup": self.picked,
            "bijection": self.bijection.describe(),
            "place": [a_name, b_name],
            "winner": None,
        }
        if reason is not None:
            self.winner = "spoiler"
            entry["winner"] = "spoiler"
            entry["reason"] = reason
        self.transcript.append(entry)
        self.picked = None
        self.phase = "pickup"
        return self.winner

    # -- reporting --------------------------------------------------

    def board(self) -> dict:
        return {
            "k": self.k,
            "round": self.round,
            "phase": self.phase,
            "winner": self.winner,
            "picked": self.picked,
            "placements": {
                str(p): list(pair) for p, pair in sorted(self.placements.items())
            },
            "universe_a": list(self.a.vertices),
            "universe_b": list(self.b.vertices),
        }


def external_transcript(entries: Sequence[dict]) -> List[dict]:
    """Flatten engine transcript entries into the wire shape.

    Each record carries round, pickup, either a gstar table or a table
    digest, the placed first-structure vertex, and the winner if the
    move decided the game.
    """
    out = []
    for entry in entries:
        rec = {"round": entry["round"], "pickup": entry["pickup"]}
        described = entry["bijection"]
        if described["kind"] == "gstar":
            rec["gstar"] = described["gstar"]
        else:
            rec["table_digest"] = described["digest"]
        rec["place"] = entry["place"][0]
        rec["winner"] = entry["winner"]
        out.append(rec)
    return out


@dataclass(frozen=True)
class MatchOutcome:
    """Result of driving a game with two agents for a bounded run."""

    winner: str  # "spoiler" | "duplicator"
    reason: str
    rounds_played: int
    transcript: Tuple[dict, ...] = field(repr=False)


def run_match(
    a: GroupUgInstance,
    b: GroupUgInstance,
    k: int,
    spoiler,
    duplicator,
    rounds: int,
) -> MatchOutcome:
    """Play a bounded match; an illegal move forfeits for its author.

    The second player wins by surviving all rounds.  Agents may expose
    a reset(game) hook called once before the first round.
    """
    game = Game(a, b, k)
    for agent in (spoiler, duplicator):
        if hasattr(agent, "reset"):
            agent.reset(game)
    for _ in range(rounds):
        try:
            pebble = spoiler.pick_pebble(game)
            game.pickup(pebble)
        except ProtocolError as exc:
            return MatchOutcome(
                "duplicator", f"forfeit by spoiler: {exc}", game.round, tuple(game.transcript)
            )
        try:
            bijection = duplicator.propose(game)
            game.propose_bijection(bijection)
        except ProtocolError as exc:
            return MatchOutcome(
                "spoiler", f"forfeit by duplicator: {exc}", game.round, tuple(game.transcript)
            )
        try:
            choice = spoiler.pick_place(game)
            winner = game.place(choice)
        except ProtocolError as exc:
            return MatchOutcome(
                "duplicator", f"forfeit by spoiler: {exc}", game.round, tuple(game.transcript)
            )
        if winner == "spoiler":
            return MatchOutcome(
                "spoiler",
                game.transcript[-1]["reason"],
                game.round,
                tuple(game.transcript),
            )
        if hasattr(duplicator, "observe_placement"):
            duplicator.observe_placement(game)
    return MatchOutcome(
        "duplicator", "survived all rounds", game.round, tuple(game.transcript)
    )
