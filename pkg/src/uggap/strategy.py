"""Playing agents for the pebble game.

The centerpiece is the tree-memory second player: each round it builds,
for every base vertex u, a Steiner tree connecting u with the pinned
base vertices, transports its remembered values onto the new tree, and
fills the rest by solving the per-edge coset conditions greedily (with
a spanning-path correction on segments of length at least r).  The
answered bijection shifts each fan diagonally by the value planned for
its own base vertex.  On the other side sit a random player, a greedy
player that walks an inconsistent cycle of the less satisfiable
structure, and a memoized exhaustive searcher.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple

from .construction import NonSpanningPathError, extend_along_path
from .game import GStarBijection, Structure, check_partial_isomorphism
from .gf2 import affine_intersect, coset_min
from .graphs import TreeSubgraph, components, steiner_tree
from .instances import GroupUgInstance
from .lifting import split_lifted_name
from .presets import StrategyContext
from .solver import inconsistent_cycle, is_completely_satisfiable

__all__ = [
    "CycleGreedySpoiler",
    "DuplicatorMemory",
    "ExhaustiveSpoiler",
    "IdentityDuplicator",
    "IdentityPlanner",
    "RandomSpoiler",
    "RoundPlan",
    "TreeDuplicator",
    "TreePlanner",
    "find_winning_move",
    "next_memory",
    "plan_round",
]

MemoryKey = Tuple[Tuple[str, ...], Tuple[Tuple[str, str], ...], Tuple[Tuple[str, int], ...]]


def _base_and_shift(name: str) -> Tuple[str, int]:
    try:
        base, g, _ = split_lifted_name(name)
    except ValueError:
        return name, 0
    return base, g


@dataclass(frozen=True)
class DuplicatorMemory:
    """What survives between rounds: last tree and its planned values."""

    tree_vertices: FrozenSet[str]
    tree_edges: FrozenSet[Tuple[str, str]]
    gstar: Mapping[str, int]

    @staticmethod
    def empty() -> "DuplicatorMemory":
        return DuplicatorMemory(frozenset(), frozenset(), {})

    def key(self) -> MemoryKey:
        return (
            tuple(sorted(self.tree_vertices)),
            tuple(sorted(self.tree_edges)),
            tuple(sorted(self.gstar.items())),
        )

    @staticmethod
    def from_key(key: MemoryKey) -> "DuplicatorMemory":
        vs, es, gs = key
        return DuplicatorMemory(frozenset(vs), frozenset(es), dict(gs))


@dataclass(frozen=True)
class RoundPlan:
    """Per-vertex plans for one round plus the diagonal they induce."""

    plans: Mapping[str, Tuple[TreeSubgraph, Mapping[str, int]]]
    diagonal: Mapping[str, int]


def _segments(
    new_edges: Set[Tuple[str, str]],
    tree_degree: Mapping[str, int],
    cut: Set[str],
) -> List[List[str]]:
    """Maximal paths through the new edges, split at cut vertices.

    A vertex interrupts a segment when it is marked cut or when its
    degree among the new edges differs from 2; the remaining interior
    vertices are plain pass-throughs.
    """
    adj: Dict[str, List[str]] = {}
    for u, v in new_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    def is_break(v: str) -> bool:
        return v in cut or len(adj[v]) != 2 or tree_degree.get(v, 0) != 2

    seen: Set[frozenset] = set()
    segments = []
    for start in sorted(v for v in adj if is_break(v)):
        for first in sorted(adj[start]):
            e = frozenset((start, first))
            if e in seen:
                continue
            path = [start, first]
            seen.add(e)
            while not is_break(path[-1]):
                nxt = [w for w in adj[path[-1]] if frozenset((path[-1], w)) not in seen]
                if not nxt:
                    break
                seen.add(frozenset((path[-1], nxt[0])))
                path.append(nxt[0])
            segments.append(path)
    return segments


def _plan_for(
    ctx: StrategyContext,
    u: str,
    implied: Mapping[str, int],
    memory: DuplicatorMemory,
) -> Tuple[TreeSubgraph, Dict[str, int]]:
    """Tree and values for the hypothetical next pin at base vertex u."""
    terminals = sorted(set(implied) | {u})
    comp_index = {}
    for i, comp in enumerate(components(ctx.graph)):
        for v in comp:
            comp_index[v] = i
    groups: Dict[int, List[str]] = {}
    for t in terminals:
        groups.setdefault(comp_index[t], []).append(t)
    tree_vertices: Set[str] = set()
    tree_edges: Set[Tuple[str, str]] = set()
    for group in groups.values():
        sub = steiner_tree(ctx.graph, group)
        tree_vertices |= sub.vertices
        tree_edges |= sub.edges

    values: Dict[str, int] = {}
    for v in tree_vertices & memory.tree_vertices:
        values[v] = memory.gstar[v]
    for v, g in implied.items():
        values[v] = g  # pinned pairs outrank remembered values

    # spanning-path correction on long fresh segments with pinned ends
    degree: Dict[str, int] = {}
    for a, b in tree_edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    cut = set(implied) | {u} | (memory.tree_vertices & tree_vertices)
    new_edges = tree_edges - memory.tree_edges
    for seg in _segments(new_edges, degree, cut):
        if len(seg) - 1 < ctx.r:
            continue
        if seg[0] not in values or seg[-1] not in values:
            continue
        if any(v in values for v in seg[1:-1]):
            continue
        try:
            filled = extend_along_path(seg, ctx.edge_data, values[seg[0]], values[seg[-1]])
        except NonSpanningPathError:
            continue
        values.update(filled)

    # greedy coset solving over the rest of the tree
    undefined = sorted(v for v in tree_vertices if v not in values)
    while undefined:
        pick = None
        for v in undefined:
            nbrs = [w for w in ctx.graph.neighbors(v) if w in values]
            if nbrs:
                pick = (v, nbrs)
                break
        if pick is None:
            values[undefined[0]] = 0
            undefined.pop(0)
            continue
        v, nbrs = pick
        rec0 = ctx.edge_data.record(v, nbrs[0])
        fallback = values[nbrs[0]] ^ rec0.b
        if len(nbrs) == 1:
            values[v] = fallback
        else:
            rep, space = fallback, rec0.space
            feasible = True
            for w in nbrs[1:]:
                rec = ctx.edge_data.record(v, w)
                merged = affine_intersect(rep, space, values[w] ^ rec.b, rec.space)
                if merged is None:
                    feasible = False
                    break
                rep, space = merged
            values[v] = coset_min(rep, space) if feasible else fallback
        undefined.remove(v)
    return TreeSubgraph(frozenset(tree_vertices), frozenset(tree_edges)), values


def plan_round(
    ctx: StrategyContext,
    pairs: Sequence[Tuple[str, str]],
    memory: DuplicatorMemory,
) -> RoundPlan:
    """All per-vertex plans for the current board, after the pickup.

    `pairs` are the pinned pairs left on the board.  Both names of a
    pinned pair must sit on the same fan; the difference of their fan
    tags is the value the plans must keep at that base vertex.
    """
    implied: Dict[str, int] = {}
    for a_name, b_name in pairs:
        va, ga = _base_and_shift(a_name)
        vb, gb = _base_and_shift(b_name)
        if va != vb:
            raise ValueError(f"pinned pair ({a_name},{b_name}) leaves its fan")
        want = ga ^ gb
        if implied.setdefault(va, want) != want:
            raise ValueError(f"contradictory pins at base vertex {va}")
    plans = {}
    diagonal = {}
    for u in ctx.graph.vertices:
        tree, values = _plan_for(ctx, u, implied, memory)
        plans[u] = (tree, values)
        diagonal[u] = values[u]
    return RoundPlan(plans, diagonal)


def next_memory(plan: RoundPlan, u_star: str) -> DuplicatorMemory:
    """Memory carried forward once the pin lands on base vertex u_star."""
    tree, values = plan.plans[u_star]
    return DuplicatorMemory(
        tree.vertices,
        tree.edges,
        {v: values[v] for v in tree.vertices},
    )


# --- duplicator agents --------------------------------------------------

class TreeDuplicator:
    """Second player following the tree-memory strategy."""

    def __init__(self, ctx: StrategyContext):
        self.ctx = ctx
        self.memory = DuplicatorMemory.empty()
        self._plan: Optional[RoundPlan] = None

    def reset(self, game) -> None:
        self.memory = DuplicatorMemory.empty()
        self._plan = None

    def propose(self, game) -> GStarBijection:
        pairs = [
            pair for p, pair in game.placements.items() if p != game.picked
        ]
        self._plan = plan_round(self.ctx, pairs, self.memory)
        return GStarBijection(self._plan.diagonal, self.ctx.m)

    def observe_placement(self, game) -> None:
        a_name, _ = game.transcript[-1]["place"]
        base, _ = _base_and_shift(a_name)
        self.memory = next_memory(self._plan, base)


class IdentityDuplicator:
    """Answers the identity every round; the baseline to beat."""

    def __init__(self, m: int):
        self.m = m

    def propose(self, game) -> GStarBijection:
        return GStarBijection({}, self.m)


# --- planner protocol for search and the service ------------------------

class TreePlanner:
    """Stateless view of the tree strategy keyed by explicit memory."""

    def __init__(self, ctx: StrategyContext):
        self.ctx = ctx

    def initial_key(self) -> MemoryKey:
        return DuplicatorMemory.empty().key()

    def respond(
        self, pairs: Sequence[Tuple[str, str]], memory_key: MemoryKey
    ) -> Tuple[GStarBijection, Callable[[str], MemoryKey]]:
        plan = plan_round(self.ctx, pairs, DuplicatorMemory.from_key(memory_key))

        def after(a_name: str) -> MemoryKey:
            base, _ = _base_and_shift(a_name)
            return next_memory(plan, base).key()

        return GStarBijection(plan.diagonal, self.ctx.m), after


class IdentityPlanner:
    """Identity responses with empty memory, for baselines."""

    def __init__(self, m: int):
        self.m = m

    def initial_key(self) -> MemoryKey:
        return DuplicatorMemory.empty().key()

    def respond(self, pairs, memory_key):
        return GStarBijection({}, self.m), lambda a_name: memory_key


# --- spoiler agents -----------------------------------------------------

class RandomSpoiler:
    """Uniformly random pickups and placements."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def reset(self, game) -> None:
        self.rng = random.Random(self.seed)

    def pick_pebble(self, game) -> int:
        return self.rng.randrange(game.k)

    def pick_place(self, game) -> str:
        return self.rng.choice(game.a.vertices)


class CycleGreedySpoiler:
    """Walks an inconsistent constraint cycle of the weaker structure.

    One pebble anchors the walk's starting vertex; the remaining
    pebbles alternate along the cycle, so consecutive walk vertices are
    always pinned together.  Because the shifts around the cycle do not
    cancel, a second player that keeps every pinned edge consistent
    must drift, and the return to the anchor exposes the drift.  When
    both structures are satisfiable the agent degrades to random play.
    """

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)
        self.targets: Optional[List[str]] = None
        self.side = "a"
        self.step = 0

    def reset(self, game) -> None:
        self.rng = random.Random(self.seed)
        self.step = 0
        self.targets = None
        for side, inst in (("b", game.b.instance), ("a", game.a.instance)):
            sat, _, witness = is_completely_satisfiable(inst)
            if not sat:
                walk = inconsistent_cycle(witness)
                self.targets = [edge[0] for edge in walk]
                self.side = side
                break

    def pick_pebble(self, game) -> int:
        if self.targets is None:
            return self.rng.randrange(game.k)
        if self.step == 0 or game.k < 3:
            return self.step % game.k
        return 1 + (self.step - 1) % (game.k - 1)

    def pick_place(self, game) -> str:
        if self.targets is None:
            return self.rng.choice(game.a.vertices)
        target = self.targets[self.step % len(self.targets)]
        self.step += 1
        if self.side == "a":
            return target
        return game.bijection.invert(target)


class ExhaustiveSpoiler:
    """Plays the move a memoized search proves winning, if any.

    The search models the second player with the given planner, so its
    guarantees only hold against that opponent; with no winning line in
    reach it falls back to scripted first-choice moves.
    """

    def __init__(self, planner, depth: int):
        self.planner = planner
        self.depth = depth
        self.memory_key = planner.initial_key()
        self._pending: Optional[Tuple[Optional[Tuple[str, str]], str]] = None

    def reset(self, game) -> None:
        self.memory_key = self.planner.initial_key()
        self._pending = None

    def pick_pebble(self, game) -> int:
        pairs = tuple(sorted(game.placements.values()))
        # the horizon shrinks as rounds pass, so each searched move must
        # make real progress along the forced line instead of stalling
        remaining = self.depth - game.round
        move = None
        if remaining >= 1:
            move = find_winning_move(
                self.planner, game.a, game.b, game.k, remaining, pairs, self.memory_key
            )
        if move is None:
            removal = None if len(game.placements) < game.k else pairs[0]
            placement = game.a.vertices[game.round % len(game.a.vertices)]
            self._pending = (removal, placement)
        else:
            self._pending = move
        removal, _ = self._pending
        if removal is None:
            for p in range(game.k):
                if p not in game.placements:
                    return p
            raise AssertionError("no free pebble for a fresh placement")
        for p, pair in sorted(game.placements.items()):
            if pair == removal:
                return p
        raise AssertionError("planned removal not on the board")

    def pick_place(self, game) -> str:
        removal, placement = self._pending
        pairs = [
            pair for p, pair in game.placements.items() if p != game.picked
        ]
        _, after = self.planner.respond(tuple(sorted(pairs)), self.memory_key)
        self.memory_key = after(placement)
        return placement


def find_winning_move(
    planner,
    a: Structure,
    b: Structure,
    k: int,
    depth: int,
    pairs: Tuple[Tuple[str, str], ...] = (),
    memory_key: Optional[MemoryKey] = None,
) -> Optional[Tuple[Optional[Tuple[str, str]], str]]:
    """First-player winning move within `depth` rounds, or None.

    The opponent is modeled by `planner` (deterministic responses keyed
    by board and memory).  Returns (pair_to_lift_or_None, vertex) for
    the first winning option in canonical order; None means exhaustive
    search found no forced win, which for a deterministic opponent is a
    proof of survival at this horizon.
    """
    if memory_key is None:
        memory_key = planner.initial_key()
    memo: Dict[Tuple, bool] = {}

    def can_win(pairs: Tuple[Tuple[str, str], ...], mkey: MemoryKey, left: int) -> bool:
        if left == 0:
            return False
        state = (pairs, mkey, left)
        if state in memo:
            return memo[state]
        memo[state] = False  # cycles cannot help the first player
        result = False
        for removal, rest in _pickup_options(pairs, k):
            bijection, after = planner.respond(rest, mkey)
            for a_v in a.vertices:
                b_v = bijection.apply(a_v)
                board = tuple(sorted(rest + ((a_v, b_v),)))
                if check_partial_isomorphism(a, b, board) is not None:
                    result = True
                    break
                if can_win(board, after(a_v), left - 1):
                    result = True
                    break
            if result:
                break
        memo[state] = result
        return result

    for removal, rest in _pickup_options(pairs, k):
        bijection, after = planner.respond(rest, memory_key)
        for a_v in a.vertices:
            b_v = bijection.apply(a_v)
            board = tuple(sorted(rest + ((a_v, b_v),)))
            if check_partial_isomorphism(a, b, board) is not None:
                return removal, a_v
            if can_win(board, after(a_v), depth - 1):
                return removal, a_v
    return None


def _pickup_options(
    pairs: Tuple[Tuple[str, str], ...], k: int
) -> List[Tuple[Optional[Tuple[str, str]], Tuple[Tuple[str, str], ...]]]:
    options: List[Tuple[Optional[Tuple[str, str]], Tuple[Tuple[str, str], ...]]] = []
    if len(pairs) < k:
        options.append((None, pairs))
    seen = set()
    for i, pair in enumerate(pairs):
        if pair in seen:
            continue
        seen.add(pair)
        options.append((pair, pairs[:i] + pairs[i + 1 :]))
    return options
