"""Undirected multigraphs: girth, path enumeration, presets, sampling.

Vertices are strings.  Edges are stored as (u, v) name pairs with
u <= v; the edge list may contain repeats (parallel edges) and loops,
though most callers require simple graphs and say so.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "INFINITE_GIRTH",
    "MultiGraph",
    "TreeSubgraph",
    "components",
    "girth",
    "graph_from_json",
    "graph_to_json",
    "paths_from_edge",
    "preset",
    "random_regular",
    "steiner_tree",
]

INFINITE_GIRTH = float("inf")

Edge = Tuple[str, str]


def _norm_edge(u: str, v: str) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class MultiGraph:
    """Immutable multigraph with canonical vertex and edge ordering."""

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    _adj: Dict[str, List[Tuple[int, str]]] = field(
        init=False, repr=False, compare=False, hash=False, default=None  # type: ignore[assignment]
    )

    @staticmethod
    def build(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> "MultiGraph":
        vs = tuple(sorted(set(vertices)))
        known = set(vs)
        norm = []
        for e in edges:
            u, v = e
            if u not in known or v not in known:
                raise ValueError(f"edge {(u, v)} touches unknown vertex")
            norm.append(_norm_edge(u, v))
        return MultiGraph(vs, tuple(sorted(norm)))

    def __post_init__(self) -> None:
        adj: Dict[str, List[Tuple[int, str]]] = {v: [] for v in self.vertices}
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((i, v))
            if u != v:
                adj[v].append((i, u))
        object.__setattr__(self, "_adj", adj)

    def adjacency(self, v: str) -> List[Tuple[int, str]]:
        """Incident (edge_index, neighbor) pairs; loops listed once."""
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v]) + sum(
            1 for _, w in self._adj[v] if w == v
        )

    def neighbors(self, v: str) -> List[str]:
        return sorted({w for _, w in self._adj[v]})

    def has_edge(self, u: str, v: str) -> bool:
        return _norm_edge(u, v) in set(self.edges)

    def is_simple(self) -> bool:
        if any(u == v for u, v in self.edges):
            return False
        return len(set(self.edges)) == len(self.edges)


def components(g: MultiGraph) -> List[Tuple[str, ...]]:
    """Connected components, each sorted, listed by least vertex."""
    seen: set[str] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for _, w in g.adjacency(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return out


def girth(g: MultiGraph):
    """Length of the shortest cycle; INFINITE_GIRTH for forests.

    A self-loop is a 1-cycle and a parallel pair a 2-cycle.
    """
    if any(u == v for u, v in g.edges):
        return 1
    if len(set(g.edges)) < len(g.edges):
        return 2
    best = INFINITE_GIRTH
    for src in g.vertices:
        dist = {src: 0}
        via = {src: -1}  # edge index used to reach each vertex
        queue = deque([src])
        while queue:
            v = queue.popleft()
            if dist[v] * 2 >= best:
                continue
            for ei, w in g.adjacency(v):
                if ei == via[v]:
                    continue
                if w not in dist:
                    dist[w] = dist[v] + 1
                    via[w] = ei
                    queue.append(w)
                else:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def paths_from_edge(g: MultiGraph, e: Sequence[str], r: int) -> List[Tuple[str, ...]]:
    """Edge-nonrepeating paths of exactly r edges whose first edge is e.

    Both orientations of e are used as the start, so every returned
    vertex tuple has r + 1 entries and begins with (u, v, ...) or
    (v, u, ...).  Edges may repeat as vertex pairs only when the graph
    has parallel edges; each physical edge is used at most once.
    """
    if r < 1:
        raise ValueError("path length must be at least 1")
    u, v = e
    matching = [i for i, ed in enumerate(g.edges) if ed == _norm_edge(u, v)]
    if not matching:
        raise ValueError(f"edge {(u, v)} not in graph")
    first = matching[0]
    out: List[Tuple[str, ...]] = []

    def extend(path: List[str], used: set, depth: int) -> None:
        if depth == r:
            out.append(tuple(path))
            return
        tail = path[-1]
        for ei, w in g.adjacency(tail):
            if ei in used:
                continue
            path.append(w)
            used.add(ei)
            extend(path, used, depth + 1)
            used.remove(ei)
            path.pop()

    for a, b in ((u, v), (v, u)):
        extend([a, b], {first}, 1)
    return sorted(out)


# --- presets ------------------------------------------------------------

def _complete(n: int) -> MultiGraph:
    vs = [f"v{i}" for i in range(1, n + 1)]
    es = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    return MultiGraph.build(vs, es)


def _petersen() -> MultiGraph:
    outer = [f"o{i}" for i in range(5)]
    inner = [f"i{i}" for i in range(5)]
    es = []
    for i in range(5):
        es.append((outer[i], outer[(i + 1) % 5]))
        es.append((inner[i], inner[(i + 2) % 5]))
        es.append((outer[i], inner[i]))
    return MultiGraph.build(outer + inner, es)


def _lcf(n: int, jumps: Sequence[int], reps: int) -> MultiGraph:
    """Hamiltonian cubic graph from LCF notation [jumps]^reps."""
    assert n == len(jumps) * reps
    vs = [f"n{i:02d}" for i in range(n)]
    es = {(vs[i], vs[(i + 1) % n]) for i in range(n)}
    norm = lambda a, b: (a, b) if a <= b else (b, a)
    es = {norm(a, b) for a, b in es}
    for i in range(n):
        j = jumps[i % len(jumps)]
        es.add(norm(vs[i], vs[(i + j) % n]))
    return MultiGraph.build(vs, sorted(es))


_PRESETS = {
    "K3": lambda: _complete(3),
    "K4": lambda: _complete(4),
    "Petersen": _petersen,
    "Heawood": lambda: _lcf(14, [5, -5], 7),
    "McGee": lambda: _lcf(24, [12, 7, -7], 8),
    "TutteCoxeter": lambda: _lcf(30, [-13, -9, 7, -7, 9, 13], 5),
}


def preset(name: str) -> MultiGraph:
    """Named standard graph: K3, K4, Petersen, Heawood, McGee, TutteCoxeter."""
    try:
        return _PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown graph preset {name!r}; choices: {sorted(_PRESETS)}"
        ) from None


# --- random regular graphs ----------------------------------------------

def random_regular(
    n: int,
    d: int,
    min_girth: int,
    seed: int,
    max_tries: int,
) -> Optional[MultiGraph]:
    """Uniform-ish d-regular simple graph with girth >= min_girth.

    Repeatedly draws a perfect matching on n*d stubs and rejects any
    outcome with loops, parallel edges, or short cycles.  Returns None
    when max_tries rejections pass without a hit; infeasible (n*d odd,
    or d >= n) parameters are an immediate error instead.
    """
    if d < 3:
        raise ValueError("degree must be at least 3")
    if (n * d) % 2 == 1:
        raise ValueError(f"n*d = {n * d} is odd; no {d}-regular graph on {n} vertices")
    if d >= n:
        raise ValueError("need d < n for a simple regular graph")
    rng = random.Random(seed)
    vs = [f"g{i:03d}" for i in range(n)]
    stubs = [i for i in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(stubs)
        pairs = [
            (stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)
        ]
        if any(a == b for a, b in pairs):
            continue
        norm = {(min(a, b), max(a, b)) for a, b in pairs}
        if len(norm) < len(pairs):
            continue
        g = MultiGraph.build(vs, [(vs[a], vs[b]) for a, b in sorted(norm)])
        if girth(g) >= min_girth:
            return g
    return None


# --- minimal Steiner trees ----------------------------------------------

@dataclass(frozen=True)
class TreeSubgraph:
    """A subtree of a host graph, held as vertex and edge sets."""

    vertices: FrozenSet[str]
    edges: FrozenSet[Edge]

    @staticmethod
    def empty() -> "TreeSubgraph":
        return TreeSubgraph(frozenset(), frozenset())

    def check_against(self, host: MultiGraph) -> None:
        host_edges = set(host.edges)
        for e in self.edges:
            if e not in host_edges:
                raise ValueError(f"edge {e} not in host graph")
        touched = {x for e in self.edges for x in e}
        if not touched <= self.vertices:
            raise ValueError("edge endpoints missing from vertex set")
        if self.edges and len(self.edges) != len(self.vertices) - len(
            self._components()
        ):
            raise ValueError("subgraph contains a cycle")

    def _components(self) -> List[set]:
        adj: Dict[str, set] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        comps, seen = [], set()
        for s in sorted(self.vertices):
            if s in seen:
                continue
            comp, queue = {s}, deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)


def _edge_key(edges: FrozenSet[Edge]) -> Tuple[int, Tuple[Edge, ...]]:
    return (len(edges), tuple(sorted(edges)))


def steiner_tree(g: MultiGraph, terminals: Iterable[str]) -> TreeSubgraph:
    """Minimum-edge subtree of g spanning the terminal set.

    Exact subset dynamic programming; among minimum trees the
    lexicographically least edge set wins, making results reproducible.
    All terminals must be in one connected component.
    """
    ts = sorted(set(terminals))
    if not ts:
        raise ValueError("need at least one terminal")
    for t in ts:
        if t not in set(g.vertices):
            raise ValueError(f"terminal {t} not in graph")
    comp_of = {}
    for comp in components(g):
        for v in comp:
            comp_of[v] = comp[0]
    if len({comp_of[t] for t in ts}) > 1:
        raise ValueError("terminals span multiple components")
    if len(ts) == 1:
        return TreeSubgraph(frozenset(ts), frozenset())

    simple_edges = sorted(set((u, v) for u, v in g.edges if u != v))
    full = (1 << len(ts)) - 1
    bit = {t: 1 << i for i, t in enumerate(ts)}
    # dp[(mask, v)] = least edge set connecting terminal subset `mask`
    # together with vertex v, under the (size, sorted edges) order.
    dp: Dict[Tuple[int, str], FrozenSet[Edge]] = {}
    for t in ts:
        dp[(bit[t], t)] = frozenset()
    for v in g.vertices:
        dp.setdefault((0, v), frozenset())

    changed = True
    while changed:
        changed = False
        # merge step: two subtrees meeting at v
        items = sorted(dp.items(), key=lambda kv: (kv[0][0], kv[0][1]))
        for (mask1, v), es1 in items:
            for mask2 in range(1, full + 1):
                if mask1 & mask2:
                    continue
                es2 = dp.get((mask2, v))
                if es2 is None:
                    continue
                cand = es1 | es2
                key = (mask1 | mask2, v)
                cur = dp.get(key)
                if cur is None or _edge_key(cand) < _edge_key(cur):
                    dp[key] = cand
                    changed = True
        # grow step: extend along one edge
        for (mask, v), es in sorted(
            dp.items(), key=lambda kv: (kv[0][0], kv[0][1])
        ):
            for u, w in simple_edges:
                if v == u:
                    other = w
                elif v == w:
                    other = u
                else:
                    continue
                cand = es | {(u, w)}
                key = (mask, other)
                cur = dp.get(key)
                if cur is None or _edge_key(cand) < _edge_key(cur):
                    dp[key] = cand
                    changed = True

    best: Optional[FrozenSet[Edge]] = None
    for t in ts:
        cand = dp.get((full, t))
        if cand is not None and (best is None or _edge_key(cand) < _edge_key(best)):
            best = cand
    assert best is not None
    vertices = set(ts) | {x for e in best for x in e}
    tree = TreeSubgraph(frozenset(vertices), best)
    tree.check_against(g)
    return tree


# --- serialization ------------------------------------------------------

def graph_to_json(g: MultiGraph) -> dict:
    return {
        "format": "graph-v1",
        "vertices": list(g.vertices),
        "edges": [[u, v] for u, v in g.edges],
    }


def graph_from_json(obj: dict) -> MultiGraph:
    if not isinstance(obj, dict) or obj.get("format") != "graph-v1":
        raise ValueError("not a graph-v1 document")
    return MultiGraph.build(obj["vertices"], obj["edges"])


def graph_loads(text: str) -> MultiGraph:
    return graph_from_json(json.loads(text))
