"""Small frozen instance pairs used by tests, the CLI, and the service.

Two pairs are shipped: a triangle over Z2 with a single twisted edge
(`fig2`), and a complete graph on four vertices over Z2^2 whose edge
subspaces follow the three perfect matchings (`fig3`).  The data is
written out literally rather than re-derived at import time, so any
drift in the samplers or builders shows up as a test failure instead of
silently changing the shipped examples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from .construction import EdgeData, EdgeRecord
from .gf2 import Gf2Subspace, zero_subspace
from .graphs import MultiGraph
from .instances import GroupUgInstance
from .lifting import lift

__all__ = [
    "PresetPair",
    "REGISTRY",
    "StrategyContext",
    "instance_token_names",
    "pair_names",
    "resolve_instance_token",
    "resolve_pair",
]

Edge = Tuple[str, str]


@dataclass(frozen=True)
class StrategyContext:
    """What the tree-based duplicator needs to know about a pair.

    `graph` is the constraint graph shared by both instances, with the
    subspace and shift of every edge in `edge_data`; `r` is the path
    length beyond which subspaces are guaranteed to span.
    """

    graph: MultiGraph
    edge_data: EdgeData
    r: int

    @property
    def m(self) -> int:
        return self.edge_data.m


@dataclass(frozen=True)
class PresetPair:
    """A named pair of instances on a common annotated graph."""

    name: str
    description: str
    graph: MultiGraph
    edge_data: EdgeData
    r: int
    u1: GroupUgInstance
    u2: GroupUgInstance

    def context(self) -> StrategyContext:
        return StrategyContext(self.graph, self.edge_data, self.r)

    def lifted(self) -> Tuple[GroupUgInstance, GroupUgInstance]:
        return lift(self.u1), lift(self.u2)


def _space(m: int, *vectors: int) -> Gf2Subspace:
    if not vectors:
        return zero_subspace(m)
    from .gf2 import rref_basis

    return rref_basis(list(vectors), m)


def _build_fig2() -> PresetPair:
    graph = MultiGraph.build("v1 v2 v3".split(), [("v1", "v2"), ("v1", "v3"), ("v2", "v3")])
    b = {("v1", "v2"): 0, ("v1", "v3"): 0, ("v2", "v3"): 1}
    records: Dict[Edge, EdgeRecord] = {
        e: EdgeRecord(_space(1), shift) for e, shift in b.items()
    }
    data = EdgeData(1, 0, records)
    u1 = GroupUgInstance.build(1, graph.vertices, {e: [0] for e in graph.edges})
    u2 = GroupUgInstance.build(1, graph.vertices, {e: [shift] for e, shift in b.items()})
    return PresetPair(
        "fig2",
        "triangle over Z2: identity constraints vs one twisted edge",
        graph,
        data,
        10**6,
        u1,
        u2,
    )


def _build_fig3() -> PresetPair:
    graph = MultiGraph.build(
        "v1 v2 v3 v4".split(),
        [
            ("v1", "v2"),
            ("v1", "v3"),
            ("v1", "v4"),
            ("v2", "v3"),
            ("v2", "v4"),
            ("v3", "v4"),
        ],
    )
    # Lines follow the three perfect matchings of K4: opposite edges
    # share a direction, adjacent edges never do.
    gen = {
        ("v1", "v2"): 0b01,
        ("v3", "v4"): 0b01,
        ("v1", "v3"): 0b10,
        ("v2", "v4"): 0b10,
        ("v1", "v4"): 0b11,
        ("v2", "v3"): 0b11,
    }
    b = {e: 0 for e in graph.edges}
    b[("v3", "v4")] = 0b10
    records = {
        e: EdgeRecord(_space(2, gen[e]), b[e]) for e in graph.edges
    }
    data = EdgeData(2, 1, records)
    bundles1 = {e: [0, gen[e]] for e in graph.edges}
    bundles2 = {e: [b[e], gen[e] ^ b[e]] for e in graph.edges}
    u1 = GroupUgInstance.build(2, graph.vertices, bundles1)
    u2 = GroupUgInstance.build(2, graph.vertices, bundles2)
    return PresetPair(
        "fig3",
        "complete graph on 4 vertices over Z2^2 with matching-aligned lines",
        graph,
        data,
        2,
        u1,
        u2,
    )


REGISTRY: Mapping[str, PresetPair] = {
    p.name: p for p in (_build_fig2(), _build_fig3())
}


def pair_names() -> Tuple[str, ...]:
    return tuple(sorted(REGISTRY))


def resolve_pair(name: str) -> PresetPair:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(pair_names())}"
        ) from None


def instance_token_names() -> Tuple[str, ...]:
    names = []
    for p in pair_names():
        for side in ("u1", "u2"):
            names.append(f"{p}-{side}")
            names.append(f"{p}-{side}-lifted")
    return tuple(names)


def resolve_instance_token(token: str) -> Optional[GroupUgInstance]:
    """Map tokens like fig3-u2-lifted to their instance, else None."""
    parts = token.split("-")
    if len(parts) not in (2, 3) or parts[0] not in REGISTRY:
        return None
    if parts[1] not in ("u1", "u2"):
        return None
    lifted = len(parts) == 3
    if lifted and parts[2] != "lifted":
        return None
    pair = REGISTRY[parts[0]]
    inst = pair.u1 if parts[1] == "u1" else pair.u2
    return lift(inst) if lifted else inst
