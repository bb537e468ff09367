"""Constraint instances over the group Z2^m with bundled shifts.

An instance attaches to each edge {u, v} of a simple base graph a
nonempty duplicate-free bundle of shift vectors z, each standing for
the constraint x_u - x_v = z.  Over a power of Z2 the constraint reads
the same in both directions, so bundles are stored against canonical
(u <= v) edges.  Satisfaction fractions are exact rationals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from .graphs import MultiGraph
from .gf2 import from_bitstring, to_bitstring

__all__ = [
    "Assignment",
    "GroupUgInstance",
    "RelationalView",
    "instance_from_json",
    "instance_to_json",
    "validate",
]

Assignment = Dict[str, int]
Edge = Tuple[str, str]


@dataclass(frozen=True)
class GroupUgInstance:
    """Shift-bundle constraint instance over Z2^m.

    Construction normalizes edge orientation and bundle order but keeps
    whatever content it is given; use validate() to vet foreign data.
    """

    m: int
    graph: MultiGraph
    bundles: Mapping[Edge, Tuple[int, ...]]

    @staticmethod
    def build(
        m: int,
        vertices: Iterable[str],
        bundle_map: Mapping[Sequence[str], Iterable[int]],
    ) -> "GroupUgInstance":
        edges = []
        bundles: Dict[Edge, Tuple[int, ...]] = {}
        for e, shifts in bundle_map.items():
            u, v = e
            key = (u, v) if u <= v else (v, u)
            if key in bundles:
                raise ValueError(f"duplicate bundle for edge {key}")
            edges.append(key)
            bundles[key] = tuple(sorted(set(shifts)))
        g = MultiGraph.build(vertices, edges)
        return GroupUgInstance(m, g, dict(sorted(bundles.items())))

    @property
    def q(self) -> int:
        """Label count, 2^m."""
        return 1 << self.m

    @property
    def constraint_count(self) -> int:
        return sum(len(b) for b in self.bundles.values())

    def bundle(self, u: str, v: str) -> Tuple[int, ...]:
        key = (u, v) if u <= v else (v, u)
        return self.bundles[key]


def validate(inst: GroupUgInstance) -> List[str]:
    """All invariant violations, as human-readable strings."""
    problems = []
    if inst.m < 1:
        problems.append(f"m must be positive, got {inst.m}")
    if not inst.graph.is_simple():
        problems.append("base graph must be simple (no loops or parallels)")
    edge_set = set(inst.graph.edges)
    for e in edge_set:
        if e not in inst.bundles:
            problems.append(f"edge {e} has no bundle")
    q = 1 << max(inst.m, 1)
    for e, shifts in inst.bundles.items():
        if e not in edge_set:
            problems.append(f"bundle for absent edge {e}")
        if len(shifts) == 0:
            problems.append(f"empty bundle on {e}")
        if len(set(shifts)) != len(shifts):
            problems.append(f"duplicate shifts on {e}")
        if tuple(sorted(shifts)) != tuple(shifts):
            problems.append(f"unsorted bundle on {e}")
        for z in shifts:
            if not 0 <= z < q:
                problems.append(f"shift {z} on {e} outside Z2^{inst.m}")
    return problems


def value(inst: GroupUgInstance, assignment: Assignment) -> Fraction:
    """Exact satisfied fraction of the constraint list under `assignment`.

    Each (edge, shift) pair counts once.  At most one shift per bundle
    can hold for a fixed assignment, since x_u xor x_v is one value.
    """
    total = inst.constraint_count
    if total == 0:
        raise ValueError("instance has no constraints; value is undefined")
    q = inst.q
    for v in inst.graph.vertices:
        if v not in assignment:
            raise ValueError(f"assignment misses vertex {v}")
        if not 0 <= assignment[v] < q:
            raise ValueError(f"label {assignment[v]} for {v} outside Z2^{inst.m}")
    sat = 0
    for (u, v), shifts in inst.bundles.items():
        d = assignment[u] ^ assignment[v]
        if d in shifts:
            sat += 1
    return Fraction(sat, total)


def canonicalize(inst: GroupUgInstance) -> GroupUgInstance:
    """Fully sorted rebuild; a fixed point of itself."""
    problems = validate(inst)
    if problems:
        raise ValueError("; ".join(problems))
    return GroupUgInstance.build(
        inst.m,
        inst.graph.vertices,
        {e: inst.bundles[e] for e in inst.graph.edges},
    )


class RelationalView:
    """Shift relations of an instance, keyed by element pairs.

    Presents the instance the way the pebble game consumes it: for any
    two vertices, the set of shifts g with an x_u - x_v = g constraint.
    """

    def __init__(self, inst: GroupUgInstance):
        self.m = inst.m
        self.universe: Tuple[str, ...] = inst.graph.vertices
        self._shifts: Dict[Edge, FrozenSet[int]] = {
            e: frozenset(b) for e, b in inst.bundles.items()
        }

    def shifts_between(self, a: str, b: str) -> FrozenSet[int]:
        key = (a, b) if a <= b else (b, a)
        return self._shifts.get(key, frozenset())

    def holds(self, g: int, a: str, b: str) -> bool:
        return g in self.shifts_between(a, b)


# --- serialization ------------------------------------------------------

def instance_to_json(inst: GroupUgInstance) -> dict:
    return {
        "format": "ug-group-v1",
        "m": inst.m,
        "vertices": list(inst.graph.vertices),
        "edges": [
            {
                "u": u,
                "v": v,
                "shifts": [to_bitstring(z, inst.m) for z in inst.bundles[(u, v)]],
            }
            for u, v in inst.graph.edges
        ],
    }


def instance_from_json(obj: dict) -> GroupUgInstance:
    if not isinstance(obj, dict) or obj.get("format") != "ug-group-v1":
        raise ValueError("not a ug-group-v1 document")
    m = obj["m"]
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"bad dimension {m!r}")
    bundle_map = {}
    for rec in obj["edges"]:
        shifts = []
        for s in rec["shifts"]:
            z, width = from_bitstring(s)
            if width != m:
                raise ValueError(f"shift {s!r} has width {width}, expected {m}")
            shifts.append(z)
        bundle_map[(rec["u"], rec["v"])] = shifts
    inst = GroupUgInstance.build(m, obj["vertices"], bundle_map)
    problems = validate(inst)
    if problems:
        raise ValueError("; ".join(problems))
    return inst


def instance_loads(text: str) -> GroupUgInstance:
    return instance_from_json(json.loads(text))
