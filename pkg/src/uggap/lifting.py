"""Label-copy lifting of shift-bundle instances.

Lifting replaces each vertex v by a fan of copies v#g, one per group
element g, and each base constraint x_u - x_v = z by the family
x_{u#g1} - x_{v#g2} = z + g1 + g2 over all copy pairs.  The optimum is
preserved: any base assignment transfers to the lift and vice versa.
"""

from __future__ import annotations

from typing import Tuple

from .gf2 import from_bitstring, to_bitstring
from .instances import GroupUgInstance

__all__ = ["lift", "lifted_name", "split_lifted_name"]

DEFAULT_LIFT_BUDGET = 200_000


def lifted_name(v: str, g: int, m: int) -> str:
    """Name of the g-copy of base vertex v."""
    return f"{v}#{to_bitstring(g, m)}"


def split_lifted_name(name: str) -> Tuple[str, int, int]:
    """Inverse of lifted_name: (base vertex, group element, width)."""
    base, sep, tail = name.rpartition("#")
    if not sep or not base:
        raise ValueError(f"{name!r} is not a lifted vertex name")
    g, width = from_bitstring(tail)
    return base, g, width


def lift(inst: GroupUgInstance, budget: int = DEFAULT_LIFT_BUDGET) -> GroupUgInstance:
    """Label-copy lift of `inst` onto q copies of each vertex.

    The lifted instance has n*q vertices and q^2 * C constraints, where
    C counts (edge, shift) pairs of the base.  Refuses to build when the
    lifted constraint count exceeds `budget`.
    """
    q = inst.q
    lifted_constraints = q * q * inst.constraint_count
    if lifted_constraints > budget:
        raise ValueError(
            f"lift would create {lifted_constraints} constraints, over budget {budget}"
        )
    vertices = [
        lifted_name(v, g, inst.m)
        for v in inst.graph.vertices
        for g in range(q)
    ]
    bundle_map = {}
    for (u, v), shifts in inst.bundles.items():
        for g1 in range(q):
            for g2 in range(q):
                key = (
                    lifted_name(u, g1, inst.m),
                    lifted_name(v, g2, inst.m),
                )
                bundle_map[key] = [z ^ g1 ^ g2 for z in shifts]
    return GroupUgInstance.build(inst.m, vertices, bundle_map)
