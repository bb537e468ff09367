"""Exact optimization and satisfiability for shift-bundle instances.

Exhaustive enumeration is kept honest by translation symmetry: labels
within one connected component can all be shifted by a constant without
changing satisfaction, so one vertex per component is pinned to zero.
The satisfiability check is a propagation fixpoint that never
enumerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from .graphs import components
from .instances import Assignment, GroupUgInstance, value

__all__ = [
    "BudgetExceeded",
    "ConflictWitness",
    "DerivationStep",
    "OptResult",
    "exact_opt",
    "inconsistent_cycle",
    "is_completely_satisfiable",
]

DEFAULT_BUDGET = 1 << 30


class BudgetExceeded(ValueError):
    """Enumeration would exceed the configured assignment budget."""


@dataclass(frozen=True)
class OptResult:
    optimum: Fraction
    witness: Assignment
    enumerated: int


def _enumeration_size(q: int, free_counts: List[int]) -> int:
    total = 1
    for c in free_counts:
        total *= q**c
    return total


def exact_opt(
    inst: GroupUgInstance,
    budget: int = DEFAULT_BUDGET,
    pin: bool = True,
) -> OptResult:
    """Maximum satisfied fraction with a lexicographically least witness.

    Iterates labels in odometer order over sorted vertices (pinned
    vertices, the least of each component, stay at zero when `pin`),
    keeping the first assignment attaining the maximum.  Refuses to
    start when the enumeration count exceeds `budget`.
    """
    if inst.constraint_count == 0:
        raise ValueError("instance has no constraints; optimum is undefined")
    comps = components(inst.graph)
    q = inst.q
    pinned = {c[0] for c in comps} if pin else set()
    free = [v for v in inst.graph.vertices if v not in pinned]
    size = _enumeration_size(q, [len(free)])
    if size > budget:
        raise BudgetExceeded(
            f"{q}^{len(free)} = {size} assignments exceed budget {budget}"
        )
    cons: List[Tuple[int, int, Tuple[int, ...]]] = []
    index = {v: i for i, v in enumerate(inst.graph.vertices)}
    for (u, v), shifts in inst.bundles.items():
        cons.append((index[u], index[v], shifts))
    total = inst.constraint_count

    labels = [0] * len(inst.graph.vertices)
    free_idx = [index[v] for v in free]
    best_sat = -1
    best: Optional[List[int]] = None
    enumerated = 0
    for combo in product(range(q), repeat=len(free_idx)):
        for slot, lab in zip(free_idx, combo):
            labels[slot] = lab
        enumerated += 1
        sat = 0
        for ui, vi, shifts in cons:
            if labels[ui] ^ labels[vi] in shifts:
                sat += 1
        if sat > best_sat:
            best_sat = sat
            best = labels[:]
            if sat == total:
                break
    assert best is not None
    witness = {v: best[index[v]] for v in inst.graph.vertices}
    return OptResult(Fraction(best_sat, total), witness, enumerated)


@dataclass(frozen=True)
class DerivationStep:
    """One propagation move: label at `src` forced `label` at `dst`."""

    src: str
    dst: str
    shift: int


@dataclass(frozen=True)
class ConflictWitness:
    """Two derivation chains forcing different labels on one vertex.

    Both chains start from the same anchor at label zero; replaying the
    shifts along each yields the two clashing labels.
    """

    vertex: str
    label_a: int
    chain_a: Tuple[DerivationStep, ...]
    label_b: int
    chain_b: Tuple[DerivationStep, ...]


def _replay(chain: Tuple[DerivationStep, ...]) -> int:
    label = 0
    for step in chain:
        label ^= step.shift
    return label


def is_completely_satisfiable(
    inst: GroupUgInstance,
) -> Tuple[bool, Optional[Assignment], Optional[ConflictWitness]]:
    """Decide whether every constraint can hold at once.

    Anchors the least vertex of each component at zero and propagates
    forced labels across bundles to a fixpoint.  Translation symmetry
    makes the zero anchor lossless.  Returns (True, assignment, None)
    or (False, None, witness).
    """
    if inst.constraint_count == 0:
        raise ValueError("instance has no constraints; question is vacuous")
    # adjacency over bundles
    adj: Dict[str, List[Tuple[str, Tuple[int, ...]]]] = {
        v: [] for v in inst.graph.vertices
    }
    for (u, v), shifts in inst.bundles.items():
        adj[u].append((v, shifts))
        adj[v].append((u, shifts))

    derived: Dict[str, int] = {}
    parent: Dict[str, DerivationStep] = {}

    def chain_to(v: str) -> Tuple[DerivationStep, ...]:
        steps: List[DerivationStep] = []
        cur = v
        while cur in parent:
            steps.append(parent[cur])
            cur = parent[cur].src
        return tuple(reversed(steps))

    for comp in components(inst.graph):
        anchor = comp[0]
        derived[anchor] = 0
        frontier = [anchor]
        while frontier:
            nxt: List[str] = []
            for u in sorted(frontier):
                for v, shifts in adj[u]:
                    for z in shifts:
                        forced = derived[u] ^ z
                        if v not in derived:
                            derived[v] = forced
                            parent[v] = DerivationStep(u, v, z)
                            nxt.append(v)
                        elif derived[v] != forced:
                            chain_a = chain_to(v)
                            chain_b = chain_to(u) + (
                                DerivationStep(u, v, z),
                            )
                            witness = ConflictWitness(
                                v, derived[v], chain_a, forced, chain_b
                            )
                            assert _replay(chain_a) == derived[v]
                            assert _replay(chain_b) == forced
                            return False, None, witness
            frontier = nxt
    return True, dict(derived), None


def inconsistent_cycle(
    witness: ConflictWitness,
) -> List[Tuple[str, str, int]]:
    """Closed walk with a nonzero shift sum extracted from a conflict.

    Returns (from, to, shift) steps tracing chain_b forward and chain_a
    backward; symmetry of the group makes the reversed steps use the
    same shifts.  The walk starts and ends at the common anchor, and
    the xor of all shifts equals label_a xor label_b, which is nonzero.
    """
    steps = [(s.src, s.dst, s.shift) for s in witness.chain_b]
    steps += [(s.dst, s.src, s.shift) for s in reversed(witness.chain_a)]
    total = 0
    for _, _, z in steps:
        total ^= z
    assert total == witness.label_a ^ witness.label_b != 0
    return steps
