"""Shared fixtures and random-instance generators for the suite."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Optional

from uggap.instances import GroupUgInstance


def random_instance(
    rng: random.Random,
    max_vertices: int = 5,
    m_choices=(1, 2),
    max_bundle: int = 2,
    force_single_shift: bool = False,
    min_vertices: int = 2,
) -> GroupUgInstance:
    """Small random instance on a random simple graph.

    Always has at least one constraint.  Bundles draw 1..max_bundle
    distinct shifts unless force_single_shift pins them to one.
    """
    m = rng.choice(list(m_choices))
    q = 1 << m
    n = rng.randrange(min_vertices, max_vertices + 1)
    vs = [f"w{i}" for i in range(n)]
    pairs = list(combinations(vs, 2))
    rng.shuffle(pairs)
    keep = max(1, rng.randrange(0, len(pairs) + 1))
    bundle_map = {}
    for e in pairs[:keep]:
        width = 1 if force_single_shift else rng.randrange(1, max_bundle + 1)
        shifts = rng.sample(range(q), min(width, q))
        bundle_map[e] = shifts
    return GroupUgInstance.build(m, vs, bundle_map)


def random_consistent_instance(
    rng: random.Random,
    max_vertices: int = 5,
    m_choices=(1, 2),
) -> GroupUgInstance:
    """Instance built backward from a hidden assignment, so opt = 1."""
    m = rng.choice(list(m_choices))
    q = 1 << m
    n = rng.randrange(2, max_vertices + 1)
    vs = [f"w{i}" for i in range(n)]
    hidden = {v: rng.randrange(q) for v in vs}
    pairs = list(combinations(vs, 2))
    rng.shuffle(pairs)
    keep = max(1, rng.randrange(0, len(pairs) + 1))
    bundle_map = {
        (u, v): [hidden[u] ^ hidden[v]] for u, v in pairs[:keep]
    }
    return GroupUgInstance.build(m, vs, bundle_map)
