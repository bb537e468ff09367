"""The two-instance gap construction and its supporting analysis tools.

From a d-regular base graph, a subspace Z(e) and a vector b(e) per
edge, two instances are built: one whose bundles are the subspaces
themselves (optimum exactly 2^-ell on solvable sizes) and one whose
bundles are shifted by b(e).  Edges are kept only when every length-r
path leaving them accumulates a full-dimensional span, which is what
the soundness argument needs.  Faithful parameter sizes are astronomically
large, so builders accept overridden m, ell, r and mark outputs
unfaithful.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .gf2 import (
    Gf2Subspace,
    coordinates,
    from_bitstring,
    join,
    rref_basis,
    sample_subspace,
    sample_vector,
    to_bitstring,
    zero_subspace,
)
from .graphs import (
    MultiGraph,
    graph_from_json,
    graph_to_json,
    paths_from_edge,
)
from .instances import GroupUgInstance, instance_from_json, instance_to_json

__all__ = [
    "ConstructionOutput",
    "ConstructionParams",
    "DecayTrace",
    "EdgeData",
    "EdgeRecord",
    "GapParams",
    "NonSpanningPathError",
    "approx_gap_params",
    "branching_inequality_slack",
    "build_gap_pair",
    "ceil_affine_log2",
    "classify_good_edges",
    "decay_simulation",
    "derive_params",
    "extend_along_path",
    "load_output",
    "sample_edge_data",
    "write_output",
]

Edge = Tuple[str, str]


# --- exact arithmetic helpers -------------------------------------------

def _log_predicate(a: Fraction, b: Fraction, x: Fraction, n: int) -> bool:
    """Exact test of a + b*log2(x) <= n using integer powers only."""
    t = math.lcm(a.denominator, b.denominator)
    big_b = int(t * b)
    big_e = t * n - int(t * a)
    p, q = x.numerator, x.denominator
    if big_b < 0:
        p, q, big_b = q, p, -big_b
    # now test p^big_b / q^big_b <= 2^big_e
    lhs, rhs = p**big_b, q**big_b
    if big_e >= 0:
        rhs <<= big_e
    else:
        lhs <<= -big_e
    return lhs <= rhs


def ceil_affine_log2(a: Fraction, b: Fraction, x: Fraction) -> int:
    """Exact ceil(a + b*log2(x)) for rational a, b and rational x > 0."""
    if x <= 0:
        raise ValueError("logarithm argument must be positive")
    est = float(a) + float(b) * math.log2(float(x))
    n = math.floor(est) - 2
    while not _log_predicate(a, b, x, n):
        n += 1
    while n - 1 >= math.floor(est) - 4 and _log_predicate(a, b, x, n - 1):
        n -= 1
    return n


# --- parameter derivation -----------------------------------------------

@dataclass(frozen=True)
class ConstructionParams:
    """Derived sizes for a target (epsilon, delta, ell)."""

    epsilon: Fraction
    delta: Fraction
    ell: int
    d: int
    gamma: Fraction
    m: int
    r: int

    @property
    def q(self) -> int:
        return 1 << self.m


def derive_params(epsilon: Fraction, delta: Fraction, ell: int) -> ConstructionParams:
    """Exact evaluation of the published parameter recipe.

    d = 2^ell + 1; gamma compares the unsatisfiable-mass bound against
    the bundle density; m and r are the ceilinged sizes that make the
    soundness union bound work.  Everything is exact: the only
    irrational ingredient, log2(epsilon), enters via an integer-power
    comparison rather than floats.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if ell < 1:
        raise ValueError("ell must be at least 1")
    epsilon = Fraction(epsilon)
    delta = Fraction(delta)
    d = 2**ell + 1
    base = Fraction(1, 2 ** (2 * ell - 1) + 2 ** (ell - 1))
    gamma = 1 - (base + delta / 2**ell) / (base + delta)
    coef = Fraction(2) / (delta * d)
    m = ceil_affine_log2(1 / delta + (coef + 1) * ell, -coef, epsilon)
    if m < ell + 1:
        raise AssertionError(f"derived m={m} below ell+1={ell + 1}")
    r = math.ceil(Fraction(2 ** (m * ell + 1) * (d ** (m - ell) - 1)) / (gamma * epsilon)) + 1
    return ConstructionParams(epsilon, delta, ell, d, gamma, m, r)


# --- per-edge data ------------------------------------------------------

@dataclass(frozen=True)
class EdgeRecord:
    """Subspace and shift vector attached to one edge."""

    space: Gf2Subspace
    b: int


@dataclass(frozen=True)
class EdgeData:
    """Edge-indexed subspaces and shifts for one construction run."""

    m: int
    ell: int
    records: Mapping[Edge, EdgeRecord]

    def record(self, u: str, v: str) -> EdgeRecord:
        key = (u, v) if u <= v else (v, u)
        return self.records[key]


def sample_edge_data(
    graph: MultiGraph, m: int, ell: int, rng: random.Random
) -> EdgeData:
    """Draw b(e) then Z(e) for every edge in canonical order.

    The draw order is part of the contract: iterating sorted edges,
    each edge consumes its shift vector first and its subspace second,
    so a fixed seed pins the entire bundle of randomness.
    """
    if not 0 < ell < m:
        raise ValueError(f"need 0 < ell < m, got ell={ell} m={m}")
    if not graph.is_simple():
        raise ValueError("edge data requires a simple base graph")
    records: Dict[Edge, EdgeRecord] = {}
    for e in graph.edges:
        b = sample_vector(m, rng)
        space = sample_subspace(m, ell, rng)
        records[e] = EdgeRecord(space, b)
    return EdgeData(m, ell, records)


def classify_good_edges(
    graph: MultiGraph, data: EdgeData, r: int
) -> Tuple[Tuple[Edge, ...], Tuple[Edge, ...]]:
    """Split edges into (good, bad) by the spanning-path criterion.

    An edge is good when every edge-nonrepeating path of r edges that
    starts with it, in either orientation, accumulates subspaces whose
    join is all of F_2^m.  Edges with no length-r continuation pass
    vacuously.
    """
    good, bad = [], []
    for e in graph.edges:
        ok = True
        for path in paths_from_edge(graph, e, r):
            span = zero_subspace(data.m)
            for u, v in zip(path, path[1:]):
                span = join(span, data.record(u, v).space)
            if span.dim < data.m:
                ok = False
                break
        (good if ok else bad).append(e)
    return tuple(good), tuple(bad)


# --- the instance pair --------------------------------------------------

@dataclass(frozen=True)
class ConstructionOutput:
    """Everything one construction run produces."""

    m: int
    ell: int
    r: int
    graph: MultiGraph
    edge_data: EdgeData
    good_edges: Tuple[Edge, ...]
    bad_edges: Tuple[Edge, ...]
    u1: GroupUgInstance
    u2: GroupUgInstance
    u1_tilde: GroupUgInstance
    u2_tilde: GroupUgInstance
    faithful: bool
    seed: Optional[int] = None
    preset: Optional[str] = None

    @property
    def good_graph(self) -> MultiGraph:
        return self.u1.graph


def build_gap_pair(
    graph: MultiGraph,
    data: EdgeData,
    r: int,
    faithful: bool = False,
    seed: Optional[int] = None,
    preset: Optional[str] = None,
) -> ConstructionOutput:
    """Assemble both instance pairs and prune to good edges.

    The unpruned pair keeps every edge; the pruned pair keeps good
    edges only, on the same vertex set.  Bundles are the subspace
    elements for the first instance and their b(e)-shifts for the
    second, so the two differ by a per-edge translation.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    good, bad = classify_good_edges(graph, data, r)
    all_b1 = {
        e: list(data.records[e].space.elements()) for e in graph.edges
    }
    all_b2 = {
        e: [z ^ data.records[e].b for z in data.records[e].space.elements()]
        for e in graph.edges
    }
    vertices = graph.vertices
    u1_tilde = GroupUgInstance.build(data.m, vertices, all_b1)
    u2_tilde = GroupUgInstance.build(data.m, vertices, all_b2)
    u1 = GroupUgInstance.build(data.m, vertices, {e: all_b1[e] for e in good})
    u2 = GroupUgInstance.build(data.m, vertices, {e: all_b2[e] for e in good})
    return ConstructionOutput(
        data.m,
        data.ell,
        r,
        graph,
        data,
        good,
        bad,
        u1,
        u2,
        u1_tilde,
        u2_tilde,
        faithful,
        seed,
        preset,
    )


# --- path extension -----------------------------------------------------

class NonSpanningPathError(ValueError):
    """The subspaces along a path do not span the whole group."""


def extend_along_path(
    path: Sequence[str],
    data: EdgeData,
    g_start: int,
    g_end: int,
) -> Dict[str, int]:
    """Fill vertex values along a spanning path between fixed endpoints.

    Scans the path once, greedily keeping subspace basis vectors that
    grow the running span; the greedy set must reach full dimension or
    NonSpanningPathError is raised.  The endpoint difference, b-shifts
    included, is then decomposed over that basis, and each edge's share
    is paid out when crossing it.  Every crossed edge e ends up with
    value(u) + value(v) + b(e) inside its subspace, which is exactly
    the condition the game bijections need.
    """
    if len(path) == 0:
        raise ValueError("path must contain at least one vertex")
    m = data.m
    if len(path) == 1:
        if g_start != g_end:
            raise ValueError("zero-length path cannot move the endpoint value")
        return {path[0]: g_start}
    edges = list(zip(path, path[1:]))
    chosen: List[Tuple[int, int]] = []  # (edge position, vector)
    span = zero_subspace(m)
    for i, (u, v) in enumerate(edges):
        for vec in data.record(u, v).space.basis:
            if not span.contains(vec):
                chosen.append((i, vec))
                span = rref_basis([z for _, z in chosen], m)
    if span.dim < m:
        raise NonSpanningPathError(
            f"path spans only {span.dim} of {m} dimensions"
        )
    b_total = 0
    for u, v in edges:
        b_total ^= data.record(u, v).b
    target = g_start ^ g_end ^ b_total
    coeffs = coordinates([z for _, z in chosen], target, m)
    assert coeffs is not None  # chosen is a basis of the full space
    payout = [0] * len(edges)
    for (i, vec), c in zip(chosen, coeffs):
        if c:
            payout[i] ^= vec
    values: Dict[str, int] = {path[0]: g_start}
    cur = g_start
    for i, (u, v) in enumerate(edges):
        cur = cur ^ payout[i] ^ data.record(u, v).b
        if v in values and values[v] != cur:
            raise ValueError(f"path revisits {v} with conflicting values")
        values[v] = cur
    assert values[path[-1]] == g_end
    return values


# --- decay simulation ---------------------------------------------------

@dataclass(frozen=True)
class DecayTrace:
    """Empirical decay of the spanning-deficit statistic."""

    m: int
    ell: int
    d: int
    r: int
    trials: int
    seed: int
    means: Tuple[Fraction, ...]
    stderrs: Tuple[float, ...]
    final_zero_fraction: Fraction


def decay_simulation(
    m: int,
    ell: int,
    d: int,
    r: int,
    trials: int,
    seed: int,
    path_budget: int = 1_000_000,
) -> DecayTrace:
    """Monte Carlo trace of X_i = sum over depth-i paths of d^(m-dim)-1.

    Models the idealized tree neighborhood of one edge: both
    orientations carry the root subspace, and each deeper step branches
    into d-1 fresh edges with independently sampled subspaces.  Paths
    that reach full dimension contribute zero forever and are dropped.
    Trial streams are derived from the master seed up front, so the
    trace is independent of execution order.
    """
    if not 0 < ell <= m:
        raise ValueError(f"need 0 < ell <= m, got ell={ell} m={m}")
    if d < 2:
        raise ValueError("d must be at least 2")
    if r < 1 or trials < 1:
        raise ValueError("r and trials must be positive")
    leaves = 2 * (d - 1) ** (r - 1)
    if leaves > path_budget:
        raise ValueError(
            f"depth {r} would track up to {leaves} paths, over budget {path_budget}"
        )
    master = random.Random(seed)
    trial_seeds = [master.getrandbits(64) for _ in range(trials)]
    sums = [0] * r
    sqsums = [0] * r
    zero_final = 0
    for ts in trial_seeds:
        rng = random.Random(ts)
        root = sample_subspace(m, ell, rng)
        active = [root, root] if root.dim < m else []
        x = sum(d ** (m - s.dim) - 1 for s in active)
        sums[0] += x
        sqsums[0] += x * x
        for i in range(1, r):
            nxt: List[Gf2Subspace] = []
            for span in active:
                for _ in range(d - 1):
                    grown = join(span, sample_subspace(m, ell, rng))
                    if grown.dim < m:
                        nxt.append(grown)
            active = nxt
            x = sum(d ** (m - s.dim) - 1 for s in active)
            sums[i] += x
            sqsums[i] += x * x
        if x == 0:
            zero_final += 1
    means = tuple(Fraction(s, trials) for s in sums)
    stderrs = []
    for s, sq in zip(sums, sqsums):
        if trials > 1:
            var = (sq - s * s / trials) / (trials - 1)
            stderrs.append(math.sqrt(max(var, 0.0) / trials))
        else:
            stderrs.append(0.0)
    return DecayTrace(
        m,
        ell,
        d,
        r,
        trials,
        seed,
        means,
        tuple(stderrs),
        Fraction(zero_final, trials),
    )


# --- inequality and ratio checks ----------------------------------------

def branching_inequality_slack(d: int, n: int) -> Fraction:
    """Slack of the branching-vs-geometric-series inequality.

    Computes (d^n - 1)/(d - 1) minus
    (d^n - d^(n-1))/(d-1)^n + d^(n-1) - 1, exactly; the subgraph
    counting bound needs this to be nonnegative for d >= 3.
    """
    if d < 3 or n < 1:
        raise ValueError("need d >= 3 and n >= 1")
    lhs = Fraction(d**n - d ** (n - 1), (d - 1) ** n) + d ** (n - 1) - 1
    rhs = Fraction(d**n - 1, d - 1)
    return rhs - lhs


@dataclass(frozen=True)
class GapParams:
    """Soundness/completeness pair achieving ratio at most alpha."""

    alpha: Fraction
    ell: int
    delta: Fraction
    completeness: Fraction
    soundness: Fraction
    ratio: Fraction
    ell_formula: int
    formula_ratio: Fraction
    formula_valid: bool


def approx_gap_params(alpha: Fraction) -> GapParams:
    """Least ell whose soundness/completeness ratio is at most alpha.

    The closed-form shortcut ell = ceil((2 - log2(alpha)) / 2) found in
    write-ups simplifies 2^(ell+1)/2^(2ell-1) to 2^(2-2ell); the true
    exponent is 2 - ell, and at alpha = 1 the shortcut even returns an
    ell whose ratio exceeds alpha.  Both answers are reported; `ell` is
    the exact minimal one and `formula_valid` says whether the shortcut
    happened to satisfy the target.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")

    def ratio_at(ell: int) -> Fraction:
        denom = 2 ** (2 * ell - 1) + 2 ** (ell - 1)
        return Fraction(2 ** (ell + 1), denom)

    ell = 1
    while ratio_at(ell) > alpha:
        ell += 1
    denom = 2 ** (2 * ell - 1) + 2 ** (ell - 1)
    delta = Fraction(1, denom)
    completeness = Fraction(1, 2**ell)
    soundness = Fraction(2, denom)
    ell_formula = ceil_affine_log2(Fraction(1), Fraction(-1, 2), alpha)
    formula_ratio = ratio_at(max(ell_formula, 1))
    return GapParams(
        alpha,
        ell,
        delta,
        completeness,
        soundness,
        soundness / completeness,
        ell_formula,
        formula_ratio,
        formula_ratio <= alpha,
    )


# --- directory serialization --------------------------------------------

def _edge_data_to_json(data: EdgeData) -> dict:
    return {
        "format": "edgedata-v1",
        "m": data.m,
        "ell": data.ell,
        "edges": [
            {
                "edge": [u, v],
                "Z": [to_bitstring(z, data.m) for z in rec.space.basis],
                "b": to_bitstring(rec.b, data.m),
            }
            for (u, v), rec in sorted(data.records.items())
        ],
    }


def _edge_data_from_json(obj: dict) -> EdgeData:
    if obj.get("format") != "edgedata-v1":
        raise ValueError("not an edgedata-v1 document")
    m, ell = obj["m"], obj["ell"]
    records = {}
    for rec in obj["edges"]:
        u, v = rec["edge"]
        basis = [from_bitstring(s)[0] for s in rec["Z"]]
        records[(u, v)] = EdgeRecord(
            rref_basis(basis, m), from_bitstring(rec["b"])[0]
        )
    return EdgeData(m, ell, records)


def canonical_dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_output(out: ConstructionOutput, directory: Path) -> None:
    """Write the seven-file construction bundle into `directory`."""
    directory.mkdir(parents=True, exist_ok=True)
    files = {
        "graph.json": graph_to_json(out.graph),
        "edgedata.json": _edge_data_to_json(out.edge_data),
        "u1.json": instance_to_json(out.u1),
        "u2.json": instance_to_json(out.u2),
        "u1tilde.json": instance_to_json(out.u1_tilde),
        "u2tilde.json": instance_to_json(out.u2_tilde),
        "report.json": {
            "format": "construction-report-v1",
            "m": out.m,
            "ell": out.ell,
            "r": out.r,
            "faithful": out.faithful,
            "seed": out.seed,
            "preset": out.preset,
            "good": len(out.good_edges),
            "bad": len(out.bad_edges),
            "good_edges": [[u, v] for u, v in out.good_edges],
            "bad_edges": [[u, v] for u, v in out.bad_edges],
        },
    }
    for name, doc in files.items():
        (directory / name).write_text(canonical_dumps(doc))


def load_output(directory: Path) -> ConstructionOutput:
    """Rebuild a ConstructionOutput from a bundle directory."""
    directory = Path(directory)

    def read(name: str) -> dict:
        return json.loads((directory / name).read_text())

    report = read("report.json")
    if report.get("format") != "construction-report-v1":
        raise ValueError("not a construction bundle")
    graph = graph_from_json(read("graph.json"))
    data = _edge_data_from_json(read("edgedata.json"))
    out = build_gap_pair(
        graph,
        data,
        report["r"],
        faithful=report["faithful"],
        seed=report.get("seed"),
        preset=report.get("preset"),
    )
    for name, inst in (
        ("u1.json", out.u1),
        ("u2.json", out.u2),
        ("u1tilde.json", out.u1_tilde),
        ("u2tilde.json", out.u2_tilde),
    ):
        if instance_from_json(read(name)) != inst:
            raise ValueError(f"{name} disagrees with rebuilt construction")
    return out
