"""Linear algebra over GF(2) on int-encoded bit vectors.

A vector in F_2^m is an int in [0, 2^m).  Rendered as a bitstring,
coordinate 0 is the leftmost character, so coordinate i lives at bit
(m - 1 - i) of the int.  Addition is xor.  All operations that need the
ambient dimension take it explicitly and reject out-of-range values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

__all__ = [
    "DependentBasisError",
    "Gf2Subspace",
    "affine_intersect",
    "coordinates",
    "coset_min",
    "from_bitstring",
    "join",
    "intersect",
    "rref_basis",
    "sample_subspace",
    "sample_vector",
    "to_bitstring",
    "zero_subspace",
]


class DependentBasisError(ValueError):
    """Raised when a claimed basis is linearly dependent."""


def _check_vector(v: int, m: int) -> None:
    if not 0 <= v < (1 << m):
        raise ValueError(f"vector {v} out of range for dimension {m}")


def to_bitstring(v: int, m: int) -> str:
    """Render v as an m-character bitstring, coordinate 0 leftmost."""
    _check_vector(v, m)
    return format(v, f"0{m}b")


def from_bitstring(s: str) -> Tuple[int, int]:
    """Parse a bitstring into (value, length)."""
    if not s or any(c not in "01" for c in s):
        raise ValueError(f"not a bitstring: {s!r}")
    return int(s, 2), len(s)


def _echelonize(vectors: Sequence[int]) -> List[int]:
    """Reduced row echelon basis of the span of `vectors`, as ints.

    Returned rows have strictly decreasing leading bits (equivalently,
    strictly increasing pivot coordinates) and zeros above each pivot.
    """
    pivots: dict[int, int] = {}  # leading bit position -> row
    for row in vectors:
        cur = row
        while cur:
            lead = cur.bit_length() - 1
            if lead in pivots:
                cur ^= pivots[lead]
            else:
                pivots[lead] = cur
                break
    positions = sorted(pivots, reverse=True)
    for i, p in enumerate(positions):
        for q in positions[:i]:
            if (pivots[q] >> p) & 1:
                pivots[q] ^= pivots[p]
    return [pivots[p] for p in positions]


@dataclass(frozen=True)
class Gf2Subspace:
    """A subspace of F_2^m held as a canonical reduced echelon basis.

    Two Gf2Subspace values compare equal iff they are the same subspace
    of the same ambient space, since the canonical basis is unique.
    """

    ambient_dim: int
    basis: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: int) -> bool:
        _check_vector(v, self.ambient_dim)
        cur = v
        for row in self.basis:
            lead = row.bit_length() - 1
            if (cur >> lead) & 1:
                cur ^= row
        return cur == 0

    def elements(self) -> Iterator[int]:
        """All 2^dim members, in increasing int order."""
        members = sorted(
            self._combine(mask) for mask in range(1 << self.dim)
        )
        return iter(members)

    def _combine(self, mask: int) -> int:
        acc = 0
        for i, row in enumerate(self.basis):
            if (mask >> i) & 1:
                acc ^= row
        return acc

    def basis_bitstrings(self) -> List[str]:
        return [to_bitstring(b, self.ambient_dim) for b in self.basis]


def zero_subspace(m: int) -> Gf2Subspace:
    """The 0-dimensional subspace of F_2^m."""
    if m < 1:
        raise ValueError("ambient dimension must be positive")
    return Gf2Subspace(m, ())


def rref_basis(vectors: Sequence[int], m: int) -> Gf2Subspace:
    """Canonical subspace spanned by `vectors` inside F_2^m."""
    if m < 1:
        raise ValueError("ambient dimension must be positive")
    for v in vectors:
        _check_vector(v, m)
    return Gf2Subspace(m, tuple(_echelonize(vectors)))


def join(a: Gf2Subspace, b: Gf2Subspace) -> Gf2Subspace:
    """Smallest subspace containing both operands."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}"
        )
    return rref_basis(list(a.basis) + list(b.basis), a.ambient_dim)


def intersect(a: Gf2Subspace, b: Gf2Subspace) -> Gf2Subspace:
    """Intersection of two subspaces of the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}"
        )
    small, large = (a, b) if a.dim <= b.dim else (b, a)
    hits = [v for v in small.elements() if large.contains(v)]
    return rref_basis(hits, a.ambient_dim)


def coordinates(
    basis: Sequence[int], target: int, m: int
) -> Optional[List[int]]:
    """Coefficients expressing `target` over `basis`, or None if outside.

    `basis` must be linearly independent (not necessarily echelonized);
    a dependent list raises DependentBasisError, which is a different
    outcome from the target merely falling outside the span.
    """
    for v in basis:
        _check_vector(v, m)
    _check_vector(target, m)
    # Forward-eliminate while tracking which original rows feed each pivot.
    pivots: dict[int, Tuple[int, int]] = {}  # lead bit -> (row, combo mask)
    for i, row in enumerate(basis):
        cur, combo = row, 1 << i
        while cur:
            lead = cur.bit_length() - 1
            if lead in pivots:
                prow, pcombo = pivots[lead]
                cur ^= prow
                combo ^= pcombo
            else:
                pivots[lead] = (cur, combo)
                break
        else:
            raise DependentBasisError("basis vectors are linearly dependent")
    cur, combo = target, 0
    while cur:
        lead = cur.bit_length() - 1
        if lead not in pivots:
            return None
        prow, pcombo = pivots[lead]
        cur ^= prow
        combo ^= pcombo
    return [(combo >> i) & 1 for i in range(len(basis))]


def sample_vector(m: int, rng: random.Random) -> int:
    """Uniform vector of F_2^m."""
    if m < 1:
        raise ValueError("ambient dimension must be positive")
    return rng.randrange(1 << m)


def sample_subspace(m: int, ell: int, rng: random.Random) -> Gf2Subspace:
    """Uniformly random ell-dimensional subspace of F_2^m.

    Draws ell vectors in sequence, each uniform over the complement of
    the span so far (by rejection), which weights every ell-dimensional
    subspace identically.  Requires 0 < ell <= m.
    """
    if not 0 < ell <= m:
        raise ValueError(f"need 0 < ell <= m, got ell={ell} m={m}")
    chosen: List[int] = []
    span = zero_subspace(m)
    while len(chosen) < ell:
        v = rng.randrange(1 << m)
        if not span.contains(v):
            chosen.append(v)
            span = rref_basis(chosen, m)
    return span


def coset_min(shift: int, space: Gf2Subspace) -> int:
    """Smallest int in the affine coset shift + space."""
    cur = shift
    for row in space.basis:
        lead = row.bit_length() - 1
        if (cur >> lead) & 1:
            cur ^= row
    return cur


def affine_intersect(
    t1: int, s1: Gf2Subspace, t2: int, s2: Gf2Subspace
) -> Optional[Tuple[int, Gf2Subspace]]:
    """Intersect cosets t1 + s1 and t2 + s2; None when disjoint.

    The result is returned as (representative, direction subspace) with
    the representative normalized to the coset minimum.
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    total = join(s1, s2)
    diff = t1 ^ t2
    if not total.contains(diff):
        return None
    # Split diff = z1 + z2 with z1 in s1, z2 in s2 by scanning s1's part.
    for z1 in s1.elements():
        if s2.contains(diff ^ z1):
            point = t1 ^ z1
            direction = intersect(s1, s2)
            return coset_min(point, direction), direction
    raise AssertionError("containment in join without a split")
