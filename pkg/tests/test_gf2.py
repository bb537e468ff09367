"""Vector and subspace arithmetic over GF(2)."""

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uggap import gf2


def bits(s: str) -> int:
    return int(s, 2)


class TestBitstrings:
    def test_round_trip(self):
        assert gf2.to_bitstring(bits("0110"), 4) == "0110"
        assert gf2.from_bitstring("0110") == (6, 4)

    def test_leftmost_is_coordinate_zero(self):
        v, m = gf2.from_bitstring("10")
        assert v == 2  # coordinate 0 set -> high bit of the int

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            gf2.from_bitstring("01x")
        with pytest.raises(ValueError):
            gf2.to_bitstring(4, 2)

    @given(st.integers(1, 12), st.data())
    def test_round_trip_random(self, m, data):
        v = data.draw(st.integers(0, 2**m - 1))
        back, width = gf2.from_bitstring(gf2.to_bitstring(v, m))
        assert (back, width) == (v, m)


class TestRref:
    def test_example_pair(self):
        s = gf2.rref_basis([bits("01"), bits("11")], 2)
        assert s.basis_bitstrings() == ["10", "01"]

    def test_zero_only(self):
        assert gf2.rref_basis([0], 3).dim == 0

    def test_pivots_strictly_increase(self):
        rng = random.Random(7)
        for _ in range(200):
            m = rng.randrange(1, 9)
            vecs = [rng.randrange(2**m) for _ in range(rng.randrange(5))]
            s = gf2.rref_basis(vecs, m)
            leads = [b.bit_length() - 1 for b in s.basis]
            assert leads == sorted(leads, reverse=True)
            for hi, lo in combinations(s.basis, 2):
                # zeros above every pivot
                assert not (hi >> (lo.bit_length() - 1)) & 1

    @given(
        st.integers(1, 8).flatmap(
            lambda m: st.tuples(
                st.just(m),
                st.lists(st.integers(0, 2**m - 1), max_size=6),
            )
        )
    )
    @settings(max_examples=150)
    def test_canonical_under_permutation_and_sums(self, m_vecs):
        m, vecs = m_vecs
        s1 = gf2.rref_basis(vecs, m)
        s2 = gf2.rref_basis(list(reversed(vecs)), m)
        assert s1 == s2
        if len(vecs) >= 2:
            mixed = vecs[:]
            mixed[0] ^= mixed[1]
            assert gf2.rref_basis(mixed, m) == s1


class TestContains:
    def test_examples(self):
        s = gf2.rref_basis([bits("01"), bits("11")], 2)
        assert s.contains(bits("10"))
        assert not gf2.rref_basis([bits("01")], 2).contains(bits("10"))

    def test_zero_always_contained(self):
        rng = random.Random(3)
        for _ in range(50):
            m = rng.randrange(1, 10)
            vecs = [rng.randrange(2**m) for _ in range(rng.randrange(4))]
            assert gf2.rref_basis(vecs, m).contains(0)

    def test_membership_matches_enumeration(self):
        rng = random.Random(11)
        for _ in range(50):
            m = rng.randrange(1, 7)
            vecs = [rng.randrange(2**m) for _ in range(rng.randrange(4))]
            s = gf2.rref_basis(vecs, m)
            members = set(s.elements())
            assert len(members) == 2**s.dim
            for v in range(2**m):
                assert s.contains(v) == (v in members)


class TestJoinIntersect:
    def test_join_examples(self):
        a = gf2.rref_basis([bits("01")], 2)
        b = gf2.rref_basis([bits("11")], 2)
        assert gf2.join(a, b).dim == 2
        assert gf2.join(a, a) == a

    def test_join_is_least_upper_bound(self):
        rng = random.Random(5)
        for _ in range(60):
            m = rng.randrange(1, 7)
            a = gf2.rref_basis([rng.randrange(2**m) for _ in range(2)], m)
            b = gf2.rref_basis([rng.randrange(2**m) for _ in range(2)], m)
            j = gf2.join(a, b)
            for v in list(a.elements()) + list(b.elements()):
                assert j.contains(v)
            span_both = gf2.rref_basis(
                [x ^ y for x in a.elements() for y in b.elements()], m
            )
            assert j == span_both

    def test_intersect_matches_enumeration(self):
        rng = random.Random(9)
        for _ in range(60):
            m = rng.randrange(1, 7)
            a = gf2.rref_basis([rng.randrange(2**m) for _ in range(3)], m)
            b = gf2.rref_basis([rng.randrange(2**m) for _ in range(3)], m)
            got = set(gf2.intersect(a, b).elements())
            want = set(a.elements()) & set(b.elements())
            assert got == want

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            gf2.join(gf2.zero_subspace(2), gf2.zero_subspace(3))


class TestCoordinates:
    def test_examples(self):
        assert gf2.coordinates([bits("10"), bits("01")], bits("11"), 2) == [1, 1]
        assert gf2.coordinates([bits("01")], bits("10"), 2) is None

    def test_dependent_basis_is_an_error(self):
        with pytest.raises(gf2.DependentBasisError):
            gf2.coordinates([bits("01"), bits("01")], bits("01"), 2)

    def test_reconstruction(self):
        rng = random.Random(17)
        for _ in range(100):
            m = rng.randrange(1, 9)
            space = gf2.sample_subspace(m, rng.randrange(1, m + 1), rng)
            basis = list(space.basis)
            target = rng.choice(list(space.elements()))
            coeffs = gf2.coordinates(basis, target, m)
            assert coeffs is not None
            acc = 0
            for c, b in zip(coeffs, basis):
                if c:
                    acc ^= b
            assert acc == target


class TestSampling:
    def test_dimension_always_exact(self):
        rng = random.Random(23)
        for _ in range(100):
            m = rng.randrange(1, 8)
            ell = rng.randrange(1, m + 1)
            assert gf2.sample_subspace(m, ell, rng).dim == ell

    def test_rejects_bad_ell(self):
        rng = random.Random(0)
        with pytest.raises(ValueError):
            gf2.sample_subspace(3, 0, rng)
        with pytest.raises(ValueError):
            gf2.sample_subspace(3, 4, rng)

    def test_deterministic_given_seed(self):
        a = gf2.sample_subspace(5, 2, random.Random(123))
        b = gf2.sample_subspace(5, 2, random.Random(123))
        assert a == b

    def test_two_dim_subspaces_of_f16_number_35(self):
        # Brute enumeration over all vector pairs.
        seen = set()
        for u in range(1, 16):
            for v in range(1, 16):
                s = gf2.rref_basis([u, v], 4)
                if s.dim == 2:
                    seen.add(s)
        assert len(seen) == 35

    def test_subspace_sampler_uniform_chi_squared(self):
        # 10^4 draws over the 35 two-dimensional subspaces of F_2^4.
        # Threshold is the 99.9th percentile of chi^2 with df=34.
        rng = random.Random(2024)
        counts: dict[gf2.Gf2Subspace, int] = {}
        n = 10_000
        for _ in range(n):
            s = gf2.sample_subspace(4, 2, rng)
            counts[s] = counts.get(s, 0) + 1
        assert len(counts) == 35
        expected = n / 35
        stat = sum((c - expected) ** 2 / expected for c in counts.values())
        assert stat < 65.25

    def test_vector_sampler_uniform_chi_squared(self):
        # 10^4 draws over F_2^4; 99.9th percentile of chi^2 with df=15.
        rng = random.Random(77)
        counts = [0] * 16
        n = 10_000
        for _ in range(n):
            counts[gf2.sample_vector(4, rng)] += 1
        expected = n / 16
        stat = sum((c - expected) ** 2 / expected for c in counts)
        assert stat < 37.70


class TestCosets:
    def test_coset_min_is_reachable_minimum(self):
        rng = random.Random(31)
        for _ in range(80):
            m = rng.randrange(1, 7)
            s = gf2.sample_subspace(m, rng.randrange(1, m + 1), rng)
            t = rng.randrange(2**m)
            lo = gf2.coset_min(t, s)
            members = {t ^ z for z in s.elements()}
            assert lo == min(members)

    def test_affine_intersect_matches_enumeration(self):
        rng = random.Random(41)
        for _ in range(120):
            m = rng.randrange(1, 6)
            s1 = gf2.sample_subspace(m, rng.randrange(1, m + 1), rng)
            s2 = gf2.sample_subspace(m, rng.randrange(1, m + 1), rng)
            t1, t2 = rng.randrange(2**m), rng.randrange(2**m)
            got = gf2.affine_intersect(t1, s1, t2, s2)
            want = {t1 ^ z for z in s1.elements()} & {
                t2 ^ z for z in s2.elements()
            }
            if not want:
                assert got is None
            else:
                assert got is not None
                rep, direction = got
                assert {rep ^ z for z in direction.elements()} == want
