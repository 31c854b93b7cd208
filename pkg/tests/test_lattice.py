import cmath
import itertools
import math

import pytest
from hypothesis import given, strategies as st

from quadcong.lattice import (
    IDENTITY, S_MAT, SymMat, UniMat, act, c_transform, coset_reps, heegner_points, index_gamma0, mobius,
    p1_class, projective_line, reduce, stabilizer, stabilizer_order, u_invariant, u_skewed,
)
from quadcong.modcore import is_squarefree


def sl2(bound):
    r = range(-bound, bound + 1)
    return [UniMat(a, b, c, d) for a, b, c, d in itertools.product(r, r, r, r) if a * d - b * c == 1]


SMALL = sl2(3)
sl2_elt = st.sampled_from(SMALL)
pos_def = st.tuples(st.integers(1, 40), st.integers(-40, 40), st.integers(1, 40)).filter(
    lambda t: t[0] * t[2] - t[1] ** 2 > 0).map(lambda t: SymMat(*t))


def gauss_reduced_count(h):
    """Independent count: (A, B, C) with A C - B^2 = h, |2B| <= C <= A, B >= 0 on the boundary."""
    n = 0
    for C in range(1, math.isqrt(4 * h // 3) + 2):
        for B in range(-C, C + 1):
            if abs(2 * B) > C or (B * B + h) % C:
                continue
            A = (B * B + h) // C
            if A < C:
                continue
            if B < 0 and (2 * B == -C or A == C):
                continue
            n += 1
    return n


class TestAction:
    def test_examples(self):
        g = SymMat(3, 1, 2)
        assert act(IDENTITY, g) == g
        assert act(UniMat(0, -1, 1, 0), SymMat(1, 0, 2)) == SymMat(2, 0, 1)
        assert act(UniMat(1, 1, 0, 1), SymMat(1, 0, 1)) == SymMat(2, 1, 1)

    def test_group_law_exhaustive(self):
        gs = [SymMat(1, 0, 1), SymMat(3, 1, 2), SymMat(7, -2, 5)]
        elts = sl2(2)
        for g in gs:
            for x, y in itertools.product(elts, elts[::3]):
                assert act(x @ y, g) == act(x, act(y, g))

    @given(sl2_elt, pos_def)
    def test_determinant_preserved(self, gamma, g):
        assert act(gamma, g).det() == g.det()

    @given(sl2_elt, pos_def)
    def test_mobius_compatibility(self, gamma, g):
        assert abs(act(gamma, g).point() - mobius(gamma, g.point())) < 1e-9

    def test_c_transform(self):
        g = SymMat(1, 2, 3)
        assert c_transform(UniMat(0, -1, 1, 0), g) == 1
        assert c_transform(IDENTITY, g) == 3
        assert c_transform(UniMat(0, -1, 1, 1), g) == 8

    @given(sl2_elt, pos_def)
    def test_c_transform_bottom_right(self, tau, g):
        assert c_transform(tau, g) == act(tau, g).cc


class TestReduce:
    def test_examples(self):
        pt, gamma = reduce(SymMat(1, 0, 1))
        assert pt.sym == SymMat(1, 0, 1) and gamma in (IDENTITY, IDENTITY.neg())
        assert reduce(SymMat(5, 0, 1))[0].sym == SymMat(5, 0, 1)
        pt, gamma = reduce(SymMat(1, 0, 5))
        assert pt.sym == SymMat(5, 0, 1) and act(gamma, SymMat(1, 0, 5)) == pt.sym

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError):
            reduce(SymMat(1, 2, 1))

    @given(pos_def, sl2_elt)
    def test_reduce_is_orbit_invariant(self, g, gamma):
        r1, g1 = reduce(g)
        r2, _ = reduce(act(gamma, g))
        assert r1 == r2
        assert act(g1, g) == r1.sym and r1.sym.is_reduced()

    @given(pos_def)
    def test_idempotent(self, g):
        r, _ = reduce(g)
        r2, gamma = reduce(r.sym)
        assert r2 == r and gamma.proj() == IDENTITY

    def test_stabilizer_examples(self):
        assert stabilizer_order(SymMat(1, 0, 1)) == 2
        assert stabilizer_order(SymMat(2, 1, 2)) == 3
        assert stabilizer_order(SymMat(5, 0, 1)) == 1
        with pytest.raises(ValueError):
            stabilizer_order(SymMat(1, 0, 5))

    @pytest.mark.parametrize("g", [SymMat(1, 0, 1), SymMat(2, 1, 2), SymMat(5, 0, 1), SymMat(3, 0, 3), SymMat(6, 3, 6)])
    def test_stabilizer_fixes_point(self, g):
        stab = stabilizer(g)
        assert len(stab) == stabilizer_order(g)
        assert all(act(s, g) == g for s in stab)
        # brute-force count of projective fixers among small matrices
        fixers = {s.proj() for s in SMALL if act(s, g) == g}
        assert len(fixers) == stabilizer_order(g)


class TestHeegner:
    def test_examples(self):
        assert [p.sym for p in heegner_points(1)] == [SymMat(1, 0, 1)]
        assert sorted(p.sym for p in heegner_points(5)) == sorted([SymMat(5, 0, 1), SymMat(3, 1, 2)])
        assert [p.sym for p in heegner_points(2)] == [SymMat(2, 0, 1)]

    def test_counts_match_independent_reduced_count(self):
        for h in range(1, 501):
            if is_squarefree(h):
                assert len(heegner_points(h)) == gauss_reduced_count(h), h

    @pytest.mark.parametrize("h", [1, 2, 3, 5, 6, 14, 21])
    def test_orbit_closure(self, h):
        # every small image of every representative reduces back into the set, with nothing left over
        reps = {p.sym for p in heegner_points(h)}
        reached = {reduce(act(g, r))[0].sym for r in reps for g in SMALL}
        assert reached == reps
        assert all(p.sym.cc <= 2 * math.sqrt(h) and abs(p.sym.bb) * 2 <= p.sym.cc for p in heegner_points(h))


class TestCosets:
    def test_examples(self):
        assert coset_reps(1) == [IDENTITY]
        assert len(coset_reps(2)) == 3
        assert len(coset_reps(6)) == 12

    @pytest.mark.parametrize("q", list(range(1, 41)) + [64, 90, 120, 199, 200])
    def test_projective_line(self, q):
        reps = coset_reps(q)
        assert len(reps) == index_gamma0(q) == len(projective_line(q))
        classes = [p1_class(g.c, g.d, q) for g in reps]
        assert len(set(classes)) == len(reps)
        assert all(g.det() == 1 for g in reps)

    @pytest.mark.parametrize("q", [2, 3, 4, 6])
    def test_partition_of_small_elements(self, q):
        reps = coset_reps(q)
        for g in sl2(2):
            hits = [t for t in reps if (g @ t.inv()).in_gamma0(q)]
            assert len(hits) == 1


class TestInvariants:
    def test_u_examples(self):
        assert u_invariant(1j, 1j) == 0
        assert u_invariant(2j, 1j) == pytest.approx(1 / 8)
        assert u_invariant(1 + 1j, 1j) == pytest.approx(1 / 4)
        with pytest.raises(ValueError):
            u_invariant(1, 1j)

    def test_u_skewed_examples(self):
        assert u_skewed(IDENTITY, 3.7) == 0
        assert u_skewed(UniMat(1, 1, 0, 1), 1) == pytest.approx(1 / 4)
        assert u_skewed(UniMat(1, 2, 0, 1), 2) == pytest.approx(1 / 4)

    @given(sl2_elt, st.complex_numbers(max_magnitude=5).map(lambda z: complex(z.real, abs(z.imag) + 0.1)),
           st.complex_numbers(max_magnitude=5).map(lambda z: complex(z.real, abs(z.imag) + 0.1)))
    def test_mobius_invariance(self, gamma, w, z):
        assert abs(u_invariant(mobius(gamma, w), mobius(gamma, z)) - u_invariant(w, z)) <= 1e-10 * (1 + u_invariant(w, z))

    @given(sl2_elt)
    def test_u1_matches_point_pair(self, g):
        assert abs(u_skewed(g, 1) - u_invariant(mobius(g, 1j), 1j)) <= 1e-10

    @given(st.complex_numbers(max_magnitude=5).map(lambda z: complex(z.real, abs(z.imag) + 0.1)),
           st.complex_numbers(max_magnitude=5).map(lambda z: complex(z.real, abs(z.imag) + 0.1)))
    def test_symmetric(self, w, z):
        assert u_invariant(w, z) == pytest.approx(u_invariant(z, w))
