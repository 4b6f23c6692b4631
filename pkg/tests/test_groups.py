import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symnet import (PatternSet, Permutation, SymmetryGroup, act_on_matrix,
                    act_on_vector, orbits, pair_orbits, permutation_compose,
                    symmetry_group)
from symnet.errors import CapabilityError

SWAP23 = Permutation((0, 2, 1))


def perms(n):
    return [Permutation(p) for p in itertools.permutations(range(n))]


def random_perm(draw, n):
    order = draw(st.permutations(list(range(n))))
    return Permutation(tuple(order))


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))

    def test_identity(self):
        e = Permutation.identity(4)
        assert e.is_identity()
        assert np.array_equal(e.act([3, 1, 4, 1]), [3, 1, 4, 1])

    def test_compose_example(self):
        # s = swap first two, t = swap last two; u(i) = s(t(i))
        s = Permutation((1, 0, 2))
        t = Permutation((0, 2, 1))
        assert permutation_compose(s, t).map == (1, 2, 0)

    def test_swap_is_involution(self):
        assert SWAP23.compose(SWAP23).is_identity()
        assert SWAP23.inverse() == SWAP23

    def test_action_example(self):
        assert np.array_equal(SWAP23.act([0, 1, 0]), [0, 0, 1])

    def test_matrix_action(self):
        w = np.arange(9.0).reshape(3, 3)
        sw = act_on_matrix(SWAP23, w)
        for i in range(3):
            for j in range(3):
                assert sw[i, j] == w[SWAP23(i), SWAP23(j)]

    def test_display_notation(self):
        assert str(Permutation.identity(3)) == "e"
        assert str(SWAP23) == "(32)"
        assert str(Permutation((1, 0, 2))) == "(21)"

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_action_axioms_by_enumeration(self, n):
        # identity action, and (s*t).x == t.(s.x) for the index action x[s(i)]
        rng = np.random.Generator(np.random.PCG64(7))
        x = rng.normal(size=n)
        e = Permutation.identity(n)
        assert np.array_equal(e.act(x), x)
        for s in perms(n):
            for t in perms(n):
                u = s.compose(t)
                assert np.array_equal(u.act(x), t.act(s.act(x)))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matrix_action_conjugation_oracle(self, n):
        # index action equals P W P^T with P the 0/1 matrix of the inverse map
        rng = np.random.Generator(np.random.PCG64(11))
        w = rng.normal(size=(n, n))
        for s in perms(n):
            p = np.eye(n)[list(s.map)]
            assert np.allclose(s.act_matrix(w), p @ w @ p.T)

    @given(st.permutations(list(range(5))), st.permutations(list(range(5))))
    def test_inverse_and_compose_properties(self, a, b):
        s, t = Permutation(tuple(a)), Permutation(tuple(b))
        assert s.compose(s.inverse()).is_identity()
        assert s.compose(t).inverse() == t.inverse().compose(s.inverse())


class TestSymmetryGroup:
    def test_validates_axioms(self):
        with pytest.raises(ValueError):
            SymmetryGroup([SWAP23])  # missing identity
        with pytest.raises(ValueError):
            SymmetryGroup([Permutation.identity(3), Permutation((1, 2, 0))])  # not closed

    def test_trivial_and_symmetric(self):
        assert len(SymmetryGroup.trivial(5)) == 1
        assert len(SymmetryGroup.symmetric(4)) == 24
        with pytest.raises(CapabilityError):
            SymmetryGroup.symmetric(9)

    def test_found_group_revalidates(self, x):
        g = symmetry_group(x)
        SymmetryGroup(list(g))  # must not raise


class TestPatternSet:
    def test_rejects_duplicates_and_mixed_lengths(self):
        with pytest.raises(ValueError):
            PatternSet([(1, 0), (1, 0)])
        with pytest.raises(ValueError):
            PatternSet([(1, 0), (1, 0, 1)])

    def test_membership(self, x):
        assert [1, 0, 1] in x
        assert [0, 1, 1] not in x
        assert x.is_binary()

    def test_real_valued_tolerance(self):
        ps = PatternSet([(0.5, 0.25)])
        assert [0.5, 0.25 + 1e-13] in ps
        assert [0.5, 0.25 + 1e-9] not in ps


class TestSymmetryGroupSearch:
    def test_training_sets(self, x, xp):
        expected = SymmetryGroup([Permutation.identity(3), SWAP23])
        assert symmetry_group(x) == expected
        assert symmetry_group(xp) == expected

    def test_full_cube_gives_s3(self):
        cube = PatternSet(list(itertools.product((0, 1), repeat=3)))
        assert symmetry_group(cube) == SymmetryGroup.symmetric(3)

    def test_singleton(self):
        assert len(symmetry_group(PatternSet([(1, 0, 0)]))) == 2
        assert len(symmetry_group(PatternSet([(0, 0, 0)]))) == 6

    def test_stability_oracle(self, rng):
        # every returned element maps the set into itself; no non-element does
        pool = list(itertools.product((0.0, 1.0), repeat=4))
        picks = rng.choice(len(pool), size=3, replace=False)
        items = PatternSet([pool[i] for i in picks])
        g = symmetry_group(items)
        for p in itertools.permutations(range(4)):
            s = Permutation(p)
            stabilizes = all(s.act(a) in items for a in items)
            assert (s in g) == stabilizes

    def test_capability_cap(self):
        big = PatternSet([tuple(1.0 if i == j else 0.0 for i in range(9))
                          for j in range(9)])
        with pytest.raises(CapabilityError):
            symmetry_group(big)


class TestOrbits:
    def test_training_set_single_orbit(self, x, group):
        parts = orbits(x, group)
        assert len(parts) == 1
        assert len(parts.blocks[0]) == 2

    def test_trivial_group_singletons(self, x):
        parts = orbits(x, SymmetryGroup.trivial(3))
        assert len(parts) == 2
        assert all(len(b) == 1 for b in parts)

    def test_blocks_partition_the_set(self, xp, group):
        parts = orbits(xp, group)
        union = [tuple(a) for b in parts for a in b]
        assert sorted(union) == sorted(tuple(a) for a in xp)

    def test_non_stabilizing_group_rejected(self, x):
        g3 = SymmetryGroup.symmetric(3)
        with pytest.raises(ValueError):
            orbits(x, g3)

    def test_orbit_closure_under_action(self):
        # 3-cycle orbit needs the transitive-closure sweep
        items = PatternSet([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        g = symmetry_group(items)
        parts = orbits(items, g)
        assert len(parts) == 1
        for block in parts:
            for s in g:
                for a in block:
                    assert s.act(a) in block


class TestPairOrbits:
    def test_swap_group_five_classes(self, group):
        classes = pair_orbits(3, group)
        assert classes == (((0, 0),), ((0, 1), (0, 2)), ((1, 0), (2, 0)),
                           ((1, 1), (2, 2)), ((1, 2), (2, 1)))

    def test_trivial_group(self):
        classes = pair_orbits(3, SymmetryGroup.trivial(3))
        assert len(classes) == 9
        assert all(len(c) == 1 for c in classes)

    def test_symmetric_group_two_classes(self):
        classes = pair_orbits(3, SymmetryGroup.symmetric(3))
        assert len(classes) == 2
        sizes = sorted(len(c) for c in classes)
        assert sizes == [3, 6]

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_classes_partition_and_are_invariant(self, n):
        g = SymmetryGroup.symmetric(n)
        classes = pair_orbits(n, g)
        flat = sorted(p for c in classes for p in c)
        assert flat == [(i, j) for i in range(n) for j in range(n)]
        for c in classes:
            members = set(c)
            for i, j in c:
                for s in g:
                    assert (s(i), s(j)) in members
