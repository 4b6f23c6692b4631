import numpy as np
import pytest
from hypothesis import given, strategies as st

from symnet import (Activation, IDENTITY, PatternSet, SymmetryGroup,
                    build_template, equivariance_check, forward, instantiate,
                    is_autoassociator, is_compatible, iterate,
                    symmetry_deviation)
from symnet.nets import Template, default_param_names

W0_SGD = np.array([[2 / 3, 1 / 3, 1 / 3],
                   [1 / 3, 2 / 3, -1 / 3],
                   [1 / 3, -1 / 3, 2 / 3]])

params5 = st.lists(st.floats(-5, 5, allow_nan=False), min_size=5, max_size=5)


class TestActivation:
    def test_identity(self):
        u = np.array([-2.0, 0.0, 3.5])
        assert np.array_equal(IDENTITY(u), u)
        assert np.array_equal(IDENTITY.deriv(u), np.ones(3))

    def test_tanh_shift(self):
        act = Activation("tanh", 1.0)
        assert act(1.0) == pytest.approx(0.0)
        assert act.deriv(1.0) == pytest.approx(1.0)

    def test_sigmoid_defaults(self):
        act = Activation("sigmoid")
        assert act.c == 1.0
        assert act(0.0) == pytest.approx(0.5)
        assert act.deriv(0.0) == pytest.approx(0.25)

    def test_sigmoid_gain(self):
        act = Activation("sigmoid", 4.0)
        assert act(0.5) == pytest.approx(1.0 / (1.0 + np.exp(-2.0)))

    def test_invalid(self):
        with pytest.raises(ValueError):
            Activation("relu")
        with pytest.raises(ValueError):
            Activation("sigmoid", -1.0)

    @pytest.mark.parametrize("act", [IDENTITY, Activation("tanh", 0.3),
                                     Activation("sigmoid", 2.0)])
    def test_strictly_increasing(self, act):
        u = np.linspace(-4.0, 4.0, 201)
        assert np.all(np.diff(act(u)) > 0.0)
        assert np.all(act.deriv(u) > 0.0)

    @pytest.mark.parametrize("act", [Activation("tanh", -0.7),
                                     Activation("sigmoid", 1.5)])
    def test_deriv_matches_finite_difference(self, act):
        u = np.linspace(-3.0, 3.0, 25)
        h = 1e-6
        fd = (act(u + h) - act(u - h)) / (2 * h)
        assert np.allclose(act.deriv(u), fd, atol=1e-8)


class TestForwardIterate:
    def test_forward_identity_net(self):
        x = np.array([0.2, -1.0, 3.0])
        assert np.allclose(forward(np.eye(3), IDENTITY, x), x)

    def test_forward_published_matrix_fixes_items(self, x):
        for item in x:
            assert np.allclose(forward(W0_SGD, IDENTITY, item), item, atol=1e-12)

    def test_forward_tanh_at_zero_weights(self):
        out = forward(np.zeros((3, 3)), Activation("tanh"), [1, 1, 1])
        assert np.array_equal(out, np.zeros(3))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            forward(np.eye(3), IDENTITY, [1.0, 2.0])

    def test_iterate_zero_steps(self):
        traj = iterate(np.eye(3), IDENTITY, [1, 2, 3], 0)
        assert traj.shape == (1, 3)
        assert np.array_equal(traj[0], [1, 2, 3])

    def test_iterate_geometric_decay(self):
        w = np.diag([0.5, 1.0, 1.0])
        traj = iterate(w, IDENTITY, [1.0, 0.0, 0.0], 3)
        assert np.allclose(traj[:, 0], [1.0, 0.5, 0.25, 0.125])

    def test_iterate_matches_repeated_forward(self, rng):
        w = rng.normal(size=(3, 3))
        act = Activation("tanh")
        x0 = rng.normal(size=3)
        traj = iterate(w, act, x0, 5)
        state = np.asarray(x0, dtype=float)
        for k in range(5):
            state = forward(w, act, state)
            assert np.array_equal(traj[k + 1], state)


class TestTemplate:
    def test_build_for_swap_group(self, group):
        t = build_template(3, group)
        assert t.n_params == 5
        assert t.param_names == ("a", "b", "c", "d", "e")

    def test_instantiate_pattern(self, group):
        t = build_template(3, group)
        w = instantiate(t, [1.0, 2.0, 3.0, 4.0, 5.0])
        assert np.array_equal(w, [[1, 2, 2], [3, 4, 5], [3, 5, 4]])

    def test_instantiate_identity(self, group):
        t = build_template(3, group)
        assert np.array_equal(t.instantiate([1, 0, 0, 1, 0]), np.eye(3))

    def test_instantiate_published_matrix(self, group):
        t = build_template(3, group)
        w = t.instantiate([2 / 3, 1 / 3, 1 / 3, 2 / 3, -1 / 3])
        assert np.allclose(w, W0_SGD)

    def test_trivial_group_full_freedom(self):
        t = build_template(3, SymmetryGroup.trivial(3))
        assert t.n_params == 9

    def test_symmetric_group_two_params(self):
        t = build_template(3, SymmetryGroup.symmetric(3))
        w = t.instantiate([2.0, -1.0])
        expected = 2.0 * np.eye(3) - 1.0 * (np.ones((3, 3)) - np.eye(3))
        assert np.array_equal(w, expected)

    def test_bad_partition_rejected(self):
        with pytest.raises(ValueError):
            Template(2, (((0, 0), (1, 1)),))  # off-diagonal pairs missing

    def test_param_count_checked(self, group):
        t = build_template(3, group)
        with pytest.raises(ValueError):
            t.instantiate([1.0, 2.0])

    def test_basis_matrices_sum_to_ones(self, group):
        t = build_template(3, group)
        total = sum(t.basis_matrix(k) for k in range(t.n_params))
        assert np.array_equal(total, np.ones((3, 3)))

    def test_many_params_naming(self):
        names = default_param_names(30)
        assert names[0] == "p0" and len(names) == 30

    @given(params5)
    def test_instances_are_always_compatible(self, params):
        from symnet import Permutation
        g = SymmetryGroup([Permutation((0, 1, 2)), Permutation((0, 2, 1))])
        t = build_template(3, g)
        w = t.instantiate(params)
        ok, dev = is_compatible(w, g)
        assert ok and dev == 0.0


class TestCompatibility:
    def test_published_matrix(self, group):
        ok, dev = is_compatible(W0_SGD, group)
        assert ok and dev == 0.0

    def test_identity_compatible_with_s3(self):
        ok, _ = is_compatible(np.eye(3), SymmetryGroup.symmetric(3))
        assert ok

    def test_broken_matrix_deviation(self, group):
        w = W0_SGD.copy()
        w[0, 1] += 0.25
        ok, dev = is_compatible(w, group)
        assert not ok
        assert dev == pytest.approx(0.25)

    def test_deviation_zero_iff_invariant(self, group, rng):
        w = rng.normal(size=(3, 3))
        dev = symmetry_deviation(w, group)
        expected = max(np.max(np.abs(w - s.act_matrix(w))) for s in group)
        assert dev == expected


class TestAutoassociatorCheck:
    def test_identity_matrix(self, x):
        ok, residuals = is_autoassociator(np.eye(3), IDENTITY, x)
        assert ok and residuals == [0.0, 0.0]

    def test_zero_matrix_fails(self, x):
        ok, residuals = is_autoassociator(np.zeros((3, 3)), IDENTITY, x)
        assert not ok
        assert max(residuals) == 1.0

    def test_family_members(self, fam_x, x, rng):
        for _ in range(20):
            w = fam_x.member(rng.uniform(-1, 1, size=2))
            ok, _ = is_autoassociator(w, IDENTITY, x, tol=1e-10)
            assert ok


class TestEquivariance:
    def test_compatible_matrix_equivariant(self, group, rng):
        t = build_template(3, group)
        samples = [rng.normal(size=3) for _ in range(5)]
        for act in (IDENTITY, Activation("tanh"), Activation("sigmoid")):
            w = t.instantiate(rng.uniform(-1, 1, size=5))
            ok, dev = equivariance_check(w, act, group, samples, tol=1e-12)
            assert ok, dev

    def test_identity_matrix_equivariant_under_s3(self, rng):
        g = SymmetryGroup.symmetric(3)
        samples = [rng.normal(size=3) for _ in range(3)]
        ok, _ = equivariance_check(np.eye(3), Activation("tanh"), g, samples)
        assert ok

    def test_broken_matrix_detected(self, group, rng):
        t = build_template(3, group)
        w = t.instantiate(rng.uniform(-1, 1, size=5))
        w[1, 1] += 0.5
        probes = list(np.eye(3))
        ok, dev = equivariance_check(w, IDENTITY, group, probes, tol=1e-3)
        assert not ok and dev > 1e-3
