import numpy as np
import pytest

from qmlp.activation import split_tanh
from qmlp.quat import conjugate, hamilton_mul, hermitian_dot, norm_sq, quat
from qmlp.slp import SLPState, slp_error, slp_forward, slp_update, slp_update_componentwise

from oracles import central_difference

RNG = np.random.default_rng(99)


def random_state(n=3, eta=0.01):
    return SLPState(w=RNG.uniform(-1, 1, (n, 4)), eta=eta)


def cost_at(w, u, d):
    e = d - split_tanh(hermitian_dot(w, u))
    return norm_sq(e)


class TestForward:
    def test_zero_weights(self):
        state = SLPState(w=np.zeros((4, 4)), eta=0.1)
        u = RNG.uniform(-1, 1, (4, 4))
        assert (slp_forward(state, u) == 0).all()

    def test_identity_weight_passes_activation(self):
        state = SLPState(w=quat(1, 0, 0, 0)[None, :], eta=0.1)
        u = RNG.uniform(-1, 1, (1, 4))
        np.testing.assert_array_equal(slp_forward(state, u), split_tanh(u[0]))

    def test_composition_of_primitives(self):
        state = random_state()
        u = RNG.uniform(-1, 1, (3, 4))
        np.testing.assert_array_equal(
            slp_forward(state, u), split_tanh(hermitian_dot(state.w, u))
        )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            slp_forward(random_state(3), RNG.uniform(-1, 1, (4, 4)))


class TestError:
    def test_exact_match_gives_zero(self):
        state = random_state()
        u = RNG.uniform(-1, 1, (3, 4))
        d = slp_forward(state, u)
        assert (slp_error(d, state, u) == 0).all()

    def test_zero_weights_give_target(self):
        state = SLPState(w=np.zeros((3, 4)), eta=0.1)
        u = RNG.uniform(-1, 1, (3, 4))
        d = quat(0.3, -0.2, 0.9, 0.1)
        np.testing.assert_array_equal(slp_error(d, state, u), d)

    def test_norm_sq_is_the_scalar_cost(self):
        state = random_state()
        u = RNG.uniform(-1, 1, (3, 4))
        d = RNG.uniform(-1, 1, 4)
        e = slp_error(d, state, u)
        prod = hamilton_mul(e, conjugate(e))
        assert abs(norm_sq(e) - prod[0]) < 1e-12
        assert np.max(np.abs(prod[1:])) < 1e-12


class TestUpdate:
    def test_zero_error_freezes_weights(self):
        state = random_state()
        u = RNG.uniform(-1, 1, (3, 4))
        d = slp_forward(state, u)
        np.testing.assert_array_equal(slp_update(state, u, d).w, state.w)

    def test_zero_step_freezes_weights(self):
        state = random_state(eta=0.0)
        u = RNG.uniform(-1, 1, (3, 4))
        np.testing.assert_array_equal(slp_update(state, u, quat(1, 1, 0, 0)).w, state.w)

    def test_two_forms_agree(self):
        for _ in range(1000):
            state = random_state()
            u = RNG.uniform(-2, 2, (3, 4))
            d = RNG.uniform(-2, 2, 4)
            w_split = slp_update(state, u, d).w
            w_expanded = slp_update_componentwise(state, u, d).w
            np.testing.assert_allclose(w_split, w_expanded, atol=1e-12)

    def test_increment_is_gradient_descent(self):
        # increment must equal -2 eta times the finite-difference gradient
        # quaternion (four real partials / 4)
        for _ in range(20):
            state = random_state()
            u = RNG.uniform(-1, 1, (3, 4))
            d = RNG.uniform(-1, 1, 4)
            increment = slp_update(state, u, d).w - state.w
            fd = central_difference(lambda w: cost_at(w, u, d), state.w) / 4.0
            expected = -2.0 * state.eta * fd
            scale = max(np.max(np.abs(expected)), 1e-12)
            assert np.max(np.abs(increment - expected)) / scale < 1e-5

    def test_small_step_does_not_increase_error(self):
        for _ in range(50):
            state = random_state(eta=1e-3)
            u = RNG.uniform(-1, 1, (3, 4))
            d = RNG.uniform(-1, 1, 4)
            before = norm_sq(slp_error(d, state, u))
            new_state = slp_update(state, u, d)
            after = norm_sq(slp_error(d, new_state, u))
            fd = central_difference(lambda w: cost_at(w, u, d), state.w)
            predicted_decrease = np.sum(fd * (new_state.w - state.w))
            if abs(predicted_decrease) < 1e-14:
                continue
            assert after <= before + 1e-12


class TestStateValidation:
    def test_negative_eta(self):
        with pytest.raises(ValueError):
            SLPState(w=np.zeros((2, 4)), eta=-0.1)

    def test_non_finite_weights(self):
        w = np.zeros((2, 4))
        w[0, 0] = np.inf
        with pytest.raises(ValueError):
            SLPState(w=w, eta=0.1)
