"""States: construction, comparison, tensor algebra, partial traces."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctkit import (
    MixedState,
    PureState,
    StateError,
    apply_unitary,
    basis_state,
    expectation,
    inner,
    normalized,
    orthogonal,
    partial_trace,
    states_equal,
    tensor,
)

from conftest import ket, minus, plus

RNG = np.random.default_rng(20260822)


def random_ket(dim, rng=RNG):
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return normalized(vec)


def test_basis_state_is_unit():
    s = basis_state(2, 0)
    assert s.dim == 2
    assert s.dims == (2,)
    assert abs(np.linalg.norm(s.vector) - 1.0) < 1e-12


def test_non_unit_vector_rejected():
    with pytest.raises(StateError):
        PureState(np.array([1.0, 1.0]))


def test_zero_vector_rejected():
    with pytest.raises(StateError):
        normalized([0, 0])


def test_dims_must_factor_the_length():
    with pytest.raises(StateError):
        PureState(np.array([1.0, 0.0, 0.0]), dims=(2, 2))


def test_equality_ignores_global_phase():
    s = plus()
    rotated = PureState(np.exp(1j * 0.7) * s.vector)
    assert states_equal(s, rotated)


def test_distinct_states_not_equal():
    assert not states_equal(basis_state(2, 0), plus())
    assert not states_equal(basis_state(2, 0), basis_state(3, 0))


def test_inner_and_orthogonal():
    assert inner(basis_state(2, 0), basis_state(2, 1)) == 0
    assert orthogonal(plus(), minus())
    assert not orthogonal(basis_state(2, 0), plus())
    assert abs(inner(basis_state(2, 0), plus()) - 1 / np.sqrt(2)) < 1e-12


def test_tensor_tracks_factor_dims():
    joint = tensor(basis_state(2, 0), plus())
    assert joint.dims == (2, 2)
    assert joint.dim == 4
    expected = np.array([1, 1, 0, 0]) / np.sqrt(2)
    assert np.allclose(joint.vector, expected)


def test_partial_trace_of_bell_pair_is_maximally_mixed():
    bell = normalized([1, 0, 0, 1], dims=(2, 2))
    reduced = partial_trace(bell, keep=0)
    assert np.allclose(reduced.matrix, np.eye(2) / 2)


def test_partial_trace_of_product_recovers_factor():
    joint = tensor(basis_state(2, 0), plus())
    reduced = partial_trace(joint, keep=1)
    assert states_equal(reduced, plus())
    # and the kept factor is pure: rho^2 == rho
    assert np.allclose(reduced.matrix @ reduced.matrix, reduced.matrix)


def test_partial_trace_keep_order_matters():
    joint = tensor(basis_state(2, 0), basis_state(3, 1))
    swapped = partial_trace(joint, keep=(1, 0))
    assert swapped.dims == (3, 2)
    assert states_equal(swapped, tensor(basis_state(3, 1), basis_state(2, 0)).density())


def test_partial_trace_rejects_bad_factor_index():
    with pytest.raises(StateError):
        partial_trace(plus(), keep=1)


def test_mixed_state_validation():
    with pytest.raises(StateError):
        MixedState(np.array([[0.5, 0.5], [0.4, 0.5]]))  # not hermitian
    with pytest.raises(StateError):
        MixedState(np.diag([0.5, 0.4]))  # trace 0.9
    with pytest.raises(StateError):
        MixedState(np.diag([1.5, -0.5]))  # negative eigenvalue


def test_expectation_on_pure_and_mixed():
    proj0 = np.diag([1.0, 0.0])
    assert expectation(plus(), proj0) == pytest.approx(0.5)
    assert expectation(plus().density(), proj0) == pytest.approx(0.5)


def test_apply_unitary_on_one_factor():
    hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    joint = tensor(basis_state(2, 0), basis_state(2, 0))
    out = apply_unitary(joint, hadamard, factors=(1,))
    assert states_equal(out, tensor(basis_state(2, 0), plus()))


def test_apply_unitary_whole_space():
    hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert states_equal(apply_unitary(basis_state(2, 0), hadamard), plus())


# ---------------------------------------------------------------------------
# Properties

dims_st = st.integers(min_value=2, max_value=5)
phase_st = st.floats(min_value=-np.pi, max_value=np.pi, allow_nan=False)
seed_st = st.integers(min_value=0, max_value=2**32 - 1)


@given(dims_st, phase_st, seed_st)
def test_phase_invariance_property(dim, theta, seed):
    s = random_ket(dim, np.random.default_rng(seed))
    assert states_equal(s, PureState(np.exp(1j * theta) * s.vector))


@given(dims_st, seed_st)
def test_density_of_pure_state_is_idempotent(dim, seed):
    rho = random_ket(dim, np.random.default_rng(seed)).density()
    assert np.allclose(rho.matrix @ rho.matrix, rho.matrix, atol=1e-10)


@given(seed_st)
def test_partial_trace_consistent_with_tensor(seed):
    rng = np.random.default_rng(seed)
    a, b = random_ket(2, rng), random_ket(3, rng)
    joint = tensor(a, b)
    assert states_equal(partial_trace(joint, keep=0), a.density())
    assert states_equal(partial_trace(joint, keep=1), b.density())
