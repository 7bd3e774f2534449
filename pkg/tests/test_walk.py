from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cyclewalk.angles import Angle
from cyclewalk.errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    InvalidProfileError,
    InvalidSpecError,
    NormalizationError,
)
from cyclewalk.walk import (
    CoinMode,
    CoinProfile,
    CycleSpec,
    WalkerState,
    build_coin_matrix,
    build_global_coin,
    build_shift,
    evolution_operator,
    evolve,
    fourier_matrix,
    fourier_mode,
    from_momentum,
    position_probabilities,
    return_fidelity,
    step,
    to_momentum,
)

from conftest import random_state


def index(x, c):
    return 2 * x + c


# --- shift ------------------------------------------------------------------

@pytest.mark.parametrize("N", [0, 1, 2])
def test_small_cycles_rejected(N):
    with pytest.raises(InvalidSpecError):
        CycleSpec(N)


def test_shift_examples():
    S = build_shift(CycleSpec(4))
    assert S[index(1, 0), index(0, 0)] == 1
    assert S[index(3, 1), index(0, 1)] == 1


def test_shift_eighth_power_identity_on_clockwise_subspace():
    S = build_shift(CycleSpec(8))
    S8 = np.linalg.matrix_power(S, 8)
    for x in range(8):
        e = np.zeros(16)
        e[index(x, 0)] = 1
        assert np.array_equal(S8 @ e, e)


@pytest.mark.parametrize("N", range(3, 13))
def test_shift_is_exact_permutation(N):
    S = build_shift(CycleSpec(N))
    for x in range(N):
        for q in (0, 1):
            col = S[:, index(x, q)]
            target = index((x + (-1) ** q) % N, q)
            assert col[target] == 1
            assert np.count_nonzero(col) == 1


# --- coin -------------------------------------------------------------------

def test_hadamard_class_coin():
    c = math.cos(math.pi / 4)
    assert np.allclose(build_coin_matrix(math.pi / 2, 1), [[c, -c], [c, c]], atol=1e-15)


@pytest.mark.parametrize("T", [1, 2, 5])
def test_zero_angle_is_identity(T):
    assert np.allclose(build_coin_matrix(0.0, T), np.eye(2))


def test_quarter_turn_coin():
    assert np.allclose(build_coin_matrix(math.pi / 2, 2), [[0, -1], [1, 0]], atol=1e-15)


def test_per_step_mode_ignores_T():
    a = build_coin_matrix(0.3, T=7, step=3, mode=CoinMode.PER_STEP)
    assert np.allclose(a, build_coin_matrix(0.3, T=3))


@given(st.floats(-10, 10), st.integers(1, 8))
def test_coin_is_special_orthogonal(theta, T):
    m = build_coin_matrix(theta, T)
    assert np.allclose(m.T @ m, np.eye(2), atol=1e-12)
    assert np.linalg.det(m) == pytest.approx(1.0)


# --- global coin ------------------------------------------------------------

def test_uniform_global_coin_is_kron():
    spec = CycleSpec(5)
    prof = CoinProfile.uniform(Angle.pi_fraction(1, 3), 5, 2)
    assert np.allclose(build_global_coin(prof, spec),
                       np.kron(np.eye(5), build_coin_matrix(math.pi / 3, 2)))


def test_boundary_profile_has_one_distinct_block():
    spec = CycleSpec(8)
    prof = CoinProfile.uniform("pi/3", 8, 2).with_angle(0, "7pi/5")
    C = build_global_coin(prof, spec)
    blocks = [C[2 * x:2 * x + 2, 2 * x:2 * x + 2] for x in range(8)]
    assert np.allclose(blocks[0], build_coin_matrix(7 * math.pi / 5, 2))
    for b in blocks[1:]:
        assert np.allclose(b, build_coin_matrix(math.pi / 3, 2))
    off = C.copy()
    for x in range(8):
        off[2 * x:2 * x + 2, 2 * x:2 * x + 2] = 0
    assert not off.any()


def test_profile_must_cover_spec():
    with pytest.raises(InvalidProfileError):
        build_global_coin(CoinProfile.uniform(0.1, 4), CycleSpec(5))


def test_profile_rejects_bad_T():
    with pytest.raises(InvalidProfileError):
        CoinProfile.uniform(0.1, 4, 0)


@pytest.mark.parametrize("seed", range(5))
def test_random_profile_operator_is_unitary(seed):
    r = np.random.default_rng(seed)
    N = int(r.integers(3, 13))
    prof = CoinProfile(tuple(Angle.from_radians(a) for a in r.uniform(0, 2 * math.pi, N)),
                       int(r.integers(1, 5)))
    U = evolution_operator(prof, CycleSpec(N))
    assert U.unitarity_defect() < 1e-12


# --- stepping ---------------------------------------------------------------

def test_identity_coin_is_pure_shift():
    spec = CycleSpec(6)
    psi = step(WalkerState.basis(spec, 0, 0), CoinProfile.uniform(0, 6), spec)
    assert psi == WalkerState.basis(spec, 1, 0)


def test_identity_coin_period_N():
    spec = CycleSpec(5)
    psi0 = WalkerState.basis(spec, 0, 0)
    final, _ = evolve(psi0, CoinProfile.uniform(0, 5), spec, 5)
    assert np.allclose(final.amplitudes, psi0.amplitudes)
    assert return_fidelity(psi0, final) == pytest.approx(1.0, abs=1e-15)


def test_matrix_power_oracle_hadamard_walk():
    spec = CycleSpec(8)
    prof = CoinProfile.uniform("pi/2", 8, 1)
    psi0 = WalkerState.localized(spec, 0)
    final, _ = evolve(psi0, prof, spec, 3)
    S = np.zeros((16, 16))
    for x in range(8):
        S[2 * ((x + 1) % 8), 2 * x] = 1
        S[2 * ((x - 1) % 8) + 1, 2 * x + 1] = 1
    c = 1 / math.sqrt(2)
    U = S @ np.kron(np.eye(8), [[c, -c], [c, c]])
    assert np.allclose(final.amplitudes, np.linalg.matrix_power(U, 3) @ psi0.amplitudes,
                       atol=1e-14)


@pytest.mark.parametrize("N, T, theta", [(5, 1, 0.7), (8, 2, math.pi / 3), (4, 3, 2.1)])
def test_fixed_mode_equals_matrix_power(N, T, theta):
    spec = CycleSpec(N)
    prof = CoinProfile.uniform(theta, N, T)
    psi0 = WalkerState.localized(spec, 0)
    U = evolution_operator(prof, spec).matrix
    state = psi0
    for t in range(1, 101):
        state = step(state, prof, spec, t)
    assert np.allclose(state.amplitudes, np.linalg.matrix_power(U, 100) @ psi0.amplitudes,
                       atol=1e-10)


def test_per_step_mode_varies_with_step():
    spec = CycleSpec(4)
    prof = CoinProfile(CoinProfile.uniform(0.4, 4).angles, 1, CoinMode.PER_STEP)
    U1 = evolution_operator(prof, spec, step=1).matrix
    U2 = evolution_operator(prof, spec, step=2).matrix
    assert not np.allclose(U1, U2)
    assert evolution_operator(prof, spec, step=2).unitarity_defect() < 1e-12


def test_probability_conservation_1000_steps():
    spec = CycleSpec(8)
    prof = CoinProfile.uniform("pi/3", 8, 2).with_angle(0, "7pi/5")
    _, heat = evolve(WalkerState.localized(spec, 0), prof, spec, 1000)
    assert heat.shape == (1001, 8)
    assert np.max(np.abs(heat.sum(axis=1) - 1)) < 1e-12


def test_norm_preserved_for_random_states(rng):
    spec = CycleSpec(7)
    U = evolution_operator(CoinProfile.uniform(1.1, 7, 3), spec)
    for _ in range(100):
        psi = random_state(rng, 7)
        assert abs(np.linalg.norm(U.apply(psi).amplitudes) - 1) < 1e-12


def test_state_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        WalkerState(np.ones(6, dtype=complex))


def test_state_is_immutable():
    psi = WalkerState.basis(CycleSpec(3), 0, 0)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


# --- probabilities ----------------------------------------------------------

@pytest.mark.parametrize("coin_vector", [(1, 0), (1, 1)])
def test_localized_probabilities(coin_vector):
    spec = CycleSpec(6)
    P = position_probabilities(WalkerState.localized(spec, 0, coin_vector))
    assert np.allclose(P, [1, 0, 0, 0, 0, 0])


def test_random_state_probabilities_sum(rng):
    P = position_probabilities(random_state(rng, 9))
    assert np.all(P >= 0)
    assert abs(P.sum() - 1) < 1e-12


# --- Fourier ----------------------------------------------------------------

def test_zero_mode_is_uniform():
    assert np.allclose(fourier_mode(CycleSpec(6), 0), np.full(6, 1 / math.sqrt(6)))


def test_modes_orthonormal_N7():
    spec = CycleSpec(7)
    modes = np.array([fourier_mode(spec, k) for k in range(7)])
    assert np.allclose(modes.conj() @ modes.T, np.eye(7), atol=1e-12)


@pytest.mark.parametrize("k", [-1, 7])
def test_mode_out_of_range(k):
    with pytest.raises(InvalidArgumentError):
        fourier_mode(CycleSpec(7), k)


@pytest.mark.parametrize("n", range(3, 17))
def test_fourier_matrix_unitary(n):
    F = fourier_matrix(n)
    assert np.max(np.abs(F.conj().T @ F - np.eye(n))) < 1e-12


@given(st.integers(3, 32), st.integers(0, 2**32 - 1))
def test_fourier_round_trip(n, seed):
    r = np.random.default_rng(seed)
    v = r.normal(size=n) + 1j * r.normal(size=n)
    assert np.max(np.abs(from_momentum(to_momentum(v)) - v)) < 1e-12


# --- fidelity ---------------------------------------------------------------

def test_fidelity_limits():
    spec = CycleSpec(4)
    a, b = WalkerState.basis(spec, 0, 0), WalkerState.basis(spec, 2, 1)
    assert return_fidelity(a, a) == pytest.approx(1.0)
    assert return_fidelity(a, b) == 0.0


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        return_fidelity(WalkerState.basis(CycleSpec(4), 0, 0),
                        WalkerState.basis(CycleSpec(5), 0, 0))
