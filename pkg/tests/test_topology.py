from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cyclewalk.bloch import dirac_points, reference_axis, winding_vector
from cyclewalk.errors import GapClosedError, InvalidArgumentError
from cyclewalk.topology import (
    CONTINUUM,
    WindingStatus,
    discrete_continuum_agreement,
    winding,
    winding_number_discrete,
    winding_scan,
    zak_phase_continuum,
)

PI = math.pi

# Reference values carry at most six significant digits; 2e-5 absorbs the rounding.
QUOTED = [
    (PI / 2, 1, 3, 1.01015),
    (PI / 2, 1, 4, 1.06066),
    (PI / 2, 1, 5, 1.0003),
    (PI / 2, 1, 7, 1.00001),
    (PI / 2, 1, 8, 1.00173),
    (PI / 3, 2, 7, 1.0),
    (PI / 3, 2, 8, 1.00005),
    (3 * PI / 2, 2, 3, -1.0),
    (3 * PI / 2, 2, 4, -1.0),
    (3 * PI / 2, 2, 8, -1.0),
]


@pytest.mark.parametrize("theta, T, N, quoted", QUOTED)
def test_quoted_windings(theta, T, N, quoted):
    r = winding_number_discrete(theta, T, N)
    assert r.status is WindingStatus.VALID
    assert abs(r.omega - quoted) < 2e-5


def test_five_cycle_closed_form():
    assert winding_number_discrete(PI / 2, 1, 5).omega == pytest.approx(29 * math.sqrt(2) / 41,
                                                                        abs=1e-14)


def test_gap_closed_at_dirac_angle():
    r = winding_number_discrete(0.0, 2, 8)
    assert r.status is WindingStatus.GAP_CLOSED
    assert not r.valid and math.isnan(r.omega) and r.phase == 0


def test_discrete_is_brute_force_sum():
    theta, T, N = 1.1, 3, 9
    a = T * theta / 2
    terms = [math.sin(a) / (N * (1 - math.cos(2 * PI * kp / N) ** 2 * math.cos(a) ** 2))
             for kp in range(N)]
    assert winding_number_discrete(theta, T, N).omega == pytest.approx(sum(terms), rel=1e-14)


@given(st.floats(0, 2 * PI), st.integers(1, 6), st.integers(3, 40))
def test_sign_rule(theta, T, N):
    r = winding_number_discrete(theta, T, N)
    if r.valid:
        assert np.sign(r.omega) == np.sign(math.sin(T * theta / 2))


# --- continuum --------------------------------------------------------------

@pytest.mark.parametrize("theta, T, expected", [
    (PI / 2, 1, 1.0), (3 * PI / 2, 2, -1.0), (PI, 1, 1.0),
])
def test_continuum_values(theta, T, expected):
    r = zak_phase_continuum(theta, T)
    assert r.N is CONTINUUM
    assert r.omega == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("points", [0, 63, 65])
def test_quadrature_point_validation(points):
    with pytest.raises(InvalidArgumentError):
        zak_phase_continuum(PI / 2, 1, points)


def test_continuum_gap_closed():
    assert zak_phase_continuum(0.0, 1).status is WindingStatus.GAP_CLOSED
    assert zak_phase_continuum(PI, 2).status is WindingStatus.GAP_CLOSED


@pytest.mark.parametrize("theta, T", [(PI / 2, 1), (PI / 3, 2), (3 * PI / 2, 2), (0.7, 3)])
def test_continuum_matches_geometric_winding(theta, T):
    """(1/2pi) * loop integral of (n x dn/dk) . A, by midpoint rule and central differences."""
    M, eps = 512, 1e-6
    h = 2 * PI / M
    A = np.array(reference_axis(theta, T))
    total = 0.0
    for k in (np.arange(M) + 0.5) * h:
        n = np.array(winding_vector(k, theta, T))
        dn = (np.array(winding_vector(k + eps, theta, T))
              - np.array(winding_vector(k - eps, theta, T))) / (2 * eps)
        total += np.cross(n, dn) @ A * h
    assert total / (2 * PI) == pytest.approx(zak_phase_continuum(theta, T).omega, abs=1e-6)


def _far_from_dirac(theta, T, margin):
    return all(abs(theta - p.theta) > margin for p in dirac_points(T))


@pytest.mark.parametrize("seed", range(10))
def test_large_N_convergence(seed):
    r = np.random.default_rng(seed)
    while True:
        theta, T = float(r.uniform(0, 2 * PI)), int(r.integers(1, 5))
        if _far_from_dirac(theta, T, 0.05):
            break
    d = winding_number_discrete(theta, T, 2000).omega
    assert abs(d - zak_phase_continuum(theta, T).omega) < 1e-6


@given(st.floats(0, 2 * PI), st.integers(1, 4))
def test_continuum_quantized(theta, T):
    assume(_far_from_dirac(theta, T, 0.05))
    w = zak_phase_continuum(theta, T).omega
    assert abs(w - round(w)) < 1e-6
    assert round(w) in (-1, 1)


def test_winding_dispatch():
    assert winding(PI / 2, 1, CONTINUUM).N is CONTINUUM
    assert winding(PI / 2, 1, 7).N == 7


# --- agreement --------------------------------------------------------------

@pytest.mark.parametrize("theta, T, N, bound", [
    (PI / 2, 1, 1000, 1e-6), (PI / 3, 2, 1000, 1e-6), (PI / 3, 2, 7, 1e-4),
])
def test_agreement_bounds(theta, T, N, bound):
    assert discrete_continuum_agreement(theta, T, N) < bound


def test_agreement_small_cycle():
    assert discrete_continuum_agreement(PI / 2, 1, 4) == pytest.approx(0.06066, abs=1e-5)


def test_agreement_propagates_gap_closed():
    with pytest.raises(GapClosedError):
        discrete_continuum_agreement(0.0, 1, 8)


# --- scans ------------------------------------------------------------------

def test_scan_grid_and_validation():
    scan = winding_scan(2, 8, 33)
    assert len(scan.theta_grid) == 33
    assert scan.theta_grid[0] == 0 and scan.theta_grid[-1] == pytest.approx(2 * PI)
    assert all(b > a for a, b in zip(scan.theta_grid, scan.theta_grid[1:]))
    with pytest.raises(InvalidArgumentError):
        winding_scan(2, 8, 15)


def test_step_independent_scan_has_single_phase():
    scan = winding_scan(1, 1000, 201)
    assert scan.transitions == ()
    interior = [r for r in scan.valid_results() if 0.05 < r.theta < 2 * PI - 0.05]
    assert all(abs(r.omega - 1) < 1e-3 for r in interior)


@pytest.mark.parametrize("N", [1000, CONTINUUM])
def test_T2_scan_flips_at_pi(N):
    scan = winding_scan(2, N, 201)
    assert len(scan.transitions) == 1
    lo, hi = scan.transitions[0]
    assert lo < PI < hi


@pytest.mark.parametrize("T, N", [(2, 8), (3, 8), (4, 7), (3, CONTINUUM)])
def test_transitions_bracket_dirac_angles(T, N):
    scan = winding_scan(T, N, 201)
    spacing = scan.theta_grid[1]
    thetas = [p.theta for p in dirac_points(T)]
    assert scan.transitions
    for lo, hi in scan.transitions:
        assert hi - lo <= 2 * spacing + 1e-12
        assert any(lo - 1e-12 <= t <= hi + 1e-12 for t in thetas)
