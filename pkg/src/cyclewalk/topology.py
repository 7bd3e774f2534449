"""Winding numbers of the uniform-coin walk.

On an N-cycle the winding is the finite sum over the N allowed momenta

    omega(theta, T, N) = sum_k' sin(a) / (N (1 - cos^2(2 pi k'/N) cos^2(a))),  a = T theta / 2,

and in the continuum it is the Zak phase over pi, evaluated here with the
midpoint rule.  Values are returned unrounded: small cycles legitimately give
non-integers such as 1.06066 for the Hadamard coin on four sites.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GapClosedError, InvalidArgumentError

__all__ = [
    "CONTINUUM",
    "Continuum",
    "WindingStatus",
    "WindingResult",
    "WindingScan",
    "winding_number_discrete",
    "zak_phase_continuum",
    "winding",
    "winding_scan",
    "find_transitions",
    "discrete_continuum_agreement",
    "DEFAULT_QUADRATURE_POINTS",
]

DEFAULT_QUADRATURE_POINTS = 4096
DISCRETE_GAP_TOL = 1e-12
CONTINUUM_GAP_TOL = 1e-9


class Continuum(enum.Enum):
    CONTINUUM = "continuum"

    def __str__(self):
        return self.value


CONTINUUM = Continuum.CONTINUUM


class WindingStatus(str, enum.Enum):
    VALID = "valid"
    GAP_CLOSED = "gap-closed"


@dataclass(frozen=True)
class WindingResult:
    theta: float
    T: int
    N: int | Continuum
    omega: float  # nan when the gap is closed
    status: WindingStatus

    @property
    def valid(self) -> bool:
        return self.status is WindingStatus.VALID

    @property
    def phase(self) -> int:
        """Sign of omega; 0 for gap-closed points."""
        if not self.valid:
            return 0
        return 1 if self.omega > 0 else -1

    def rounded(self) -> int:
        if not self.valid:
            raise GapClosedError(f"no winding at closed gap theta={self.theta!r}")
        return int(round(self.omega))


@dataclass(frozen=True)
class WindingScan:
    T: int
    N: int | Continuum
    theta_grid: tuple[float, ...]
    omegas: tuple[WindingResult, ...]
    transitions: tuple[tuple[float, float], ...] = field(default=())

    def valid_results(self) -> list[WindingResult]:
        return [r for r in self.omegas if r.valid]


def _check_T(T):
    if isinstance(T, bool) or int(T) != T or T < 1:
        raise InvalidArgumentError(f"T must be an integer >= 1, got {T!r}")


def winding_number_discrete(theta, T: int, N: int) -> WindingResult:
    """Finite momentum sum for the N-cycle; GAP_CLOSED if any denominator < 1e-12."""
    _check_T(T)
    if N < 3:
        raise InvalidArgumentError(f"N must be >= 3, got {N}")
    theta = float(theta)
    a = T * theta / 2.0
    cos_k = np.cos(2.0 * math.pi * np.arange(N) / N)
    denom = N * (1.0 - cos_k ** 2 * math.cos(a) ** 2)
    if np.min(np.abs(denom)) < DISCRETE_GAP_TOL:
        return WindingResult(theta, T, N, math.nan, WindingStatus.GAP_CLOSED)
    omega = float(np.sum(math.sin(a) / denom))
    return WindingResult(theta, T, N, omega, WindingStatus.VALID)


def zak_phase_continuum(theta, T: int,
                        quadrature_points: int = DEFAULT_QUADRATURE_POINTS) -> WindingResult:
    """Continuum winding ``Z / pi`` by the midpoint rule on k in [0, 2 pi].

    ``Z = -(sin a / 2) * integral dk / (cos^2 a cos^2 k - 1)``.  An even point
    count keeps every node off k = 0, pi, 2pi.
    """
    _check_T(T)
    if quadrature_points < 64 or quadrature_points % 2:
        raise InvalidArgumentError(
            f"quadrature_points must be even and >= 64, got {quadrature_points}")
    theta = float(theta)
    a = T * theta / 2.0
    if abs(math.cos(a)) > 1.0 - CONTINUUM_GAP_TOL:
        return WindingResult(theta, T, CONTINUUM, math.nan, WindingStatus.GAP_CLOSED)
    h = 2.0 * math.pi / quadrature_points
    k = (np.arange(quadrature_points) + 0.5) * h
    integral = h * float(np.sum(1.0 / (math.cos(a) ** 2 * np.cos(k) ** 2 - 1.0)))
    zak = -0.5 * math.sin(a) * integral
    return WindingResult(theta, T, CONTINUUM, zak / math.pi, WindingStatus.VALID)


def winding(theta, T: int, N: int | Continuum) -> WindingResult:
    if N is CONTINUUM:
        return zak_phase_continuum(theta, T)
    return winding_number_discrete(theta, T, N)


def winding_scan(T: int, N: int | Continuum, theta_samples: int = 201) -> WindingScan:
    """Winding on a uniform grid of ``theta_samples`` angles spanning [0, 2pi].

    A transition is reported for each pair of neighbouring valid samples whose
    winding changes sign; gap-closed samples are skipped when pairing.
    """
    _check_T(T)
    if theta_samples < 16:
        raise InvalidArgumentError(f"theta_samples must be >= 16, got {theta_samples}")
    grid = tuple(2.0 * math.pi * j / (theta_samples - 1) for j in range(theta_samples))
    results = tuple(winding(th, T, N) for th in grid)
    return WindingScan(T, N, grid, results, find_transitions(results))


def find_transitions(results) -> tuple[tuple[float, float], ...]:
    valid = [r for r in results if r.valid]
    return tuple((left.theta, right.theta)
                 for left, right in zip(valid, valid[1:])
                 if left.phase != right.phase)


def discrete_continuum_agreement(theta, T: int, N: int) -> float:
    """``|omega_N - omega_continuum|``; raises GapClosedError if either is undefined."""
    d = winding_number_discrete(theta, T, N)
    c = zak_phase_continuum(theta, T)
    if not (d.valid and c.valid):
        raise GapClosedError(f"winding undefined at theta={float(theta)!r}, T={T}, N={N}")
    return abs(d.omega - c.omega)
