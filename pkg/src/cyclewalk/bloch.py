"""Closed-form momentum-space analysis of the uniform-coin walk.

With ``a = T * theta / 2`` the Bloch step is ``diag(e^{-ik}, e^{ik}) R(a)`` and
its quasi-energies are ``+-E(k)`` with ``cos E = cos k cos a``.  The upper band
``E_plus`` is always the principal ``arccos`` value in ``[0, pi]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import GapClosedError, InvalidArgumentError

__all__ = [
    "GAP_TOL",
    "Undefined",
    "UNDEFINED",
    "MomentumSample",
    "SpectralPoint",
    "DiracPoint",
    "bloch_unitary",
    "dispersion",
    "gap_is_open",
    "winding_vector",
    "reference_axis",
    "group_velocity",
    "effective_mass",
    "spectral_point",
    "dirac_points",
    "flat_band_angles",
    "rotational_flat_momenta",
]

# |sin E| below this counts as a closed gap.
GAP_TOL = 1e-9
# |cos k cos a sin^2 a| below this makes the effective mass undefined.
MASS_DENOM_TOL = 1e-12


class Undefined(enum.Enum):
    """Marker for an effective mass that diverges (flat band, Dirac point, cos k = 0)."""

    UNDEFINED = "undefined"

    def __bool__(self):
        return False

    def __str__(self):
        return self.value


UNDEFINED = Undefined.UNDEFINED


@dataclass(frozen=True)
class MomentumSample:
    k: float
    k_index: int | None = None

    def __post_init__(self):
        if self.k_index is not None and self.k_index < 0:
            raise InvalidArgumentError(f"negative momentum index {self.k_index}")

    @classmethod
    def on_cycle(cls, k_index: int, sites: int) -> MomentumSample:
        if not 0 <= k_index < sites:
            raise InvalidArgumentError(f"k' = {k_index} outside [0, {sites})")
        return cls(2.0 * math.pi * k_index / sites, k_index)


@dataclass(frozen=True)
class SpectralPoint:
    k: float
    E_plus: float
    E_minus: float
    n_hat: tuple[float, float, float] | None
    A_hat: tuple[float, float, float]
    v_gr: float | None
    m_eff: float | Undefined

    @property
    def gap_open(self) -> bool:
        return self.n_hat is not None


@dataclass(frozen=True)
class DiracPoint:
    """Gap closing at ``(theta, k)``; ``energy`` is 0 or pi."""

    theta: float
    k: float
    energy: float
    theta_multiple: tuple[int, int] = (0, 1)  # theta = (p / q) * pi


def _half(theta, T) -> float:
    return T * float(theta) / 2.0


def _cos_product(k, theta, T) -> float:
    return math.cos(float(k)) * math.cos(_half(theta, T))


def bloch_unitary(k, theta, T: int = 1) -> NDArray[np.complex128]:
    """2x2 momentum block ``diag(e^{-ik}, e^{ik}) . R(T theta / 2)``."""
    a = _half(theta, T)
    c, s = math.cos(a), math.sin(a)
    rot = np.array([[c, -s], [s, c]], dtype=np.complex128)
    phases = np.array([np.exp(-1j * float(k)), np.exp(1j * float(k))])
    return phases[:, None] * rot


def dispersion(k, theta, T: int = 1) -> tuple[float, float]:
    """Quasi-energies ``(E_plus, E_minus)`` with ``E_plus = arccos(cos k cos(T theta/2))``."""
    c = min(1.0, max(-1.0, _cos_product(k, theta, T)))
    e = math.acos(c)
    return e, -e


def _sin_energy_sq(k, theta, T) -> float:
    # 1 - cos^2 k cos^2 a rewritten without cancellation near the Dirac points
    a = _half(theta, T)
    sk, ck, sa = math.sin(float(k)), math.cos(float(k)), math.sin(a)
    return sk * sk + ck * ck * sa * sa


def _sin_energy(k, theta, T) -> float:
    return math.sqrt(_sin_energy_sq(k, theta, T))


def gap_is_open(k, theta, T: int = 1) -> bool:
    return _sin_energy(k, theta, T) >= GAP_TOL


def winding_vector(k, theta, T: int = 1) -> tuple[float, float, float]:
    """Unit vector n(k) of the effective Hamiltonian ``E n . sigma``.

    Raises
    ------
    GapClosedError
        If ``|sin E(k)| < GAP_TOL``.
    """
    sin_e = _sin_energy(k, theta, T)
    if sin_e < GAP_TOL:
        raise GapClosedError(f"gap closed at k={float(k)!r}, theta={float(theta)!r}, T={T}")
    a = _half(theta, T)
    sk, ck = math.sin(float(k)), math.cos(float(k))
    sa, ca = math.sin(a), math.cos(a)
    return (-sk * sa / sin_e, ck * sa / sin_e, sk * ca / sin_e)


def reference_axis(theta, T: int = 1) -> tuple[float, float, float]:
    """k-independent axis ``(cos a, 0, sin a)``, perpendicular to every n(k)."""
    a = _half(theta, T)
    return (math.cos(a), 0.0, math.sin(a))


def group_velocity(k, theta, T: int = 1) -> float:
    """Upper-band group velocity ``dE_plus/dk``."""
    sin_e = _sin_energy(k, theta, T)
    if sin_e < GAP_TOL:
        raise GapClosedError(
            f"group velocity undefined at closed gap k={float(k)!r}, theta={float(theta)!r}, T={T}")
    return math.cos(_half(theta, T)) * math.sin(float(k)) / sin_e


def effective_mass(k, theta, T: int = 1) -> float | Undefined:
    """Upper-band effective mass ``1 / (d^2 E_plus / dk^2)``, or UNDEFINED."""
    a = _half(theta, T)
    ca, sa, ck = math.cos(a), math.sin(a), math.cos(float(k))
    denom = ck * ca * sa * sa
    if abs(denom) < MASS_DENOM_TOL:
        return UNDEFINED
    return _sin_energy_sq(k, theta, T) ** 1.5 / denom


def spectral_point(k, theta, T: int = 1) -> SpectralPoint:
    e_plus, e_minus = dispersion(k, theta, T)
    if gap_is_open(k, theta, T):
        n_hat, v_gr = winding_vector(k, theta, T), group_velocity(k, theta, T)
    else:
        n_hat, v_gr = None, None
    return SpectralPoint(float(k), e_plus, e_minus, n_hat, reference_axis(theta, T),
                         v_gr, effective_mass(k, theta, T))


def _require_T(T: int) -> None:
    if isinstance(T, bool) or int(T) != T or T < 1:
        raise InvalidArgumentError(f"T must be an integer >= 1, got {T!r}")


def dirac_points(T: int, energy: float | None = None) -> list[DiracPoint]:
    """All gap closings with theta, k in [0, 2pi].

    ``cos k cos(T theta / 2) = +-1`` forces ``theta = 2 m pi / T`` (m = 0..T)
    and ``k in {0, pi, 2pi}``.  The closing sits at E = 0 when
    ``(-1)^m cos k = 1`` and at E = pi otherwise.  Pass ``energy=0`` or
    ``energy=math.pi`` to keep one kind only.
    """
    _require_T(T)
    points = []
    for m in range(T + 1):
        theta = 2.0 * math.pi * m / T
        for k, k_sign in ((0.0, 1), (math.pi, -1), (2.0 * math.pi, 1)):
            e = 0.0 if (k_sign * (-1) ** m) == 1 else math.pi
            if energy is not None and e != energy:
                continue
            g = math.gcd(2 * m, T)
            points.append(DiracPoint(theta, k, e, (2 * m // g, T // g)))
    return points


def flat_band_angles(T: int) -> list[float]:
    """Angles ``(2n + 1) pi / T`` inside [0, 2pi], where cos(T theta / 2) = 0."""
    _require_T(T)
    return [(2 * n + 1) * math.pi / T for n in range(T)]


def rotational_flat_momenta(N: int) -> list[int]:
    """Indices k' with cos(2 pi k' / N) = 0; non-empty only when 4 divides N."""
    if N < 3:
        raise InvalidArgumentError(f"N must be >= 3, got {N}")
    if N % 4:
        return []
    return [N * (2 * n + 1) // 4 for n in range(2)]
