"""Real-space simulation of the coined walk on an N-cycle.

Basis ordering is position-major: the amplitude of ``|x> (x) |c>`` lives at
index ``2 * x + c``.  Coin state 0 hops to ``x + 1`` and coin state 1 hops to
``x - 1`` (mod N).

Operators are dense ``2N x 2N`` complex matrices.  States are never
renormalised while stepping; a norm drift beyond ``NORM_TOL`` raises
:class:`~cyclewalk.errors.NormalizationError` so that a broken operator
surfaces instead of being hidden.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from .angles import Angle, as_angle
from .errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    InvalidProfileError,
    InvalidSpecError,
    NormalizationError,
)

__all__ = [
    "NORM_TOL",
    "CoinMode",
    "CycleSpec",
    "CoinProfile",
    "WalkerState",
    "EvolutionOperator",
    "build_shift",
    "build_coin_matrix",
    "build_global_coin",
    "evolution_operator",
    "step",
    "evolve",
    "position_probabilities",
    "fourier_mode",
    "fourier_matrix",
    "to_momentum",
    "from_momentum",
    "return_fidelity",
]

NORM_TOL = 1e-12


class CoinMode(str, enum.Enum):
    """How the coin angle scales from one step to the next.

    FIXED applies the constant rotation ``T * theta / 2`` at every step.
    PER_STEP applies ``t * theta / 2`` at step ``t`` and ignores ``T``.
    """

    FIXED = "fixed"
    PER_STEP = "per-step"


@dataclass(frozen=True)
class CycleSpec:
    sites: int

    def __post_init__(self):
        if isinstance(self.sites, bool) or int(self.sites) != self.sites:
            raise InvalidSpecError(f"sites must be an integer, got {self.sites!r}")
        object.__setattr__(self, "sites", int(self.sites))
        if self.sites < 3:
            raise InvalidSpecError(f"a cycle needs at least 3 sites, got {self.sites}")

    @property
    def dim(self) -> int:
        return 2 * self.sites


@dataclass(frozen=True)
class CoinProfile:
    """Per-site coin angles plus the step-dependency multiplier."""

    angles: tuple[Angle, ...]
    step_dependency: int = 1
    coin_mode: CoinMode = CoinMode.FIXED

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(as_angle(a) for a in self.angles))
        object.__setattr__(self, "coin_mode", CoinMode(self.coin_mode))
        T = self.step_dependency
        if isinstance(T, bool) or int(T) != T or T < 1:
            raise InvalidProfileError(f"step dependency T must be an integer >= 1, got {T!r}")
        object.__setattr__(self, "step_dependency", int(T))

    @classmethod
    def uniform(cls, angle, sites: int, step_dependency: int = 1,
                coin_mode: CoinMode = CoinMode.FIXED) -> CoinProfile:
        return cls((as_angle(angle),) * int(sites), step_dependency, coin_mode)

    @property
    def sites(self) -> int:
        return len(self.angles)

    def radians(self) -> NDArray[np.float64]:
        return np.array([a.radians for a in self.angles], dtype=float)

    def with_angle(self, site: int, angle) -> CoinProfile:
        angles = list(self.angles)
        angles[site] = as_angle(angle)
        return CoinProfile(tuple(angles), self.step_dependency, self.coin_mode)

    def with_offsets(self, offsets: Sequence[float]) -> CoinProfile:
        """Add a per-site real offset to every angle."""
        if len(offsets) != self.sites:
            raise InvalidProfileError(
                f"expected {self.sites} offsets, got {len(offsets)}")
        angles = tuple(a.shifted(d) for a, d in zip(self.angles, offsets))
        return CoinProfile(angles, self.step_dependency, self.coin_mode)

    def shifted(self, offset: float) -> CoinProfile:
        return self.with_offsets([offset] * self.sites)


@dataclass(frozen=True, eq=False)
class WalkerState:
    """Normalised amplitude vector over (site, coin)."""

    amplitudes: NDArray[np.complex128]
    sites: int = field(init=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size % 2 or amps.size < 6:
            raise InvalidArgumentError(
                f"amplitude vector must have length 2N with N >= 3, got {amps.size}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm^2 is {norm2!r}, expected 1 within {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "sites", amps.size // 2)

    @classmethod
    def basis(cls, spec: CycleSpec, site: int, coin: int) -> WalkerState:
        _check_site(spec, site)
        if coin not in (0, 1):
            raise InvalidArgumentError(f"coin index must be 0 or 1, got {coin!r}")
        amps = np.zeros(spec.dim, dtype=np.complex128)
        amps[2 * site + coin] = 1.0
        return cls(amps)

    @classmethod
    def localized(cls, spec: CycleSpec, site: int, coin_vector=(1.0, 1.0)) -> WalkerState:
        """``|site> (x) coin_vector``, with the coin vector normalised first.

        The default coin vector gives the equal superposition (|0> + |1>)/sqrt(2).
        """
        _check_site(spec, site)
        c = np.asarray(coin_vector, dtype=np.complex128)
        c = c / np.linalg.norm(c)
        amps = np.zeros(spec.dim, dtype=np.complex128)
        amps[2 * site: 2 * site + 2] = c
        return cls(amps)

    def table(self) -> NDArray[np.complex128]:
        """Amplitudes reshaped to ``(N, 2)``, rows indexed by site."""
        return self.amplitudes.reshape(self.sites, 2)

    def amplitude(self, site: int, coin: int) -> complex:
        return complex(self.amplitudes[2 * site + coin])

    def __eq__(self, other):
        if not isinstance(other, WalkerState):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    """One step ``S . C`` of the walk as a dense matrix.

    ``step_index`` is only set in per-step mode, where the operator depends on t.
    """

    matrix: NDArray[np.complex128]
    sites: int
    step_dependency: int
    coin_mode: CoinMode
    step_index: int | None = None

    def apply(self, state: WalkerState) -> WalkerState:
        if state.sites != self.sites:
            raise DimensionMismatchError(
                f"state has {state.sites} sites, operator has {self.sites}")
        return WalkerState(self.matrix @ state.amplitudes)

    def unitarity_defect(self) -> float:
        """Largest entrywise deviation of ``U^dagger U`` from the identity."""
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def _check_site(spec: CycleSpec, site: int) -> None:
    if not 0 <= site < spec.sites:
        raise InvalidArgumentError(f"site {site} outside [0, {spec.sites})")


def build_shift(spec: CycleSpec) -> NDArray[np.complex128]:
    """Permutation ``|x, q> -> |(x + (-1)^q) mod N, q>``."""
    n = spec.sites
    shift = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    x = np.arange(n)
    shift[2 * ((x + 1) % n), 2 * x] = 1.0
    shift[2 * ((x - 1) % n) + 1, 2 * x + 1] = 1.0
    return shift


def _rotation_multiplier(T: int, step: int, mode: CoinMode) -> int:
    mode = CoinMode(mode)
    if T < 1:
        raise InvalidProfileError(f"step dependency T must be >= 1, got {T}")
    if mode is CoinMode.PER_STEP:
        if step < 1:
            raise InvalidArgumentError(f"per-step coins need step >= 1, got {step}")
        return step
    return T


def _rotation_blocks(half_angles: NDArray[np.float64]) -> NDArray[np.complex128]:
    c, s = np.cos(half_angles), np.sin(half_angles)
    blocks = np.empty((half_angles.size, 2, 2), dtype=np.complex128)
    blocks[:, 0, 0] = c
    blocks[:, 0, 1] = -s
    blocks[:, 1, 0] = s
    blocks[:, 1, 1] = c
    return blocks


def build_coin_matrix(theta, T: int = 1, step: int = 1,
                      mode: CoinMode = CoinMode.FIXED) -> NDArray[np.complex128]:
    """Coin rotation ``exp(-i (m theta / 2) sigma_y)``.

    ``m`` is ``T`` in fixed mode and ``step`` in per-step mode.  The
    result is real orthogonal with determinant 1, stored as complex.
    """
    m = _rotation_multiplier(T, step, mode)
    half = np.array([m * float(theta) / 2.0])
    return _rotation_blocks(half)[0]


def _half_angles(profile: CoinProfile, step: int, extra_offset: float = 0.0):
    m = _rotation_multiplier(profile.step_dependency, step, profile.coin_mode)
    theta = profile.radians()
    if extra_offset:
        theta = theta + extra_offset
    return m * theta / 2.0


def _block_diag(blocks: NDArray[np.complex128]) -> NDArray[np.complex128]:
    n = blocks.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    idx = 2 * np.arange(n)
    for r in range(2):
        for c in range(2):
            out[idx + r, idx + c] = blocks[:, r, c]
    return out


def _require_cover(profile: CoinProfile, spec: CycleSpec) -> None:
    if profile.sites != spec.sites:
        raise InvalidProfileError(
            f"profile defines {profile.sites} site angles, cycle has {spec.sites} sites")


def build_global_coin(profile: CoinProfile, spec: CycleSpec, step: int = 1,
                      extra_offset: float = 0.0) -> NDArray[np.complex128]:
    """Block-diagonal coin ``sum_x |x><x| (x) C(theta(x))``.

    ``extra_offset`` is added to every site's angle before the rotation is
    built; dynamic disorder uses it.
    """
    _require_cover(profile, spec)
    return _block_diag(_rotation_blocks(_half_angles(profile, step, extra_offset)))


def evolution_operator(profile: CoinProfile, spec: CycleSpec, step: int = 1,
                       extra_offset: float = 0.0) -> EvolutionOperator:
    matrix = build_shift(spec) @ build_global_coin(profile, spec, step, extra_offset)
    per_step = profile.coin_mode is CoinMode.PER_STEP
    return EvolutionOperator(matrix, spec.sites, profile.step_dependency,
                             profile.coin_mode, step if per_step else None)


def step(state: WalkerState, profile: CoinProfile, spec: CycleSpec, t: int = 1) -> WalkerState:
    """Advance ``state`` by the step ``U(t)`` (t >= 1)."""
    if t < 1:
        raise InvalidArgumentError(f"step index must be >= 1, got {t}")
    return evolution_operator(profile, spec, t).apply(state)


def evolve(state: WalkerState, profile: CoinProfile, spec: CycleSpec, steps: int,
           angle_offsets: Iterable[float] | None = None,
           ) -> tuple[WalkerState, NDArray[np.float64]]:
    """Run ``steps`` steps and record the position distribution at every time.

    Parameters
    ----------
    angle_offsets
        Optional sequence of length ``steps``; entry ``t - 1`` is added to
        every site's angle during step ``t``.

    Returns
    -------
    final_state, heatmap
        ``heatmap[t, x]`` is ``P(x, t)`` for ``t = 0 .. steps``.
    """
    if steps < 0:
        raise InvalidArgumentError(f"steps must be >= 0, got {steps}")
    if state.sites != spec.sites:
        raise DimensionMismatchError(
            f"state has {state.sites} sites, cycle has {spec.sites}")
    _require_cover(profile, spec)
    offsets = None
    if angle_offsets is not None:
        offsets = np.asarray(list(angle_offsets), dtype=float)
        if offsets.shape != (steps,):
            raise InvalidArgumentError(
                f"expected {steps} per-step angle offsets, got {offsets.shape[0]}")

    n = spec.sites
    heatmap = np.empty((steps + 1, n), dtype=float)
    psi = state.amplitudes.copy()
    heatmap[0] = _probabilities(psi, n)
    shift = build_shift(spec)
    time_varying = offsets is not None or profile.coin_mode is CoinMode.PER_STEP
    if not time_varying:
        u = shift @ build_global_coin(profile, spec)
    for t in range(1, steps + 1):
        if time_varying:
            extra = float(offsets[t - 1]) if offsets is not None else 0.0
            u = shift @ build_global_coin(profile, spec, t, extra)
        psi = u @ psi
        heatmap[t] = _probabilities(psi, n)
    return WalkerState(psi), heatmap


def _probabilities(psi: NDArray[np.complex128], n: int) -> NDArray[np.float64]:
    return (psi.real ** 2 + psi.imag ** 2).reshape(n, 2).sum(axis=1)


def position_probabilities(state: WalkerState) -> NDArray[np.float64]:
    """``P(x) = |<x,0|psi>|^2 + |<x,1|psi>|^2``."""
    return _probabilities(state.amplitudes, state.sites)


def fourier_mode(spec: CycleSpec, k_index: int) -> NDArray[np.complex128]:
    """Position-space vector of ``|k'> = N^-1/2 sum_x exp(2 pi i k' x / N) |x>``."""
    n = spec.sites
    if isinstance(k_index, bool) or int(k_index) != k_index or not 0 <= k_index < n:
        raise InvalidArgumentError(f"momentum index must lie in [0, {n}), got {k_index!r}")
    x = np.arange(n)
    return np.exp(2j * math.pi * int(k_index) * x / n) / math.sqrt(n)


def fourier_matrix(n: int) -> NDArray[np.complex128]:
    """Unitary matrix whose column k' is the momentum mode |k'>."""
    x = np.arange(n)
    return np.exp(2j * math.pi * np.outer(x, x) / n) / math.sqrt(n)


def to_momentum(position_vector) -> NDArray[np.complex128]:
    v = np.asarray(position_vector, dtype=np.complex128)
    return fourier_matrix(v.shape[0]).conj().T @ v


def from_momentum(momentum_vector) -> NDArray[np.complex128]:
    c = np.asarray(momentum_vector, dtype=np.complex128)
    return fourier_matrix(c.shape[0]) @ c


def return_fidelity(initial: WalkerState, evolved: WalkerState) -> float:
    """``|<initial|evolved>|^2``."""
    if initial.sites != evolved.sites:
        raise DimensionMismatchError(
            f"cannot compare states on {initial.sites} and {evolved.sites} sites")
    overlap = np.vdot(initial.amplitudes, evolved.amplitudes)
    return float(min(1.0, abs(overlap) ** 2))
