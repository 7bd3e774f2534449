"""Coin disorder ensembles and winding-preserving angle swaps.

Random numbers come from numpy's ``PCG64`` bit generator.  Realization ``i``
of an ensemble with master seed ``s`` draws from
``np.random.Generator(PCG64(SeedSequence([s, i])))``, so every realization
is reproducible on its own and realizations can run in any order or in
parallel.  The generator choice is part of the output contract: changing it
changes every disordered heatmap.

Offsets ``delta`` are uniform on [-pi, pi) and scaled by the strength:

* static  -- ``theta(x) -> theta(x) + strength * delta(x)``, one draw per site,
  fixed for the whole evolution;
* dynamic -- ``theta(x) -> theta(x) + strength * delta(t)`` at step t, one draw
  per step shared by every site.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

import numpy as np
from numpy.typing import NDArray

from ._parallel import chunk_ranges, ordered_map
from .angles import Angle, as_angle
from .edge import EdgeExperiment, EdgeReport, run_edge_experiment
from .errors import InvalidArgumentError, NotFoundError
from .topology import winding_number_discrete
from .walk import CoinProfile, evolve

__all__ = [
    "RNG_ALGORITHM",
    "DEFAULT_MASTER_SEED",
    "DEFAULT_REALIZATIONS",
    "ROBUSTNESS_THRESHOLD",
    "DisorderKind",
    "DisorderConfig",
    "EnsembleResult",
    "realization_rng",
    "static_realization",
    "dynamic_offsets",
    "run_ensemble",
    "phase_preserving_perturbation",
]

RNG_ALGORITHM = "PCG64"
DEFAULT_MASTER_SEED = 20240917
DEFAULT_REALIZATIONS = 500
ROBUSTNESS_THRESHOLD = 0.5


class DisorderKind(str, enum.Enum):
    NONE = "none"
    STATIC = "static"
    DYNAMIC = "dynamic"


@dataclass(frozen=True)
class DisorderConfig:
    kind: DisorderKind = DisorderKind.NONE
    strength: float = 0.0
    realizations: int = DEFAULT_REALIZATIONS
    master_seed: int = DEFAULT_MASTER_SEED

    def __post_init__(self):
        object.__setattr__(self, "kind", DisorderKind(self.kind))
        if not (self.strength >= 0.0 and math.isfinite(self.strength)):
            raise InvalidArgumentError(f"disorder strength must be >= 0, got {self.strength}")
        if self.realizations < 1:
            raise InvalidArgumentError(f"need at least one realization, got {self.realizations}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise InvalidArgumentError(f"master seed must fit in 64 bits, got {self.master_seed}")

    @property
    def is_clean(self) -> bool:
        return self.kind is DisorderKind.NONE or self.strength == 0.0


def realization_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([master_seed, index])))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def static_realization(profile: CoinProfile, strength: float, seed) -> CoinProfile:
    """Profile with a fixed random offset ``strength * U[-pi, pi)`` added to each site.

    ``seed`` may be an int, a SeedSequence or a Generator.
    """
    if strength < 0:
        raise InvalidArgumentError(f"strength must be >= 0, got {strength}")
    draws = _rng(seed).uniform(-math.pi, math.pi, profile.sites)
    if strength == 0:
        return profile
    return profile.with_offsets(strength * draws)


def dynamic_offsets(strength: float, steps: int, seed) -> NDArray[np.float64]:
    """Per-step offsets ``strength * delta(t)`` for t = 1..steps (index t - 1)."""
    if strength < 0:
        raise InvalidArgumentError(f"strength must be >= 0, got {strength}")
    if steps < 1:
        raise InvalidArgumentError(f"steps must be >= 1, got {steps}")
    return strength * _rng(seed).uniform(-math.pi, math.pi, steps)


def _realization_heatmap(exp: EdgeExperiment, config: DisorderConfig, index: int):
    rng = realization_rng(config.master_seed, index)
    profile = exp.profile
    if config.kind is DisorderKind.STATIC:
        profile = static_realization(profile, config.strength, rng)
        _, heatmap = evolve(exp.initial_state, profile, exp.spec, exp.steps)
    else:
        offsets = dynamic_offsets(config.strength, exp.steps, rng)
        _, heatmap = evolve(exp.initial_state, profile, exp.spec, exp.steps,
                            angle_offsets=offsets)
    return heatmap


def _run_block(exp, config, indices: range):
    return np.stack([_realization_heatmap(exp, config, i) for i in indices])


@dataclass(frozen=True, eq=False)
class EnsembleResult:
    config: DisorderConfig
    averaged_heatmap: NDArray[np.float64]
    clean_reference: EdgeReport
    boundary_retention: float

    @property
    def averaged_report(self) -> EdgeReport:
        return EdgeReport.from_heatmap(self.averaged_heatmap, self.clean_reference.boundary_site)

    @property
    def robust(self) -> bool:
        return self.boundary_retention >= ROBUSTNESS_THRESHOLD


def run_ensemble(exp: EdgeExperiment, config: DisorderConfig, jobs: int = 1) -> EnsembleResult:
    """Average ``P(x, t)`` over disordered realizations of ``exp``.

    Realization heatmaps are stacked by ascending index before the mean is
    taken, so the result is bit-identical for any ``jobs``.  A clean config
    (no disorder or zero strength) makes every realization equal to the clean
    run, which is then returned unchanged.
    """
    clean = run_edge_experiment(exp)
    if config.is_clean:
        averaged = clean.heatmap.copy()
    else:
        blocks = chunk_ranges(config.realizations, 4 * max(1, jobs))
        parts = ordered_map(partial(_run_block, exp, config), blocks, jobs)
        averaged = np.concatenate(parts).mean(axis=0)
    averaged.setflags(write=False)
    disordered = EdgeReport.from_heatmap(averaged, exp.boundary_site)
    return EnsembleResult(config, averaged, clean, disordered.tail_avg / clean.tail_avg)


def phase_preserving_perturbation(theta, T: int, N: int, search_grid: int = 10) -> Angle:
    """Nearest grid angle ``2 pi j / search_grid`` in the same winding phase as ``theta``.

    A candidate qualifies when its N-site winding is valid, has the same sign
    as that of ``theta`` and rounds to the same integer.  Candidates are tried
    by increasing distance; at equal distance the larger angle goes first.
    """
    if search_grid < 2:
        raise InvalidArgumentError(f"search grid needs at least 2 points, got {search_grid}")
    theta = as_angle(theta)
    ref = winding_number_discrete(theta.radians, T, N)
    if not ref.valid:
        raise InvalidArgumentError(f"winding is gap-closed at theta={theta}")
    grid = [Angle(Fraction(2 * j, search_grid)) for j in range(search_grid)]

    def circular_distance(a: Angle) -> float:
        d = abs(a.radians - theta.radians) % (2 * math.pi)
        return min(d, 2 * math.pi - d)

    def upward(a: Angle) -> bool:
        return (a.radians - theta.radians) % (2 * math.pi) < math.pi

    candidates = sorted(grid, key=lambda a: (round(circular_distance(a), 12), not upward(a)))
    for cand in candidates:
        if circular_distance(cand) < 1e-12:
            continue
        w = winding_number_discrete(cand.radians, T, N)
        if w.valid and w.phase == ref.phase and w.rounded() == ref.rounded():
            return cand
    raise NotFoundError(f"no angle on a {search_grid}-point grid shares the phase of theta={theta}")
