"""Edge states at a single-site phase boundary on the cycle.

One site (the boundary) gets a coin whose winding has the opposite sign to
the coin used everywhere else.  A walker started on the boundary site in
the equal coin superposition stays pinned there when an edge state forms.
The signature is measured by the *contrast*: the late-time average of
P(boundary, t) divided by the uniform value 1/N.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from .angles import Angle, as_angle
from .errors import InvalidArgumentError, NoBoundaryError
from .topology import winding_number_discrete
from .walk import (
    CoinMode,
    CoinProfile,
    CycleSpec,
    WalkerState,
    evolution_operator,
    evolve,
    return_fidelity,
)

__all__ = [
    "EDGE_THRESHOLD",
    "PERIODICITY_EPS",
    "PeriodicityKind",
    "PeriodicityVerdict",
    "EdgeExperiment",
    "EdgeReport",
    "EdgeMetrics",
    "make_boundary_profile",
    "run_edge_experiment",
    "edge_metric",
    "tail_window_start",
    "classify_periodicity",
    "return_fidelity_trace",
]

EDGE_THRESHOLD = 2.0
PERIODICITY_EPS = 1e-6
DEFAULT_HORIZON = 100


def make_boundary_profile(spec: CycleSpec, boundary_site: int, theta_boundary, theta_bulk,
                          T: int, force: bool = False,
                          coin_mode: CoinMode = CoinMode.FIXED) -> CoinProfile:
    """Profile with ``theta_boundary`` on one site and ``theta_bulk`` elsewhere.

    Both angles must have valid N-site windings of opposite sign unless
    ``force`` is set (used for no-boundary control runs).

    Raises
    ------
    NoBoundaryError
        Same-sign or gap-closed windings.  The exception carries both values.
    """
    if not 0 <= boundary_site < spec.sites:
        raise InvalidArgumentError(f"boundary site {boundary_site} outside [0, {spec.sites})")
    theta_boundary, theta_bulk = as_angle(theta_boundary), as_angle(theta_bulk)
    if not force:
        wb = winding_number_discrete(theta_boundary.radians, T, spec.sites)
        wk = winding_number_discrete(theta_bulk.radians, T, spec.sites)
        ob = wb.omega if wb.valid else None
        ok = wk.omega if wk.valid else None
        if ob is None or ok is None or wb.phase == wk.phase:
            raise NoBoundaryError(
                f"no phase boundary: omega(boundary={theta_boundary}) = {ob}, "
                f"omega(bulk={theta_bulk}) = {ok} at T={T}, N={spec.sites}",
                ob, ok)
    angles = [theta_bulk] * spec.sites
    angles[boundary_site] = theta_boundary
    return CoinProfile(tuple(angles), T, coin_mode)


@dataclass(frozen=True)
class EdgeExperiment:
    """One boundary-walk setup.  The winding gate runs at construction."""

    spec: CycleSpec
    T: int
    theta_boundary: Angle
    theta_bulk: Angle
    boundary_site: int = 0
    steps: int = 100
    initial_state: WalkerState | None = None
    force: bool = False

    def __post_init__(self):
        object.__setattr__(self, "theta_boundary", as_angle(self.theta_boundary))
        object.__setattr__(self, "theta_bulk", as_angle(self.theta_bulk))
        if self.steps < 1:
            raise InvalidArgumentError(f"steps must be >= 1, got {self.steps}")
        if self.initial_state is None:
            object.__setattr__(self, "initial_state",
                               WalkerState.localized(self.spec, self.boundary_site))
        # runs the gate
        self.profile

    @property
    def profile(self) -> CoinProfile:
        return make_boundary_profile(self.spec, self.boundary_site, self.theta_boundary,
                                     self.theta_bulk, self.T, force=self.force)

    @classmethod
    def flagship(cls, sites: int = 8, steps: int = 100, **kw) -> EdgeExperiment:
        """T = 2, 7pi/5 on site 0, pi/3 elsewhere."""
        return cls(CycleSpec(sites), 2, Angle.pi_fraction(7, 5), Angle.pi_fraction(1, 3),
                   steps=steps, **kw)


def tail_window_start(steps: int) -> int:
    """First time index of the final quarter of steps ``(J - J//4, J]``."""
    return steps - max(1, steps // 4) + 1


class EdgeMetrics(NamedTuple):
    boundary_avg: float
    tail_avg: float
    contrast: float
    edge_state: bool


@dataclass(frozen=True, eq=False)
class EdgeReport:
    """Heatmap ``P(x, t)`` for t = 0..J plus boundary statistics.

    ``boundary_avg`` averages P(boundary, t) over t = 1..J and ``tail_avg``
    over the final quarter of steps.
    """

    heatmap: NDArray[np.float64]
    boundary_site: int
    boundary_avg: float
    tail_avg: float
    uniform_baseline: float

    @classmethod
    def from_heatmap(cls, heatmap, boundary_site: int = 0) -> EdgeReport:
        heatmap = np.array(heatmap, dtype=float)
        if heatmap.ndim != 2 or heatmap.shape[0] < 2:
            raise InvalidArgumentError("heatmap must be 2-D with at least two time rows")
        heatmap.setflags(write=False)
        steps, n = heatmap.shape[0] - 1, heatmap.shape[1]
        column = heatmap[:, boundary_site]
        return cls(heatmap, boundary_site,
                   float(np.mean(column[1:])),
                   float(np.mean(column[tail_window_start(steps):])),
                   1.0 / n)

    @property
    def steps(self) -> int:
        return self.heatmap.shape[0] - 1

    @property
    def sites(self) -> int:
        return self.heatmap.shape[1]

    @property
    def contrast(self) -> float:
        return self.tail_avg / self.uniform_baseline

    @property
    def edge_state(self) -> bool:
        return self.contrast > EDGE_THRESHOLD

    def metrics(self) -> EdgeMetrics:
        return EdgeMetrics(self.boundary_avg, self.tail_avg, self.contrast, self.edge_state)


def run_edge_experiment(exp: EdgeExperiment) -> EdgeReport:
    _, heatmap = evolve(exp.initial_state, exp.profile, exp.spec, exp.steps)
    return EdgeReport.from_heatmap(heatmap, exp.boundary_site)


def edge_metric(report: EdgeReport, window_start: int | None = None,
                threshold: float = EDGE_THRESHOLD) -> EdgeMetrics:
    """Boundary statistics with a custom tail window ``[window_start, J]``."""
    J = report.steps
    if window_start is None:
        window_start = tail_window_start(J)
    if not 0 <= window_start <= J:
        raise InvalidArgumentError(f"window start {window_start} outside [0, {J}]")
    column = report.heatmap[:, report.boundary_site]
    tail = float(np.mean(column[window_start:]))
    contrast = tail / report.uniform_baseline
    return EdgeMetrics(report.boundary_avg, tail, contrast, contrast > threshold)


class PeriodicityKind(str, enum.Enum):
    PERIODIC = "periodic"
    CHAOTIC = "chaotic"


@dataclass(frozen=True)
class PeriodicityVerdict:
    kind: PeriodicityKind
    period: int | None
    horizon: int
    fidelity_threshold: float

    @property
    def periodic(self) -> bool:
        return self.kind is PeriodicityKind.PERIODIC


def return_fidelity_trace(theta, T: int, N: int, horizon: int = DEFAULT_HORIZON,
                          initial_state: WalkerState | None = None) -> NDArray[np.float64]:
    """Return fidelity ``|<psi(0)|psi(t)>|^2`` for t = 0..horizon under a uniform coin."""
    spec = CycleSpec(N)
    if initial_state is None:
        initial_state = WalkerState.localized(spec, 0)
    u = evolution_operator(CoinProfile.uniform(theta, N, T), spec)
    fid = np.empty(horizon + 1)
    state = initial_state
    fid[0] = 1.0
    for t in range(1, horizon + 1):
        state = u.apply(state)
        fid[t] = return_fidelity(initial_state, state)
    return fid


def classify_periodicity(theta, T: int, N: int, horizon: int = DEFAULT_HORIZON,
                         eps: float = PERIODICITY_EPS) -> PeriodicityVerdict:
    """Smallest revival period up to ``horizon``, or CHAOTIC if there is none.

    A revival at step p means return fidelity above ``1 - eps``.
    """
    if horizon < 2:
        raise InvalidArgumentError(f"horizon must be >= 2, got {horizon}")
    threshold = 1.0 - eps
    fid = return_fidelity_trace(theta, T, N, horizon)
    hits = np.nonzero(fid[1:] > threshold)[0]
    if hits.size:
        return PeriodicityVerdict(PeriodicityKind.PERIODIC, int(hits[0]) + 1, horizon, threshold)
    return PeriodicityVerdict(PeriodicityKind.CHAOTIC, None, horizon, threshold)
