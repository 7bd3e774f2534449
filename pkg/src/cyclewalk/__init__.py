"""Discrete-time coined quantum walks on N-cycles.

Band structure, winding numbers, edge states at a single-site phase boundary,
and coin-disorder ensembles.  Basis ordering is position-major: index
``2 * x + c`` for site ``x`` and coin ``c``.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .angles import Angle, InexactAngleWarning, as_angle, parse_angle
from .bloch import (
    UNDEFINED,
    DiracPoint,
    SpectralPoint,
    dirac_points,
    dispersion,
    effective_mass,
    flat_band_angles,
    group_velocity,
    rotational_flat_momenta,
    spectral_point,
    winding_vector,
)
from .disorder import (
    DisorderConfig,
    DisorderKind,
    EnsembleResult,
    phase_preserving_perturbation,
    run_ensemble,
)
from .edge import (
    EdgeExperiment,
    EdgeReport,
    PeriodicityKind,
    PeriodicityVerdict,
    classify_periodicity,
    edge_metric,
    make_boundary_profile,
    run_edge_experiment,
)
from .errors import (
    CycleWalkError,
    GapClosedError,
    InvalidArgumentError,
    InvalidProfileError,
    InvalidSpecError,
    NoBoundaryError,
    NotFoundError,
)
from .oracle import VerificationReport, run_suite
from .topology import (
    CONTINUUM,
    WindingResult,
    WindingScan,
    WindingStatus,
    winding,
    winding_number_discrete,
    winding_scan,
    zak_phase_continuum,
)
from .walk import (
    CoinMode,
    CoinProfile,
    CycleSpec,
    EvolutionOperator,
    WalkerState,
    evolution_operator,
    evolve,
    step,
)

__all__ = [
    "__version__",
    "annotations",
    "Angle",
    "InexactAngleWarning",
    "as_angle",
    "parse_angle",
    "UNDEFINED",
    "DiracPoint",
    "SpectralPoint",
    "dirac_points",
    "dispersion",
    "effective_mass",
    "flat_band_angles",
    "group_velocity",
    "rotational_flat_momenta",
    "spectral_point",
    "winding_vector",
    "DisorderConfig",
    "DisorderKind",
    "EnsembleResult",
    "phase_preserving_perturbation",
    "run_ensemble",
    "EdgeExperiment",
    "EdgeReport",
    "PeriodicityKind",
    "PeriodicityVerdict",
    "classify_periodicity",
    "edge_metric",
    "make_boundary_profile",
    "run_edge_experiment",
    "CycleWalkError",
    "GapClosedError",
    "InvalidArgumentError",
    "InvalidProfileError",
    "InvalidSpecError",
    "NoBoundaryError",
    "NotFoundError",
    "VerificationReport",
    "run_suite",
    "CONTINUUM",
    "WindingResult",
    "WindingScan",
    "WindingStatus",
    "winding",
    "winding_number_discrete",
    "winding_scan",
    "zak_phase_continuum",
    "CoinMode",
    "CoinProfile",
    "CycleSpec",
    "EvolutionOperator",
    "WalkerState",
    "evolution_operator",
    "evolve",
    "step",
]
