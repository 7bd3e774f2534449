"""Brute-force cross-checks of the closed-form band analysis.

Every suite computes its reference independently of the formula it tests:
spectra come from ``numpy.linalg.eigvals`` on the Bloch block or on the full
real-space step operator, derivatives from central finite differences.  The
analytic functions appear only as the comparison target.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bloch import (
    bloch_unitary,
    dirac_points,
    dispersion,
    effective_mass,
    flat_band_angles,
    group_velocity,
    rotational_flat_momenta,
    Undefined,
)
from .walk import CoinProfile, CycleSpec, evolution_operator

__all__ = [
    "VerificationReport",
    "SUITES",
    "verify_dispersion_vs_eigenphase",
    "verify_fullspectrum_blockdiag",
    "verify_spectrum_sweep",
    "verify_derivatives",
    "fuzz_theorem_conditions",
    "run_suite",
    "eigenphases",
]

FD_STEP = 1e-5
SINGULAR_MARGIN = 1e-3
MAX_OFFENDERS = 20


@dataclass
class VerificationReport:
    suite: str
    cases: int
    max_deviation: float
    tolerance: float
    passed: bool
    offending: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict} {self.suite}: {self.cases} cases, "
                f"max deviation {self.max_deviation:.3e} (tol {self.tolerance:.1e})")


class _Tracker:
    """Collects deviations; a case fails when its deviation exceeds the tolerance."""

    def __init__(self, suite, tolerance):
        self.suite, self.tolerance = suite, tolerance
        self.cases, self.max_dev, self.offending = 0, 0.0, []

    def record(self, deviation: float, **inputs):
        self.cases += 1
        deviation = float(deviation)
        if not math.isfinite(deviation):
            deviation = math.inf
        self.max_dev = max(self.max_dev, deviation)
        if deviation > self.tolerance and len(self.offending) < MAX_OFFENDERS:
            self.offending.append({**inputs, "deviation": deviation})

    def report(self) -> VerificationReport:
        return VerificationReport(self.suite, self.cases, self.max_dev, self.tolerance,
                                  self.max_dev <= self.tolerance, self.offending)


def eigenphases(matrix) -> np.ndarray:
    """Quasi-energies E in (-pi, pi] with eigenvalues exp(-iE)."""
    phases = -np.angle(np.linalg.eigvals(matrix))
    phases[phases <= -math.pi] += 2 * math.pi
    return phases


def _sorted_abs(phases) -> np.ndarray:
    return np.sort(np.abs(phases))


def verify_dispersion_vs_eigenphase(samples: int = 1000, T_max: int = 6, seed: int = 0,
                                    tolerance: float = 1e-10) -> VerificationReport:
    """Eigenphases of random Bloch blocks against ``+-E(k)``."""
    rng = np.random.default_rng(seed)
    tr = _Tracker("dispersion", tolerance)
    for _ in range(samples):
        k = float(rng.uniform(0, 2 * math.pi))
        theta = float(rng.uniform(0, 2 * math.pi))
        T = int(rng.integers(1, T_max + 1))
        got = _sorted_abs(eigenphases(bloch_unitary(k, theta, T)))
        e = dispersion(k, theta, T)[0]
        tr.record(np.max(np.abs(got - e)), k=k, theta=theta, T=T)
    return tr.report()


def verify_fullspectrum_blockdiag(N: int, theta: float, T: int,
                                  tolerance: float = 1e-9) -> VerificationReport:
    """Real-space 2N eigenphases against the multiset {+-E(2 pi k'/N)}."""
    tr = _Tracker("spectrum", tolerance)
    _record_fullspectrum(tr, N, theta, T)
    return tr.report()


def _record_fullspectrum(tr: _Tracker, N: int, theta: float, T: int) -> None:
    spec = CycleSpec(N)
    u = evolution_operator(CoinProfile.uniform(theta, N, T), spec).matrix
    got = _sorted_abs(eigenphases(u))
    bands = [dispersion(2 * math.pi * kp / N, theta, T)[0] for kp in range(N)]
    want = np.sort(np.repeat(bands, 2))
    tr.record(np.max(np.abs(got - want)), N=N, theta=float(theta), T=T)


def verify_spectrum_sweep(N_range=range(3, 13), T_values=(1, 2, 3), thetas_per_case: int = 5,
                          seed: int = 0, tolerance: float = 1e-9) -> VerificationReport:
    """Full-spectrum check over a grid of cycle sizes, T values and random angles."""
    rng = np.random.default_rng(seed)
    tr = _Tracker("spectrum", tolerance)
    for N in N_range:
        for T in T_values:
            for theta in rng.uniform(0, 2 * math.pi, thetas_per_case):
                _record_fullspectrum(tr, N, float(theta), T)
    return tr.report()


def _central(f, x, h=FD_STEP):
    return (f(x + h) - f(x - h)) / (2 * h)


def _admissible(k, theta, T, margin=SINGULAR_MARGIN) -> bool:
    a = T * theta / 2
    ck, ca, sa = math.cos(k), math.cos(a), math.sin(a)
    sin_e = math.sqrt(max(0.0, 1 - (ck * ca) ** 2))
    return min(abs(ck), abs(ca), abs(sa), sin_e) > margin


def verify_derivatives(samples: int = 500, T_max: int = 6, seed: int = 0,
                       velocity_tol: float = 1e-6, mass_rtol: float = 1e-4,
                       ) -> VerificationReport:
    """Analytic group velocity and effective mass against finite differences.

    Points within ``SINGULAR_MARGIN`` of a Dirac point, a flat band or
    cos k = 0 are rejected and redrawn.  The reported deviation is scaled so
    that the velocity check and the relative mass check share tolerance 1:
    ``max(|dv| / velocity_tol, |dm / m| / mass_rtol)``.
    """
    rng = np.random.default_rng(seed)
    tr = _Tracker("derivatives", 1.0)
    points = [(math.pi / 3, math.pi / 2 - 1e-3, 2)]  # just off the T=2 flat band
    while len(points) < samples:
        k = float(rng.uniform(0, 2 * math.pi))
        theta = float(rng.uniform(0, 2 * math.pi))
        T = int(rng.integers(1, T_max + 1))
        if _admissible(k, theta, T):
            points.append((k, theta, T))
    for k, theta, T in points:
        v_fd = _central(lambda q: dispersion(q, theta, T)[0], k)
        v = group_velocity(k, theta, T)
        dvdk = _central(lambda q: group_velocity(q, theta, T), k)
        m = effective_mass(k, theta, T)
        if isinstance(m, Undefined) or dvdk == 0:
            mass_dev = math.inf
        else:
            mass_dev = abs(m * dvdk - 1.0)
        tr.record(max(abs(v - v_fd) / velocity_tol, mass_dev / mass_rtol),
                  k=k, theta=theta, T=T)
    rep = tr.report()
    rep.tolerance = 1.0
    return rep


def fuzz_theorem_conditions(T_max: int = 6, N_max: int = 16, seed: int = 0,
                            thetas_per_T: int = 20, tolerance: float = 1e-9,
                            ) -> VerificationReport:
    """Exhaustive small-space check of the gap-closing and flat-band conditions.

    (a) every enumerated Dirac point has ``|cos k cos(T theta/2)| = 1`` and a
        degenerate pair of Bloch eigenvalues;
    (b) random angles away from the flat-band set give bands that vary with k
        by more than 1e-6 (eigensolver over 64 momenta), while flat-band angles
        give bands pinned at pi/2;
    (c) for every N up to ``N_max`` the momenta with cos(2 pi k'/N) = 0 found
        by brute enumeration are exactly ``rotational_flat_momenta(N)``, and at
        those momenta the real-space spectrum does not depend on theta.

    Boolean checks record deviation 0 on success and 1 on failure.
    """
    rng = np.random.default_rng(seed)
    tr = _Tracker("theorems", tolerance)
    ks = np.linspace(0, 2 * math.pi, 64, endpoint=False)

    for T in range(1, T_max + 1):
        for p in dirac_points(T):
            a = T * p.theta / 2
            closing = abs(abs(math.cos(p.k) * math.cos(a)) - 1.0)
            lam = np.linalg.eigvals(bloch_unitary(p.k, p.theta, T))
            tr.record(max(closing, abs(lam[0] - lam[1])), check="dirac", T=T,
                      theta=p.theta, k=p.k)

        flats = flat_band_angles(T)
        for theta in flats:
            bands = [_sorted_abs(eigenphases(bloch_unitary(k, theta, T)))[1] for k in ks]
            tr.record(np.max(np.abs(np.asarray(bands) - math.pi / 2)), check="flat", T=T,
                      theta=theta)
        for theta in rng.uniform(0, 2 * math.pi, thetas_per_T):
            theta = float(theta)
            if min(abs(theta - f) for f in flats) < 1e-3:
                continue
            bands = [_sorted_abs(eigenphases(bloch_unitary(k, theta, T)))[1] for k in ks]
            variation = max(bands) - min(bands)
            tr.record(0.0 if variation > 1e-6 else 1.0, check="dispersive", T=T,
                      theta=theta, variation=variation)

    theta_samples = rng.uniform(0, 2 * math.pi, 8)
    for N in range(3, N_max + 1):
        brute = [kp for kp in range(N) if abs(math.cos(2 * math.pi * kp / N)) < 1e-9]
        tr.record(0.0 if brute == rotational_flat_momenta(N) else 1.0, check="rotational-set",
                  N=N)
        if N % 4:
            nearest = min(abs(math.cos(2 * math.pi * kp / N)) for kp in range(N))
            tr.record(0.0 if nearest > 1e-6 else 1.0, check="no-rotational", N=N)
            continue
        # At cos k = 0 every theta and T give quasi-energy pi/2 in the real-space spectrum.
        for T in range(1, T_max + 1):
            for theta in theta_samples:
                u = evolution_operator(CoinProfile.uniform(float(theta), N, T),
                                       CycleSpec(N)).matrix
                phases = _sorted_abs(eigenphases(u))
                count = int(np.sum(np.abs(phases - math.pi / 2) < 1e-9))
                expected = 2 * len(brute)
                tr.record(0.0 if count >= expected else 1.0, check="rotational-flat", N=N,
                          T=T, theta=float(theta))
    return tr.report()


SUITES = ("dispersion", "spectrum", "derivatives", "theorems")


def run_suite(name: str, seed: int = 0, tolerance: float | None = None) -> list[VerificationReport]:
    """Run one named suite (or ``"all"``) at default sizes.

    ``tolerance`` overrides each suite's default; the derivative suite is
    scaled so that the override multiplies both of its tolerances.
    """
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, seed, tolerance)]
    if name == "dispersion":
        kw = {} if tolerance is None else {"tolerance": tolerance}
        return [verify_dispersion_vs_eigenphase(seed=seed, **kw)]
    if name == "spectrum":
        kw = {} if tolerance is None else {"tolerance": tolerance}
        return [verify_spectrum_sweep(seed=seed, **kw)]
    if name == "derivatives":
        if tolerance is None:
            return [verify_derivatives(seed=seed)]
        return [verify_derivatives(seed=seed, velocity_tol=tolerance,
                                   mass_rtol=tolerance * 100)]
    if name == "theorems":
        kw = {} if tolerance is None else {"tolerance": tolerance}
        return [fuzz_theorem_conditions(seed=seed, **kw)]
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
