"""Command-line front end.

Every subcommand writes its main table to ``--out`` and puts sidecar files
next to it, named from the same stem (``edge.csv`` -> ``edge.metrics.json``,
``edge.manifest.json``).  The manifest lists the parameters, seed, tool
version and a SHA-256 digest of every output; ``--jobs`` and ``--out`` are left
out of it because they do not change output bytes.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from fractions import Fraction
from functools import partial
from pathlib import Path

from . import __version__
from ._parallel import ordered_map
from .angles import Angle, parse_angle
from .bloch import dispersion, effective_mass, gap_is_open, group_velocity, rotational_flat_momenta
from .disorder import (
    DEFAULT_MASTER_SEED,
    DEFAULT_REALIZATIONS,
    RNG_ALGORITHM,
    ROBUSTNESS_THRESHOLD,
    DisorderConfig,
    run_ensemble,
)
from .edge import (
    EDGE_THRESHOLD,
    PERIODICITY_EPS,
    EdgeExperiment,
    classify_periodicity,
    return_fidelity_trace,
    run_edge_experiment,
    tail_window_start,
)
from .errors import CycleWalkError, NoBoundaryError
from .oracle import SUITES, run_suite
from .topology import CONTINUUM, winding
from .walk import CycleSpec

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_BAD_ARGS, EXIT_IO = 0, 1, 2, 3

DISPERSION_COLUMNS = ("theta", "k_prime", "k", "E_plus", "E_minus", "v_gr", "m_eff",
                      "is_rotational_flat")
WINDING_COLUMNS = ("theta", "omega", "status")
TRANSITION_COLUMNS = ("theta_left", "theta_right")
HEATMAP_COLUMNS = ("t", "x", "P")
FIDELITY_COLUMNS = ("t", "fidelity")


class UsageError(Exception):
    pass


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "undefined"
        return format(value + 0.0, ".17g")  # + 0.0 folds -0 into 0
    return str(value)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class Outputs:
    """Collects output files and writes them with a manifest."""

    def __init__(self, main_path: str):
        self.main = Path(main_path)
        self.files: dict[Path, str] = {}

    def sidecar(self, suffix: str) -> Path:
        return self.main.with_name(f"{self.main.stem}.{suffix}")

    def add(self, path: Path, text: str):
        self.files[path] = text

    def write(self, subcommand: str, params: dict, seed):
        digests = {}
        for path, text in self.files.items():
            data = text.encode("utf-8")
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
            digests[path.name] = hashlib.sha256(data).hexdigest()
        manifest = {
            "subcommand": subcommand,
            "parameters": params,
            "master_seed": seed,
            "version": __version__,
            "outputs": digests,
        }
        self.sidecar("manifest.json").write_bytes(json_text(manifest).encode("utf-8"))


def angle_arg(text: str) -> Angle:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def sites_arg(text: str):
    if text.strip().lower() == "continuum":
        return CONTINUUM
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'continuum', got {text!r}")


def seed_arg(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a non-negative 64-bit integer")
    return value


def theta_grid(samples: int) -> list[Angle]:
    return [Angle(Fraction(2 * j, samples - 1)) for j in range(samples)]


# --- dispersion -------------------------------------------------------------

def _dispersion_rows(theta: Angle, N: int, T: int):
    flats = set(rotational_flat_momenta(N))
    rows = []
    for kp in range(N):
        k = 2 * math.pi * kp / N
        e_plus, e_minus = dispersion(k, theta, T)
        v = group_velocity(k, theta, T) if gap_is_open(k, theta, T) else "undefined"
        m = effective_mass(k, theta, T)
        rows.append((theta.radians, kp, k, e_plus, e_minus, v,
                     m if isinstance(m, float) else "undefined", kp in flats))
    return rows


def cmd_dispersion(args) -> int:
    if args.sites is CONTINUUM:
        raise UsageError("dispersion needs a finite --sites")
    CycleSpec(args.sites)
    thetas = [args.coin_angle] if args.coin_angle is not None else theta_grid(args.samples)
    blocks = ordered_map(partial(_dispersion_rows, N=args.sites, T=args.step_dep),
                         thetas, args.jobs)
    out = Outputs(args.out or "dispersion.csv")
    out.add(out.main, csv_text(DISPERSION_COLUMNS, (r for b in blocks for r in b)))
    params = {"sites": args.sites, "step_dep": args.step_dep, "samples": args.samples,
              "coin_angle": None if args.coin_angle is None else str(args.coin_angle)}
    out.write("dispersion", params, None)
    return EXIT_OK


# --- winding ----------------------------------------------------------------

def _winding_row(theta: Angle, T: int, N):
    return winding(theta.radians, T, N)


def cmd_winding(args) -> int:
    if args.samples < 16:
        raise UsageError("--samples must be >= 16 for a winding scan")
    if args.sites is not CONTINUUM:
        CycleSpec(args.sites)
    from .topology import find_transitions

    results = ordered_map(partial(_winding_row, T=args.step_dep, N=args.sites),
                          theta_grid(args.samples), args.jobs)
    out = Outputs(args.out or "winding.csv")
    out.add(out.main, csv_text(WINDING_COLUMNS,
                               ((r.theta, r.omega, r.status.value) for r in results)))
    out.add(out.sidecar("transitions.csv"),
            csv_text(TRANSITION_COLUMNS, find_transitions(results)))
    params = {"sites": str(args.sites), "step_dep": args.step_dep, "samples": args.samples}
    out.write("winding", params, None)
    return EXIT_OK


# --- edge / disorder --------------------------------------------------------

def _experiment(args) -> EdgeExperiment:
    if args.sites is CONTINUUM:
        raise UsageError("edge experiments need a finite --sites")
    return EdgeExperiment(CycleSpec(args.sites), args.step_dep, args.boundary_angle,
                          args.bulk_angle, boundary_site=args.boundary_site,
                          steps=args.steps, force=args.force)


def _edge_params(args) -> dict:
    return {"sites": args.sites, "step_dep": args.step_dep,
            "boundary_site": args.boundary_site,
            "boundary_angle": str(args.boundary_angle), "bulk_angle": str(args.bulk_angle),
            "steps": args.steps, "force": args.force}


def _heatmap_rows(heatmap):
    for t, row in enumerate(heatmap):
        for x, p in enumerate(row):
            yield t, x, float(p)


def cmd_edge(args) -> int:
    report = run_edge_experiment(_experiment(args))
    out = Outputs(args.out or "edge.csv")
    out.add(out.main, csv_text(HEATMAP_COLUMNS, _heatmap_rows(report.heatmap)))
    metrics = {
        "boundary_site": report.boundary_site,
        "boundary_avg": report.boundary_avg,
        "tail_avg": report.tail_avg,
        "tail_window_start": tail_window_start(report.steps),
        "uniform_baseline": report.uniform_baseline,
        "contrast": report.contrast,
        "threshold": EDGE_THRESHOLD,
        "verdict": "edge-state-present" if report.edge_state else "edge-state-absent",
    }
    out.add(out.sidecar("metrics.json"), json_text(metrics))
    out.write("edge", _edge_params(args), None)
    return EXIT_OK


def cmd_disorder(args) -> int:
    if args.strength < 0:
        raise UsageError("--strength must be >= 0")
    exp = _experiment(args)
    config = DisorderConfig(args.kind, args.strength, args.realizations, args.seed)
    result = run_ensemble(exp, config, jobs=args.jobs)
    averaged = result.averaged_report
    out = Outputs(args.out or "disorder.csv")
    out.add(out.main, csv_text(HEATMAP_COLUMNS, _heatmap_rows(result.averaged_heatmap)))
    retention = {
        "kind": config.kind.value,
        "strength": config.strength,
        "realizations": config.realizations,
        "master_seed": config.master_seed,
        "rng": RNG_ALGORITHM,
        "clean_tail_avg": result.clean_reference.tail_avg,
        "disordered_tail_avg": averaged.tail_avg,
        "disordered_contrast": averaged.contrast,
        "boundary_retention": result.boundary_retention,
        "robustness_threshold": ROBUSTNESS_THRESHOLD,
        "robust": result.robust,
    }
    out.add(out.sidecar("retention.json"), json_text(retention))
    params = {**_edge_params(args), "kind": config.kind.value, "strength": config.strength,
              "realizations": config.realizations}
    out.write("disorder", params, config.master_seed)
    return EXIT_OK


# --- periodicity / verify ---------------------------------------------------

def cmd_periodicity(args) -> int:
    if args.sites is CONTINUUM:
        raise UsageError("periodicity needs a finite --sites")
    if args.coin_angle is None:
        raise UsageError("periodicity needs --coin-angle")
    CycleSpec(args.sites)
    theta = args.coin_angle.radians
    verdict = classify_periodicity(theta, args.step_dep, args.sites, args.steps, args.eps)
    trace = return_fidelity_trace(theta, args.step_dep, args.sites, args.steps)
    out = Outputs(args.out or "periodicity.csv")
    out.add(out.main, csv_text(FIDELITY_COLUMNS, ((t, float(f)) for t, f in enumerate(trace))))
    out.add(out.sidecar("verdict.json"), json_text({
        "kind": verdict.kind.value, "period": verdict.period, "horizon": verdict.horizon,
        "fidelity_threshold": verdict.fidelity_threshold}))
    params = {"sites": args.sites, "step_dep": args.step_dep,
              "coin_angle": str(args.coin_angle), "steps": args.steps, "eps": args.eps}
    out.write("periodicity", params, None)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, seed=args.seed, tolerance=args.tolerance)
    passed = all(r.passed for r in reports)
    out = Outputs(args.out or "verify.json")
    out.add(out.main, json_text({"suite": args.suite, "seed": args.seed, "passed": passed,
                                 "reports": [r.to_dict() for r in reports]}))
    for r in reports:
        print(r.summary())
        for bad in r.offending:
            print(f"  offending: {bad}")
    out.write("verify", {"suite": args.suite, "tolerance": args.tolerance}, args.seed)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclewalk",
        description="Coined quantum walks on N-cycles: bands, windings, edge states, disorder.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sites=8):
        p.add_argument("--sites", type=sites_arg, default=sites, help="cycle size N")
        p.add_argument("--step-dep", type=int, default=2, help="step dependency T (>= 1)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--out", default=None, help="main output file")

    p = sub.add_parser("dispersion", help="band structure table")
    common(p)
    p.add_argument("--coin-angle", type=angle_arg, default=None,
                   help="single angle instead of the theta grid")
    p.add_argument("--samples", type=int, default=65, help="theta grid points on [0, 2pi]")
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("winding", help="winding number vs theta")
    common(p)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_winding)

    def edge_args(p):
        p.add_argument("--boundary-site", type=int, default=0)
        p.add_argument("--boundary-angle", type=angle_arg, default=parse_angle("7pi/5"))
        p.add_argument("--bulk-angle", type=angle_arg, default=parse_angle("pi/3"))
        p.add_argument("--steps", type=int, default=100)
        p.add_argument("--force", action="store_true",
                       help="skip the opposite-winding check (control runs)")

    p = sub.add_parser("edge", help="boundary walk heatmap and edge metrics")
    common(p)
    edge_args(p)
    p.set_defaults(func=cmd_edge)

    p = sub.add_parser("disorder", help="disorder-averaged edge heatmap")
    common(p)
    edge_args(p)
    p.add_argument("--kind", choices=["static", "dynamic", "none"], default="static")
    p.add_argument("--strength", type=float, default=0.1)
    p.add_argument("--realizations", type=int, default=DEFAULT_REALIZATIONS)
    p.add_argument("--seed", type=seed_arg, default=DEFAULT_MASTER_SEED)
    p.set_defaults(func=cmd_disorder)

    p = sub.add_parser("periodicity", help="revival check for a uniform coin")
    common(p, sites=4)
    p.add_argument("--coin-angle", type=angle_arg, default=None)
    p.add_argument("--steps", type=int, default=100, help="horizon")
    p.add_argument("--eps", type=float, default=PERIODICITY_EPS)
    p.set_defaults(func=cmd_periodicity)

    p = sub.add_parser("verify", help="run oracle suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=seed_arg, default=0)
    p.add_argument("--tolerance", type=float, default=None,
                   help="override suite tolerances (negative control)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_BAD_ARGS
    try:
        return args.func(args)
    except NoBoundaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"  omega_boundary = {exc.omega_boundary}, omega_bulk = {exc.omega_bulk}",
              file=sys.stderr)
        return EXIT_BAD_ARGS
    except (UsageError, CycleWalkError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


def console() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console()
