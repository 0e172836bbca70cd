"""Command-line interface: witness evaluation, oracle sweeps, experiment
adjudication, angle/state scans and boundary-curve export."""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import lhs_oracle, violation_search
from .correlation_model import (
    ConstraintError,
    correlation_set_from_json_dict,
    PROBABILITY_TOL,
)
from .homodyne_experiment import (
    SinglePhotonState,
    adjudicate,
    adjudicate_reported,
    experiment_correlations,
    monte_carlo_correlations,
    standard_settings,
    state_density,
)
from .qubit_core import ellipse_point, validate_density
from .simplex import OracleError
from .steering_witness import VERDICT_TOL, full_report, steering_lhs_array


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _render_witness_table(report) -> None:
    print("steering witness")
    print(f"  f value : {report.f_value!r}")
    print(f"  lhs     : {report.steering_lhs!r}")
    print(f"  bound   : {report.steering_bound!r}")
    print(f"  verdict : {report.steering_verdict}")
    print(f"chsh facets (bound 2.0, max {report.chsh_max!r})")
    for idx, (value, v) in enumerate(zip(report.chsh_values, report.chsh_verdicts)):
        print(f"  [{idx}] {value!r} : {v}")
    print("pair bounds (bound 1.0)")
    for idx, (value, v) in enumerate(zip(report.pair_values, report.pair_verdicts)):
        print(f"  [{idx}] {value!r} : {v}")


def cmd_witness_eval(args) -> int:
    data = _read_json(args.input)
    correlations = correlation_set_from_json_dict(data, tol=args.prob_tol)
    report = full_report(correlations, tol=args.tol)
    if args.format == "table":
        _render_witness_table(report)
    else:
        _emit_json(report.to_json_dict())
    return 0


def cmd_oracle_check(args) -> int:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(args.seed)))
    points = rng.uniform(-1.0, 1.0, size=(args.samples, 4))
    results = lhs_oracle.lp_membership_batch(points, grid_n=args.grid,
                                             tol=args.lp_tol)
    disagreements = 0
    within_band = 0
    verdicts = []
    for res in results:
        verdicts.append(res.verdict)
        if res.verdict == lhs_oracle.BOUNDARY_BAND:
            within_band += 1
        else:
            witness_member = res.f_value <= 1.0
            if witness_member != (res.verdict == lhs_oracle.MEMBER):
                disagreements += 1
    _emit_json({
        "seed": args.seed,
        "grid_n": args.grid,
        "samples": args.samples,
        "lp_tol": args.lp_tol,
        "band": float(lhs_oracle.boundary_band(args.grid)),
        "disagreements": disagreements,
        "within_band": within_band,
        "verdicts": verdicts,
        "f_values": [res.f_value for res in results],
    })
    return 0 if disagreements == 0 else 1


def _render_experiment_table(report) -> None:
    print("experiment adjudication")
    print(f"  gamma                : {report.gamma!r}")
    print(f"  Left (steering lhs)  : {report.steering_lhs!r}")
    print(f"  Right (2*gamma bound): {report.corrected_bound!r}")
    print(f"  chsh S               : {report.chsh_s!r}")
    print(f"  verdict              : {report.verdict}")


def cmd_experiment(args) -> int:
    if args.reported_s is not None:
        report = adjudicate_reported(args.reported_s, args.eta_bob, tol=args.tol)
        payload = report.to_json_dict()
        payload["inputs"] = {"reported_s": args.reported_s, "eta_bob": args.eta_bob}
    else:
        if args.theta is None or args.p1 is None:
            raise ValueError("either --reported-s or both --theta and --p1 are required")
        eta_alice = args.eta_alice if args.eta_alice is not None else args.eta_bob
        state = SinglePhotonState(theta=np.deg2rad(args.theta), p1=args.p1)
        if args.mc:
            mc = monte_carlo_correlations(
                state, standard_settings(eta_alice, args.eta_bob),
                n_samples=args.mc, seed=args.seed)
            correlations = mc.correlations
        else:
            mc = None
            correlations = experiment_correlations(state, eta_alice, args.eta_bob)
        report = adjudicate(correlations, args.eta_bob, tol=args.tol)
        payload = report.to_json_dict()
        payload["correlators"] = correlations.to_json_dict()["correlators"]
        payload["inputs"] = {"theta_deg": args.theta, "p1": args.p1,
                             "eta_alice": eta_alice, "eta_bob": args.eta_bob}
        if mc is not None:
            payload["mc"] = mc.to_json_dict()
            payload["mc"].pop("correlators", None)
    if args.format == "table":
        _render_experiment_table(report)
    else:
        _emit_json(payload)
    return 0


def cmd_scan_angles(args) -> int:
    deltas = 2.0 * np.pi * np.arange(args.resolution) / args.resolution
    values = steering_lhs_array(
        violation_search.angle_correlations_array(deltas, np.zeros_like(deltas)))
    writer = csv.writer(sys.stdout)
    writer.writerow(["delta", "lhs"])
    for delta, value in zip(deltas, values):
        writer.writerow([float(delta), float(value)])
    return 0


def _state_from_json(data) -> np.ndarray:
    if "real" in data:
        real = np.asarray(data["real"], dtype=float)
        imag = np.asarray(data.get("imag", np.zeros_like(real)), dtype=float)
        return validate_density(real + 1j * imag)
    if "theta_deg" in data:
        state = SinglePhotonState(theta=np.deg2rad(float(data["theta_deg"])),
                                  p1=float(data.get("p1", 1.0)))
        return state_density(state)
    raise ValueError('state JSON needs "real" (+ optional "imag") or "theta_deg"/"p1"')


def cmd_scan_state(args) -> int:
    rho = _state_from_json(_read_json(args.input))
    res = args.resolution
    thetas = np.linspace(0.0, np.pi, res)
    phis = 2.0 * np.pi * np.arange(res) / res
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    dirs = violation_search._directions(tt.ravel(), pp.ravel())
    cols = violation_search._correlation_tensor_columns(rho)
    values = violation_search._scan_lhs(cols, dirs[:, None, :], dirs[None, :, :])
    per_first = values.max(axis=1)

    writer = csv.writer(sys.stdout)
    writer.writerow(["theta_deg", "phi_deg", "max_lhs"])
    for (theta, phi), value in zip(zip(tt.ravel(), pp.ravel()), per_first):
        writer.writerow([float(np.rad2deg(theta)), float(np.rad2deg(phi)),
                         float(value)])
    _, refined = violation_search.state_scan(rho, bloch_resolution=res)
    print(f"refined best lhs: {refined!r}", file=sys.stderr)
    return 0


def cmd_ellipse(args) -> int:
    xis = 2.0 * np.pi * np.arange(args.n) / args.n
    writer = csv.writer(sys.stdout)
    writer.writerow(["xi", "p_b", "p_bp"])
    for xi in xis:
        p, pp = ellipse_point(args.mu, float(xi))
        writer.writerow([float(xi), float(p), float(pp)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chsh-steering",
        description="Decide whether two-setting, two-outcome correlation data "
                    "admits a local model with a trusted quantum side, and "
                    "model the split-single-photon homodyne experiment.")
    sub = parser.add_subparsers(dest="command", required=True)

    witness = sub.add_parser("witness", help="witness evaluation")
    witness_sub = witness.add_subparsers(dest="subcommand", required=True)
    weval = witness_sub.add_parser("eval", help="evaluate a correlation JSON file")
    weval.add_argument("input", help="path to correlation JSON ('-' for stdin)")
    weval.add_argument("--tol", type=float, default=VERDICT_TOL,
                       help="verdict tolerance around each bound")
    weval.add_argument("--prob-tol", type=float, default=PROBABILITY_TOL,
                       help="probability-constraint tolerance for joint matrices")
    weval.add_argument("--format", choices=("json", "table"), default="json")
    weval.set_defaults(func=cmd_witness_eval)

    oracle = sub.add_parser("oracle", help="LP membership oracle")
    oracle_sub = oracle.add_subparsers(dest="subcommand", required=True)
    ocheck = oracle_sub.add_parser(
        "check", help="compare LP membership against the witness on random points")
    ocheck.add_argument("--grid", type=int, default=2048)
    ocheck.add_argument("--samples", type=int, default=10000)
    ocheck.add_argument("--seed", type=int, default=0)
    ocheck.add_argument("--lp-tol", type=float, default=lhs_oracle.DEFAULT_LP_TOL)
    ocheck.set_defaults(func=cmd_oracle_check)

    experiment = sub.add_parser("experiment", help="adjudicate the experiment")
    experiment.add_argument("--reported-s", type=float, default=None,
                            help="reported CHSH S value (equal-magnitude reduction)")
    experiment.add_argument("--theta", type=float, default=None,
                            help="splitting angle in degrees")
    experiment.add_argument("--p1", type=float, default=None,
                            help="single-photon probability")
    experiment.add_argument("--eta-bob", type=float, required=True)
    experiment.add_argument("--eta-alice", type=float, default=None)
    experiment.add_argument("--mc", type=int, default=None,
                            help="Monte Carlo sample count (analytic if omitted)")
    experiment.add_argument("--seed", type=int, default=0)
    experiment.add_argument("--tol", type=float, default=VERDICT_TOL)
    experiment.add_argument("--format", choices=("json", "table"), default="json")
    experiment.set_defaults(func=cmd_experiment)

    scan = sub.add_parser("scan", help="witness maximisation scans")
    scan_sub = scan.add_subparsers(dest="subcommand", required=True)
    sangles = scan_sub.add_parser("angles", help="witness value vs Alice angle difference")
    sangles.add_argument("--resolution", type=int, default=360)
    sangles.set_defaults(func=cmd_scan_angles)
    sstate = scan_sub.add_parser("state", help="scan Alice directions for a state")
    sstate.add_argument("--input", required=True, help="state JSON file")
    sstate.add_argument("--resolution", type=int, default=24)
    sstate.set_defaults(func=cmd_scan_state)

    ellipse = sub.add_parser("ellipse", help="allowed-probability boundary curve")
    ellipse.add_argument("--mu", type=float, required=True)
    ellipse.add_argument("--n", type=int, default=256)
    ellipse.set_defaults(func=cmd_ellipse)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ConstraintError, OracleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input ({exc})", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
