"""Command-line front end: scenario simulation, ratio classification and the
analytic-vs-numeric verification suites.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 integration failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .drive import DriveParams, RatioKind, classify, stabilization_windows
from .dynamics import IntegratorConfig
from .errors import IntegrationError, PolydriveError, UnknownScenarioError
from .scenarios import BUILTIN_IDS, Scenario, builtin, run
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_INTEGRATION = 3
EXIT_IO = 4


def _ratio_arg(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid ratio {text!r}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polydrive",
        description="Polychromatically driven two-level, Rydberg and Lambda simulations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario and write its time series")
    group = sim.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", help=f"builtin id, one of: {', '.join(BUILTIN_IDS)}")
    group.add_argument("--config", help="path to a JSON custom-scenario file")
    sim.add_argument("--out", help="output path (default: stdout)")
    sim.add_argument("--format", choices=("csv", "json"), default="csv")

    cls = sub.add_parser("classify", help="classify a spacing ratio and list windows")
    cls.add_argument("--ratio", type=_ratio_arg, required=True, metavar="P/Q")
    cls.add_argument("--M", type=int, default=1, dest="scale_root")
    cls.add_argument("--windows", type=int, default=5)

    ver = sub.add_parser("verify", help="run an analytic-vs-numeric verification suite")
    ver.add_argument("--suite", choices=SUITES, required=True)
    ver.add_argument("--U", type=float, default=None, dest="u_override",
                     help="override the Rydberg interaction (units of Omega)")
    return parser


def _config_scenario(path: str) -> Scenario:
    with open(path) as fh:
        raw = json.load(fh)
    omega = float(raw.get("omega", 1.0))
    drive = DriveParams(
        rabi=omega,
        ratio=Fraction(int(raw.get("ratio_p", 1)), int(raw.get("ratio_q", 1))),
        scale_root=int(raw.get("M", 1)),
        pairs=int(raw.get("N", 0)),
        central_detuning=float(raw.get("delta_over_omega", 0.0)) * omega,
    )
    kind = raw.get("model", "two_level")
    atoms = int(raw.get("M", 1)) if kind in ("rydberg", "effective_w") else 1
    default_obs = {"rydberg": ("T" if atoms == 2 else "W",),
                   "effective_w": ("W",),
                   "lambda": ("e", "r")}.get(kind, ("e",))
    interaction = raw.get("U_over_omega")
    return Scenario(
        id="custom",
        kind=kind,
        drives=(("", drive),),
        gamma=float(raw.get("gamma_over_omega", 0.0)) * omega,
        interaction=float(interaction) * omega if interaction is not None else None,
        atoms=atoms,
        t_start=float(raw.get("t_start", 0.0)),
        t_stop=float(raw.get("t_stop", 30.0)),
        samples=int(raw.get("samples", 3001)),
        time_unit=str(raw.get("time_unit", "Omega_t")),
        observables=tuple(raw.get("observables", default_obs)),
        with_analytic=bool(raw.get("with_analytic", True)),
        with_baseline=bool(raw.get("with_baseline", False)),
    )


def _metadata_lines(result):
    for key, value in result.metadata.items():
        yield f"# {key}: {json.dumps(value) if isinstance(value, (dict, list)) else value}"


def write_csv(result, stream):
    for line in _metadata_lines(result):
        stream.write(line + "\n")
    time_col = "Omega_t" if result.metadata["time_unit"] == "Omega_t" else "t_us"
    names = [time_col] + list(result.columns.keys())
    stream.write(",".join(names) + "\n")
    data = np.column_stack([result.times] + list(result.columns.values()))
    for row in data:
        stream.write(",".join(f"{v:.17g}" for v in row) + "\n")


def write_json(result, stream):
    time_col = "Omega_t" if result.metadata["time_unit"] == "Omega_t" else "t_us"
    payload = {
        "metadata": result.metadata,
        "time_column": time_col,
        "time": result.times.tolist(),
        "columns": {k: v.tolist() for k, v in result.columns.items()},
    }
    json.dump(payload, stream, indent=1)
    stream.write("\n")


def _integrator_config() -> IntegratorConfig:
    rel_tol = os.environ.get("POLYDRIVE_TOLERANCE")
    if rel_tol is not None:
        return IntegratorConfig(rel_tol=float(rel_tol))
    return IntegratorConfig()


def cmd_simulate(args) -> int:
    try:
        scenario = builtin(args.scenario) if args.scenario else _config_scenario(args.config)
    except UnknownScenarioError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolydriveError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = run(scenario, _integrator_config())
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    writer = write_csv if args.format == "csv" else write_json
    try:
        if args.out:
            with open(args.out, "w") as fh:
                writer(result, fh)
        else:
            writer(result, sys.stdout)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        params = DriveParams(rabi=1.0, ratio=args.ratio, scale_root=args.scale_root)
    except PolydriveError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    ratio_class = classify(params)
    num, den = params.ratio.numerator, params.ratio.denominator
    print(f"ratio 2*sqrt({params.scale_root})*Omega/Delta = {num}/{den}")
    if ratio_class.kind is RatioKind.CONCLUSION_I:
        print(f"class: conclusion-i (j={ratio_class.j}, k={ratio_class.k})")
        print("population stabilized at unity for all windows")
    elif ratio_class.kind is RatioKind.CONCLUSION_II:
        print(f"class: conclusion-ii (j={ratio_class.j}, k={ratio_class.k})")
        for w in stabilization_windows(ratio_class.k, args.windows):
            print(f"window: Delta*t in [{w.start / math.pi:g}*pi, {w.end / math.pi:g}*pi)")
    else:
        print("class: generic (no stabilization claim for even numerator/denominator)")
    return EXIT_OK


def cmd_verify(args) -> int:
    rel_tol_env = os.environ.get("POLYDRIVE_TOLERANCE")
    rel_tol = float(rel_tol_env) if rel_tol_env else None
    try:
        results = run_suite(args.suite, u_override=args.u_override, rel_tol=rel_tol)
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    worst = EXIT_OK
    for check in results:
        status = "pass" if check.passed else "FAIL"
        print(f"{status}  {check.name}: max deviation {check.max_deviation:.3e} (tol {check.tolerance:g})")
        if not check.passed:
            worst = EXIT_VERIFY_FAIL
    return worst


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"simulate": cmd_simulate, "classify": cmd_classify, "verify": cmd_verify}[args.command]
    try:
        code = handler(args)
    except PolydriveError as exc:
        print(str(exc), file=sys.stderr)
        code = EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
