"""``raywig`` command line.

Exit codes: 0 success, 2 bad input, 3 degenerate geometry, 4 the map is not
an isometry.
"""

import argparse
import contextlib
import csv
import io
import json
import sys

import numpy as np

from . import io as rio
from .exceptions import DimensionError, NotIsometryError, RaywigError
from .geometry import triangle_report
from .isometry import (
    determine_chi,
    is_isometry_sampled,
    lift_fidelity,
    verify_w1_w2,
    wigner_lift,
)
from .poincare import check_half_solid_angle
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_INPUT = 2


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _flat_csv(rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(report, fmt, out):
    if fmt == "csv":
        rows = report["properties"] if "properties" in report else [report]
        out.write(_flat_csv(rows))
    else:
        out.write(json.dumps(report, indent=2, allow_nan=False) + "\n")


def cmd_phase(args):
    states = [rio.load_state(p) for p in args.files]
    return triangle_report(*states)


def cmd_poincare(args):
    states = [rio.load_state(p) for p in args.files]
    return check_half_solid_angle(*states)


def _load_oracle_for_lifting(path):
    oracle = rio.load_oracle(path)
    if oracle.dim < 2:
        raise DimensionError("classification and reconstruction need dim >= 2")
    return oracle


def cmd_classify(args):
    oracle = _load_oracle_for_lifting(args.oracle)
    check = is_isometry_sampled(oracle, args.trials, args.rng)
    if not check.passed:
        raise NotIsometryError(
            f"overlaps distorted by up to {check.max_deviation:.3g}; not an isometry"
        )
    chi = determine_chi(oracle, args.rng)
    return {"chi": chi.value, "isometry_max_deviation": check.max_deviation}


def cmd_reconstruct(args):
    oracle = _load_oracle_for_lifting(args.oracle)
    reference = rio.load_state(args.reference) if args.reference else None
    lift = wigner_lift(oracle, e=reference, rng=args.rng, isometry_trials=args.trials)
    residuals = verify_w1_w2(oracle, lift, args.trials, args.rng)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rio.dumps(rio.lift_to_json(lift)) + "\n")
    return {
        "chi": lift.chi.value,
        "antiunitary": lift.antiunitary,
        "fidelity": lift_fidelity(lift.matrix, oracle.matrix),
        "w1_max_residual": residuals["w1"],
        "w2_max_residual": max(residuals["w2"], residuals["four_term"]),
    }


def cmd_verify(args):
    if args.suite != "all" and args.suite not in SUITES:
        raise argparse.ArgumentTypeError(args.suite)
    return run_suite(args.suite, dim=args.dim, trials=args.trials, seed=args.seed)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="raywig",
        description="Geometric phase on quantum ray space and lifts of ray-space isometries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials_default):
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--trials", type=_positive_int, default=trials_default)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("phase", help="Bargmann invariant and triangle report of three states")
    p.add_argument("files", nargs=3, metavar="STATE.json")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("poincare", help="compare the excess phase with half the solid angle")
    p.add_argument("files", nargs=3, metavar="STATE.json")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("classify", help="decide whether an oracle is unitary or antiunitary")
    p.add_argument("oracle")
    common(p, 64)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reconstruct", help="rebuild the Hilbert-space lift of an oracle")
    p.add_argument("oracle")
    p.add_argument("--reference", help="state JSON for the reference vector")
    p.add_argument("--out", help="write the lifted symmetry JSON here")
    common(p, 64)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("suite", help="one of: all, " + ", ".join(SUITES))
    p.add_argument("--dim", type=_positive_int, default=4)
    common(p, 100)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if getattr(args, "seed", None) is not None:
        args.rng = np.random.default_rng(args.seed)
    try:
        report = args.func(args)
    except argparse.ArgumentTypeError as exc:
        stderr.write(f"raywig: unknown suite {exc}\n")
        return EXIT_INPUT
    except RaywigError as exc:
        stderr.write(f"raywig: {exc}\n")
        return exc.exit_code
    _emit(report, args.format, stdout)
    if args.command == "verify" and not report["pass"]:
        return 1
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
