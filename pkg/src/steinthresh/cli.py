"""Command-line surface: denoise a series, run risk sweeps, tabulate the shrink constant.

Exit codes: 0 success, 1 I/O error, 2 validation error.  All commands are
deterministic given --seed, and CSV output uses 17 significant digits so
values round-trip exactly.
"""

import argparse
import csv
import sys

import numpy as np

from .baselines import METHOD_NAMES, apply_method, make_method, resolution_cutoff
from .canonical import ShrinkConfig, c_beta, monte_carlo_a_beta
from .dwt import dwt_forward, dwt_inverse, max_levels
from .harness import estimate_sigma, risk_sweep
from .testbed import SIGNAL_NAMES

__all__ = ["main"]


def _fmt(x):
    return format(float(x), ".17g")


def _real(text):
    # plain real, or a fraction like 4/3
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return float(num) / float(den)
        return float(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None


def _count(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    rounded = int(round(value))
    if rounded < 1 or abs(value - rounded) > 1e-9 * max(1.0, abs(value)):
        raise argparse.ArgumentTypeError(f"not a positive integer: {text!r}")
    return rounded


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _sigma_flag(text):
    s = text.strip()
    if s == "auto":
        return "auto"
    value = _real(s)
    if not value > 0:
        raise argparse.ArgumentTypeError("sigma must be positive (or 'auto')")
    return value


def _a_rule(text):
    s = text.strip()
    if s in ("finite", "asymptotic", "eb"):
        return s, None
    if s.startswith("fixed:"):
        value = _real(s[len("fixed:"):])
        if not value > 0:
            raise argparse.ArgumentTypeError("fixed a must be positive")
        return "fixed", value
    raise argparse.ArgumentTypeError(
        f"invalid a-rule {text!r}; expected finite|asymptotic|eb|fixed:<real>"
    )


def _comma_list(text):
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return items


def _build_method(name, beta, a_rule):
    if name == "zh":
        rule, fixed = a_rule
        return make_method("zh", config=ShrinkConfig(beta=beta, a_rule=rule, fixed_a=fixed))
    return make_method(name)


def cmd_denoise(args):
    data = np.loadtxt(args.input, delimiter=",", ndmin=1)
    if data.ndim != 1:
        raise ValueError("input must be a single-column CSV")
    data = data.astype(float)
    n = data.size
    if n < 2 or n & (n - 1):
        raise ValueError(f"input length must be a power of two, got {n}")
    if args.method == "identity":
        values = data
    else:
        cutoff = resolution_cutoff(n)
        levels = max_levels(n) - cutoff
        if levels < 1:
            raise ValueError(f"input of length {n} has no detail level above the resolution cutoff")
        decomp = dwt_forward(data, levels)
        if args.sigma == "auto":
            sigma = estimate_sigma(decomp)
            if not sigma > 0:
                raise ValueError("could not estimate sigma: degenerate finest detail level")
            print(f"estimated sigma = {_fmt(sigma)}")
        else:
            sigma = args.sigma
        method = _build_method(args.method, args.beta, args.a_rule)
        values = dwt_inverse(apply_method(method, decomp, sigma, cutoff))
    with open(args.out, "w", newline="\n") as fh:
        fh.writelines(_fmt(v) + "\n" for v in values)
    return 0


def cmd_simulate(args):
    methods = [_build_method(m, args.beta, args.a_rule) for m in args.methods]
    reports = risk_sweep(
        methods,
        args.signals,
        args.n,
        snr=args.snr,
        reps=args.reps,
        seed=args.seed,
        sigma_mode=args.sigma_mode,
        workers=args.workers,
    )
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["signal", "method", "n", "snr", "reps", "mean_risk", "std_error", "relative_risk"])
        for r in reports:
            writer.writerow(
                [r.signal, r.method, r.n, _fmt(r.snr), r.reps,
                 _fmt(r.mean_risk), _fmt(r.std_error), _fmt(r.relative_risk)]
            )
    return 0


def cmd_bound_a(args):
    estimate, std_error = monte_carlo_a_beta(args.beta, args.d, args.reps, args.seed)
    finite = 0.97 * (args.d - 2) * c_beta(args.beta) if args.d >= 3 else float("nan")
    limit = args.d * c_beta(args.beta)
    header = f"{'beta':>10} {'d':>8} {'a_beta':>14} {'std_error':>12} {'finite_rule':>14} {'d_c_beta':>14}"
    row = (
        f"{args.beta:>10.6g} {args.d:>8d} {estimate:>14.6g} "
        f"{std_error:>12.3g} {finite:>14.6g} {limit:>14.6g}"
    )
    print(header)
    print(row)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="steinthresh",
        description="Thresholding shrinkage estimators and a wavelet-regression risk testbed.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    den = sub.add_parser("denoise", help="denoise a single-column CSV of 2**J samples")
    den.add_argument("--input", required=True, help="input CSV path")
    den.add_argument("--method", required=True, choices=METHOD_NAMES)
    den.add_argument("--sigma", type=_sigma_flag, default="auto",
                     help="noise scale, or 'auto' to estimate from the finest level")
    den.add_argument("--beta", type=_real, default=4.0 / 3.0,
                     help="shrinkage exponent for method zh (accepts fractions like 4/3)")
    den.add_argument("--a-rule", type=_a_rule, default=("finite", None),
                     help="constant rule for method zh: finite|asymptotic|eb|fixed:<real>")
    den.add_argument("--out", required=True, help="output CSV path")
    den.set_defaults(func=cmd_denoise)

    sim = sub.add_parser("simulate", help="Monte Carlo risk sweep, written as CSV")
    sim.add_argument("--methods", type=_comma_list, required=True,
                     help=f"comma list from {','.join(METHOD_NAMES)}")
    sim.add_argument("--signals", type=_comma_list, required=True,
                     help=f"comma list from {','.join(SIGNAL_NAMES)}")
    sim.add_argument("--n", type=_comma_list, required=True, help="comma list of sample sizes")
    sim.add_argument("--snr", type=_real, default=3.0)
    sim.add_argument("--reps", type=_count, default=500)
    sim.add_argument("--seed", type=_seed, default=0)
    sim.add_argument("--sigma-mode", choices=("known", "estimated"), default="known")
    sim.add_argument("--beta", type=_real, default=4.0 / 3.0, help="exponent for method zh")
    sim.add_argument("--a-rule", type=_a_rule, default=("finite", None), help="constant rule for method zh")
    sim.add_argument("--workers", type=_count, default=1, help="worker threads (does not change results)")
    sim.add_argument("--out", required=True, help="output CSV path")
    sim.set_defaults(func=cmd_simulate)

    bnd = sub.add_parser("bound-a", help="simulate the Bayes-risk-safe shrink constant")
    bnd.add_argument("--beta", type=_real, required=True, help="exponent in (1/2, 2]; fractions allowed")
    bnd.add_argument("--d", type=_count, required=True)
    bnd.add_argument("--reps", type=_count, default=100000)
    bnd.add_argument("--seed", type=_seed, default=0)
    bnd.set_defaults(func=cmd_bound_a)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code is None else int(exc.code)
    try:
        if args.command == "simulate":
            args.n = [int(v) for v in args.n]
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
