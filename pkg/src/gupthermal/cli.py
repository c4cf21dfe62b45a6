"""Command-line sweeps: ``gupthermal {purity,entropy,renyi,tstar,verify}``.

CSV goes to stdout with 12 significant digits; diagnostics go to stderr.
Exit status: 0 ok, 1 verification failure or no maximum, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys
import warnings

import numpy as np

from . import entropy, verify
from .exceptions import NoMaximumError, PerturbativeWarning
from .model import GupParams

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_ALPHAS = {
    "purity": [0.0, 0.04, 0.08],
    "entropy": [0.0, 0.01, 0.02],
    "renyi": [0.0, 0.01],
}
DEFAULT_GAMMAS = [0.8, 1.8, float("inf")]


def fmt(v) -> str:
    return format(float(v), ".12g")


def _gamma(text: str) -> float:
    try:
        g = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid gamma {text!r}") from None
    if not g > 0 or abs(g - 1.0) < entropy.ORDER_ONE_GUARD:
        raise argparse.ArgumentTypeError("gamma must be > 0 and != 1")
    return g


def _nonneg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not np.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError("alpha must be a finite number >= 0")
    return v


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not np.isfinite(v) or v <= 0:
        raise argparse.ArgumentTypeError("value must be a positive number")
    return v


def _add_units(p):
    for name in ("hbar", "mass", "omega", "kb"):
        p.add_argument(f"--{name}", type=_positive, default=1.0)


def _add_sweep(p):
    p.add_argument("--alpha", type=_nonneg, action="append",
                   help="GUP parameter; repeat for several curves")
    p.add_argument("--tmin", type=_positive, default=0.05)
    p.add_argument("--tmax", type=_positive, default=100.0)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--log", action="store_true", help="log-spaced temperatures")
    _add_units(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gupthermal",
        description="Purity and entropies of the GUP-corrected oscillator thermal state.")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_sweep(sub.add_parser("purity", help="Tr rho^2 against temperature"))
    _add_sweep(sub.add_parser("entropy", help="von Neumann entropy against temperature"))
    p = sub.add_parser("renyi", help="Renyi entropies against temperature")
    _add_sweep(p)
    p.add_argument("--gamma", type=_gamma, action="append",
                   help="Renyi order; repeatable, 'inf' accepted")

    p = sub.add_parser("tstar", help="temperature of maximal von Neumann entropy")
    p.add_argument("--alpha", type=_nonneg, default=0.01)
    _add_units(p)

    p = sub.add_parser("verify", help="run the oracle suites")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--debug-perturb-det-h", action="store_true",
                   help="scale det H by 1 + 1e-6 to check that the suites notice")
    return parser


def _params(args, alpha=0.0) -> GupParams:
    return GupParams(hbar=args.hbar, mass=args.mass, omega=args.omega, kb=args.kb, alpha=alpha)


def temperatures(args) -> np.ndarray:
    if args.log:
        return np.geomspace(args.tmin, args.tmax, args.steps)
    return np.linspace(args.tmin, args.tmax, args.steps)


def cmd_purity(args, out) -> int:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["T", "alpha", "purity", "validity_ratio"])
    T = temperatures(args)
    for alpha in args.alpha:
        p = _params(args, alpha)
        base, corr = entropy.purity_parts(p, T)
        values = entropy.purity(p, T)
        for t, v, r in zip(T, np.atleast_1d(values), np.atleast_1d(np.abs(corr))):
            w.writerow([fmt(t), fmt(alpha), fmt(v), fmt(r)])
    return EXIT_OK


def cmd_entropy(args, out) -> int:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["T", "alpha", "s_von", "validity_ratio"])
    T = temperatures(args)
    for alpha in args.alpha:
        s = entropy.von_neumann(_params(args, alpha), T)
        for t, v, r in zip(T, np.atleast_1d(s.value), np.atleast_1d(s.validity_ratio)):
            w.writerow([fmt(t), fmt(alpha), fmt(v), fmt(r)])
    return EXIT_OK


def cmd_renyi(args, out) -> int:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["T", "alpha", "gamma", "s_renyi"])
    T = temperatures(args)
    for alpha in args.alpha:
        p = _params(args, alpha)
        for gamma in args.gamma:
            s = entropy.renyi(p, T, gamma)
            for t, v in zip(T, np.atleast_1d(s.value)):
                w.writerow([fmt(t), fmt(alpha), fmt(gamma), fmt(v)])
    return EXIT_OK


def cmd_tstar(args, out) -> int:
    try:
        ts = entropy.t_star(_params(args, args.alpha))
    except NoMaximumError as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAIL
    out.write(f"T_star={fmt(ts.temperature)} beta_star={fmt(ts.beta)} residual={ts.residual:.3e}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    scale = 1.0 + 1e-6 if args.debug_perturb_det_h else 1.0
    checks = verify.run(args.level, det_h_scale=scale)
    width = max(len(c.name) for c in checks)
    out.write(f"{'suite':<13}{'check':<{width + 2}}{'max_error':>12}{'tolerance':>12}  status\n")
    for c in checks:
        status = "ok" if c.passed else "FAIL"
        out.write(f"{c.suite:<13}{c.name:<{width + 2}}{c.max_error:>12.3e}{c.tolerance:>12.1e}  {status}\n")
    failed = [c for c in checks if not c.passed]
    for c in failed:
        print(f"FAILED [{c.suite}] {c.name}: max error {c.max_error:.3e} >= {c.tolerance:.1e}",
              file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "purity": cmd_purity,
    "entropy": cmd_entropy,
    "renyi": cmd_renyi,
    "tstar": cmd_tstar,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    if args.command in DEFAULT_ALPHAS:
        if args.alpha is None:
            args.alpha = list(DEFAULT_ALPHAS[args.command])
        if args.steps < 2:
            parser.error("--steps must be >= 2")
        if not args.tmin < args.tmax:
            parser.error("--tmin must be smaller than --tmax")
    if args.command == "renyi" and args.gamma is None:
        args.gamma = list(DEFAULT_GAMMAS)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PerturbativeWarning)
        status = COMMANDS[args.command](args, out)
    _report_warnings(caught)
    return status


def _report_warnings(caught) -> None:
    """One stderr line per quantity instead of one per evaluated array."""
    seen = []
    for w in caught:
        if issubclass(w.category, PerturbativeWarning):
            what = str(w.message).split(":", 1)[0]
            if what not in seen:
                seen.append(what)
        else:
            warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    for what in seen:
        print(f"warning: {what}: O(alpha) correction exceeds half of the alpha=0 value "
              "for some rows", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
