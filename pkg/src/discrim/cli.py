"""Command-line front end.

Exit codes: 0 success, 1 validation/assertion failure, 2 solver
non-convergence, 3 size guard exceeded.
"""
import argparse
from fractions import Fraction
import sys

import numpy as np

from . import classical as cl
from . import linalg as la
from . import quantum as qu
from .channel_io import parse_channel_file
from .channels import KrausChannel
from .classical import StochasticChannel
from .errors import (CapacityError, ConvergenceError, ParseError, ShapeError,
                     ValidationError)
from .report import verify_paper
from .sdp import DEFAULT_TOL

EXIT_OK, EXIT_FAIL, EXIT_NOCONV, EXIT_CAPACITY = 0, 1, 2, 3

SECOND_QUBIT = {
    "0": la.projector(la.ket("0")),
    "1": la.projector(la.ket("1")),
    "+": la.projector(la.ket("+")),
    "mixed": np.eye(2) / 2,
}


def _load(path, kind):
    cf = parse_channel_file(path)
    expected = KrausChannel if kind == "kraus" else StochasticChannel
    if not isinstance(cf.channel, expected):
        raise ValidationError(f"{path}: expected a {kind} channel, got {cf.kind}")
    return cf.channel


def _fmt(x):
    s = f"{float(x):.6f}"
    if isinstance(x, Fraction):
        s += f"  ({x})"
    return s


def cmd_diamond(args, out):
    c0, c1 = _load(args.a, "kraus"), _load(args.b, "kraus")
    try:
        res = qu.n_copy_diamond(c0, c1, args.copies, args.tol)
    except ConvergenceError as exc:
        print(f"not converged: {exc}", file=out)
        print(f"lower bound {exc.lower:.6f}", file=out)
        print(f"upper bound {exc.upper:.6f}", file=out)
        return EXIT_NOCONV
    print(f"copies      {args.copies}", file=out)
    print(f"value       {max(res.value, 0.0):.6f}", file=out)
    print(f"dual bound  {res.dual_bound:.6f}", file=out)
    print(f"gap         {max(res.gap, 0.0):.6f}  ({res.gap:.3e})", file=out)
    print(f"success     {0.5 + max(res.value, 0.0) / 4:.6f}", file=out)
    return EXIT_OK


def cmd_classical(args, out):
    m0, m1 = _load(args.a, "stochastic"), _load(args.b, "stochastic")
    if args.mode == "one-shot":
        res = cl.one_shot_optimum(m0, m1)
        print("mode        one-shot", file=out)
        print(f"value       {_fmt(res.value)}", file=out)
        print(f"input       {res.best_input + 1}", file=out)
    elif args.mode == "nonadaptive":
        res = cl.nonadaptive_optimum(m0, m1, args.n)
        print(f"mode        nonadaptive (n={args.n})", file=out)
        print(f"value       {_fmt(res.value)}", file=out)
        print(f"inputs      {cl.one_based(res.best_inputs)}", file=out)
    elif args.n == 2:
        res = cl.adaptive_two_step_optimum(m0, m1)
        k, f = res.policy.one_based()
        print("mode        adaptive (n=2)", file=out)
        print(f"value       {_fmt(res.value)}", file=out)
        print(f"first input {k}", file=out)
        print(f"response    f={f}", file=out)
    else:
        res = cl.adaptive_optimum(m0, m1, args.n)
        print(f"mode        adaptive (n={args.n})", file=out)
        print(f"value       {_fmt(res.value)}", file=out)
        print("tree", file=out)
        print(cl.format_tree(res.tree, "  "), file=out)
    return EXIT_OK


def cmd_simulate(args, out):
    c = _load(args.channel, "kraus")
    if (c.dim_in, c.dim_out) != (4, 2):
        raise ShapeError(f"the two-step protocol needs a 4 -> 2 channel, got "
                         f"{c.dim_in} -> {c.dim_out}")
    strategy = qu.paper_two_step_strategy(SECOND_QUBIT[args.second_qubit])
    probs = qu.simulate_strategy(strategy, c)
    print(", ".join(f"{lbl}: {abs(p):.6f}" for lbl, p in zip(strategy.labels, probs)), file=out)
    return EXIT_OK


def cmd_verify(args, out):
    rep = verify_paper(two_copy=not args.skip_two_copy)
    print(rep.render(), file=out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(s):
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="discrim",
                                description="Adaptive vs non-adaptive channel discrimination.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diamond", help="diamond distance of two Kraus channels (n copies)")
    d.add_argument("--a", required=True, metavar="FILE")
    d.add_argument("--b", required=True, metavar="FILE")
    d.add_argument("--copies", type=_positive_int, default=1)
    d.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    d.set_defaults(func=cmd_diamond)

    c = sub.add_parser("classical", help="optimal discrimination of two stochastic channels")
    c.add_argument("--a", required=True, metavar="FILE")
    c.add_argument("--b", required=True, metavar="FILE")
    c.add_argument("--mode", required=True, choices=["one-shot", "nonadaptive", "adaptive"])
    c.add_argument("--n", type=_positive_int, default=2)
    c.set_defaults(func=cmd_classical)

    s = sub.add_parser("simulate", help="run the two-step adaptive protocol on a channel")
    s.add_argument("--channel", required=True, metavar="FILE")
    s.add_argument("--second-qubit", default="0", choices=sorted(SECOND_QUBIT))
    s.add_argument("--strategy", default="paper-two-step", choices=["paper-two-step"])
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify-paper", help="re-run every headline computation")
    v.add_argument("--skip-two-copy", action="store_true",
                   help="skip the 64x64 two-copy SDP")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParseError, ValidationError, ShapeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
