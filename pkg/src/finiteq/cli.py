"""Command-line frontend.

Subcommands: state, zeros, reconstruct, overlap, verify, plot.
Exit codes: 0 success, 1 usage or input error, 2 verification failure.
Complex flag values use the literal form ``re+imi``, e.g. ``1+1i`` or
``0.3-0.2i``.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialization as ser
from .analytic import AnalyticState
from .hilbert import position_state, momentum_state
from .verify import run_suite
from .wavefunctions import sampled_from_csv
from .zak import SystemParams, coherent_overlap, coherent_overlap_direct, coherent_state_closed, number_state, zak_map
from .zeros import find_zeros, reconstruct_from_zeros

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems with exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def parse_complex(text: str) -> complex:
    """Parse the CLI literal form: '1+1i', '0.3-0.2i', '-2i', 'i', '0.7'."""
    bad = _UsageError(f"cannot parse complex literal {text!r} (expected e.g. 0.3-0.2i)")
    s = text.strip().replace(" ", "")
    if not s:
        raise bad
    try:
        if not s.endswith("i"):
            return complex(float(s), 0.0)
        body = s[:-1]
        # split before the last sign that is neither leading nor an exponent sign
        split = 0
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                split = k
                break
        re_text, im_text = body[:split], body[split:]
        re_part = float(re_text) if re_text else 0.0
        if im_text in ("", "+"):
            im_part = 1.0
        elif im_text == "-":
            im_part = -1.0
        else:
            im_part = float(im_text)
        return complex(re_part, im_part)
    except ValueError:
        raise bad from None


def _add_common(p):
    p.add_argument("--d", type=int, help="Hilbert-space dimension")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="squeezing scale (default 1)")
    p.add_argument("--cell-a", type=float, default=0.0, help="real cell anchor (default 0)")
    p.add_argument("--cell-b", type=float, default=0.0, help="imaginary cell anchor (default 0)")
    p.add_argument("--tol", type=float, default=None, help="tolerance override where applicable")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--out", help="output path")


def build_parser() -> _Parser:
    parser = _Parser(prog="finiteq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="generate a state file")
    p_state.add_argument("kind", choices=["number", "coherent", "position", "momentum", "sampled"])
    _add_common(p_state)
    p_state.add_argument("--N", type=int, help="number-state index")
    p_state.add_argument("--A", help="coherent label, e.g. 1+1i")
    p_state.add_argument("--m", type=int, help="basis index")
    p_state.add_argument("--csv", help="CSV of x,re,im samples (kind 'sampled')")

    p_zeros = sub.add_parser("zeros", help="locate the d zeros of a state's representation")
    _add_common(p_zeros)
    p_zeros.add_argument("--state", required=True, help="input state JSON")
    p_zeros.add_argument("--svg", help="also write an SVG scatter")

    p_rec = sub.add_parser("reconstruct", help="rebuild a state from a zeros CSV")
    _add_common(p_rec)
    p_rec.add_argument("--zeros", required=True, help="input zeros CSV")

    p_ov = sub.add_parser("overlap", help="overlap of two coherent states or two state files")
    _add_common(p_ov)
    p_ov.add_argument("--A1", help="first coherent label")
    p_ov.add_argument("--A2", help="second coherent label")
    p_ov.add_argument("--in1", help="first state JSON")
    p_ov.add_argument("--in2", help="second state JSON")

    p_ver = sub.add_parser("verify", help="run seeded identity suites")
    _add_common(p_ver)
    p_ver.add_argument("--suite", default="all",
                       choices=["all", "theta", "hilbert", "zak", "analytic", "zeros"])

    p_plot = sub.add_parser("plot", help="SVG scatter of a state's zeros")
    _add_common(p_plot)
    p_plot.add_argument("--state", required=True, help="input state JSON")
    p_plot.add_argument("--overlay", help="second state JSON, drawn with triangles")
    p_plot.add_argument("--svg", help="output SVG path (defaults to --out)")

    return parser


def _params(args, d=None) -> SystemParams:
    dim = d if d is not None else args.d
    if dim is None:
        raise _UsageError("--d is required for this command")
    return SystemParams(dim, args.lam, args.cell_a, args.cell_b)


def _need(args, flag, value):
    if value is None:
        raise _UsageError(f"{flag} is required for this subcommand")
    return value


def _load_analytic(path, args) -> AnalyticState:
    state, lam = ser.load_state(path)
    if args.d is not None and args.d != state.d:
        raise ValueError(f"--d {args.d} conflicts with state file dimension {state.d}")
    return AnalyticState(state, SystemParams(state.d, lam, args.cell_a, args.cell_b))


def _cmd_state(args) -> int:
    if args.kind == "number":
        params = _params(args)
        st = number_state(_need(args, "--N", args.N), params)
    elif args.kind == "coherent":
        params = _params(args)
        st = coherent_state_closed(parse_complex(_need(args, "--A", args.A)), params)
    elif args.kind == "position":
        params = _params(args)
        st = position_state(_need(args, "--m", args.m), params.d)
    elif args.kind == "momentum":
        params = _params(args)
        st = momentum_state(_need(args, "--m", args.m), params.d)
    else:  # sampled
        params = _params(args)
        st = zak_map(sampled_from_csv(_need(args, "--csv", args.csv)), params)
    out = _need(args, "--out", args.out)
    ser.save_state(out, st, params)
    print(f"wrote {out}")
    return 0


def _cmd_zeros(args) -> int:
    s = _load_analytic(args.state, args)
    zs = find_zeros(s)
    out = _need(args, "--out", args.out)
    ser.save_zeros_csv(out, zs)
    print(f"wrote {out} and {ser.sidecar_path(out)} "
          f"({zs.total} zeros, M={zs.M}, N={zs.N}, residual={zs.residual:.2e})")
    if args.svg:
        ser.save_svg(args.svg, zs)
        print(f"wrote {args.svg}")
    return 0


def _cmd_reconstruct(args) -> int:
    positions, mults = ser.load_zeros_csv(args.zeros)
    d = int(np.sum(mults))
    if args.d is not None and args.d != d:
        raise ValueError(f"--d {args.d} conflicts with {d} zeros (with multiplicity) in the CSV")
    params = SystemParams(d, args.lam, args.cell_a, args.cell_b)
    tol = args.tol if args.tol is not None else 1e-6
    st = reconstruct_from_zeros(positions, params, mults, residual_tol=tol)
    out = _need(args, "--out", args.out)
    ser.save_state(out, st, params)
    print(f"wrote {out}")
    return 0


def _cmd_overlap(args) -> int:
    if args.A1 is not None or args.A2 is not None:
        params = _params(args)
        a1 = parse_complex(_need(args, "--A1", args.A1))
        a2 = parse_complex(_need(args, "--A2", args.A2))
        closed = coherent_overlap(a1, a2, params)
        direct = coherent_overlap_direct(a1, a2, params)
        payload = {
            "re": closed.real, "im": closed.imag, "abs": abs(closed),
            "direct_re": direct.real, "direct_im": direct.imag,
            "closed_vs_direct": abs(closed - direct),
        }
    elif args.in1 and args.in2:
        s1, _ = ser.load_state(args.in1)
        s2, _ = ser.load_state(args.in2)
        if s1.d != s2.d:
            raise ValueError(f"dimension mismatch: {s1.d} vs {s2.d}")
        val = s1.inner(s2)
        payload = {"re": val.real, "im": val.imag, "abs": abs(val)}
    else:
        raise _UsageError("overlap needs either --A1/--A2 or --in1/--in2")
    text = json.dumps(payload, indent=1)
    if args.out:
        ser.write_atomic(args.out, text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def _cmd_verify(args) -> int:
    params_d = args.d if args.d is not None else 4
    results = run_suite(args.suite, params_d, args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed (d={params_d}, seed={args.seed}, suite={args.suite})")
    if passed != len(results):
        print("verification failed", file=sys.stderr)
        return 2
    return 0


def _cmd_plot(args) -> int:
    s = _load_analytic(args.state, args)
    zs = find_zeros(s)
    overlay = None
    if args.overlay:
        overlay = find_zeros(_load_analytic(args.overlay, args))
    out = args.svg or args.out
    if not out:
        raise _UsageError("--svg (or --out) is required for plot")
    ser.save_svg(out, zs, overlay)
    print(f"wrote {out}")
    return 0


_COMMANDS = {
    "state": _cmd_state,
    "zeros": _cmd_zeros,
    "reconstruct": _cmd_reconstruct,
    "overlap": _cmd_overlap,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
