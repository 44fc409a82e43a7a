"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 usage or validation error,
3 domain error.  Errors are printed to standard output as ``{"error": ...}``.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import MatnormError, ValidationError
from .gauge import inequality_suite, h_q, phi_gauge
from .linalg_core import schatten_norm
from .matrix_io import dumps, read_matrix
from .montecarlo import MCConfig, mc_moment
from .polarization import mixed_moment_general
from .ui_norms import n_k, n_k_p, n_prime, sym_power_schatten
from .verify import SUITES, run_suite
from .wui_moments import mixed_moment_closed, n_psi, n_psi0, phi2, phi4, phi_closed

__all__ = ["main", "build_parser"]

NORM_KINDS = ("nk", "nkp", "nprime", "schatten", "sympower-schatten", "phi2", "phi4", "phi-closed", "npsi", "npsi0")
VECTOR_FLAGS = ("--x", "--y")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _mc(args) -> MCConfig | None:
    if args.mc_samples is None:
        return None
    return MCConfig(args.mc_samples, seed=args.seed)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ValidationError(f"--{name.replace('_', '-')} is required for this kind")


def _record(value, method, inputs, stderr=None, seed=None) -> dict:
    rec = {"value": value, "method": method, "inputs": inputs}
    if method == "monte-carlo" or method == "simplex-mc":
        rec["stderr"] = stderr
        rec["seed"] = seed
    return rec


def cmd_norm(args) -> int:
    A = read_matrix(args.input)
    kind = args.kind
    inputs = {"input": args.input, "kind": kind}
    method = "closed-form"
    stderr = seed = None
    if kind == "nk":
        _need(args, "k")
        value = n_k(A, args.k)
    elif kind == "nkp":
        _need(args, "k", "p")
        value = n_k_p(A, args.k, args.p)
    elif kind == "nprime":
        _need(args, "q")
        res = n_prime(A, args.q, _mc(args))
        value, method, stderr, seed = res.value, res.method, res.stderr, res.seed
    elif kind == "schatten":
        _need(args, "p")
        value = schatten_norm(A, args.p)
    elif kind == "sympower-schatten":
        _need(args, "k")
        value = sym_power_schatten(A, args.k, 1.0 if args.p is None else args.p)
    elif kind == "phi2":
        value = phi2(A)
    elif kind == "phi4":
        value = phi4(A)
    elif kind == "phi-closed":
        _need(args, "k")
        value = phi_closed(A, args.k, args.domain)
    elif kind == "npsi":
        value = n_psi(A)
    else:
        value = n_psi0(A)
    for name in ("k", "p", "q"):
        if getattr(args, name) is not None:
            inputs[name] = getattr(args, name)
    print(dumps(_record(float(value), method, inputs, stderr, seed)))
    return 0


def cmd_moment(args) -> int:
    mats = [read_matrix(f) for f in args.inputs]
    inputs = {"inputs": list(args.inputs), "method": args.method}
    if args.method == "closed":
        res = mixed_moment_closed(mats)
        print(dumps(_record(complex(res.value), res.method, inputs)))
    elif args.method == "polarization":
        res = mixed_moment_general(mats)
        print(dumps(_record(complex(res.value), res.method, inputs)))
    else:
        cfg = _mc(args)
        if cfg is None:
            raise ValidationError("--mc-samples is required for --method mc")
        est = mc_moment("mixed", mats, cfg)
        print(dumps(_record(complex(est.mean), "monte-carlo", inputs, est.stderr, est.seed)))
    return 0


def _vector(text: str) -> np.ndarray:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ValidationError(f"cannot parse tuple {text!r}") from exc
    if not vals:
        raise ValidationError("empty tuple")
    return np.array(vals)


def cmd_gauge(args) -> int:
    x = _vector(args.x)
    cfg = _mc(args)
    inputs = {"kind": args.kind, "x": x.tolist(), "q": args.q}
    if args.kind in ("hq", "phi"):
        res = (h_q if args.kind == "hq" else phi_gauge)(x, args.q, cfg)
        print(dumps(_record(res.value, res.method, inputs, res.stderr, args.seed)))
        return 0
    _need(args, "y", "p")
    y = _vector(args.y)
    inputs.update({"y": y.tolist(), "p": args.p})
    suite = inequality_suite(x, y, args.q, args.p, cfg)
    print(dumps({"slacks": suite, "inputs": inputs}))
    return 0


def cmd_verify(args) -> int:
    ok = True
    for res in run_suite(args.suite, args.n, args.trials, args.seed, args.tol, args.mc_samples):
        ok &= res.passed
        print(dumps(res.record()))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="matnorm", description="Norms and sphere moments from symmetric tensor powers.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def mc_flags(p, default=None):
        p.add_argument("--mc-samples", type=int, default=default, help="Monte Carlo sample count")
        p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")

    p = sub.add_parser("norm", help="evaluate a norm of one matrix")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--kind", required=True, choices=NORM_KINDS)
    p.add_argument("--k", type=int, help="symmetric power or moment order")
    p.add_argument("--p", type=float, help="Schatten exponent")
    p.add_argument("--q", type=float, help="order of N'_q")
    p.add_argument("--domain", choices=("psd", "hermitian-even"), default="psd", help="closed-form domain for phi-closed")
    mc_flags(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("moment", help="mixed sphere moment of several matrices")
    p.add_argument("--inputs", required=True, nargs="+", help="matrix JSON files, one per factor")
    p.add_argument("--method", choices=("closed", "polarization", "mc"), default="closed")
    mc_flags(p)
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("verify", help="run randomized verification suites")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--n", type=int, default=3, help="matrix dimension")
    p.add_argument("--trials", type=int, default=20, help="random instances per check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9, help="relative tolerance for deterministic checks")
    p.add_argument("--mc-samples", type=int, default=20000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gauge", help="normalized complete homogeneous functions on real tuples")
    p.add_argument("--kind", choices=("hq", "phi", "slacks"), default="hq")
    p.add_argument("--x", required=True, help="comma-separated tuple")
    p.add_argument("--y", help="second tuple for slacks")
    p.add_argument("--q", type=float, required=True, help="order, q >= 1")
    p.add_argument("--p", type=float)
    mc_flags(p)
    p.set_defaults(func=cmd_gauge)
    return parser


def _join_vector_flags(argv: list[str]) -> list[str]:
    # "--x -1,2" would otherwise be read as a flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] in VECTOR_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_vector_flags(argv))
        if getattr(args, "command", None) == "verify" and (args.n < 1 or args.trials < 1):
            raise ValidationError("--n and --trials must be >= 1")
        return args.func(args)
    except MatnormError as exc:
        print(dumps({"error": str(exc), "type": type(exc).__name__}))
        return exc.exit_code
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
