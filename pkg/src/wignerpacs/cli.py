"""Command-line entry point: ``wignerpacs {wigner,pnw,threshold,gate,verify}``.

Fields and curves are written as CSV, scalar records as JSON.  Every
command accepts ``--config FILE`` with ``key = value`` lines, which act as
defaults that explicit flags override.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from .errors import WignerPacsError
from .gate import PAIRS, GateConfig, gate_record
from .negativity import (evolved_field, pnw_curve, threshold_analytic, threshold_numeric,
                         threshold_record)
from .phase_space import GridSpec, write_field_csv
from .states import ChannelParams, PacsSpec

THRESHOLD_TOL = {1: 1e-3, 2: 2e-3}
GATE_TOL = 1e-8


class UsageError(Exception):
    pass


def parse_values(text: str) -> list[float]:
    """``x``, ``a..bxN`` or ``a:b:N`` (N evenly spaced points, both ends included)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, rest = text.split("..", 1)
            hi, count = rest.split("x", 1)
            return list(np.linspace(float(lo), float(hi), int(count)))
        if text.count(":") == 2:
            lo, hi, count = text.split(":")
            return list(np.linspace(float(lo), float(hi), int(count)))
        return [float(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse value list {text!r}") from None


def parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("--grid needs qmin,qmax,pmin,pmax,nq,np")
    try:
        q0, q1, p0, p1 = (float(x) for x in parts[:4])
        return GridSpec(q0, q1, p0, p1, int(parts[4]), int(parts[5]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --grid: {exc}") from None


def read_config(path: str) -> list[str]:
    """Translate a ``key = value`` file into argv tokens."""
    argv = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line without '=': {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        argv += ["--" + key.replace("_", "-"), value.strip("\"'")]
    return argv


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _spec(args) -> PacsSpec:
    return PacsSpec(complex(args.alpha, args.alpha_im), args.m)


def _single(values: list[float], flag: str) -> float:
    if len(values) != 1:
        raise UsageError(f"{flag} takes a single value for this command")
    return values[0]


def cmd_wigner(args) -> int:
    spec = _spec(args)
    ch = ChannelParams(args.gamma_t, _single(args.n, "--n"))
    field = evolved_field(spec, ch, args.grid)
    if args.out:
        write_field_csv(field, args.out)
    else:
        write_field_csv(field, sys.stdout)
    return 0


def _curve_csv(curve) -> str:
    return "gamma_t,p_nw\n" + "".join(f"{_fmt(t)},{_fmt(v)}\n" for t, v in curve)


def cmd_pnw(args) -> int:
    spec = _spec(args)
    ns, times = args.n, args.t
    if len(ns) > 1 and not args.out:
        raise UsageError("several --n values need --out to name the curve files")
    sidecar = {"alpha_re": spec.alpha.real, "alpha_im": spec.alpha.imag, "m": spec.m, "curves": []}
    for n in ns:
        curve = pnw_curve(spec, n, times, args.grid)
        predicted = threshold_analytic(n).gamma_t_c if spec.m in (1, 2) else None
        entry = {"n": n, "threshold_predicted": predicted}
        if args.out:
            base = Path(args.out)
            path = base if len(ns) == 1 else base.with_name(f"{base.stem}_n{n:g}{base.suffix or '.csv'}")
            path.write_text(_curve_csv(curve))
            entry["file"] = path.name
        else:
            sys.stdout.write(_curve_csv(curve))
        sidecar["curves"].append(entry)
    if args.out:
        Path(args.out).with_suffix(".json").write_text(json.dumps(sidecar, indent=2) + "\n")
    return 0


def cmd_threshold(args) -> int:
    spec = _spec(args)
    tol = THRESHOLD_TOL.get(spec.m, 1e-3)
    ns = args.sweep_n if args.sweep_n is not None else args.n
    rows = []
    ok = True
    for n in ns:
        numeric = threshold_numeric(spec, n, tol=args.tol, grid=args.grid)
        analytic = threshold_analytic(n)
        diff = abs(numeric.gamma_t_c - analytic.gamma_t_c)
        ok &= diff < tol
        rows.append({
            "numeric": threshold_record(spec, n, numeric),
            "analytic": threshold_record(spec, n, analytic),
            "difference": diff,
            "tolerance": tol,
            "within_tolerance": diff < tol,
        })
    if args.sweep_n is not None and args.format == "csv":
        text = "n,gamma_t_c_numeric,gamma_t_c_analytic,difference\n" + "".join(
            f"{_fmt(r['numeric']['n'])},{_fmt(r['numeric']['gamma_t_c'])},"
            f"{_fmt(r['analytic']['gamma_t_c'])},{_fmt(r['difference'])}\n" for r in rows)
    else:
        payload = rows if args.sweep_n is not None else rows[0]
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, args.out)
    return 0 if ok else 1


def cmd_gate(args) -> int:
    cfg = GateConfig(complex(args.alpha, args.alpha_im), args.phi, args.cutoff)
    records = [gate_record(bits, cfg) for bits in PAIRS]
    worst = max(math.hypot(r["analytic_re"] - r["numeric_re"], r["analytic_im"] - r["numeric_im"])
                for r in records)
    _emit(json.dumps(records, indent=2) + "\n", args.out)
    return 0 if worst < GATE_TOL else 1


def cmd_verify(args) -> int:
    results = acceptance.run_all(echo=lambda line: print(line, flush=True))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wignerpacs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, state=True, grid=True):
        p.add_argument("--config", help="key = value file supplying default flags")
        p.add_argument("--out", help="output path (default: standard output)")
        if state:
            p.add_argument("--alpha", type=float, default=0.5, help="real part of alpha")
            p.add_argument("--alpha-im", type=float, default=0.0, help="imaginary part of alpha")
            p.add_argument("--m", type=int, default=1, help="added photons (0, 1 or 2)")
        if grid:
            p.add_argument("--grid", type=parse_grid, default=GridSpec.default(),
                           help="qmin,qmax,pmin,pmax,nq,np")

    p = sub.add_parser("wigner", help="write a sampled Wigner field as CSV")
    common(p)
    p.add_argument("--n", type=parse_values, default=[0.0], help="mean thermal photon number")
    p.add_argument("--gamma-t", type=float, default=0.0, help="decay time gamma*t")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("pnw", help="negative-volume decay curves")
    common(p)
    p.add_argument("--n", type=parse_values, default=[0.5], help="value or range a..bxN")
    p.add_argument("--t", type=parse_values, default=parse_values("0..0.8x41"),
                   help="decay times, value or range a..bxN")
    p.set_defaults(func=cmd_pnw)

    p = sub.add_parser("threshold", help="threshold decay time, numeric vs analytic")
    common(p)
    p.add_argument("--n", type=parse_values, default=[0.0])
    p.add_argument("--sweep-n", type=parse_values, default=None, help="range a:b:N")
    p.add_argument("--tol", type=float, default=1e-6, help="bisection bracket width")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="sweep output format (single thresholds are always JSON)")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("gate", help="beam-splitter overlaps for all four logical pairs")
    common(p, grid=False)
    p.add_argument("--phi", type=float, required=True, help="beam-splitter angle (radians)")
    p.add_argument("--cutoff", type=int, default=None, help="single-mode Fock cutoff")
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("verify", help="run the acceptance criteria and print a table")
    p.set_defaults(func=cmd_verify)
    return parser


def _expand_config(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a file path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    # config tokens go right after the subcommand so explicit flags win
    return rest[:1] + read_config(path) + rest[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_expand_config(argv))
        return args.func(args)
    except (UsageError, WignerPacsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
