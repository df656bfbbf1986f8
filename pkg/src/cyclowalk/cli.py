"""Command-line front end: period decisions, spectra, evolution, coin checks.

JSON is the source of truth for every command; the human format is rendered
from the same data.  Exit codes: 0 decided/consistent, 1 usage or input error,
2 undecided within the step bound, 3 coin condition violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import cyclo
from .cyclo import LevelCapExceeded
from .period import (
    CertifiedInfinite,
    Finite,
    UnknownUpTo,
    char_poly_exact,
    check_coin_necessary,
    walk_period,
)
from .walk import (
    DimensionMismatch,
    ShiftType,
    WalkSpec,
    WalkState,
    build_blocks,
    delta_state,
    evolve,
    fourier_coin,
    grover_coin,
    load_coin_file,
    uniform_state,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNDECIDED = 2
EXIT_CONDITION_VIOLATED = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which collides with the
    # "undecided" contract; force 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _resolve_coin(name: str):
    if name == "grover":
        return grover_coin(3)
    if name == "fourier":
        return fourier_coin(3)
    return load_coin_file(name)


def _make_spec(args) -> WalkSpec:
    coin = _resolve_coin(args.coin)
    return WalkSpec(args.n, coin, ShiftType.parse(args.shift))


def _parse_initial(spec: WalkSpec, text: str) -> WalkState:
    if text == "uniform":
        return uniform_state(spec.n)
    vertex_part, _, weight_part = text.partition(":")
    vertex = int(vertex_part)
    if weight_part:
        weights = [complex(w) for w in weight_part.split(",")]
        if len(weights) != 3:
            raise ValueError("initial state needs exactly three chirality weights")
    else:
        weights = [0, 1, 0]
    return delta_state(spec.n, vertex, weights)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _suggest_rational(angle: float) -> str | None:
    frac = Fraction(angle).limit_denominator(10_000)
    if abs(angle - float(frac)) < 1e-9:
        return str(frac)
    return None


def cmd_period(args) -> int:
    spec = _make_spec(args)
    result = walk_period(spec, t_max=args.t_max)
    if isinstance(result, Finite):
        payload = {
            "result": "finite",
            "T": result.T,
            "block_orders": list(result.block_orders or ()),
            "certificate": None,
        }
        status = EXIT_OK
    elif isinstance(result, CertifiedInfinite):
        payload = {
            "result": "certified_infinite",
            "T": None,
            "certificate": result.certificate.to_json(),
        }
        status = EXIT_OK
    else:
        payload = {"result": "unknown", "T": None, "t_max": result.bound}
        status = EXIT_UNDECIDED
    if args.format == "human":
        lines = [f"n={spec.n} coin={args.coin} shift={spec.shift.value}"]
        if payload["result"] == "finite":
            lines.append(f"period: {payload['T']} (block orders {payload['block_orders']})")
        elif payload["result"] == "certified_infinite":
            cert = payload["certificate"]
            lines.append(
                "period: infinite (certified); block k={k}: scaled trace form "
                "{form} has coefficients {viol} outside {d}Z[zeta_{lvl}]".format(
                    k=cert["k"],
                    form=cert["scaled_coeffs"],
                    viol=cert["violations"],
                    d=cert["denominator"],
                    lvl=cert["level"],
                )
            )
        else:
            lines.append(f"period: undecided up to t_max={payload['t_max']}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, json.dumps(payload, indent=2) + "\n")
    return status


def cmd_spectrum(args) -> int:
    spec = _make_spec(args)
    blocks = build_blocks(spec)
    data = {"n": spec.n, "coin": args.coin, "shift": spec.shift.value, "blocks": []}
    for k, block in enumerate(blocks):
        coeffs = char_poly_exact(block)
        _, c2, c1, c0 = (c.eval() for c in coeffs)
        companion = np.array(
            [[-c2, -c1, -c0], [1, 0, 0], [0, 1, 0]], dtype=np.complex128
        )
        eigs = np.linalg.eigvals(companion)
        entry = {
            "k": k,
            "char_poly": [c.to_json() for c in coeffs],
            "eigenvalues": [],
        }
        for ev in eigs:
            angle = float(np.angle(ev) / (2 * np.pi) % 1.0)
            if angle > 1.0 - 1e-9:
                angle = 0.0
            entry["eigenvalues"].append(
                {
                    "re": float(ev.real),
                    "im": float(ev.imag),
                    "angle": angle,
                    "suggested_rational": _suggest_rational(angle),
                }
            )
        data["blocks"].append(entry)
    if args.format == "human":
        lines = [f"n={spec.n} coin={args.coin} shift={spec.shift.value}"]
        for entry in data["blocks"]:
            angles = ", ".join(
                e["suggested_rational"] or f"{e['angle']:.6f}"
                for e in entry["eigenvalues"]
            )
            lines.append(f"k={entry['k']}: angles/2pi = {angles}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, json.dumps(data, indent=2) + "\n")
    return EXIT_OK


def cmd_evolve(args) -> int:
    spec = _make_spec(args)
    try:
        initial = _parse_initial(spec, args.initial)
    except (ValueError, DimensionMismatch) as exc:
        print(f"error: bad initial state: {exc}", file=sys.stderr)
        return EXIT_USAGE
    states = evolve(spec, initial, args.steps)
    rows = []
    for t, state in enumerate(states):
        probs = state.vertex_probabilities()
        total = float(probs.sum())
        for vertex in range(spec.n):
            p = probs[vertex]
            rows.append(
                (t, vertex, float(p[0]), float(p[1]), float(p[2]), total)
            )
    if args.format == "json":
        payload = [
            {
                "t": r[0],
                "vertex": r[1],
                "p_left": r[2],
                "p_stay": r[3],
                "p_right": r[4],
                "total": r[5],
            }
            for r in rows
        ]
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["t", "vertex", "p_left", "p_stay", "p_right", "total"])
        for r in rows:
            writer.writerow([r[0], r[1], f"{r[2]:.12f}", f"{r[3]:.12f}", f"{r[4]:.12f}", f"{r[5]:.12f}"])
        _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_check_coin(args) -> int:
    coin = _resolve_coin(args.coin)
    report = check_coin_necessary(coin, args.n, args.t)
    payload = report.to_json()
    if args.format == "human":
        lines = [f"n={args.n} T={args.t} coin={args.coin}"]
        for c in payload["checks"]:
            verdict = "in" if c["member"] else "NOT in"
            lines.append(
                f"{c['entry']}: {verdict} (1/{c['denominator']})Z[zeta_{c['level']}]"
            )
        lines.append("passes" if payload["passes"] else f"rules out period {args.t}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if report.passes else EXIT_CONDITION_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cyclowalk",
        description="Exact periodicity analysis of 3-state quantum walks on cycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_shift=True):
        p.add_argument(
            "--coin",
            required=True,
            help="grover | fourier | path to a coin JSON file",
        )
        p.add_argument("--n", type=int, required=True, help="cycle size (>= 2)")
        if need_shift:
            p.add_argument(
                "--shift",
                choices=["moving", "flip-flop"],
                default="moving",
                help="shift convention (default moving)",
            )
        p.add_argument("--format", choices=["json", "csv", "human"], default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("period", help="decide the walk period")
    add_common(p)
    p.add_argument("--t-max", type=int, default=4096, dest="t_max")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("spectrum", help="per-block eigenvalues and char polys")
    add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("evolve", help="simulate and emit the probability table")
    add_common(p)
    p.add_argument("--steps", type=int, default=0)
    p.add_argument(
        "--initial",
        default="0:0,1,0",
        help="'uniform' or VERTEX[:wl,ws,wr] (default vertex 0, stay chirality)",
    )
    p.set_defaults(func=cmd_evolve, format="csv")

    p = sub.add_parser("check-coin", help="necessary coin condition for period T")
    add_common(p, need_shift=False)
    p.add_argument("--t", type=int, required=True, help="candidate period T")
    p.set_defaults(func=cmd_check_coin)

    return parser


def main(argv=None) -> int:
    cap = os.environ.get("CYCLOWALK_LEVEL_CAP")
    if cap is not None:
        try:
            cyclo.set_level_cap(int(cap))
        except ValueError:
            print(f"error: bad CYCLOWALK_LEVEL_CAP {cap!r}", file=sys.stderr)
            return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (ValueError, DimensionMismatch, LevelCapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
