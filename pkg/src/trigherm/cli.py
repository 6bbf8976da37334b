"""Command-line entry point: ``trigherm <interpolate|convergence|diffmat|reconstruct>``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .diffmat import METHODS, diffmat
from .experiments import (
    DEFAULT_GRID,
    CurvePoints,
    convergence_study,
    error_grid,
    node_factory,
    reconstruct_curve,
    test_function,
)
from .interpolant import HermiteData, NumericalBreakdownError, build_hermite, evaluate
from .nodes import NodeSet, equidistant_nodes
from .trig_core import SingularArgumentError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BREAKDOWN = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits with 2; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """17 significant digits in scientific notation; nan for undefined cells."""
    return "nan" if not np.isfinite(x) else f"{x + 0.0:.16e}"


def write_csv(out: TextIO, header: Sequence[str], rows) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(v if isinstance(v, str) else fmt(float(v)) for v in row) + "\n")


def _open_out(path: str | None):
    if path in (None, "-"):
        return _NoClose(sys.stdout)
    return open(path, "w", newline="\n")


@dataclass
class _NoClose:
    stream: TextIO

    def __enter__(self):
        return self.stream

    def __exit__(self, *exc):
        self.stream.flush()


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_column_file(path: str) -> np.ndarray:
    """Numeric CSV with an optional header row."""
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path} is empty")
    try:
        [float(v) for v in lines[0].split(",")]
    except ValueError:
        lines = lines[1:]
    return np.array([[float(v) for v in ln.split(",")] for ln in lines], dtype=float)


def _node_args(p: argparse.ArgumentParser, with_file: bool) -> None:
    choices = ["equidistant", "conformal"] + (["file"] if with_file else [])
    p.add_argument("--nodes", choices=choices, default="equidistant")
    p.add_argument("--alpha", type=float, default=0.85, help="conformal density parameter in [0, 1)")
    p.add_argument("--front", type=_float_list, default=None, help="front angle(s) B1[,B2] in radians")
    p.add_argument("--method", choices=METHODS, default="recursive")


def _factory(args):
    if args.nodes == "conformal":
        if not args.front:
            raise ValueError("--nodes conformal needs --front")
        return node_factory("conformal", args.alpha, args.front)
    return equidistant_nodes


def cmd_interpolate(args) -> int:
    if args.nodes == "file":
        if not args.node_file:
            raise ValueError("--nodes file needs --node-file")
        nodes = NodeSet.from_unsorted(_read_column_file(args.node_file)[:, 0])
    else:
        if args.n is None:
            raise ValueError("--n is required unless --nodes file")
        nodes = _factory(args)(args.n)
    if args.function == "file":
        if not args.data_file:
            raise ValueError("--function file needs --data-file")
        table = _read_column_file(args.data_file)
        if table.shape[1] < args.m + 1:
            raise ValueError(f"data file has {table.shape[1]} columns, need {args.m + 1}")
        data = HermiteData(table[:, : args.m + 1])
        f = None
    else:
        f = test_function(args.function)
        data = f.hermite_data(nodes, args.m)
    interp = build_hermite(nodes, data, method=args.method)
    theta = error_grid(args.grid)
    t = evaluate(interp, theta)
    exact = f(theta) if f is not None else np.full_like(theta, np.nan)
    with _open_out(args.out) as out:
        write_csv(out, ["theta", "t_m", "f", "abs_error"], zip(theta, t, exact, np.abs(exact - t)))
    return EXIT_OK


def cmd_convergence(args) -> int:
    f = test_function(args.function)
    if any(n < 2 for n in args.Ns):
        raise ValueError("every N must be at least 2")
    report = convergence_study(f, args.m, args.Ns, _factory(args), args.method, args.grid, label=args.nodes)
    with _open_out(args.out) as out:
        write_csv(out, ["N", "err_N", "rate"], ((str(n), e, r) for n, e, r in report.rows()))
    return EXIT_OK


def cmd_diffmat(args) -> int:
    if args.j < 0 or args.s < 0:
        raise ValueError("--j and --s must be non-negative")
    D = diffmat(equidistant_nodes(args.n), args.j, args.s, args.method).entries
    with _open_out(args.out) as out:
        write_csv(out, [f"k{k}" for k in range(args.n)], D)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    pts = CurvePoints.from_csv(args.points)
    rec = reconstruct_curve(pts, args.stride, args.m, args.difference, args.method)
    theta = error_grid(args.grid)
    xy = rec(theta)
    with _open_out(args.out) as out:
        write_csv(out, ["theta", "x", "y"], zip(theta, xy[:, 0], xy[:, 1]))
    if args.svg:
        write_svg(args.svg, xy, rec.points.xy)
    return EXIT_OK


def write_svg(path: str, curve: np.ndarray, points: np.ndarray, size: int = 600) -> None:
    """Polyline of the reconstructed curve with the retained points as dots."""
    lo = np.minimum(curve.min(axis=0), points.min(axis=0))
    hi = np.maximum(curve.max(axis=0), points.max(axis=0))
    scale = 0.9 * size / float(np.max(hi - lo) or 1.0)

    def tx(p):
        return 0.05 * size + (p[:, 0] - lo[0]) * scale, size - 0.05 * size - (p[:, 1] - lo[1]) * scale

    cx, cy = tx(curve)
    px, py = tx(points)
    poly = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(cx, cy))
    dots = "\n".join(f'<circle cx="{a:.3f}" cy="{b:.3f}" r="2" fill="red"/>' for a, b in zip(px, py))
    with open(path, "w", newline="\n") as fh:
        fh.write(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">\n'
            f'<polygon points="{poly}" fill="none" stroke="black" stroke-width="1"/>\n{dots}\n</svg>\n'
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trigherm", description="Barycentric rational trigonometric Hermite interpolation")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("interpolate", help="evaluate t_m on a grid")
    _node_args(p, with_file=True)
    p.add_argument("--n", type=int)
    p.add_argument("--node-file", help="CSV whose first column holds node angles")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--function", default="f1", help="f1, f2, f3 or file")
    p.add_argument("--data-file", help="CSV with one row per node and columns f, f', ..., f^(m)")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--out")
    p.set_defaults(run=cmd_interpolate)

    p = sub.add_parser("convergence", help="max errors and dyadic rates over a list of N")
    _node_args(p, with_file=False)
    p.add_argument("--function", default="f1")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--Ns", type=_int_list, default=[5, 10, 20, 40, 80, 160, 320])
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--out")
    p.set_defaults(run=cmd_convergence)

    p = sub.add_parser("diffmat", help="dump D_j^s at equidistant nodes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="recursive")
    p.add_argument("--out")
    p.set_defaults(run=cmd_diffmat)

    p = sub.add_parser("reconstruct", help="closed-curve reconstruction from ordered points")
    p.add_argument("--points", required=True, help="CSV with x,y per line")
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--m", type=int, choices=(0, 1), default=1)
    p.add_argument("--difference", choices=("forward", "central"), default="forward")
    p.add_argument("--method", choices=METHODS, default="recursive")
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--out")
    p.add_argument("--svg", help="optional SVG polyline output")
    p.set_defaults(run=cmd_reconstruct)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (NumericalBreakdownError, SingularArgumentError, FloatingPointError) as exc:
        print(f"trigherm: numerical breakdown: {exc}", file=sys.stderr)
        return EXIT_BREAKDOWN
    except (ValueError, OSError) as exc:
        print(f"trigherm: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
