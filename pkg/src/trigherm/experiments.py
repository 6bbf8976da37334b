"""Convergence studies, conformal-node comparisons and closed-curve reconstruction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Callable, Sequence

import numpy as np
import sympy as sp

from .interpolant import HermiteData, HermiteInterpolant, build_hermite, evaluate
from .nodes import NodeSet, conformal_shift, ConformalParams, equidistant_nodes, two_front_shift
from .trig_core import TWO_PI

DEFAULT_GRID = 100_000
MAX_TEST_DERIVATIVE = 4

_THETA = sp.Symbol("theta", real=True)
_EXPRESSIONS = {
    "f1": sp.exp(2 * sp.sin(_THETA) + sp.cos(_THETA)),
    "f2": sp.cos(3 * _THETA) + sp.log(sp.cos(_THETA) + sp.Rational(3, 2)),
    "f3": sp.tanh(50 * sp.cos(_THETA + sp.pi / 3)),
    "const": sp.Integer(1),
}


@dataclass(frozen=True)
class TestFunction:
    """A 2pi-periodic function with analytic derivatives up to order 4."""

    __test__ = False  # keep pytest from collecting this class

    id: str
    expr: sp.Expr = field(repr=False)

    @cached_property
    def _derivs(self) -> list[Callable]:
        out, e = [], self.expr
        for _ in range(MAX_TEST_DERIVATIVE + 1):
            out.append(sp.lambdify(_THETA, e, "numpy"))
            e = sp.diff(e, _THETA)
        return out

    def derivative(self, k: int, theta) -> np.ndarray:
        if not 0 <= k <= MAX_TEST_DERIVATIVE:
            raise ValueError(f"derivatives are available up to order {MAX_TEST_DERIVATIVE}")
        theta = np.asarray(theta, dtype=float)
        return np.broadcast_to(self._derivs[k](theta), theta.shape).astype(float)

    def __call__(self, theta) -> np.ndarray:
        return self.derivative(0, theta)

    def hermite_data(self, nodes: NodeSet, m: int) -> HermiteData:
        return HermiteData.from_function(nodes, self.derivative, m)


def test_function(name: str) -> TestFunction:
    try:
        return TestFunction(name, _EXPRESSIONS[name])
    except KeyError:
        raise ValueError(f"unknown test function {name!r}; choose from {sorted(_EXPRESSIONS)}") from None


test_function.__test__ = False  # the name would otherwise be collected by pytest


def error_grid(size: int = DEFAULT_GRID) -> np.ndarray:
    """Equispaced angles shifted by half a step off 0."""
    return (np.arange(size) + 0.5) * (TWO_PI / size)


def max_error(f: Callable, interp: HermiteInterpolant, grid: int | np.ndarray = DEFAULT_GRID) -> float:
    theta = error_grid(grid) if np.isscalar(grid) else np.asarray(grid, dtype=float)
    if theta.size < 1000 and np.isscalar(grid):
        raise ValueError("error grid needs at least 1000 points")
    return float(np.max(np.abs(f(theta) - evaluate(interp, theta))))


def dyadic_rates(Ns: Sequence[int], errors: Sequence[float]) -> np.ndarray:
    """-log2(err_{2n}/err_n) per row; nan where undefined."""
    rates = np.full(len(Ns), np.nan)
    for i in range(len(Ns) - 1):
        e0, e1 = errors[i], errors[i + 1]
        if Ns[i + 1] == 2 * Ns[i] and e0 > 0 and e1 > 0:
            rates[i] = -math.log2(e1 / e0)
    return rates


@dataclass(frozen=True)
class ConvergenceReport:
    function_id: str
    m: int
    node_strategy: str
    Ns: tuple[int, ...]
    errors: tuple[float, ...]

    @property
    def rates(self) -> np.ndarray:
        return dyadic_rates(self.Ns, self.errors)

    def rate_at(self, n: int) -> float:
        return float(self.rates[self.Ns.index(n)])

    def rows(self):
        for n, e, r in zip(self.Ns, self.errors, self.rates):
            yield n, e, r


NodeFactory = Callable[[int], NodeSet]


def node_factory(kind: str = "equidistant", alpha: float = 0.0, fronts: Sequence[float] = ()) -> NodeFactory:
    if kind == "equidistant":
        return equidistant_nodes
    if kind != "conformal":
        raise ValueError(f"unknown node strategy {kind!r}")
    fronts = tuple(fronts)
    if len(fronts) == 1:
        return lambda n: conformal_shift(equidistant_nodes(n), ConformalParams(alpha, fronts[0]))
    if len(fronts) == 2:
        return lambda n: two_front_shift(equidistant_nodes(n), alpha, fronts[0], fronts[1])
    raise ValueError("conformal nodes need one or two fronts")


def convergence_study(
    f: TestFunction,
    m: int,
    Ns: Sequence[int],
    nodes: NodeFactory | str = "equidistant",
    method: str = "recursive",
    grid: int = DEFAULT_GRID,
    label: str | None = None,
) -> ConvergenceReport:
    factory = node_factory(nodes) if isinstance(nodes, str) else nodes
    theta = error_grid(grid)
    exact = f(theta)
    errors = []
    for n in Ns:
        ns = factory(n)
        interp = build_hermite(ns, f.hermite_data(ns, m), method=method)
        errors.append(float(np.max(np.abs(exact - evaluate(interp, theta)))))
    strategy = label or (nodes if isinstance(nodes, str) else getattr(nodes, "__name__", "custom"))
    return ConvergenceReport(f.id, m, strategy, tuple(int(n) for n in Ns), tuple(errors))


def conformal_comparison(
    f: TestFunction,
    m: int,
    alpha: float,
    fronts: Sequence[float],
    Ns: Sequence[int],
    method: str = "recursive",
    grid: int = DEFAULT_GRID,
) -> tuple[ConvergenceReport, ConvergenceReport]:
    for b in fronts:
        if not 0.0 <= b < TWO_PI:
            raise ValueError("fronts must lie in [0, 2pi)")
    equi = convergence_study(f, m, Ns, "equidistant", method, grid, label="equidistant")
    shifted = convergence_study(
        f, m, Ns, node_factory("conformal", alpha, fronts), method, grid, label=f"conformal(alpha={alpha})"
    )
    return equi, shifted


# -- closed curves --


@dataclass(frozen=True)
class CurvePoints:
    """Points of a closed curve in anticlockwise order; closure is implicit."""

    xy: np.ndarray

    def __post_init__(self):
        xy = np.array(self.xy, dtype=float)
        if xy.ndim != 2 or xy.shape[1] != 2:
            raise ValueError("curve points must be an (N, 2) array")
        if xy.shape[0] < 4:
            raise ValueError("a closed curve needs at least 4 points")
        if not np.all(np.isfinite(xy)):
            raise ValueError("curve points must be finite")
        xy.setflags(write=False)
        object.__setattr__(self, "xy", xy)

    def __len__(self) -> int:
        return self.xy.shape[0]

    @property
    def signed_area(self) -> float:
        x, y = self.xy.T
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def subsample(self, stride: int) -> "CurvePoints":
        if stride < 1:
            raise ValueError("stride must be >= 1")
        return CurvePoints(self.xy[::stride])

    @classmethod
    def from_csv(cls, path) -> "CurvePoints":
        with open(path) as fh:
            first = fh.readline()
        skip = 0 if _is_numeric_row(first) else 1
        return cls(np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)[:, :2])


def _is_numeric_row(line: str) -> bool:
    try:
        [float(v) for v in line.strip().split(",") if v.strip()]
    except ValueError:
        return False
    return bool(line.strip())


def sample_sketch() -> CurvePoints:
    """The bundled 362-point closed sketch outline."""
    path = resources.files("trigherm") / "data" / "sketch_points.csv"
    with resources.as_file(path) as p:
        return CurvePoints.from_csv(p)


def difference_quotients(values: np.ndarray, h: float, kind: str = "forward") -> np.ndarray:
    """Cyclic difference quotients of periodic samples with spacing h."""
    if kind == "forward":
        return (np.roll(values, -1, axis=0) - values) / h
    if kind == "central":
        return (np.roll(values, -1, axis=0) - np.roll(values, 1, axis=0)) / (2 * h)
    raise ValueError(f"unknown difference stencil {kind!r}")


@dataclass(frozen=True)
class CurveReconstruction:
    x: HermiteInterpolant
    y: HermiteInterpolant
    points: CurvePoints

    @property
    def nodes(self) -> NodeSet:
        return self.x.nodes

    def __call__(self, theta) -> np.ndarray:
        return np.stack([evaluate(self.x, theta), evaluate(self.y, theta)], axis=-1)


def reconstruct_curve(
    points: CurvePoints,
    stride: int = 1,
    m: int = 1,
    difference: str = "forward",
    method: str = "recursive",
) -> CurveReconstruction:
    """Interpolate each coordinate as a periodic function of an equidistant parameter."""
    if m not in (0, 1):
        raise ValueError("curve reconstruction supports m in {0, 1}")
    if points.signed_area <= 0:
        raise ValueError("curve points must be ordered anticlockwise")
    kept = points.subsample(stride)
    n = len(kept)
    nodes = equidistant_nodes(n)
    cols = [kept.xy]
    if m == 1:
        cols.append(difference_quotients(kept.xy, TWO_PI / n, difference))
    data = np.stack(cols, axis=2)  # (n, 2, m+1)
    x = build_hermite(nodes, data[:, 0, :], method=method)
    y = build_hermite(nodes, data[:, 1, :], method=method)
    return CurveReconstruction(x, y, kept)
