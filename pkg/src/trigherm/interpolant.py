"""Assembly and evaluation of the trigonometric Hermite interpolant t_m.

t_m(theta) = sum_{i,j} b_{i,j}(theta) g_{i,j}, where g_{i,0} = f_{i,0} and
g_{i,j} = f_{i,j} - sum_{s<j} sum_k (D_s^j)_{ik} g_{k,s}, the j-th derivative
of the previous iterate at the nodes subtracted from the data.

Since d_i(theta + 2pi) = -d_i(theta), the basis of odd order j changes sign
over one turn and t_m cannot be smooth all the way round. Angles are read on
a window [seam - 2pi, seam) whose cut sits in the middle of the widest node
gap, so every node is an interior point. In [0, 2pi) coordinates this
multiplies b_{i,j}(theta) by (-1)^j whenever theta and theta_i lie on
opposite sides of the seam; the differentiation matrices get the same factor.
The leftover jump at the seam is of the size of the interpolation error.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .berrut import NODE_TOL, kernel_terms, nearest_node
from .diffmat import METHODS, diffmat_family
from .hermite_basis import ArrayFn, generic_hermite_basis, u_weight
from .nodes import NodeSet, seam_angle, seam_signs
from .trig_core import M_MAX, Parity, normalize_angle

EVAL_STRATEGIES = ("barycentric", "extended")
BREAKDOWN_TOL = 1e-300
_CHUNK_ELEMS = 1 << 21


class NumericalBreakdownError(ArithmeticError):
    pass


class LagrangePropertyError(ValueError):
    pass


@dataclass(frozen=True)
class HermiteData:
    """values[i, j] = j-th derivative sample at node i."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2 or v.shape[1] < 1:
            raise ValueError("Hermite data must be an n x (m+1) table")
        if not np.all(np.isfinite(v)):
            raise ValueError("Hermite data contains non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1] - 1

    @classmethod
    def from_function(cls, nodes: NodeSet, derivatives, m: int) -> "HermiteData":
        """Sample derivatives(k, theta) for k = 0..m at the nodes."""
        cols = [np.broadcast_to(derivatives(k, nodes.angles), (nodes.n,)) for k in range(m + 1)]
        return cls(np.stack(cols, axis=1))


def correction_coefficients(values: np.ndarray, matrices: dict) -> np.ndarray:
    n, cols = values.shape
    g = np.empty_like(values)
    g[:, 0] = values[:, 0]
    for j in range(1, cols):
        prev = np.zeros(n)
        for s in range(j):
            prev += matrices[(s, j)] @ g[:, s]
        g[:, j] = values[:, j] - prev
    return g


@dataclass(frozen=True)
class HermiteInterpolant:
    nodes: NodeSet
    data: HermiteData
    g: np.ndarray
    g_const: np.ndarray
    method: str = "recursive"
    eval_strategy: str = "barycentric"
    u: np.ndarray = field(repr=False, default=None)
    seam: float = 0.0

    @property
    def m(self) -> int:
        return self.data.m

    def __call__(self, theta):
        return evaluate(self, theta)

    def with_strategy(self, eval_strategy: str) -> "HermiteInterpolant":
        if eval_strategy not in EVAL_STRATEGIES:
            raise ValueError(f"unknown evaluation strategy {eval_strategy!r}")
        return HermiteInterpolant(
            self.nodes, self.data, self.g, self.g_const, self.method, eval_strategy, self.u, self.seam
        )


def seamed_family(nodes: NodeSet, m: int, top: int, method: str, seam: float) -> dict:
    """diffmat_family with the seam sign (-1)^j applied to node pairs split by the seam."""
    flip = seam_signs(nodes, seam, nodes.angles)
    return {(j, s): M * flip if j % 2 else M for (j, s), M in diffmat_family(nodes, m, top, method).items()}


def build_hermite(
    nodes: NodeSet,
    data: HermiteData | np.ndarray,
    method: str = "recursive",
    eval_strategy: str = "barycentric",
    seam: float | None = None,
) -> HermiteInterpolant:
    """Assemble t_m; ``seam`` defaults to the middle of the widest node gap.

    A seam placed on a node keeps t_m continuous there, but the odd-order
    Hermite conditions at that node then hold from the right only.
    ``seam=0.0`` reads every angle in [0, 2pi) as is.
    """
    if not isinstance(data, HermiteData):
        data = HermiteData(data)
    if data.n != nodes.n:
        raise ValueError(f"data has {data.n} rows but there are {nodes.n} nodes")
    if data.m > M_MAX:
        raise ValueError(f"derivative order {data.m} exceeds the supported maximum {M_MAX}")
    if method not in METHODS:
        raise ValueError(f"unknown differentiation method {method!r}")
    if eval_strategy not in EVAL_STRATEGIES:
        raise ValueError(f"unknown evaluation strategy {eval_strategy!r}")
    seam = seam_angle(nodes) if seam is None else float(normalize_angle(seam))
    m = data.m
    mats = seamed_family(nodes, m - 1, m, method, seam) if m else {}
    g = correction_coefficients(data.values, mats)
    ones = np.zeros_like(data.values)
    ones[:, 0] = 1.0
    g_const = correction_coefficients(ones, mats)
    u = np.stack([u_weight(np.arange(nodes.n), j) for j in range(m + 1)], axis=1)
    for arr in (g, g_const, u):
        arr.setflags(write=False)
    return HermiteInterpolant(nodes, data, g, g_const, method, eval_strategy, u, seam)


def _weighted_kernels(interp: HermiteInterpolant, theta: np.ndarray):
    """Yield (j, E_j, S) with E_j[p, i] = u_{i,j} cst(x_i) eta_{i,j} for a chunk."""
    _, c, k, signs = kernel_terms(interp.nodes, theta)
    S = (k * signs).sum(axis=1)
    even = interp.nodes.parity is Parity.EVEN
    flip = seam_signs(interp.nodes, interp.seam, theta)
    base = k
    for j in range(interp.m + 1):
        yield j, (base * flip if j % 2 else base) * interp.u[:, j], S
        if even:
            base = base * c


def _eval_chunk(interp: HermiteInterpolant, theta: np.ndarray, strategy: str) -> np.ndarray:
    if strategy == "extended":
        out = np.zeros(theta.size)
        for j, E, S in _weighted_kernels(interp, theta):
            out += (E @ interp.g[:, j]) / S ** (j + 1)
        return out
    # numerator and denominator both scaled by S^{-m}; powers of 1/S stay bounded near nodes
    num = np.zeros(theta.size)
    den = np.zeros(theta.size)
    coef = np.stack([interp.g, interp.g_const], axis=2)
    for j, E, S in _weighted_kernels(interp, theta):
        w = (1.0 / S) ** j
        both = E @ coef[:, j, :]
        num += both[:, 0] * w
        den += both[:, 1] * w
    bad = ~(np.abs(den) > BREAKDOWN_TOL)
    out = np.empty(theta.size)
    out[~bad] = num[~bad] / den[~bad]
    if np.any(bad):
        out[bad] = _eval_chunk(interp, theta[bad], "extended")
    return out


def evaluate(interp: HermiteInterpolant, theta, strategy: str | None = None) -> np.ndarray:
    """t_m at an array of angles (scalars give a 1-element array)."""
    strategy = strategy or interp.eval_strategy
    if strategy not in EVAL_STRATEGIES:
        raise ValueError(f"unknown evaluation strategy {strategy!r}")
    theta = normalize_angle(np.atleast_1d(np.asarray(theta, dtype=float)))
    idx, dist = nearest_node(interp.nodes, theta)
    hit = dist < NODE_TOL
    out = np.empty(theta.size)
    out[hit] = interp.data.values[idx[hit], 0]
    free = np.flatnonzero(~hit)
    step = max(1, _CHUNK_ELEMS // interp.nodes.n)
    for start in range(0, free.size, step):
        sel = free[start : start + step]
        out[sel] = _eval_chunk(interp, theta[sel], strategy)
    if not np.all(np.isfinite(out)):
        raise NumericalBreakdownError("interpolant evaluation produced non-finite values")
    return out


def derivatives_at_nodes(interp: HermiteInterpolant, k: int) -> np.ndarray:
    """k-th derivative of t_m at every node via the differentiation matrices."""
    if k < 0 or k > M_MAX + 4:
        raise ValueError(f"derivative order {k} is not supported")
    if k == 0:
        return np.array(interp.data.values[:, 0])
    top_j = min(k, interp.m)
    mats = seamed_family(interp.nodes, min(top_j, k - 1), k, interp.method, interp.seam)
    out = np.zeros(interp.nodes.n)
    for s in range(top_j + 1):
        out += interp.g[:, s] if s == k else mats[(s, k)] @ interp.g[:, s]
    return out


# -- generic construction for an arbitrary Lagrange basis --


def fornberg_weights(offsets: np.ndarray, order: int) -> np.ndarray:
    """Finite-difference weights at 0 for the given stencil offsets."""
    x = np.asarray(offsets, dtype=float)
    npts = x.size
    c = np.zeros((npts, order + 1))
    c1, c4 = 1.0, x[0]
    c[0, 0] = 1.0
    for i in range(1, npts):
        mn = min(i, order)
        c2, c5, c4 = 1.0, c4, x[i]
        for jj in range(i):
            c3 = x[i] - x[jj]
            c2 *= c3
            if jj == i - 1:
                for kk in range(mn, 0, -1):
                    c[i, kk] = c1 * (kk * c[i - 1, kk - 1] - c5 * c[i - 1, kk]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for kk in range(mn, 0, -1):
                c[jj, kk] = (c4 * c[jj, kk] - kk * c[jj, kk - 1]) / c3
            c[jj, 0] = c4 * c[jj, 0] / c3
        c1 = c2
    return c[:, order]


@dataclass(frozen=True)
class GenericHermite:
    """r_m built by iterative correction with finite-difference node derivatives."""

    node_angles: np.ndarray
    basis: ArrayFn
    vanishing: ArrayFn
    g: np.ndarray

    @property
    def m(self) -> int:
        return self.g.shape[1] - 1

    def __call__(self, theta) -> np.ndarray:
        return self.partial(theta, self.m)

    def partial(self, theta, upto: int) -> np.ndarray:
        """r_upto(theta)."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        out = np.zeros(theta.size)
        for j in range(upto + 1):
            out += generic_hermite_basis(self.basis, self.vanishing, j, theta) @ self.g[:, j]
        return out


def generic_build(
    basis: ArrayFn,
    vanishing: ArrayFn,
    data: HermiteData | np.ndarray,
    node_angles,
    fd_step: float | None = None,
    fd_radius: int = 5,
    tol: float = 1e-10,
) -> GenericHermite:
    """Iterative Hermite construction over any Lagrange basis.

    r_{j-1}^{(j)}(x_i) is estimated with a central stencil of 2*fd_radius + 1
    points (default step: 5% of the smallest node gap), so the result carries
    finite-difference error of roughly 1e-9 relative for smooth data.
    """
    if not isinstance(data, HermiteData):
        data = HermiteData(data)
    x = np.asarray(node_angles, dtype=float)
    if x.size != data.n:
        raise ValueError("data rows must match the number of nodes")
    at_nodes = basis(x)
    if np.max(np.abs(at_nodes - np.eye(x.size))) > tol:
        raise LagrangePropertyError("basis does not satisfy b_i(x_j) = delta_ij")
    if fd_step is None:
        gaps = np.diff(np.sort(x))
        fd_step = 0.05 * float(gaps.min()) if gaps.size else 1e-2
    offsets = fd_step * np.arange(-fd_radius, fd_radius + 1)
    g = np.zeros((data.n, data.m + 1))
    g[:, 0] = data.values[:, 0]
    partial = GenericHermite(x, basis, vanishing, g)
    for j in range(1, data.m + 1):
        weights = fornberg_weights(offsets, j)
        pts = (x[:, None] + offsets[None, :]).ravel()
        vals = partial.partial(pts, j - 1).reshape(x.size, offsets.size)
        g[:, j] = data.values[:, j] - vals @ weights
    g.setflags(write=False)
    return GenericHermite(x, basis, vanishing, g)

