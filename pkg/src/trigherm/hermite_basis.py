"""Hermite basis functions lifted from a Lagrange basis.

Given any basis with the Lagrange property and a family of functions d_i with
a simple normalized zero at node i, b_{i,j} = d_i^j b_i^{j+1} / j! has
vanishing derivatives of order < j at every node and a unit j-th derivative
at node i only. The trigonometric specialization uses Berrut's basis with
d_i(theta) = 2 sin((theta - theta_i)/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .berrut import NODE_TOL, kernel_terms, lagrange_basis_matrix, nearest_node
from .nodes import NodeSet
from .trig_core import M_MAX, Parity

ArrayFn = Callable[[np.ndarray], np.ndarray]

DEGENERATE_TOL = 1e-13


class DegenerateZeroError(ValueError):
    pass


@dataclass(frozen=True)
class VanishingFunction:
    """d(theta) with d(theta_i) = 0 and d'(theta_i) = 1."""

    index: int
    func: ArrayFn
    deriv: ArrayFn | None = None

    def __call__(self, theta):
        return self.func(np.asarray(theta, dtype=float))


def d_trig(i: int, nodes: NodeSet, theta):
    return 2.0 * np.sin(0.5 * (np.asarray(theta, dtype=float) - nodes.angles[i]))


def d_trig_derivative(i: int, nodes: NodeSet, theta):
    return np.cos(0.5 * (np.asarray(theta, dtype=float) - nodes.angles[i]))


def trig_vanishing(nodes: NodeSet) -> ArrayFn:
    """Matrix-valued d: theta -> [d_i(theta)] with shape (len(theta), n)."""

    def d(theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return 2.0 * np.sin(0.5 * (theta[:, None] - nodes.angles[None, :]))

    return d


def _central_derivative(h: ArrayFn, x0: float, step: float = 1e-3) -> float:
    # sixth-order central stencil
    w = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
    pts = x0 + step * np.arange(-3, 4)
    return float(np.dot(w, np.asarray(h(pts), dtype=float)) / step)


def normalize_vanishing(
    h: ArrayFn, theta_i: float, index: int = 0, dh: ArrayFn | None = None
) -> VanishingFunction:
    """Rescale h so that its zero at theta_i has unit slope."""
    slope = float(dh(np.asarray(theta_i))) if dh is not None else _central_derivative(h, theta_i)
    if abs(slope) < DEGENERATE_TOL:
        raise DegenerateZeroError(f"h'({theta_i}) vanishes; cannot normalize")

    def func(theta):
        return np.asarray(h(theta), dtype=float) / slope

    deriv = None if dh is None else (lambda theta: np.asarray(dh(theta), dtype=float) / slope)
    return VanishingFunction(index, func, deriv)


def stack_vanishing(functions) -> ArrayFn:
    """Turn per-node vanishing functions into one matrix-valued callable."""
    functions = list(functions)

    def d(theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return np.stack([f(theta) for f in functions], axis=1)

    return d


def generic_hermite_basis(basis: ArrayFn, vanishing: ArrayFn, j: int, theta) -> np.ndarray:
    """b_{i,j}(theta) for all i; basis and vanishing return (len(theta), n)."""
    if j < 0:
        raise ValueError("basis order must be non-negative")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    b = basis(theta)
    return vanishing(theta) ** j * b ** (j + 1) / math.factorial(j)


def generic_hermite_basis_eval(basis: ArrayFn, vanishing: ArrayFn, i: int, j: int, theta) -> float:
    return float(generic_hermite_basis(basis, vanishing, j, theta)[0, i])


def u_weight(k, j: int):
    """2^j (-1)^{k(j+1)} / j!, vectorized over k."""
    k = np.asarray(k)
    sign = np.where((k * (j + 1)) % 2 == 0, 1.0, -1.0)
    out = 2.0**j * sign / math.factorial(j)
    return out if out.ndim else float(out)


def trig_hermite_basis(nodes: NodeSet, j: int, theta) -> np.ndarray:
    """Trigonometric b_{i,j}(theta) for all i in the weighted-kernel form.

    u_{i,j} cst(x_i) eta_{i,j} / S^{j+1}, with x_i = (theta - theta_i)/2,
    S = sum_k (-1)^k cst(x_k), eta = 1 (odd n) or cos^j(x_i) (even n).

    theta is not wrapped: the result is the smooth function on the real line,
    which satisfies b_{i,j}(theta + 2pi) = (-1)^j b_{i,j}(theta).
    """
    if not 0 <= j <= M_MAX:
        raise ValueError(f"basis order must lie in [0, {M_MAX}]")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    idx, dist = nearest_node(nodes, theta)
    hit = dist < NODE_TOL
    out = np.zeros((theta.size, nodes.n))
    free = ~hit
    if np.any(free):
        _, c, k, signs = kernel_terms(nodes, theta[free])
        S = (k * signs).sum(axis=1, keepdims=True)
        num = u_weight(np.arange(nodes.n), j) * k
        if nodes.parity is Parity.EVEN and j:
            num = num * c**j
        # repeated multiplication keeps the sign of S for every power
        Sp = S.copy()
        for _ in range(j):
            Sp = Sp * S
        out[free] = num / Sp
    if j == 0:
        out[np.flatnonzero(hit), idx[hit]] = 1.0
    return out


def trig_hermite_basis_eval(nodes: NodeSet, i: int, j: int, theta) -> float:
    if not 0 <= i < nodes.n:
        raise IndexError(f"basis index {i} out of range for n={nodes.n}")
    return float(trig_hermite_basis(nodes, j, theta)[0, i])


def berrut_basis(nodes: NodeSet) -> ArrayFn:
    return lambda theta: lagrange_basis_matrix(nodes, theta)
