"""Berrut's barycentric rational trigonometric interpolant and its Lagrange basis."""
from __future__ import annotations

import numpy as np

from .nodes import NodeSet
from .trig_core import Parity, circular_distance, normalize_angle

NODE_TOL = 1e-12


def nearest_node(nodes: NodeSet, theta):
    """Index of the circularly nearest node and the distance to it."""
    theta = normalize_angle(np.atleast_1d(np.asarray(theta, dtype=float)))
    a = nodes.angles
    right = np.searchsorted(a, theta) % a.size
    left = (right - 1) % a.size
    dl = circular_distance(theta, a[left])
    dr = circular_distance(theta, a[right])
    idx = np.where(dl <= dr, left, right)
    return idx, np.minimum(dl, dr)


def kernel_terms(nodes: NodeSet, theta: np.ndarray):
    """Half-angle arguments, sin/cos of them and signed cst kernels.

    theta must avoid the nodes; the result arrays have shape (len(theta), n).
    """
    x = 0.5 * (theta[:, None] - nodes.angles[None, :])
    s, c = np.sin(x), np.cos(x)
    k = 1.0 / s if nodes.parity is Parity.ODD else c / s
    signs = np.where(np.arange(nodes.n) % 2 == 0, 1.0, -1.0)
    return s, c, k, signs


def lagrange_basis_matrix(nodes: NodeSet, theta) -> np.ndarray:
    """All basis functions b_i at all theta; shape (len(theta), n)."""
    theta = normalize_angle(np.atleast_1d(np.asarray(theta, dtype=float)))
    idx, dist = nearest_node(nodes, theta)
    hit = dist < NODE_TOL
    out = np.zeros((theta.size, nodes.n))
    free = ~hit
    if np.any(free):
        _, _, k, signs = kernel_terms(nodes, theta[free])
        num = k * signs
        out[free] = num / num.sum(axis=1, keepdims=True)
    out[np.flatnonzero(hit), idx[hit]] = 1.0
    return out


def lagrange_basis_eval(nodes: NodeSet, i: int, theta) -> float:
    if not 0 <= i < nodes.n:
        raise IndexError(f"basis index {i} out of range for n={nodes.n}")
    return float(lagrange_basis_matrix(nodes, theta)[0, i])


def lagrange_interp(nodes: NodeSet, values, theta) -> np.ndarray:
    """T_n at an array of angles; node hits return the stored values."""
    values = np.asarray(values, dtype=float)
    if values.shape != (nodes.n,):
        raise ValueError(f"expected {nodes.n} values, got shape {values.shape}")
    theta = normalize_angle(np.atleast_1d(np.asarray(theta, dtype=float)))
    idx, dist = nearest_node(nodes, theta)
    hit = dist < NODE_TOL
    out = np.empty(theta.size)
    out[hit] = values[idx[hit]]
    free = ~hit
    if np.any(free):
        _, _, k, signs = kernel_terms(nodes, theta[free])
        w = k * signs
        out[free] = (w @ values) / w.sum(axis=1)
    return out


def lagrange_interp_eval(nodes: NodeSet, values, theta: float) -> float:
    return float(lagrange_interp(nodes, values, theta)[0])


def berrut_denominator(nodes: NodeSet, theta) -> np.ndarray:
    """sum_k (-1)^k cst((theta - theta_k)/2) away from the nodes."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    _, _, k, signs = kernel_terms(nodes, theta)
    return (k * signs).sum(axis=1)

