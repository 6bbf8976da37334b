"""Differentiation matrices (D_j^s)_{ik} = b_{k,j}^{(s)}(theta_i) of the trigonometric Hermite basis.

Three constructions:

* ``diffmat_first``: closed form for s = j + 1.
* ``diffmat_power``: (D_j^{j+1})^{s-j}. Cheap, exact only in special cases
  (j = 0 with an odd number of equidistant nodes).
* ``diffmat_recursive``: exact recursion in s obtained by differentiating
  sin(x_k) b_{k,j} = u_{k,j} w_k A, where A = S^{-(j+1)} does not depend on k
  and w_k = cos^{j+1}(x_k) for even n (1 for odd n). Evaluating the identity at
  theta_k expresses the derivatives of A through the diagonal, which then
  feeds every off-diagonal entry of row i.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .nodes import NodeSet
from .trig_core import Parity, half_angle_series, series_mul, series_pow, sin_half_derivative

METHODS = ("power", "recursive")
VARIANTS = ("exact", "rowsum")


@dataclass(frozen=True)
class DiffMatrix:
    entries: np.ndarray
    j: int
    s: int
    method: str = "recursive"

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other):
        return self.entries @ other

    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)


def _pair_geometry(nodes: NodeSet):
    th = nodes.angles
    y = th[:, None] - th[None, :]  # y[i, k] = theta_i - theta_k
    idx = np.arange(nodes.n)
    parity_diff = (idx[None, :] - idx[:, None]) % 2  # (k - i) mod 2
    return y, parity_diff


def _offdiag_mask(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def diffmat_first(nodes: NodeSet, j: int, variant: str = "exact") -> DiffMatrix:
    """D_j^{j+1}.

    Off the diagonal: (-1)^{(j+1)(k-i)} (j+1)/2 cst((theta_i - theta_k)/2),
    times cos^j((theta_i - theta_k)/2) for even n. The diagonal is
    (j+1)^2 (D_0^1)_{ii}, with (D_0^1)_{ii} the negative off-diagonal row sum.

    ``variant="rowsum"`` drops the even-n cosine factor and fills every
    diagonal with the negative row sum; it matches the basis only for j = 0.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    n = nodes.n
    y, pdiff = _pair_geometry(nodes)
    off = _offdiag_mask(n)
    half = 0.5 * y[off]
    sign = np.where((pdiff[off] * (j + 1)) % 2 == 0, 1.0, -1.0)
    if nodes.parity is Parity.ODD:
        kern = 1.0 / np.sin(half)
    else:
        kern = np.cos(half) / np.sin(half)
        if variant == "exact" and j:
            kern = kern * np.cos(half) ** j
    D = np.zeros((n, n))
    D[off] = sign * 0.5 * (j + 1) * kern
    if j == 0 or variant == "rowsum":
        np.fill_diagonal(D, -D.sum(axis=1))
    else:
        np.fill_diagonal(D, (j + 1) ** 2 * _first_diagonal(nodes))
    return DiffMatrix(D, j, j + 1, "power")


def _first_diagonal(nodes: NodeSet) -> np.ndarray:
    D0 = diffmat_first(nodes, 0).entries
    return np.diag(D0).copy()


def diffmat_power(nodes: NodeSet, j: int, s: int, variant: str = "exact") -> DiffMatrix:
    n = nodes.n
    if s < j:
        return DiffMatrix(np.zeros((n, n)), j, s, "power")
    if s == j:
        return DiffMatrix(np.eye(n), j, s, "power")
    base = diffmat_first(nodes, j, variant).entries
    out = base
    for _ in range(s - j - 1):
        out = out @ base
    return DiffMatrix(out, j, s, "power")


def _multiplier_table(y: np.ndarray, order: int) -> np.ndarray:
    """Derivatives 0..order of y -> sin(y/2), stacked on axis 0."""
    return np.stack([np.asarray(sin_half_derivative(r, y, 0.0)) for r in range(order + 1)])


def _weight_table(y: np.ndarray, order: int, j: int, parity: Parity) -> np.ndarray:
    """Derivatives 0..order of y -> cos^{j+1}(y/2) (even n) or 1 (odd n)."""
    y = np.asarray(y, dtype=float)
    out = np.zeros((order + 1,) + y.shape)
    if parity is Parity.ODD:
        out[0] = 1.0
        return out
    coeffs = series_pow(half_angle_series(y, order, "cos"), j + 1)
    for r in range(order + 1):
        out[r] = coeffs[r] * math.factorial(r)
    return out


def _hermite_diagonal(j: int, q: int, lagrange_diag: dict[int, np.ndarray]) -> np.ndarray:
    """b_{i,j}^{(q)}(theta_i) from the Taylor series of d_i^j b_i^{j+1} / j!.

    lagrange_diag[p] holds b_i^{(p)}(theta_i) for p = 1..q-j.
    """
    order = q
    n = next(iter(lagrange_diag.values())).size if lagrange_diag else 1
    beta = np.zeros((order + 1, n))
    beta[0] = 1.0
    for p in range(1, q - j + 1):
        beta[p] = lagrange_diag[p] / math.factorial(p)
    d = 2.0 * half_angle_series(np.zeros(n), order, "sin")
    series = series_mul(series_pow(d, j), series_pow(beta, j + 1)) / math.factorial(j)
    return series[q] * math.factorial(q)


def _recursive_stack(nodes: NodeSet, j: int, s: int) -> dict[int, np.ndarray]:
    """All D_j^q for j <= q <= s via the exact recursion."""
    n = nodes.n
    parity = nodes.parity
    y, pdiff = _pair_geometry(nodes)
    off = _offdiag_mask(n)
    yo = y[off]
    order = s - j
    sig = _multiplier_table(yo, order)
    wgt = _weight_table(yo, order, j, parity)
    sig0 = _multiplier_table(np.zeros(n), order)
    wgt0 = _weight_table(np.zeros(n), order, j, parity)
    ratio = np.where((pdiff[off] * (j + 1)) % 2 == 0, 1.0, -1.0)  # u_{k,j} / u_{i,j}
    rows = np.nonzero(off)[0]

    lagrange_diag: dict[int, np.ndarray] = {}
    if j > 0 and order > 0:
        low = _recursive_stack(nodes, 0, order)
        lagrange_diag = {p: np.diag(low[p]).copy() for p in range(1, order + 1)}

    D = {j: np.eye(n)}
    # alpha[p][i] = u_{i,j} A^{(p)}(theta_i); zero for p <= j
    alpha = {p: np.zeros(n) for p in range(j + 1)}
    for q in range(j + 1, s + 1):
        acc = np.zeros(n)
        for r in range(1, q - j + 1):
            acc += math.comb(q, r) * sig0[r] * np.diag(D[q - r])
        for r in range(1, q - j):
            acc -= math.comb(q, r) * wgt0[r] * alpha[q - r]
        alpha[q] = acc

        rhs = np.zeros(yo.size)
        for r in range(0, q - j):
            rhs += math.comb(q, r) * wgt[r] * alpha[q - r][rows]
        rhs *= ratio
        for r in range(1, q - j):
            rhs -= math.comb(q, r) * sig[r] * D[q - r][off]
        Dq = np.zeros((n, n))
        Dq[off] = rhs / sig[0]
        if j == 0:
            np.fill_diagonal(Dq, -Dq.sum(axis=1))
        else:
            np.fill_diagonal(Dq, _hermite_diagonal(j, q, lagrange_diag))
        D[q] = Dq
    return D


def diffmat_recursive(nodes: NodeSet, j: int, s: int) -> DiffMatrix:
    n = nodes.n
    if s < j:
        return DiffMatrix(np.zeros((n, n)), j, s, "recursive")
    if s == j:
        return DiffMatrix(np.eye(n), j, s, "recursive")
    return DiffMatrix(_recursive_stack(nodes, j, s)[s], j, s, "recursive")


def diffmat_family(nodes: NodeSet, m: int, top: int, method: str = "recursive") -> dict:
    """{(j, s): D_j^s} for 0 <= j <= m and j < s <= top."""
    if method not in METHODS:
        raise ValueError(f"unknown differentiation method {method!r}")
    out = {}
    for j in range(m + 1):
        if top <= j:
            continue
        if method == "recursive":
            stack = _recursive_stack(nodes, j, top)
            for s in range(j + 1, top + 1):
                out[(j, s)] = stack[s]
        else:
            base = diffmat_first(nodes, j).entries
            cur = base
            out[(j, j + 1)] = cur
            for s in range(j + 2, top + 1):
                cur = cur @ base
                out[(j, s)] = cur
    return out


def diffmat(nodes: NodeSet, j: int, s: int, method: str = "recursive") -> DiffMatrix:
    if method == "power":
        return diffmat_power(nodes, j, s)
    if method == "recursive":
        return diffmat_recursive(nodes, j, s)
    raise ValueError(f"unknown differentiation method {method!r}")
