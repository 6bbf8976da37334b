"""Parity-aware half-angle kernels and their derivative tables.

Everything here is a pure function of its arguments. Array arguments are
broadcast with numpy; scalars come back as numpy floats.
"""
from __future__ import annotations

import enum
import math
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * np.pi
SINGULAR_TOL = 1e-13
M_MAX = 8


class SingularArgumentError(ArithmeticError):
    """A kernel was evaluated where sin of its argument vanishes."""


class Parity(enum.Enum):
    ODD = "odd"
    EVEN = "even"

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.ODD if n % 2 == 1 else cls.EVEN


def normalize_angle(theta):
    """Map angles to their representative in [0, 2pi)."""
    t = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    # mod can round up to exactly 2pi for tiny negative inputs
    t = np.where(t >= TWO_PI, t - TWO_PI, t)
    return t if t.ndim else float(t)


def circular_distance(a, b):
    d = np.abs(np.mod(np.asarray(a, dtype=float) - b + np.pi, TWO_PI) - np.pi)
    return d


def cst(theta, parity: Parity, tol: float = SINGULAR_TOL):
    """csc(theta) for odd node counts, cot(theta) for even ones."""
    theta = np.asarray(theta, dtype=float)
    s = np.sin(theta)
    if np.any(np.abs(s) < tol):
        raise SingularArgumentError("cst evaluated at a multiple of pi")
    out = 1.0 / s if parity is Parity.ODD else np.cos(theta) / s
    return out if out.ndim else float(out)


def sin_half_derivative(q: int, theta, theta_k):
    """q-th derivative of theta -> sin((theta - theta_k)/2)."""
    if q < 0:
        raise ValueError("derivative order must be non-negative")
    x = 0.5 * (np.asarray(theta, dtype=float) - theta_k)
    if q % 2 == 0:
        out = (-1) ** (q // 2) / 2.0**q * np.sin(x)
    else:
        out = (-1) ** ((q - 1) // 2) / 2.0**q * np.cos(x)
    return out if np.ndim(out) else float(out)


@lru_cache(maxsize=None)
def eulerian(p: int, m: int) -> int:
    """Eulerian number <p, m> as an exact integer."""
    return sum((-1) ** j * math.comb(p + 1, j) * (m + 1 - j) ** p for j in range(m + 1))


@lru_cache(maxsize=None)
def tan_coefficient_a(p: int, q: int) -> float:
    """Coefficient a(p, q) of the tangent-number expansion.

    For odd p the values a(p, 1), a(p, 3), ..., a(p, p) sum to the p-th
    derivative of tan at 0. Each one is a signed Eulerian number
    <p, (p-q)/2>, doubled except for q == 1, which carries the unpaired
    middle term of the symmetric Eulerian row.
    """
    if p < 1 or q < 1 or p % 2 == 0 or q % 2 == 0 or q > p:
        raise ValueError(f"a(p, q) needs odd 1 <= q <= p, got p={p}, q={q}")
    m = (p - q) // 2
    weight = 1 if q == 1 else 2
    sign = (-1) ** ((p - 1) // 2 + m)
    return float(sign * weight * eulerian(p, m))


def tan_half_derivative_at_node(q: int) -> float:
    """q-th derivative of tan((theta - theta_i)/2) at theta = theta_i."""
    if q < 1:
        raise ValueError("derivative order must be >= 1")
    if q % 2 == 0:
        return 0.0
    k = (q + 1) // 2
    return 2.0**-q * sum(tan_coefficient_a(2 * k - 1, 2 * j + 1) for j in range(k))


# -- truncated Taylor series on arrays; axis 0 holds coefficients --


def series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    order = a.shape[0]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    for p in range(order):
        for r in range(p + 1):
            out[p] += a[r] * b[p - r]
    return out


def series_inv(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for p in range(1, a.shape[0]):
        acc = np.zeros_like(a[0])
        for r in range(1, p + 1):
            acc = acc + a[r] * out[p - r]
        out[p] = -acc * out[0]
    return out


def series_pow(a: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros_like(a)
    out[0] = 1.0
    for _ in range(k):
        out = series_mul(out, a)
    return out


def half_angle_series(y, order: int, func: str = "sin") -> np.ndarray:
    """Taylor coefficients in eps of sin((y + eps)/2) or cos((y + eps)/2)."""
    y = np.asarray(y, dtype=float)
    shift = 0.0 if func == "sin" else np.pi  # cos(x/2) = sin((x + pi)/2)
    return np.stack(
        [sin_half_derivative(p, y + shift, 0.0) / math.factorial(p) for p in range(order + 1)]
    ).reshape((order + 1,) + y.shape)


def kernel_multiplier_derivatives(y, order: int, j: int, parity: Parity) -> np.ndarray:
    """Derivatives 0..order of phi(y) = 1 / (cst(y/2) * eta_j(y/2)).

    phi is sin(y/2) for odd parity and sin(y/2) / cos(y/2)**(j+1) for even
    parity; multiplying the (k, j) Hermite basis function by phi(theta -
    theta_k) leaves a factor independent of k.
    """
    y = np.asarray(y, dtype=float)
    if parity is Parity.ODD:
        return np.stack([np.asarray(sin_half_derivative(q, y, 0.0)) for q in range(order + 1)])
    s = half_angle_series(y, order, "sin")
    c = half_angle_series(y, order, "cos")
    coeffs = series_mul(s, series_pow(series_inv(c), j + 1))
    facts = np.array([math.factorial(q) for q in range(order + 1)], dtype=float)
    return coeffs * facts.reshape((-1,) + (1,) * y.ndim)
