"""Node sets on the circle: equidistant, and conformally clustered at fronts."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .trig_core import TWO_PI, Parity, normalize_angle


@dataclass(frozen=True)
class NodeSet:
    """Strictly increasing angles in [0, 2pi)."""

    angles: np.ndarray
    parity: Parity = field(init=False)

    def __post_init__(self):
        a = np.array(self.angles, dtype=float)
        if a.ndim != 1 or a.size < 2:
            raise ValueError("a node set needs at least two angles")
        if not np.all(np.isfinite(a)):
            raise ValueError("node angles must be finite")
        if np.any(a < 0) or np.any(a >= TWO_PI):
            raise ValueError("node angles must lie in [0, 2pi)")
        if np.any(np.diff(a) <= 0):
            raise ValueError("node angles must be strictly increasing")
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "parity", Parity.of(a.size))

    def __len__(self) -> int:
        return self.angles.size

    @property
    def n(self) -> int:
        return self.angles.size

    @classmethod
    def from_unsorted(cls, angles) -> "NodeSet":
        """Normalize to [0, 2pi) and sort; used after circle maps."""
        return cls(np.sort(normalize_angle(np.asarray(angles, dtype=float))))


def seam_angle(nodes: NodeSet) -> float:
    """Midpoint of the widest cyclic gap between consecutive nodes."""
    a = nodes.angles
    gaps = np.diff(np.append(a, a[0] + TWO_PI))
    k = int(np.argmax(gaps))
    return float(normalize_angle(a[k] + 0.5 * gaps[k]))


def seam_signs(nodes: NodeSet, seam: float, theta) -> np.ndarray:
    """-1 where theta and node k sit on opposite sides of the seam, else 1; shape (len(theta), n).

    theta must already lie in [0, 2pi).
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    apart = (theta[:, None] < seam) != (nodes.angles[None, :] < seam)
    return np.where(apart, -1.0, 1.0)


@dataclass(frozen=True)
class ConformalParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")


def equidistant_nodes(n: int) -> NodeSet:
    if n < 2:
        raise ValueError("need n >= 2 nodes")
    return NodeSet(TWO_PI * np.arange(n) / n)


def _wrap(d):
    return np.mod(d + np.pi, TWO_PI) - np.pi


def mobius_circle_map(theta, alpha: float, beta: float):
    """g(theta) = -i log((e^{i theta} + a e^{i beta}) / (1 + a e^{i(theta - beta)})).

    The branch is picked so the image lies within pi of theta, which makes
    the result the continuous lift theta + displacement. Negative alpha gives
    the inverse map.
    """
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    cb, sb = np.cos(beta), np.sin(beta)
    # numerator and denominator as explicit real/imaginary parts
    nr, ni = c + alpha * cb, s + alpha * sb
    cd, sd = np.cos(theta - beta), np.sin(theta - beta)
    dr, di = 1.0 + alpha * cd, alpha * sd
    arg = np.arctan2(ni * dr - nr * di, nr * dr + ni * di)
    return theta + _wrap(arg - theta)


def conformal_shift(nodes: NodeSet, params: ConformalParams) -> NodeSet:
    mapped = mobius_circle_map(nodes.angles, params.alpha, params.beta)
    return NodeSet.from_unsorted(mapped)


def _average_density_map(t, alpha, betas, iters=80):
    """Invert H(y) = y + mean_f (g_{-alpha, beta_f}(y) - y) by bisection.

    H is the mean of the lifts of the single-front inverse maps, so it is
    strictly increasing and the node density of H^{-1} is the average of the
    single-front densities.
    """
    t = np.asarray(t, dtype=float)

    def H(y):
        return np.mean([mobius_circle_map(y, -alpha, b) for b in betas], axis=0)

    lo, hi = t - np.pi, t + np.pi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = H(mid) < t
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


TWO_FRONT_STRATEGIES = ("average", "compose")


def two_front_shift(
    nodes: NodeSet, alpha: float, beta1: float, beta2: float, strategy: str = "average"
) -> NodeSet:
    """Cluster nodes near two fronts with a common density parameter.

    ``average`` inverts the mean of the two single-front inverse lifts and
    reduces to :func:`conformal_shift` when the fronts coincide. ``compose``
    applies the single-front map twice; it cancels exactly for antipodal
    fronts, since g_{alpha, beta + pi} is the inverse of g_{alpha, beta}.
    """
    ConformalParams(alpha, beta1)
    if strategy == "average":
        mapped = _average_density_map(nodes.angles, alpha, (beta1, beta2))
    elif strategy == "compose":
        mapped = mobius_circle_map(mobius_circle_map(nodes.angles, alpha, beta1), alpha, beta2)
    else:
        raise ValueError(f"unknown two-front strategy {strategy!r}")
    return NodeSet.from_unsorted(mapped)
