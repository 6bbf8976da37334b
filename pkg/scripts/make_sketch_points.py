"""Regenerate the bundled sample outline src/trigherm/data/sketch_points.csv.

The outline is a hand-tuned star-like blob in pixel coordinates, sampled at
362 angles and rounded to a quarter pixel to mimic points traced from an image.
"""
from pathlib import Path

import numpy as np

N_POINTS = 362
OUT = Path(__file__).resolve().parents[1] / "src" / "trigherm" / "data" / "sketch_points.csv"


def outline(n: int = N_POINTS) -> np.ndarray:
    phi = 2 * np.pi * np.arange(n) / n
    r = 1 + 0.22 * np.cos(2 * phi) + 0.12 * np.sin(3 * phi) + 0.07 * np.cos(5 * phi + 0.4) + 0.03 * np.sin(9 * phi)
    x = 300 + 180 * r * np.cos(phi)
    y = 300 + 180 * r * np.sin(phi)
    return np.round(np.c_[x, y] * 4) / 4


if __name__ == "__main__":
    OUT.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(OUT, outline(), fmt="%.2f", delimiter=",", header="x,y", comments="")
    print(f"wrote {OUT}")
