"""Reconstruct the bundled 362-point outline from every k-th point.

Writes one CSV (and SVG) per stride into --outdir and reports how far the
reconstruction strays from the full point set.
"""
import argparse
from pathlib import Path

import numpy as np

from trigherm.cli import write_csv, write_svg
from trigherm.experiments import error_grid, reconstruct_curve, sample_sketch


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--strides", default="1,2,3,5")
    ap.add_argument("--m", type=int, default=1, choices=(0, 1))
    ap.add_argument("--difference", default="forward", choices=("forward", "central"))
    ap.add_argument("--outdir", default="sketch_out")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    pts = sample_sketch()
    theta = error_grid(4000)
    for stride in (int(v) for v in args.strides.split(",")):
        rec = reconstruct_curve(pts, stride, args.m, args.difference)
        xy = rec(theta)
        # distance from each original point to the densely sampled curve
        gap = np.min(np.linalg.norm(pts.xy[:, None, :] - xy[None, :, :], axis=2), axis=1)
        print(f"stride {stride}: {rec.nodes.n} nodes, max distance of all points to curve {gap.max():.3f} px")
        with open(out / f"stride{stride}.csv", "w", newline="\n") as fh:
            write_csv(fh, ["theta", "x", "y"], zip(theta, xy[:, 0], xy[:, 1]))
        write_svg(str(out / f"stride{stride}.svg"), xy, rec.points.xy)


if __name__ == "__main__":
    main()
