"""Equidistant versus conformally clustered nodes on f3 = tanh(50 cos(theta + pi/3)).

Two fronts at pi/6 and 7pi/6 with alpha = 0.85, for t_1 and t_4.
"""
import argparse

import numpy as np

from trigherm.experiments import conformal_comparison, test_function

NS = [20, 40, 80, 160, 320, 640, 1280]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=0.85)
    ap.add_argument("--orders", default="1,4")
    ap.add_argument("--method", default="recursive", choices=("recursive", "power"))
    ap.add_argument("--grid", type=int, default=100_000)
    args = ap.parse_args()
    f3 = test_function("f3")
    for m in (int(v) for v in args.orders.split(",")):
        eq, sh = conformal_comparison(f3, m, args.alpha, (np.pi / 6, 7 * np.pi / 6), NS, args.method, args.grid)
        print(f"t_{m} ({args.method})")
        print(f"{'N':>6s} {'equidistant':>12s} {'shifted':>12s}")
        for n, a, b in zip(NS, eq.errors, sh.errors):
            print(f"{n:6d} {a:12.3e} {b:12.3e}")


if __name__ == "__main__":
    main()
