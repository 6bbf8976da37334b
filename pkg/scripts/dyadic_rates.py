"""Dyadic convergence rates of t_3 and t_4 on f1 and f2 at equidistant nodes.

Prints err_N and -log2(err_2N / err_N) for N = 5..320, once with the exact
recursive differentiation matrices and once with matrix powers.
"""
import argparse

import numpy as np

from trigherm.experiments import convergence_study, test_function

NS = [5, 10, 20, 40, 80, 160, 320]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=100_000)
    ap.add_argument("--methods", default="recursive,power")
    args = ap.parse_args()
    print("method     f   m  " + "".join(f"{n:>10d}" for n in NS))
    for method in args.methods.split(","):
        for name in ("f1", "f2"):
            for m in (3, 4):
                rep = convergence_study(test_function(name), m, NS, method=method, grid=args.grid)
                print(f"{method:10s} {name}  {m}  err " + "".join(f"{e:10.2e}" for e in rep.errors))
                rates = ["" if np.isnan(r) else f"{r:.2f}" for r in rep.rates]
                print(f"{'':19s}rate" + "".join(f"{r:>10s}" for r in rates))


if __name__ == "__main__":
    main()
