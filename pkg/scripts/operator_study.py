"""Truncation study for the plane-wave realization of F(s).

Prints the interior residuals of F H - H^dag F and [H, P F], the Weyl
proportionality constant and the signature of F over a grid of (s, N).
"""

from __future__ import annotations

import argparse

from liouville_star import operator as O


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", default="0.5,1,2,4")
    ap.add_argument("--N", default="6,8,10,12,14,18,24")
    args = ap.parse_args()

    s_values = [float(t) for t in args.s.split(",")]
    n_values = [int(t) for t in args.N.split(",")]
    print(f"{'s':>5} {'N':>3} {'intertwine':>11} {'[H,PF]':>11} {'[Hd,FP]':>11} {'weyl c':>8} {'spread':>9}  signature")
    for s in s_values:
        for N in n_values:
            inter = O.intertwine_residual(s, N)
            c1, c2 = O.pf_commutator_residual(s, N)
            const, spread = O.weyl_proportionality(s, N)
            sig = O.signature(O.f_metric_matrix(s, N))
            print(f"{s:5g} {N:3d} {inter:11.3e} {c1:11.3e} {c2:11.3e} {const:8.5f} {spread:9.2e}  {sig}")


if __name__ == "__main__":
    main()
