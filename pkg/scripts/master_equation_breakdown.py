#!/usr/bin/env python3
"""Compare the exact averaged evolution of a driven qubit with the
second-order phase-destroying master equation across a range of Omega*tau,
showing where the truncation stops being trustworthy."""

import argparse
import math

import numpy as np

from decogate.dynamics import HamiltonianSpec, compare_evolutions
from decogate.statemath import DensityMatrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega", type=float, default=1e5)
    ap.add_argument("--points", type=int, default=20)
    args = ap.parse_args()

    h = HamiltonianSpec(0.5 * args.omega * np.array([[0.0, 1.0], [1.0, 0.0]]))
    rho0 = DensityMatrix(np.diag([1.0, 0.0]).astype(complex))
    t_final = math.pi / args.omega
    t_grid = list(np.linspace(t_final / args.points, t_final, args.points))

    print("omega_tau,max_trace_distance,max_offdiag_error")
    for op_tau in np.logspace(-4, -1, 13):
        tau = op_tau / args.omega
        cmp = compare_evolutions(h, rho0, t_grid, tau)
        print(f"{op_tau:.4e},{max(cmp.trace_distance):.4e},{max(cmp.max_offdiag_error):.4e}")


if __name__ == "__main__":
    main()
