#!/usr/bin/env python3
"""Sweep gate infidelity against the fractional pulse-area error sqrt(tau/t)
for both gates and fit the log-log slope (expected: 2, the quadratic
small-fluctuation regime)."""

import argparse

from decogate.fidelity import Method
from decogate.gates import GateContext
from decogate.sweep import SweepSpec, fit_loglog_slope, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega", type=float, default=1e5)
    ap.add_argument("--eta", type=float, default=0.1)
    ap.add_argument("--ions", type=int, default=20)
    ap.add_argument("--tau-min", type=float, default=1e-10)
    ap.add_argument("--tau-max", type=float, default=1e-8)
    ap.add_argument("--points", type=int, default=15)
    ap.add_argument("--mc", action="store_true", help="use the Monte Carlo estimator")
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ctx = GateContext(omega=args.omega, eta=args.eta, n_ions=args.ions, tau=args.tau_min)
    method = Method.MONTE_CARLO if args.mc else Method.ANALYTIC

    for gate in ("one_bit", "two_bit"):
        spec = SweepSpec(gate=gate, tau_min=args.tau_min, tau_max=args.tau_max,
                         points=args.points, context=ctx, method=method,
                         mc_samples=args.samples)
        rows = run_sweep(spec, seed=args.seed)
        slope, intercept, r2 = fit_loglog_slope(rows)
        print(f"# {gate}: slope = {slope:.4f}, intercept = {intercept:.4f}, r^2 = {r2:.6f}")
        print("tau,fractional_error,one_minus_fidelity")
        for r in rows:
            print(f"{r.tau:.6e},{r.fractional_error:.6e},{r.one_minus_f:.6e}")
        print()


if __name__ == "__main__":
    main()
