#!/usr/bin/env python3
"""Feasibility of factoring an L-bit number on a cold-trapped-ion register:
decoherence rate vs total algorithm time as a function of L, plus the scaling
time tau required to reach a target per-gate error."""

import argparse

from decogate.bounds import ShorScenario, assess, required_tau


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega", type=float, default=1e5)
    ap.add_argument("--eta", type=float, default=0.1)
    ap.add_argument("--tau", type=float, default=1e-8)
    ap.add_argument("--max-bits", type=int, default=8)
    ap.add_argument("--target-error", type=float, default=1e-6)
    args = ap.parse_args()

    print("bits,n_ions,gamma,op_time,n_ops,total_time,ratio,feasible")
    for bits in range(1, args.max_bits + 1):
        r = assess(ShorScenario(bits=bits, omega=args.omega, eta=args.eta, tau=args.tau))
        print(f"{bits},{r.n_ions},{r.gamma:.4e},{r.op_time:.4e},"
              f"{r.n_ops},{r.total_time:.4e},{r.ratio:.4e},{r.feasible}")

    tau_req = required_tau(args.omega, args.target_error)
    print(f"\n# tau required for per-gate error {args.target_error:g}: {tau_req:.4e} s "
          f"(improvement over tau={args.tau:g}: {args.tau / tau_req:.0f}x)")


if __name__ == "__main__":
    main()
