"""Feasibility calculus for factoring on a decohering trapped-ion machine.

For an L-bit factorization: N_a = 5L ions, sideband frequency
omega' = eta*omega/sqrt(5L), coherence decay rate gamma = 2*omega'^2*tau,
per-operation time 4*pi*sqrt(5L)/(eta*omega), and (10L)^3 elementary
operations.  The run is feasible when total_time * gamma stays below a
"much less than one" threshold (default 0.1; the four-bit verdict is
insensitive to any reasonable choice).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

DEFAULT_FEASIBILITY_THRESHOLD = 0.1

# First-order one-bit pi-rotation error law: 1 - F ~ (3/16) pi Omega tau.
ONE_BIT_ERROR_COEFF = 3.0 * math.pi / 16.0


@dataclass(frozen=True)
class ShorScenario:
    bits: int
    omega: float
    eta: float
    tau: float

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("bit count must be at least 1")
        if self.omega <= 0 or self.eta <= 0:
            raise ValueError("physical parameters must be positive")
        if self.tau < 0:
            raise ValueError("tau must be nonnegative")


@dataclass
class FeasibilityReport:
    n_ions: int
    omega_prime: float
    gamma: float
    decoherence_time: float
    op_time: float
    n_ops: int
    total_time: float
    ratio: float
    feasible: bool

    def to_dict(self) -> dict:
        return asdict(self)


def assess(
    s: ShorScenario, feasibility_threshold: float = DEFAULT_FEASIBILITY_THRESHOLD
) -> FeasibilityReport:
    """Derive the feasibility report for a single algorithm run."""
    if feasibility_threshold <= 0:
        raise ValueError("feasibility threshold must be positive")
    n_ions = 5 * s.bits
    omega_prime = s.eta * s.omega / math.sqrt(n_ions)
    gamma = 2.0 * omega_prime**2 * s.tau
    op_time = 4.0 * math.pi * math.sqrt(n_ions) / (s.eta * s.omega)
    n_ops = (10 * s.bits) ** 3
    total_time = op_time * n_ops
    ratio = total_time * gamma
    return FeasibilityReport(
        n_ions=n_ions,
        omega_prime=omega_prime,
        gamma=gamma,
        decoherence_time=(math.inf if gamma == 0 else 1.0 / gamma),
        op_time=op_time,
        n_ops=n_ops,
        total_time=total_time,
        ratio=ratio,
        feasible=bool(ratio < feasibility_threshold),
    )


def required_tau(omega: float, target_error: float) -> float:
    """Scaling time needed for a one-bit pi rotation to reach the target error,
    inverting the first-order law (3/16) pi Omega tau = target."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if not 0 < target_error < 1:
        raise ValueError("target error must be in (0, 1)")
    return target_error / (ONE_BIT_ERROR_COEFF * omega)
