"""Averaged process operators, fidelity tensors, and gate fidelities.

The averaged process operator Rbar_{i',i} is the pulse-area average of
U(A)|i><i'|U(A)^dag; the fidelity tensor F[i',i,j',j] compares it to the
ideal gate U via <j'|U^dag Rbar_{i',i} U|j>, and the gate fidelity is a fixed
linear contraction of the tensor (weights 3/8, 1/8 for one bit; 1/8, 1/24 for
two bits).  Every analytic path here has an independent Monte Carlo and
quadrature oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .decoherence import (
    QUAD_ABS_TOL,
    AreaDistribution,
    quad_average_matrix,
    sample_area,
)
from .gates import (
    DIM,
    apply_pulse_batch,
    PI,
    UNIVERSAL_SEQUENCE,
    GateContext,
    composite_action,
    ideal_one_bit_gate,
    ideal_two_bit_gate,
    one_bit_unitary,
    pulse_unitary,
)
from .statemath import LOGICAL_INDICES


class Method(str, Enum):
    ANALYTIC = "analytic"
    MONTE_CARLO = "monte_carlo"
    QUADRATURE = "quadrature"


@dataclass
class FidelityTensor:
    """4-index tensor F[i', i, j', j]; entries not fixed by the closed forms
    are NaN with known=False."""

    n_states: int
    values: np.ndarray
    known: np.ndarray

    @classmethod
    def full(cls, values: np.ndarray) -> "FidelityTensor":
        n = values.shape[0]
        return cls(n_states=n, values=values, known=np.ones((n,) * 4, dtype=bool))


@dataclass
class GateFidelityResult:
    fidelity: float
    one_minus_f: float
    method: Method
    stderr: float
    context: GateContext
    nominal_time: float


def fractional_error(t: float, tau: float) -> float:
    """Fractional pulse-area error sqrt(tau/t)."""
    if t <= 0:
        raise ValueError("t must be positive")
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    return math.sqrt(tau / t)


def contract_fidelity(tensor: FidelityTensor, w_diag: float, w_off: float) -> float:
    """F = w_diag * sum_i F[i,i,i,i] + w_off * sum_{i != j} (F[i,i,j,j] +
    F[j,i,i,j])."""
    n = tensor.n_states
    v = tensor.values
    total = 0.0 + 0.0j
    for i in range(n):
        total += w_diag * v[i, i, i, i]
    for i in range(n):
        for j in range(n):
            if i != j:
                total += w_off * (v[i, i, j, j] + v[j, i, i, j])
    if abs(total.imag) > 1e-10:
        raise ValueError(f"fidelity contraction is not real: {total}")
    return float(total.real)


# --------------------------------------------------------------------------
# One-bit gate
# --------------------------------------------------------------------------

ONE_BIT_W_DIAG = 3.0 / 8.0
ONE_BIT_W_OFF = 1.0 / 8.0


def _area_char(dist: AreaDistribution | None, omega: float, t: float, tau: float):
    """E[cos A] and E[sin A] under the area distribution (s = 1 moments of the
    characteristic function (1 - i s Omega tau)^{-t/tau})."""
    if tau == 0:
        return math.cos(omega * t), math.sin(omega * t)
    k = t / tau
    theta = omega * tau
    decay = math.exp(-0.5 * k * math.log1p(theta * theta))
    ang = k * math.atan(theta)
    return decay * math.cos(ang), decay * math.sin(ang)


def rbar_one_bit(i: int, i_prime: int, t: float, ctx: GateContext) -> np.ndarray:
    """Averaged process operator E[U(A)|i><i'|U(A)^dag] for the carrier
    rotation, in closed form via the Gamma characteristic function."""
    if i not in (0, 1) or i_prime not in (0, 1):
        raise ValueError("state indices must be 0 or 1")
    if t < 0:
        raise ValueError("t must be nonnegative")
    # U entries written as alpha*cos(A/2) + beta*sin(A/2)
    alpha = np.eye(2, dtype=complex)
    beta = np.array(
        [
            [0.0, -1j * np.exp(-1j * ctx.phi)],
            [-1j * np.exp(1j * ctx.phi), 0.0],
        ],
        dtype=complex,
    )
    if t == 0:
        e_cos, e_sin = 1.0, 0.0
    else:
        e_cos, e_sin = _area_char(None, ctx.omega, t, ctx.tau)
    e_c2 = 0.5 * (1.0 + e_cos)
    e_s2 = 0.5 * (1.0 - e_cos)
    e_cs = 0.5 * e_sin
    out = np.empty((2, 2), dtype=complex)
    for a in range(2):
        for b in range(2):
            aa = alpha[a, i] * np.conj(alpha[b, i_prime])
            bb = beta[a, i] * np.conj(beta[b, i_prime])
            ab = alpha[a, i] * np.conj(beta[b, i_prime]) + beta[a, i] * np.conj(
                alpha[b, i_prime]
            )
            out[a, b] = aa * e_c2 + bb * e_s2 + ab * e_cs
    return out


def f0000_one_bit(t: float, ctx: GateContext) -> float:
    """Closed form of the averaged overlap E[cos^2((A - Omega t)/2)], the
    single independent tensor element of the one-bit gate."""
    if ctx.tau == 0:
        return 1.0
    k = t / ctx.tau
    theta = ctx.omega * ctx.tau
    decay = math.exp(-0.5 * k * math.log1p(theta * theta))
    ang = k * math.atan(theta)
    wt = ctx.omega * t
    return 0.5 * (1.0 + decay * (math.cos(wt) * math.cos(ang) + math.sin(wt) * math.sin(ang)))


def _tensor_from_rbar(rbar_fn, u_ideal: np.ndarray, n_states: int) -> FidelityTensor:
    values = np.empty((n_states,) * 4, dtype=complex)
    for ip in range(n_states):
        for i in range(n_states):
            m = u_ideal.conj().T @ rbar_fn(i, ip) @ u_ideal
            values[ip, i] = m
    return FidelityTensor.full(values)


def closed_one_bit_tensor(t: float, ctx: GateContext) -> FidelityTensor:
    """Full 2x2x2x2 fidelity tensor of the carrier rotation."""
    if t <= 0:
        raise ValueError("t must be positive")
    u = ideal_one_bit_gate(t, ctx)
    return _tensor_from_rbar(lambda i, ip: rbar_one_bit(i, ip, t, ctx), u, 2)


def fidelity_one_bit(
    t: float,
    ctx: GateContext,
    method: Method | str = Method.ANALYTIC,
    n_samples: int = 1_000_000,
    rng: np.random.Generator | None = None,
    n_batches: int = 50,
) -> GateFidelityResult:
    """Averaged one-bit gate fidelity after a rotation of nominal time t."""
    method = Method(method)
    if t <= 0:
        raise ValueError("t must be positive")
    if method is Method.ANALYTIC:
        f = contract_fidelity(closed_one_bit_tensor(t, ctx), ONE_BIT_W_DIAG, ONE_BIT_W_OFF)
        stderr = 0.0
    elif method is Method.MONTE_CARLO:
        f, stderr = _fidelity_one_bit_mc(t, ctx, n_samples, rng, n_batches)
    else:
        f = _fidelity_one_bit_quad(t, ctx)
        stderr = 0.0
    return GateFidelityResult(
        fidelity=f,
        one_minus_f=1.0 - f,
        method=method,
        stderr=stderr,
        context=ctx,
        nominal_time=t,
    )


def _one_bit_amp(areas: np.ndarray, t: float, ctx: GateContext) -> np.ndarray:
    """amp[n, i, j'] = <j'|U_ideal^dag U(A_n)|i> for batched areas."""
    c = np.cos(0.5 * areas)
    s = np.sin(0.5 * areas)
    u = np.empty(areas.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = c
    u[..., 0, 1] = -1j * np.exp(-1j * ctx.phi) * s
    u[..., 1, 0] = -1j * np.exp(1j * ctx.phi) * s
    u[..., 1, 1] = c
    u_ideal = ideal_one_bit_gate(t, ctx)
    # amp[n, i, jp] = sum_d conj(u_ideal[d, jp]) * u[n, d, i]
    return np.einsum("dj,ndi->nij", u_ideal.conj(), u)


def _amp_to_fidelity(amp: np.ndarray, w_diag: float, w_off: float) -> float:
    """Single-sample-set fidelity from amp[n, i, j'] = <j'|U^dag W|i>."""
    n = amp.shape[0]
    tensor = np.einsum("nij,nkl->kijl", amp, amp.conj()) / n
    return contract_fidelity(FidelityTensor.full(tensor), w_diag, w_off)


def _fidelity_one_bit_mc(t, ctx, n_samples, rng, n_batches):
    if rng is None:
        rng = np.random.default_rng(0)
    per = max(2, n_samples // n_batches)
    fids = np.empty(n_batches)
    for b in range(n_batches):
        if ctx.tau == 0:
            areas = np.full(per, ctx.omega * t)
        else:
            areas = sample_area(AreaDistribution(t, ctx.tau, ctx.omega), rng, per)
        amp = _one_bit_amp(areas, t, ctx)
        fids[b] = _amp_to_fidelity(amp, ONE_BIT_W_DIAG, ONE_BIT_W_OFF)
    mean = float(fids.mean())
    stderr = float(fids.std(ddof=1) / math.sqrt(n_batches))
    return mean, stderr


def _fidelity_one_bit_quad(t: float, ctx: GateContext) -> float:
    """Quadrature oracle: build each Rbar by numerically averaging the actual
    rotation matrices, then contract."""
    if ctx.tau == 0:
        return contract_fidelity(closed_one_bit_tensor(t, ctx), ONE_BIT_W_DIAG, ONE_BIT_W_OFF)
    dist = AreaDistribution(t, ctx.tau, ctx.omega)
    u_ideal = ideal_one_bit_gate(t, ctx)

    def rbar(i, ip):
        m0 = np.zeros((2, 2), dtype=complex)
        m0[i, ip] = 1.0
        return quad_average_matrix(
            lambda a: one_bit_unitary(a, ctx.phi) @ m0 @ one_bit_unitary(a, ctx.phi).conj().T,
            dist,
            2,
        )

    tensor = _tensor_from_rbar(rbar, u_ideal, 2)
    return contract_fidelity(tensor, ONE_BIT_W_DIAG, ONE_BIT_W_OFF)


# --------------------------------------------------------------------------
# Two-bit gate
# --------------------------------------------------------------------------

TWO_BIT_W_DIAG = 1.0 / 8.0
TWO_BIT_W_OFF = 1.0 / 24.0

_EXCHANGE_20 = ((2, 0), (2, 1), (0, 2), (1, 2))
_EXCHANGE_30 = ((3, 0), (3, 1), (0, 3), (1, 3))
_EXCHANGE_32 = ((3, 2), (2, 3))


def pulse_distributions(ctx: GateContext) -> tuple[AreaDistribution, ...]:
    """Area distributions of the three pulses (nominal pi, 2pi, pi)."""
    wp = ctx.omega_prime
    t1 = PI / wp
    t2 = 2 * PI / wp
    return (
        AreaDistribution(t1, ctx.tau, wp),
        AreaDistribution(t2, ctx.tau, wp),
        AreaDistribution(t1, ctx.tau, wp),
    )


def closed_two_bit_tensor(ctx: GateContext) -> FidelityTensor:
    """Closed-form elements of the two-bit fidelity tensor.

    All elements entering the fidelity contraction are fixed: the diagonal
    family, the exchange families, and the vanishing cross-population
    elements.  Remaining elements are left unknown (NaN).
    """
    from .decoherence import kernel_integrals

    wp = ctx.omega_prime
    kp = kernel_integrals(PI / wp, wp, ctx.tau)
    k2 = kernel_integrals(2 * PI / wp, wp, ctx.tau)
    c2p, s2p, zp, c1p, s1p = kp.c2, kp.s2, kp.z, kp.c1, kp.s1
    c2_2pi = k2.c2
    c1_2pi = k2.c1

    values = np.full((4, 4, 4, 4), np.nan, dtype=complex)
    known = np.zeros((4, 4, 4, 4), dtype=bool)

    def put(ip, i, jp, j, val):
        values[ip, i, jp, j] = val
        known[ip, i, jp, j] = True

    put(0, 0, 0, 0, 1.0)
    put(1, 1, 1, 1, 1.0)
    put(1, 0, 0, 1, 1.0)
    put(0, 1, 1, 0, 1.0)
    put(2, 2, 2, 2, c2p**2 + s2p**2 * c2_2pi - 2 * zp**2 * c1_2pi)
    put(3, 3, 3, 3, c2p**2 + s2p**2 - 2 * zp**2)
    f20 = c1p**2 - s1p**2 * c1_2pi
    for ip, jj in _EXCHANGE_20:
        put(ip, jj, jj, ip, f20)
    f30 = -(c1p**2) + s1p**2
    for ip, jj in _EXCHANGE_30:
        put(ip, jj, jj, ip, f30)
    f32 = -(c2p**2) - s2p**2 * c1_2pi + zp**2 + zp**2 * c1_2pi
    for ip, jj in _EXCHANGE_32:
        put(ip, jj, jj, ip, f32)
    for i in range(4):
        for j in range(4):
            if i != j:
                put(i, i, j, j, 0.0)
    return FidelityTensor(n_states=4, values=values, known=known)


def fidelity_two_bit(
    ctx: GateContext,
    method: Method | str = Method.ANALYTIC,
    n_samples: int = 1_000_000,
    rng: np.random.Generator | None = None,
    n_batches: int = 50,
) -> GateFidelityResult:
    """Averaged fidelity of the three-pulse universal two-bit gate.

    The nominal gate time is fixed by the pulse sequence (4 pi / omega');
    there is no free time parameter.
    """
    method = Method(method)
    nominal_time = 4 * PI / ctx.omega_prime
    if method is Method.ANALYTIC:
        f = contract_fidelity(closed_two_bit_tensor(ctx), TWO_BIT_W_DIAG, TWO_BIT_W_OFF)
        stderr = 0.0
    elif method is Method.MONTE_CARLO:
        return fidelity_mc_two_bit(ctx, n_samples, rng, n_batches=n_batches)
    else:
        tensor = quad_two_bit_tensor(ctx)
        f = contract_fidelity(tensor, TWO_BIT_W_DIAG, TWO_BIT_W_OFF)
        stderr = 0.0
    return GateFidelityResult(
        fidelity=f,
        one_minus_f=1.0 - f,
        method=method,
        stderr=stderr,
        context=ctx,
        nominal_time=nominal_time,
    )


def _sample_triples(ctx: GateContext, rng: np.random.Generator, n: int):
    dists = pulse_distributions(ctx)
    if ctx.tau == 0:
        return (np.full(n, PI), np.full(n, 2 * PI), np.full(n, PI))
    return tuple(sample_area(d, rng, n) for d in dists)


def _two_bit_amp(ctx: GateContext, rng: np.random.Generator, n: int) -> np.ndarray:
    """amp[n, i, j'] = <j'|U_ideal^dag W(A1,A2,A3)|i> over sampled triples."""
    a1, a2, a3 = _sample_triples(ctx, rng, n)
    states = composite_action(a1, a2, a3)  # (n, 4, 18)
    u = ideal_two_bit_gate()
    cols = u[:, list(LOGICAL_INDICES)]  # (18, 4) ideal images of logical states
    return np.einsum("dj,nid->nij", cols.conj(), states)


def mc_two_bit_tensor(
    ctx: GateContext, n_samples: int, rng: np.random.Generator | None = None,
    n_batches: int = 20,
) -> tuple[FidelityTensor, np.ndarray]:
    """Monte Carlo estimate of the full 4x4x4x4 tensor with per-element
    standard errors, by independent triple sampling."""
    if rng is None:
        rng = np.random.default_rng(0)
    per = max(2, n_samples // n_batches)
    batch_vals = np.empty((n_batches, 4, 4, 4, 4), dtype=complex)
    for b in range(n_batches):
        amp = _two_bit_amp(ctx, rng, per)
        batch_vals[b] = np.einsum("nij,nkl->kijl", amp, amp.conj()) / per
    mean = batch_vals.mean(axis=0)
    # componentwise stderr combined in quadrature over real and imaginary parts
    stderr = np.sqrt(
        batch_vals.real.std(axis=0, ddof=1) ** 2 + batch_vals.imag.std(axis=0, ddof=1) ** 2
    ) / math.sqrt(n_batches)
    return FidelityTensor.full(mean), stderr


def fidelity_mc_two_bit(
    ctx: GateContext,
    n_samples: int,
    rng: np.random.Generator | None = None,
    n_batches: int = 50,
) -> GateFidelityResult:
    """Monte Carlo two-bit fidelity via Rbar built from sampled pulse triples."""
    if n_samples < 1000:
        raise ValueError("need at least 1000 samples")
    if rng is None:
        rng = np.random.default_rng(0)
    per = max(2, n_samples // n_batches)
    fids = np.empty(n_batches)
    for b in range(n_batches):
        amp = _two_bit_amp(ctx, rng, per)
        fids[b] = _amp_to_fidelity(amp, TWO_BIT_W_DIAG, TWO_BIT_W_OFF)
    mean = float(fids.mean())
    stderr = float(fids.std(ddof=1) / math.sqrt(n_batches))
    return GateFidelityResult(
        fidelity=mean,
        one_minus_f=1.0 - mean,
        method=Method.MONTE_CARLO,
        stderr=stderr,
        context=ctx,
        nominal_time=4 * PI / ctx.omega_prime,
    )


def rbar_two_bit_mc(
    ctx: GateContext, n_samples: int, rng: np.random.Generator | None = None
) -> np.ndarray:
    """Monte Carlo averaged process operators Rbar[i', i] as (4, 4, 18, 18)."""
    if rng is None:
        rng = np.random.default_rng(0)
    a1, a2, a3 = _sample_triples(ctx, rng, n_samples)
    states = composite_action(a1, a2, a3)
    return np.einsum("nid,npe->pide", states, states.conj()) / n_samples


def _averaged_pulse_superop(step, dist: AreaDistribution) -> np.ndarray:
    """Superoperator of the area-averaged pulse conjugation, as a
    (DIM^2, DIM^2) matrix acting on vectorized density operators:
    G[(p q), (r c)] = E[U(A)[r, p] conj(U(A)[c, q])], so that
    vec(E[U M U^dag]) = vec(M) @ G for row-major vectorization.

    Composite Gauss-Legendre with panel doubling; the node images are built
    with the same batched pulse application used by the Monte Carlo path.
    """
    from .decoherence import _quad_window, composite_gl_nodes

    lo, hi = _quad_window(dist.shape, dist.scale)

    def estimate(n_panels: int) -> np.ndarray:
        a, w = composite_gl_nodes(lo, hi, n_panels)
        w = w * dist.pdf(a)
        n_nodes = a.size
        eye = np.broadcast_to(np.eye(DIM, dtype=complex), (n_nodes, DIM, DIM)).copy()
        cols = apply_pulse_batch(eye, step, a[:, None])  # cols[n, p, :] = U(a_n) e_p
        flat = cols.reshape(n_nodes, DIM * DIM)
        g4 = ((flat * w[:, None]).T @ flat.conj()).reshape(DIM, DIM, DIM, DIM)
        # reorder [p, r, q, c] -> [(p q), (r c)]
        return g4.transpose(0, 2, 1, 3).reshape(DIM * DIM, DIM * DIM)

    n = 2
    prev = estimate(n)
    for _ in range(7):
        n *= 2
        cur = estimate(n)
        if np.max(np.abs(cur - prev)) < QUAD_ABS_TOL:
            return cur
        prev = cur
    return prev


def quad_two_bit_tensor(ctx: GateContext) -> FidelityTensor:
    """Quadrature oracle for the two-bit tensor: iterated one-dimensional
    averaging of |i><i'| through the three pulses (exact by independence of
    the pulse areas)."""
    dists = pulse_distributions(ctx)
    u = ideal_two_bit_gate()
    cols = u[:, list(LOGICAL_INDICES)]
    if ctx.tau == 0:
        stages = []
        for step in UNIVERSAL_SEQUENCE:
            up = pulse_unitary(step, step.nominal_area)
            stages.append(("unitary", up))
    else:
        g_pi = _averaged_pulse_superop(UNIVERSAL_SEQUENCE[0], dists[0])
        g_2pi = _averaged_pulse_superop(UNIVERSAL_SEQUENCE[1], dists[1])
        stages = [("superop", g_pi), ("superop", g_2pi), ("superop", g_pi)]
    values = np.empty((4, 4, 4, 4), dtype=complex)
    for ip in range(4):
        for i in range(4):
            m = np.zeros((DIM, DIM), dtype=complex)
            m[LOGICAL_INDICES[i], LOGICAL_INDICES[ip]] = 1.0
            for kind, op in stages:
                if kind == "unitary":
                    m = op @ m @ op.conj().T
                else:
                    m = (m.reshape(-1) @ op).reshape(DIM, DIM)
            values[ip, i] = cols.conj().T @ m @ cols
    return FidelityTensor.full(values)
