"""Berry phases: pure, dressed closed form, mixed-state, and two-qubit.

The cyclic parameter is a photon-number phase shift R(t) = exp(-i*phi(t)*n_hat)
with phi running adiabatically from 0 to 2*pi. Because R is generated by
n_hat, the loop integrand of the pure-state phase is exactly
i<chi|R^dag dR/dt|chi> = phi_dot * <n_hat>, so the quadrature reduces to
the Stieltjes sum over the sampled phase profile and equals 2*pi*<n_hat>
up to rounding.

The mixed-state phase of a non-degenerate ensemble {xi_k, rho_k(0)} under a
cyclic one-parameter family U0(t) is

    arg sum_k xi_k * Tr[rho_k(0) U0(tau)]
        * exp(-Integral_0^tau Tr[rho_k(0) U0^dag(t) U0_dot(t)] dt),

the weighted sum of per-component phase factors once the exponential strips
the accumulated dynamical phase. U0_dot comes from central finite
differences of the supplied samples, the integral from the trapezoid rule;
both converge quadratically in the sample spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateWeightsError,
    DimensionMismatchError,
    NonOrthonormalEnsembleError,
    NonUnitarySampleError,
    NotNormalizedError,
    TooFewSamplesError,
    UnsupportedQubitCountError,
)
from .hamiltonian import ModelConfig, single_qubit_block
from .linalg import as_matrix, eig_hermitian

TWO_PI = 2.0 * math.pi

DEFAULT_SAMPLES = 512
MAX_SAMPLES = 1 << 16


class PhaseValue(NamedTuple):
    """A phase both as accumulated (raw) and reduced to [0, 2*pi)."""

    raw: float
    reduced: float


def _phase_value(raw: float) -> PhaseValue:
    reduced = raw % TWO_PI
    if TWO_PI - reduced < 1e-12:   # rounding noise right at the branch cut
        reduced = 0.0
    return PhaseValue(raw=raw, reduced=reduced)


@dataclass(frozen=True)
class PhasePath:
    """One adiabatic cycle of the shift phase phi(t).

    ``phase_profile`` maps t in [0, period] to phi with phi(0) = 0 and
    phi(period) = 2*pi, monotone non-decreasing.
    """

    period: float
    phase_profile: Callable[[float], float]
    sample_count: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if self.period <= 0:
            raise ValueError("period must be positive")
        if self.sample_count < 2:
            raise ValueError("sample_count must be at least 2")
        phis = self.phases()
        if abs(phis[0]) > 1e-9 or abs(phis[-1] - TWO_PI) > 1e-9:
            raise ValueError("phase profile must run from 0 to 2*pi over the period")
        if np.any(np.diff(phis) < -1e-12):
            raise ValueError("phase profile must be monotone non-decreasing")

    @classmethod
    def linear(cls, period: float = 1.0, sample_count: int = DEFAULT_SAMPLES) -> "PhasePath":
        return cls(period=period, phase_profile=lambda t: TWO_PI * t / period,
                   sample_count=sample_count)

    def times(self, count: int | None = None) -> np.ndarray:
        n = self.sample_count if count is None else count
        return np.linspace(0.0, self.period, n + 1)

    def phases(self, count: int | None = None) -> np.ndarray:
        return np.array([self.phase_profile(t) for t in self.times(count)])


def _check_state(state) -> np.ndarray:
    psi = np.asarray(state, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-10:
        raise NotNormalizedError(f"state norm {norm} is not 1 within 1e-10")
    return psi


def rotated_hamiltonian(h, phi_rate: float, n_op, phi: float = 0.0) -> np.ndarray:
    """Co-rotating frame Hamiltonian R H R^dag + phi_dot * n_hat.

    R = exp(-i*phi*n_hat); the -i*R*dR^dag/dt gauge term evaluates to
    +phi_dot*n_hat exactly.
    """
    hm = as_matrix(h)
    nm = as_matrix(n_op)
    if hm.shape != nm.shape or hm.shape[0] != hm.shape[1]:
        raise DimensionMismatchError(f"H is {hm.shape}, number operator is {nm.shape}")
    eig = eig_hermitian(nm)
    r = (eig.vectors * np.exp(-1j * phi * eig.values)) @ eig.vectors.conj().T
    return r @ hm @ r.conj().T + phi_rate * nm


def berry_phase_pure(state, n_op, path: PhasePath) -> PhaseValue:
    """Berry phase of a stationary state under one cycle of the shift phase.

    Evaluates gamma = i * Integral <chi| R^dag dR/dt |chi> dt as the
    Stieltjes sum of <n_hat> over the sampled phase increments; the closed
    form is 2*pi*<n_hat>.
    """
    psi = _check_state(state)
    nm = as_matrix(n_op)
    if nm.shape[0] != psi.size:
        raise DimensionMismatchError(f"state dim {psi.size} vs operator {nm.shape}")
    n_exp = float(np.real(psi.conj() @ nm @ psi))
    phis = path.phases()
    raw = float(np.sum(np.diff(phis)) * n_exp)
    return _phase_value(raw)


def berry_phase_dressed_closed_form(c: ModelConfig, n: int, branch: str = "+") -> PhaseValue:
    """Analytic dressed-branch phase pi*k*(1 -+ Delta/sqrt(Delta^2 + 4*mu_n^2)).

    ``branch`` "+" is the upper dressed state (larger Omega), "-" the lower.
    mu_n is the off-diagonal of the n-th single-qubit block.
    """
    if c.num_qubits != 1:
        raise UnsupportedQubitCountError("closed form is defined for the one-qubit model")
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    block = single_qubit_block(c, n)
    mu = float(block[0, 1].real)
    delta = float((block[0, 0] - block[1, 1]).real)
    x = delta / math.hypot(delta, 2.0 * mu) if (delta, mu) != (0.0, 0.0) else 0.0
    sign = -1.0 if branch == "+" else 1.0
    raw = math.pi * c.photon_order * (1.0 + sign * x)
    return _phase_value(raw)


def _check_unitary_samples(samples: Sequence, tol: float) -> np.ndarray:
    us = np.asarray(samples, dtype=complex)
    if us.ndim != 3 or us.shape[1] != us.shape[2]:
        raise DimensionMismatchError("samples must be square matrices of equal size")
    if not np.all(np.isfinite(us)):
        raise DimensionMismatchError("sample entries must be finite")
    grams = np.matmul(np.conj(np.transpose(us, (0, 2, 1))), us)
    defects = np.max(np.abs(grams - np.eye(us.shape[1])), axis=(1, 2))
    worst = int(np.argmax(defects))
    if defects[worst] > tol:
        raise NonUnitarySampleError(
            f"sample {worst} deviates from unitarity by {defects[worst]:.3e}"
        )
    return us


def parallel_transport_residual(u_samples: Sequence, rho_k, period: float) -> float:
    """Worst interior violation of Tr[rho_k(t) U_dot(t) U^dag(t)] = 0.

    ``u_samples`` are uniformly spaced over [0, period]; rho_k is the
    transported state at t = 0. U_dot uses central finite differences, so
    the returned residual converges quadratically for smooth paths.
    """
    if len(u_samples) < 3:
        raise TooFewSamplesError(f"need at least 3 samples, got {len(u_samples)}")
    us = _check_unitary_samples(u_samples, tol=1e-8)
    rho = as_matrix(rho_k)
    if rho.shape != us.shape[1:]:
        raise DimensionMismatchError(f"state {rho.shape} vs samples {us.shape[1:]}")
    h = period / (len(us) - 1)
    du = (us[2:] - us[:-2]) / (2.0 * h)
    # Tr[rho(t) U_dot U^dag] = Tr[rho(0) U^dag U_dot] for unitary U
    vals = np.einsum("ij,tjk,tki->t", rho, np.conj(np.transpose(us[1:-1], (0, 2, 1))), du)
    return float(np.max(np.abs(vals)))


@dataclass(frozen=True)
class MixedEnsemble:
    """Non-degenerate weights with orthonormal pure-state projectors."""

    weights: tuple[float, ...]
    projectors: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.size == 0 or np.any(w <= 0):
            raise DegenerateWeightsError("weights must be positive")
        if abs(float(np.sum(w)) - 1.0) > 1e-12:
            raise DegenerateWeightsError(f"weights sum to {np.sum(w)}, expected 1")
        for i in range(w.size):
            for j in range(i + 1, w.size):
                if abs(w[i] - w[j]) < 1e-9:
                    raise DegenerateWeightsError(
                        f"weights {i} and {j} are degenerate within 1e-9"
                    )
        projs = tuple(as_matrix(p) for p in self.projectors)
        object.__setattr__(self, "projectors", projs)
        if len(projs) != w.size:
            raise NonOrthonormalEnsembleError("one projector per weight required")
        for i, p in enumerate(projs):
            if float(np.max(np.abs(p - p.conj().T))) > 1e-10:
                raise NonOrthonormalEnsembleError(f"projector {i} is not Hermitian")
            if abs(float(np.trace(p).real) - 1.0) > 1e-10:
                raise NonOrthonormalEnsembleError(f"projector {i} does not have unit trace")
            if float(np.max(np.abs(p @ p - p))) > 1e-10:
                raise NonOrthonormalEnsembleError(f"projector {i} is not idempotent")
        for i in range(len(projs)):
            for j in range(i + 1, len(projs)):
                if abs(float(np.trace(projs[i] @ projs[j]).real)) > 1e-10:
                    raise NonOrthonormalEnsembleError(f"projectors {i} and {j} overlap")

    @classmethod
    def from_states(cls, weights: Sequence[float], states: Sequence) -> "MixedEnsemble":
        projs = []
        for s in states:
            psi = _check_state(s)
            projs.append(np.outer(psi, psi.conj()))
        return cls(weights=tuple(float(w) for w in weights), projectors=tuple(projs))


def berry_phase_mixed(ensemble: MixedEnsemble, u0_samples: Sequence, u_final,
                      period: float) -> float:
    """Mixed-state Berry phase of a cyclic evolution, in (-pi, pi].

    ``u0_samples`` trace the transporting family over [0, period] on a
    uniform grid; ``u_final`` closes the cycle. Each component contributes
    xi_k * Tr[rho_k(0) U_final] * exp(-Integral Tr[rho_k(0) U0^dag U0_dot] dt)
    with the purely imaginary integrand exponentiated as-is.
    """
    if len(u0_samples) < 3:
        raise TooFewSamplesError(f"need at least 3 samples, got {len(u0_samples)}")
    us = _check_unitary_samples(u0_samples, tol=1e-8)
    uf = as_matrix(u_final)
    if uf.shape != us.shape[1:]:
        raise DimensionMismatchError("final operator dimension mismatch")
    ts = np.linspace(0.0, period, len(us))
    h = ts[1] - ts[0]
    du = np.empty_like(us)
    du[1:-1] = (us[2:] - us[:-2]) / (2.0 * h)
    du[0] = (-3.0 * us[0] + 4.0 * us[1] - us[2]) / (2.0 * h)
    du[-1] = (3.0 * us[-1] - 4.0 * us[-2] + us[-3]) / (2.0 * h)
    udag = np.conj(np.transpose(us, (0, 2, 1)))
    total = 0.0j
    for xi, rho in zip(ensemble.weights, ensemble.projectors):
        integrand = np.einsum("ij,tjk,tki->t", rho, udag, du)
        integral = np.trapezoid(integrand, ts)
        total += xi * np.trace(rho @ uf) * np.exp(-integral)
    return float(np.angle(total))


def cyclic_path_samples(h, n_op, path: PhasePath, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample U0(t) = R(t) exp(-i*t*H) over one cycle of the shift phase.

    Returns the sample list and the cycle-closing U0(period); for integer
    photon numbers R(period) = exp(-2*pi*i*n_hat) is the identity, so the
    final operator is exp(-i*period*H).
    """
    hm = as_matrix(h)
    nm = as_matrix(n_op)
    if hm.shape != nm.shape:
        raise DimensionMismatchError(f"H is {hm.shape}, number operator is {nm.shape}")
    eig_h = eig_hermitian(hm)
    eig_n = eig_hermitian(nm)
    ts = path.times(count)
    phis = path.phases(count)
    pn = np.exp(-1j * np.outer(phis, eig_n.values))       # (T, d)
    ph = np.exp(-1j * np.outer(ts, eig_h.values))         # (T, d)
    bridge = eig_n.vectors.conj().T @ eig_h.vectors
    samples = np.einsum("ia,ta,ab,tb,jb->tij", eig_n.vectors, pn, bridge, ph,
                        eig_h.vectors.conj(), optimize=True)
    u_final = (eig_h.vectors * np.exp(-1j * path.period * eig_h.values)) @ eig_h.vectors.conj().T
    return samples, u_final


def berry_phase_mixed_for_cycle(ensemble: MixedEnsemble, h, n_op, path: PhasePath,
                                initial_samples: int = DEFAULT_SAMPLES,
                                tol: float = 1e-8,
                                max_samples: int = MAX_SAMPLES) -> float:
    """Adaptive driver: double the cycle sampling until the phase settles.

    Stops when two successive refinements differ by less than ``tol`` or the
    sample cap is reached, and returns the finest result.
    """
    count = initial_samples
    samples, u_final = cyclic_path_samples(h, n_op, path, count)
    result = berry_phase_mixed(ensemble, samples, u_final, path.period)
    while count < max_samples:
        count *= 2
        samples, u_final = cyclic_path_samples(h, n_op, path, count)
        refined = berry_phase_mixed(ensemble, samples, u_final, path.period)
        done = abs((refined - result + math.pi) % TWO_PI - math.pi) < tol
        result = refined
        if done:
            break
    return result


def two_qubit_berry(amplitudes) -> PhaseValue:
    """Two-qubit eigenstate phase 2*pi*(|a1|^2 - |a4|^2) in [-2*pi, 2*pi]."""
    a = _check_state(amplitudes)
    if a.size != 4:
        raise DimensionMismatchError(f"need 4 amplitudes, got {a.size}")
    raw = TWO_PI * float(abs(a[0]) ** 2 - abs(a[3]) ** 2)
    return _phase_value(raw)
