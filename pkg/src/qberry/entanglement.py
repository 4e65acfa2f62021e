"""Entanglement measures: von Neumann entropy and two-qubit concurrence."""

from __future__ import annotations

import numpy as np

from .errors import NotDensityMatrixError, NotNormalizedError, WrongDimensionError
from .linalg import as_matrix, eig_hermitian, hermiticity_defect

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SYSY = np.kron(_SIGMA_Y, _SIGMA_Y)

# eigenvalue magnitudes below this (relative to the largest) are rounding
# noise; they must be zeroed before square roots, which would otherwise
# blow machine epsilon up to ~1e-8
_NOISE_FLOOR = 1e-12


def _check_density_matrix(rho) -> np.ndarray:
    r = as_matrix(rho)
    if r.shape[0] != r.shape[1]:
        raise NotDensityMatrixError(f"density matrix must be square, got {r.shape}")
    if hermiticity_defect(r) > 1e-9:
        raise NotDensityMatrixError("density matrix is not Hermitian")
    trace = float(np.trace(r).real)
    if abs(trace - 1.0) > 1e-10:
        raise NotDensityMatrixError(f"trace {trace} differs from 1 beyond 1e-10")
    return 0.5 * (r + r.conj().T)


def von_neumann_entropy(rho) -> float:
    """S = -sum_i Y_i ln Y_i over the eigenvalues of a density matrix (nats)."""
    r = _check_density_matrix(rho)
    evals = eig_hermitian(r).values
    if evals[0] < -1e-10:
        raise NotDensityMatrixError(f"negative eigenvalue {evals[0]:.3e} beyond tolerance")
    out = 0.0
    for y in evals:
        if y > 1e-14:
            out -= y * np.log(y)
    return max(out, 0.0)


def concurrence_wootters(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Computes rho_tilde = (sy x sy) rho* (sy x sy) and the decreasing
    square-root eigenvalues lambda_i of rho*rho_tilde through the Hermitian
    product sqrt(rho)*rho_tilde*sqrt(rho); returns
    max(0, l1 - l2 - l3 - l4).
    """
    r = as_matrix(rho)
    if r.shape != (4, 4):
        raise WrongDimensionError(f"two-qubit state must be 4x4, got {r.shape}")
    r = _check_density_matrix(r)
    eig = eig_hermitian(r)
    if eig.values[0] < -1e-10:
        raise NotDensityMatrixError(f"negative eigenvalue {eig.values[0]:.3e} beyond tolerance")
    sqrt_vals = np.sqrt(np.clip(eig.values, 0.0, None))
    sqrt_rho = (eig.vectors * sqrt_vals) @ eig.vectors.conj().T
    rho_tilde = _SYSY @ r.conj() @ _SYSY
    product = sqrt_rho @ rho_tilde @ sqrt_rho
    vals = eig_hermitian(0.5 * (product + product.conj().T)).values
    floor = _NOISE_FLOOR * max(1.0, float(np.max(np.abs(vals))))
    vals = np.where(np.abs(vals) < floor, 0.0, np.clip(vals, 0.0, None))
    lams = np.sort(np.sqrt(vals))[::-1]
    return max(0.0, float(lams[0] - lams[1] - lams[2] - lams[3]))


def _check_amplitudes(amplitudes) -> np.ndarray:
    a = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if a.size != 4:
        raise WrongDimensionError(f"need 4 amplitudes, got {a.size}")
    norm = float(np.linalg.norm(a))
    if abs(norm - 1.0) > 1e-10:
        raise NotNormalizedError(f"amplitude norm {norm} is not 1 within 1e-10")
    return a


def concurrence_pure(amplitudes) -> float:
    """Pure-state concurrence 2*|a1*a4 - a2*a3| in the product basis."""
    a = _check_amplitudes(amplitudes)
    return 2.0 * float(abs(a[0] * a[3] - a[1] * a[2]))


def paper_cn(amplitudes) -> float:
    """Literal alternative form 2*max(0, |a1*a3 - a2|^2).

    Kept for reproduction and side-by-side comparison only: on generic
    states it disagrees with the Wootters-consistent ``concurrence_pure``
    and can exceed 1.
    """
    a = _check_amplitudes(amplitudes)
    return 2.0 * max(0.0, float(abs(a[0] * a[2] - a[1]) ** 2))
