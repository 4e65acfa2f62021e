"""Dense complex linear algebra kernel.

Everything downstream (Hamiltonian blocks, evolution operators, reduced
density matrices) runs on plain ``numpy.ndarray`` matrices of dtype
``complex128``. Eigendecomposition is done with cyclic Jacobi rotations,
which is simple, accurate and more than fast enough for the matrix sizes
that occur here (a few hundred square at most).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadSubsystemIndexError,
    DimensionMismatchError,
    DimensionOverflowError,
    NoConvergenceError,
    NotHermitianError,
    NotSquareError,
)

HERMITICITY_TOL = 1e-9
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
KRON_ENTRY_CAP = 1 << 20


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-d complex array and check that it is finite."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise NotSquareError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NotSquareError("matrix entries must be finite")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-abs entry of m - m^dagger."""
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    ``values`` are real and non-decreasing; the columns of ``vectors`` are
    the matching orthonormal eigenvectors, each phase-fixed so that its
    largest-magnitude component is real and positive.
    """

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.values) @ v.conj().T


def eig_hermitian(m) -> HermitianEigen:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix (asymmetry below 1e-9 in max-abs norm).

    Returns
    -------
    HermitianEigen
        Ascending real eigenvalues and orthonormal eigenvector columns.

    Raises
    ------
    NotSquareError, NotHermitianError, NoConvergenceError
    """
    a = as_matrix(m).copy()
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise NotSquareError(f"matrix is {a.shape[0]}x{a.shape[1]}")
    defect = hermiticity_defect(a)
    if defect >= HERMITICITY_TOL:
        raise NotHermitianError(f"asymmetry {defect:.3e} exceeds {HERMITICITY_TOL:.0e}")
    # symmetrize away representation noise below the tolerance
    a = 0.5 * (a + a.conj().T)

    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    off_tol = JACOBI_OFF_TOL * scale
    # elements below this cannot keep the off-norm above off_tol on their own
    skip = off_tol / (4.0 * n * n)

    diag_mask = ~np.eye(n, dtype=bool)
    converged = n == 1
    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.sqrt(np.sum(np.abs(a[diag_mask]) ** 2)))
        if off <= off_tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau != 0.0:
                    t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
                else:
                    t = 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # unitary plane rotation R: R[p,p]=R[q,q]=c,
                # R[p,q]=s*phase, R[q,p]=-s*conj(phase); a <- R^dag a R
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    if not converged:
        raise NoConvergenceError(f"Jacobi sweep cap {JACOBI_MAX_SWEEPS} exceeded")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    # deterministic gauge: largest-magnitude component real-positive
    for j in range(n):
        i = int(np.argmax(np.abs(v[:, j])))
        piv = v[i, j]
        if abs(piv) > 0.0:
            v[:, j] *= np.conj(piv) / abs(piv)
    return HermitianEigen(values=w, vectors=v)


def kron(a, b, max_entries: int = KRON_ENTRY_CAP) -> np.ndarray:
    """Kronecker product with an entry-count cap (default 2**20)."""
    am = as_matrix(a)
    bm = as_matrix(b)
    entries = am.shape[0] * bm.shape[0] * am.shape[1] * bm.shape[1]
    if entries > max_entries:
        raise DimensionOverflowError(f"kron result has {entries} entries, cap is {max_entries}")
    return np.kron(am, bm)


def partial_trace(rho, dims, keep: int) -> np.ndarray:
    """Trace out all subsystems except ``keep``.

    Parameters
    ----------
    rho : array_like
        Square matrix on the tensor product of subsystems with the given
        dimensions (row-major Kronecker ordering).
    dims : sequence of int
        Subsystem dimensions; their product must equal the matrix dimension.
    keep : int
        Index of the subsystem to keep.

    Returns
    -------
    numpy.ndarray of shape (dims[keep], dims[keep])
    """
    r = as_matrix(rho)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise DimensionMismatchError(f"bad subsystem dimensions {dims}")
    total = int(np.prod(dims))
    if r.shape[0] != r.shape[1] or r.shape[0] != total:
        raise DimensionMismatchError(
            f"matrix shape {r.shape} does not match subsystem dims {dims}"
        )
    if not 0 <= keep < len(dims):
        raise BadSubsystemIndexError(f"keep={keep} with {len(dims)} subsystems")
    k = len(dims)
    t = r.reshape(dims + dims)
    # contract the row/col axes of every traced-out subsystem
    for sub in range(k - 1, -1, -1):
        if sub == keep:
            continue
        t = np.trace(t, axis1=sub, axis2=sub + t.ndim // 2)
    return t


def exp_hermitian(h, t: float) -> np.ndarray:
    """Unitary exp(-i*t*h) of a Hermitian matrix via eigendecomposition."""
    eig = eig_hermitian(h)
    phases = np.exp(-1j * t * eig.values)
    v = eig.vectors
    return (v * phases) @ v.conj().T
