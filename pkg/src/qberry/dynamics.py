"""Dressed states and the spectral evolution operator.

Each complete excitation sector diagonalizes into dressed states
|psi_l^(n)> with energies Omega_l^(n); the propagator is assembled from
their spectral projectors,

    U(t) = sum_n sum_l exp(-i*t*Omega_l^(n)) |psi_l^(n)><psi_l^(n)|
           + sum_s exp(-i*t*Omega_0(s)) |g..g,s><g..g,s|,

plus exact diagonalization of the low-photon partial sectors of the
two-qubit model. States whose block partners fall above the Fock cutoff
are propagated with bare-energy phases and must be excluded from physics
assertions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, UnsupportedQubitCountError
from .hamiltonian import (
    BasisLabel,
    ExcitationSector,
    ModelConfig,
    diagonal_energy,
    excitation_sectors,
    sector_matrix,
)
from .linalg import as_matrix, eig_hermitian


@dataclass(frozen=True)
class DressedBlock:
    """Eigendata of one complete excitation block.

    ``amplitudes[i, j]`` is the coefficient of basis state i in dressed
    eigenstate j; ``omegas`` ascend and the amplitude matrix is unitary.
    """

    n: int
    basis: tuple[BasisLabel, ...]
    omegas: np.ndarray
    amplitudes: np.ndarray


@dataclass(frozen=True)
class UncoupledBand:
    """The k all-ground states |g..g, s>, 0 <= s < k, with their energies."""

    states: tuple[BasisLabel, ...]
    energies: np.ndarray


def dressed_spectrum(c: ModelConfig) -> tuple[list[DressedBlock], UncoupledBand]:
    """Diagonalize every complete excitation block of a 1- or 2-qubit model."""
    if c.num_qubits not in (1, 2):
        raise UnsupportedQubitCountError(f"dressed_spectrum supports m in {{1,2}}, got {c.num_qubits}")
    blocks = []
    uncoupled_states = []
    uncoupled_energies = []
    for sector in excitation_sectors(c):
        if sector.kind == "complete":
            eig = eig_hermitian(sector_matrix(c, sector))
            blocks.append(
                DressedBlock(
                    n=sector.labels[0].photon_number,
                    basis=sector.labels,
                    omegas=eig.values,
                    amplitudes=eig.vectors,
                )
            )
        elif sector.kind == "uncoupled":
            lab = sector.labels[0]
            uncoupled_states.append(lab)
            uncoupled_energies.append(diagonal_energy(c, lab.qubit_states, lab.photon_number))
    band = UncoupledBand(states=tuple(uncoupled_states), energies=np.array(uncoupled_energies))
    return blocks, band


def evolution_operator(c: ModelConfig, t: float) -> np.ndarray:
    """Assemble U(t) on the full truncated space from the dressed spectrum.

    Complete blocks and the exact partial sectors use their spectral
    projectors; cutoff-edge states advance with bare-energy phases only,
    so U(t) is unitary everywhere but matches exp(-i*H*t) just on the
    physical (non-edge) subspace.
    """
    if c.num_qubits not in (1, 2):
        raise UnsupportedQubitCountError(f"evolution_operator supports m in {{1,2}}, got {c.num_qubits}")
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    u = np.zeros((c.dim, c.dim), dtype=complex)
    for sector in excitation_sectors(c):
        idx = np.array(sector.indices)
        if sector.kind in ("complete", "partial"):
            eig = eig_hermitian(sector_matrix(c, sector))
            phases = np.exp(-1j * t * eig.values)
            v = eig.vectors
            u[np.ix_(idx, idx)] = (v * phases) @ v.conj().T
        else:
            for lab, i in zip(sector.labels, sector.indices):
                energy = diagonal_energy(c, lab.qubit_states, lab.photon_number)
                u[i, i] = np.exp(-1j * t * energy)
    return u


def physical_projector(c: ModelConfig) -> np.ndarray:
    """Projector onto the complete + partial + uncoupled sectors (no edge states)."""
    p = np.zeros((c.dim, c.dim), dtype=complex)
    for sector in excitation_sectors(c):
        if sector.kind != "edge":
            for i in sector.indices:
                p[i, i] = 1.0
    return p


def evolve(rho0, u) -> np.ndarray:
    """Conjugate a state by a propagator: U * rho0 * U^dagger."""
    r = as_matrix(rho0)
    um = as_matrix(u)
    if r.shape[0] != r.shape[1] or um.shape[0] != um.shape[1] or r.shape[0] != um.shape[0]:
        raise DimensionMismatchError(f"state {r.shape} vs operator {um.shape}")
    return um @ r @ um.conj().T
