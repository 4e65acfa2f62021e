"""Multi-qubit k-photon Hamiltonian on a truncated Fock space.

The model couples m charge qubits to one cavity mode through a k-photon
exchange:

    H = w*(n_hat + 1/2)
        + sum_j [E_j/2 - d_j*cos(pi*flux)*f(n_hat)] * sigma_z^(j)
        + sum_j [g_j * psi^k * g_k(n_hat) * sigma_+^(j) + h.c.]

with psi the photon annihilation operator, f and g_k diagonal photon-number
profiles (constant 1 by default), g_j the flip-coupling energy per qubit and
d_j the flux-modulated sigma_z coupling. The conserved excitation number
n_hat + k*sum_j (sigma_z^(j)+1)/2 splits H into small blocks; the 2x2 and
4x4 builders below produce those blocks directly.

Basis ordering: qubit states (|e>, |g>) per qubit, Kronecker product
qubit_1 x ... x qubit_m x field, so a label maps to the flat index
config * (N_max+1) + photon with config the big-endian bit pattern
(e=0, g=1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CutoffTooSmallError,
    DimensionOverflowError,
    WrongQubitCountError,
)

EXCITED = "e"
GROUND = "g"


def _as_per_qubit(value, m: int, name: str) -> tuple[float, ...]:
    if np.isscalar(value):
        return (float(value),) * m
    out = tuple(float(x) for x in value)
    if len(out) != m:
        raise ValueError(f"{name} needs one value per qubit, got {len(out)} for m={m}")
    return out


@dataclass(frozen=True)
class ModelConfig:
    """Full simulation configuration.

    ``qubit_splitting`` / ``coupling`` / ``diag_coupling`` accept either a
    scalar (identical qubits) or one value per qubit. ``f_profile`` and
    ``gk_profile`` are optional per-photon-number tables for the diagonal
    modulation f(n_hat) and the k-photon coupling profile g_k(n_hat); when
    omitted both default to the constant function 1.
    """

    num_qubits: int
    photon_order: int
    fock_cutoff: int
    photon_energy: float = 1.0
    qubit_splitting: float | tuple[float, ...] = 1.0
    coupling: float | tuple[float, ...] = 1.0
    diag_coupling: float | tuple[float, ...] = 0.0
    flux_ratio: float = 0.5
    f_profile: tuple[float, ...] | None = None
    gk_profile: tuple[float, ...] | None = None
    splittings: tuple[float, ...] = field(init=False)
    couplings: tuple[float, ...] = field(init=False)
    diag_couplings: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise WrongQubitCountError(f"num_qubits must be >= 1, got {self.num_qubits}")
        if self.photon_order < 1:
            raise ValueError(f"photon_order must be >= 1, got {self.photon_order}")
        if self.fock_cutoff < 2 * self.photon_order + 2:
            raise CutoffTooSmallError(
                f"fock_cutoff {self.fock_cutoff} < 2k+2 = {2 * self.photon_order + 2}"
            )
        if self.photon_energy <= 0:
            raise ValueError("photon_energy must be positive")
        if not 0.0 <= self.flux_ratio < 1.0:
            raise ValueError(f"flux_ratio must lie in [0, 1), got {self.flux_ratio}")
        m = self.num_qubits
        object.__setattr__(self, "splittings", _as_per_qubit(self.qubit_splitting, m, "qubit_splitting"))
        object.__setattr__(self, "couplings", _as_per_qubit(self.coupling, m, "coupling"))
        object.__setattr__(self, "diag_couplings", _as_per_qubit(self.diag_coupling, m, "diag_coupling"))
        if any(g < 0 for g in self.couplings):
            raise ValueError("couplings must be non-negative")
        for name, profile in (("f_profile", self.f_profile), ("gk_profile", self.gk_profile)):
            if profile is not None and len(profile) < self.fock_cutoff + 1:
                raise ValueError(f"{name} must cover photon numbers 0..{self.fock_cutoff}")

    @classmethod
    def from_detuning(cls, delta: float, *, photon_order: int = 1, num_qubits: int = 1,
                      fock_cutoff: int | None = None, coupling=1.0, photon_energy: float = 1.0,
                      flux_ratio: float = 0.5, **kwargs) -> "ModelConfig":
        """Dimensionless construction: splitting E = k*w + delta at w = 1 by default."""
        if fock_cutoff is None:
            fock_cutoff = 2 * photon_order + 2
        return cls(
            num_qubits=num_qubits,
            photon_order=photon_order,
            fock_cutoff=fock_cutoff,
            photon_energy=photon_energy,
            qubit_splitting=photon_order * photon_energy + delta,
            coupling=coupling,
            flux_ratio=flux_ratio,
            **kwargs,
        )

    @classmethod
    def from_qubits(cls, qubits, *, photon_order: int = 1, fock_cutoff: int | None = None,
                    photon_energy: float = 1.0, field_scale: float = 1.0) -> "ModelConfig":
        """Build a model from reduced device qubits (see the device module).

        Each qubit contributes its level splitting, a flip coupling
        field_scale * E_J0*cos(2*eta) and the sigma_z modulation
        E_J0*sin(2*eta); the flux ratio is shared and must agree.
        """
        qubits = list(qubits)
        if not qubits:
            raise WrongQubitCountError("need at least one qubit")
        flux = qubits[0].flux_ratio
        if any(abs(q.flux_ratio - flux) > 1e-12 for q in qubits):
            raise ValueError("all qubits must share the applied flux ratio")
        if fock_cutoff is None:
            fock_cutoff = 2 * photon_order + 2
        return cls(
            num_qubits=len(qubits),
            photon_order=photon_order,
            fock_cutoff=fock_cutoff,
            photon_energy=photon_energy,
            qubit_splitting=tuple(q.splitting for q in qubits),
            coupling=tuple(abs(field_scale * q.coupling_prefactor) for q in qubits),
            diag_coupling=tuple(q.sigma_z_modulation for q in qubits),
            flux_ratio=flux,
        )

    @property
    def detuning(self) -> float:
        """delta = E - k*w (first qubit's splitting)."""
        return self.splittings[0] - self.photon_order * self.photon_energy

    @property
    def dim(self) -> int:
        return (2 ** self.num_qubits) * (self.fock_cutoff + 1)

    def f_value(self, n: int) -> float:
        return 1.0 if self.f_profile is None else self.f_profile[n]

    def gk_value(self, n: int) -> float:
        return 1.0 if self.gk_profile is None else self.gk_profile[n]

    def identical_qubits(self) -> bool:
        return (
            len(set(self.splittings)) == 1
            and len(set(self.couplings)) == 1
            and len(set(self.diag_couplings)) == 1
        )


@dataclass(frozen=True)
class BasisLabel:
    """One product basis state: a qubit letter per qubit plus a photon number."""

    qubit_states: tuple[str, ...]
    photon_number: int

    def __post_init__(self):
        if any(s not in (EXCITED, GROUND) for s in self.qubit_states):
            raise ValueError(f"qubit states must be 'e' or 'g', got {self.qubit_states}")
        if self.photon_number < 0:
            raise ValueError("photon_number must be >= 0")

    def __str__(self):
        return f"|{','.join(self.qubit_states)},{self.photon_number}>"


def state_index(c: ModelConfig, label: BasisLabel) -> int:
    """Flat index of a basis label in the full product space."""
    if len(label.qubit_states) != c.num_qubits:
        raise WrongQubitCountError(
            f"label has {len(label.qubit_states)} qubits, config has {c.num_qubits}"
        )
    if label.photon_number > c.fock_cutoff:
        raise CutoffTooSmallError(
            f"photon number {label.photon_number} above cutoff {c.fock_cutoff}"
        )
    config = 0
    for s in label.qubit_states:
        config = 2 * config + (0 if s == EXCITED else 1)
    return config * (c.fock_cutoff + 1) + label.photon_number


def _ladder_factor(c: ModelConfig, n_high: int, k: int) -> float:
    """Matrix element of psi^k * g_k(n_hat) between |n_high-k> and |n_high>."""
    out = c.gk_value(n_high)
    for m in range(n_high - k + 1, n_high + 1):
        out *= math.sqrt(m)
    return out


def diagonal_energy(c: ModelConfig, states: tuple[str, ...], n: int) -> float:
    """Diagonal entry of H for a product basis state."""
    e = c.photon_energy * (n + 0.5)
    cos_flux = math.cos(math.pi * c.flux_ratio)
    fval = c.f_value(n)
    for j, s in enumerate(states):
        sz = 1.0 if s == EXCITED else -1.0
        e += sz * (0.5 * c.splittings[j] - c.diag_couplings[j] * cos_flux * fval)
    return e


def build_hamiltonian(c: ModelConfig) -> np.ndarray:
    """Assemble the full Hamiltonian on the 2^m * (N_max+1) product space.

    Raising terms that would exceed the Fock cutoff are simply absent
    (hard truncation). The result is exactly Hermitian by construction.
    """
    nph = c.fock_cutoff + 1
    dim = c.dim
    if dim * dim > (1 << 22):
        raise DimensionOverflowError(f"full space of {dim}x{dim} is too large")
    k = c.photon_order

    h = np.zeros((dim, dim), dtype=complex)
    configs = list(range(2 ** c.num_qubits))

    def letters(config: int) -> tuple[str, ...]:
        bits = format(config, f"0{c.num_qubits}b")
        return tuple(EXCITED if b == "0" else GROUND for b in bits)

    for config in configs:
        states = letters(config)
        base = config * nph
        for n in range(nph):
            h[base + n, base + n] = diagonal_energy(c, states, n)
        # flip terms: sigma_+^(j) pairs (..g..) with (..e..), photon n+k -> n
        for j in range(c.num_qubits):
            bit = 1 << (c.num_qubits - 1 - j)
            if not config & bit:
                continue  # qubit j is excited here; handled from the ground side
            partner = config & ~bit
            for n in range(0, nph - k):
                amp = c.couplings[j] * _ladder_factor(c, n + k, k)
                row = partner * nph + n        # <..e.., n|
                col = config * nph + n + k     # |..g.., n+k>
                h[row, col] += amp
                h[col, row] += amp
    return h


def number_operator(c: ModelConfig) -> np.ndarray:
    """Photon number operator psi^dag*psi on the full product space."""
    nph = c.fock_cutoff + 1
    diag = np.tile(np.arange(nph, dtype=float), 2 ** c.num_qubits)
    return np.diag(diag).astype(complex)


def excitation_operator(c: ModelConfig) -> np.ndarray:
    """Conserved excitation number n_hat + k*sum_j (sigma_z^(j)+1)/2."""
    nph = c.fock_cutoff + 1
    dim = c.dim
    diag = np.zeros(dim)
    for config in range(2 ** c.num_qubits):
        excited = c.num_qubits - bin(config).count("1")
        for n in range(nph):
            diag[config * nph + n] = n + c.photon_order * excited
    return np.diag(diag).astype(complex)


def single_qubit_block(c: ModelConfig, n: int) -> np.ndarray:
    """2x2 block on span{|e,n>, |g,n+k>} for the one-qubit model."""
    if c.num_qubits != 1:
        raise WrongQubitCountError(f"single_qubit_block needs m=1, got m={c.num_qubits}")
    k = c.photon_order
    if n < 0 or n + k > c.fock_cutoff:
        raise CutoffTooSmallError(f"block n={n} needs photon number {n + k} > cutoff {c.fock_cutoff}")
    mu = c.couplings[0] * _ladder_factor(c, n + k, k)
    return np.array(
        [
            [diagonal_energy(c, (EXCITED,), n), mu],
            [mu, diagonal_energy(c, (GROUND,), n + k)],
        ],
        dtype=complex,
    )


def single_block_basis(c: ModelConfig, n: int) -> tuple[BasisLabel, BasisLabel]:
    k = c.photon_order
    return (BasisLabel((EXCITED,), n), BasisLabel((GROUND,), n + k))


def two_qubit_block(c: ModelConfig, n: int) -> np.ndarray:
    """4x4 block on span{|ee,n>, |eg,n+k>, |ge,n+k>, |gg,n+2k>}.

    There is no direct |ee,n> <-> |gg,n+2k> element; the two flips go
    through the one-photon-bundle intermediate states.
    """
    if c.num_qubits != 2:
        raise WrongQubitCountError(f"two_qubit_block needs m=2, got m={c.num_qubits}")
    k = c.photon_order
    if n < 0 or n + 2 * k > c.fock_cutoff:
        raise CutoffTooSmallError(
            f"block n={n} needs photon number {n + 2 * k} > cutoff {c.fock_cutoff}"
        )
    g1, g2 = c.couplings
    lo = _ladder_factor(c, n + k, k)        # couples photon n <-> n+k
    hi = _ladder_factor(c, n + 2 * k, k)    # couples photon n+k <-> n+2k
    ee, eg, ge, gg = (EXCITED, EXCITED), (EXCITED, GROUND), (GROUND, EXCITED), (GROUND, GROUND)
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = diagonal_energy(c, ee, n)
    h[1, 1] = diagonal_energy(c, eg, n + k)
    h[2, 2] = diagonal_energy(c, ge, n + k)
    h[3, 3] = diagonal_energy(c, gg, n + 2 * k)
    h[0, 1] = h[1, 0] = g2 * lo   # flip qubit 2: |eg,n+k> -> |ee,n>
    h[0, 2] = h[2, 0] = g1 * lo   # flip qubit 1: |ge,n+k> -> |ee,n>
    h[1, 3] = h[3, 1] = g1 * hi   # flip qubit 1: |gg,n+2k> -> |eg,n+k>
    h[2, 3] = h[3, 2] = g2 * hi   # flip qubit 2: |gg,n+2k> -> |ge,n+k>
    return h


def two_block_basis(c: ModelConfig, n: int) -> tuple[BasisLabel, ...]:
    k = c.photon_order
    return (
        BasisLabel((EXCITED, EXCITED), n),
        BasisLabel((EXCITED, GROUND), n + k),
        BasisLabel((GROUND, EXCITED), n + k),
        BasisLabel((GROUND, GROUND), n + 2 * k),
    )


@dataclass(frozen=True)
class ExcitationSector:
    """States sharing one excitation-number eigenvalue.

    ``kind`` is "complete" for full 2x2/4x4 dressed blocks, "uncoupled" for
    the all-ground states below the k-photon threshold, "partial" for the
    exact low-photon sectors of the two-qubit model, and "edge" for states
    whose block partners fall above the Fock cutoff.
    """

    value: int
    labels: tuple[BasisLabel, ...]
    indices: tuple[int, ...]
    kind: str

    @property
    def block_n(self) -> int | None:
        """Photon index n of the dressed block, for complete sectors."""
        return self.labels[0].photon_number if self.kind == "complete" else None


def excitation_sectors(c: ModelConfig) -> list[ExcitationSector]:
    """Partition the product basis by excitation number (m <= 2)."""
    m = c.num_qubits
    k = c.photon_order
    nmax = c.fock_cutoff
    sectors = []
    for v in range(nmax + m * k + 1):
        labels = []
        if m == 1:
            candidates = [((EXCITED,), v - k), ((GROUND,), v)]
        elif m == 2:
            candidates = [
                ((EXCITED, EXCITED), v - 2 * k),
                ((EXCITED, GROUND), v - k),
                ((GROUND, EXCITED), v - k),
                ((GROUND, GROUND), v),
            ]
        else:
            raise WrongQubitCountError(f"sector enumeration supports m <= 2, got m={m}")
        for states, n in candidates:
            if 0 <= n <= nmax:
                labels.append(BasisLabel(states, n))
        if not labels:
            continue
        full = 2 ** m
        if len(labels) == full:
            kind = "complete"
        elif v < k:
            kind = "uncoupled"
        elif v <= nmax:
            kind = "partial"   # m=2 only: k <= v < 2k, an exact 3-state sector
        else:
            kind = "edge"
        sectors.append(
            ExcitationSector(
                value=v,
                labels=tuple(labels),
                indices=tuple(state_index(c, lab) for lab in labels),
                kind=kind,
            )
        )
    return sectors


def sector_matrix(c: ModelConfig, sector: ExcitationSector) -> np.ndarray:
    """Hamiltonian restricted to one excitation sector (under hard truncation)."""
    labs = sector.labels
    size = len(labs)
    h = np.zeros((size, size), dtype=complex)
    k = c.photon_order
    for i, li in enumerate(labs):
        h[i, i] = diagonal_energy(c, li.qubit_states, li.photon_number)
        for j in range(i + 1, size):
            lj = labs[j]
            # a single qubit flip with a matching k-photon step?
            diff = [a for a, (si, sj) in enumerate(zip(li.qubit_states, lj.qubit_states)) if si != sj]
            if len(diff) != 1:
                continue
            q = diff[0]
            lo_lab, hi_lab = (li, lj) if li.photon_number < lj.photon_number else (lj, li)
            if hi_lab.photon_number - lo_lab.photon_number != k:
                continue
            if hi_lab.qubit_states[q] != GROUND:
                continue
            amp = c.couplings[q] * _ladder_factor(c, hi_lab.photon_number, k)
            h[i, j] = h[j, i] = amp
    return h
