"""Cooper-pair-box circuit parameters and their two-level reduction.

A voltage-biased superconducting island coupled through a two-junction
SQUID loop reduces, in the two lowest charge states, to an effective qubit
described by the gate-induced offset ``epsilon``, the mixing angle ``eta``
(tan 2*eta = E_J0 / (2*epsilon)) and the level splitting
``E = sqrt(4*epsilon**2 + E_J0**2)``.

The library's sweep engines run in dimensionless units (hbar = 1, cavity
coupling scale = 1); this module is the optional front-end that maps real
circuit numbers onto those model inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonPositiveCapacitanceError

ELEMENTARY_CHARGE = 1.602176634e-19  # coulomb

_UNITS = ("dimensionless", "si")


@dataclass(frozen=True)
class DeviceParams:
    """Circuit parameters of one voltage-biased Cooper-pair box.

    In ``dimensionless`` units the electron charge is 1 and capacitances,
    voltages and energies are plain ratios; ``si`` switches to coulombs,
    farads, volts and joules.
    """

    josephson_energy: float          # bare junction energy E_J0 > 0
    gate_capacitance: float          # C_g > 0
    junction_capacitance: float      # C_J > 0 (each of the two junctions)
    gate_voltage: float
    flux_ratio: float = 0.5          # static flux / flux quantum, in [0, 1)
    units: str = "dimensionless"

    def __post_init__(self):
        if self.gate_capacitance <= 0 or self.junction_capacitance <= 0:
            raise NonPositiveCapacitanceError(
                f"capacitances must be positive, got C_g={self.gate_capacitance}, "
                f"C_J={self.junction_capacitance}"
            )
        if self.josephson_energy <= 0:
            raise ValueError("josephson_energy must be positive")
        if not 0.0 <= self.flux_ratio < 1.0:
            raise ValueError(f"flux_ratio must lie in [0, 1), got {self.flux_ratio}")
        if self.units not in _UNITS:
            raise ValueError(f"units must be one of {_UNITS}")

    @property
    def electron_charge(self) -> float:
        return 1.0 if self.units == "dimensionless" else ELEMENTARY_CHARGE


@dataclass(frozen=True)
class EffectiveQubit:
    """Two-level reduction of a Cooper-pair box.

    ``coupling_prefactor`` is E_J0*cos(2*eta), the scale of the
    qubit-field flip coupling; ``diagonal_prefactor`` is
    E_J0*sin(2*eta)*cos(pi*flux_ratio), the flux-modulated sigma_z term.
    """

    epsilon: float
    eta: float
    splitting: float
    coupling_prefactor: float
    diagonal_prefactor: float
    flux_ratio: float

    @property
    def sigma_z_modulation(self) -> float:
        """E_J0*sin(2*eta) without the flux factor, as the block builder wants it."""
        ej0 = math.sqrt(max(self.splitting**2 - 4.0 * self.epsilon**2, 0.0))
        return ej0 * math.sin(2.0 * self.eta)


def charging_energy(p: DeviceParams) -> float:
    """Single-electron charging energy e**2 / (2*(C_g + 2*C_J)).

    The denominator counts both junctions of the SQUID loop.
    """
    e = p.electron_charge
    return e * e / (2.0 * (p.gate_capacitance + 2.0 * p.junction_capacitance))


def effective_qubit(p: DeviceParams) -> EffectiveQubit:
    """Reduce circuit parameters to (epsilon, eta, E) in the N=0 charge sector.

    epsilon = 2*E_c*(C_g*V_g/e - 1); eta = atan(E_J0/(2*epsilon))/2 with
    eta = pi/4 at the degeneracy point; E = sqrt(4*epsilon**2 + E_J0**2).
    """
    e = p.electron_charge
    ec = charging_energy(p)
    eps = 2.0 * ec * (p.gate_capacitance * p.gate_voltage / e - 1.0)
    eta = 0.5 * math.atan2(p.josephson_energy, 2.0 * eps)
    if eta > math.pi / 4.0:
        # keep eta in (-pi/4, pi/4]; tan(2*eta) is pi-periodic so the
        # wrapped angle satisfies the same defining relation
        eta -= math.pi / 2.0
    splitting = math.hypot(2.0 * eps, p.josephson_energy)
    cos2 = math.cos(2.0 * eta)
    sin2 = math.sin(2.0 * eta)
    return EffectiveQubit(
        epsilon=eps,
        eta=eta,
        splitting=splitting,
        coupling_prefactor=p.josephson_energy * cos2,
        diagonal_prefactor=p.josephson_energy * sin2 * math.cos(math.pi * p.flux_ratio),
        flux_ratio=p.flux_ratio,
    )
