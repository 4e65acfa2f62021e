"""Berry phases and entanglement for charge qubits coupled to a cavity mode."""

__version__ = "0.1.0"

from .device import DeviceParams, EffectiveQubit, charging_energy, effective_qubit
from .dynamics import (
    DressedBlock,
    UncoupledBand,
    dressed_spectrum,
    evolution_operator,
    evolve,
    physical_projector,
)
from .entanglement import concurrence_pure, concurrence_wootters, paper_cn, von_neumann_entropy
from .geometry import (
    MixedEnsemble,
    PhasePath,
    PhaseValue,
    berry_phase_dressed_closed_form,
    berry_phase_mixed,
    berry_phase_mixed_for_cycle,
    berry_phase_pure,
    cyclic_path_samples,
    parallel_transport_residual,
    rotated_hamiltonian,
    two_qubit_berry,
)
from .hamiltonian import (
    BasisLabel,
    ModelConfig,
    build_hamiltonian,
    excitation_operator,
    excitation_sectors,
    number_operator,
    single_qubit_block,
    state_index,
    two_qubit_block,
)
from .linalg import HermitianEigen, eig_hermitian, exp_hermitian, kron, partial_trace
from .sweep import (
    SweepRecord,
    SweepSpec,
    parse_config,
    run_custom,
    run_fig2,
    run_fig3,
    serialize_config,
)

__all__ = [
    "BasisLabel",
    "DeviceParams",
    "DressedBlock",
    "EffectiveQubit",
    "HermitianEigen",
    "MixedEnsemble",
    "ModelConfig",
    "PhasePath",
    "PhaseValue",
    "SweepRecord",
    "SweepSpec",
    "UncoupledBand",
    "berry_phase_dressed_closed_form",
    "berry_phase_mixed",
    "berry_phase_mixed_for_cycle",
    "berry_phase_pure",
    "build_hamiltonian",
    "charging_energy",
    "concurrence_pure",
    "concurrence_wootters",
    "cyclic_path_samples",
    "dressed_spectrum",
    "effective_qubit",
    "eig_hermitian",
    "evolution_operator",
    "evolve",
    "excitation_operator",
    "excitation_sectors",
    "exp_hermitian",
    "kron",
    "number_operator",
    "paper_cn",
    "parallel_transport_residual",
    "parse_config",
    "partial_trace",
    "physical_projector",
    "rotated_hamiltonian",
    "run_custom",
    "run_fig2",
    "run_fig3",
    "serialize_config",
    "single_qubit_block",
    "state_index",
    "two_qubit_block",
    "two_qubit_berry",
    "von_neumann_entropy",
]
