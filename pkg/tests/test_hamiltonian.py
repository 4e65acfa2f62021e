import math

import numpy as np
import pytest

from qberry.errors import CutoffTooSmallError, WrongQubitCountError
from qberry.hamiltonian import (
    BasisLabel,
    ModelConfig,
    build_hamiltonian,
    diagonal_energy,
    excitation_operator,
    excitation_sectors,
    number_operator,
    sector_matrix,
    single_qubit_block,
    state_index,
    two_qubit_block,
)


def random_config(rng, m=1, k=1):
    return ModelConfig(
        num_qubits=m,
        photon_order=k,
        fock_cutoff=int(rng.integers(2 * k + 2, 2 * k + 6)),
        photon_energy=float(rng.uniform(0.5, 1.5)),
        qubit_splitting=tuple(float(rng.uniform(0.5, 3.0)) for _ in range(m)),
        coupling=tuple(float(rng.uniform(0.1, 1.5)) for _ in range(m)),
        diag_coupling=tuple(float(rng.uniform(0.0, 0.5)) for _ in range(m)),
        flux_ratio=float(rng.uniform(0.0, 0.99)),
    )


class TestModelConfig:
    def test_cutoff_floor(self):
        with pytest.raises(CutoffTooSmallError):
            ModelConfig(num_qubits=1, photon_order=2, fock_cutoff=5)

    def test_detuning_by_construction(self):
        c = ModelConfig.from_detuning(0.7, photon_order=2, photon_energy=1.3)
        assert c.detuning == pytest.approx(0.7, abs=1e-12)
        assert c.splittings[0] == pytest.approx(2 * 1.3 + 0.7, rel=1e-15)

    def test_per_qubit_values(self):
        c = ModelConfig(num_qubits=2, photon_order=1, fock_cutoff=4,
                        qubit_splitting=(1.0, 1.2), coupling=(0.5, 0.6))
        assert c.splittings == (1.0, 1.2)
        assert c.couplings == (0.5, 0.6)
        assert not c.identical_qubits()

    def test_negative_coupling_rejected(self):
        with pytest.raises(ValueError):
            ModelConfig(num_qubits=1, photon_order=1, fock_cutoff=4, coupling=-1.0)

    def test_from_device_qubits(self):
        from qberry.device import DeviceParams, effective_qubit

        q = effective_qubit(DeviceParams(
            josephson_energy=1.2,
            gate_capacitance=1.0,
            junction_capacitance=0.25,
            gate_voltage=2.2,
            flux_ratio=0.5,
        ))
        c = ModelConfig.from_qubits([q, q], photon_order=1, photon_energy=1.0)
        assert c.num_qubits == 2
        assert c.splittings[0] == pytest.approx(q.splitting)
        assert c.couplings[0] == pytest.approx(abs(q.coupling_prefactor))
        assert c.flux_ratio == 0.5
        # at half flux the sigma_z modulation drops out of the Hamiltonian
        assert diagonal_energy(c, ("e", "e"), 0) == pytest.approx(0.5 + q.splitting)


class TestBuildHamiltonian:
    def test_decoupled_is_diagonal(self):
        c = ModelConfig(num_qubits=1, photon_order=1, fock_cutoff=4,
                        coupling=0.0, qubit_splitting=2.0, flux_ratio=0.5)
        h = build_hamiltonian(c)
        assert np.max(np.abs(h - np.diag(np.diag(h)))) == 0.0
        nph = c.fock_cutoff + 1
        for n in range(nph):
            assert h[n, n].real == pytest.approx(c.photon_energy * (n + 0.5) + 1.0)
            assert h[nph + n, nph + n].real == pytest.approx(c.photon_energy * (n + 0.5) - 1.0)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_hermitian(self, seed):
        rng = np.random.default_rng(seed)
        c = random_config(rng, m=1, k=1)
        h = build_hamiltonian(c)
        assert np.max(np.abs(h - h.conj().T)) < 1e-12

    @pytest.mark.parametrize("m,k", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_excitation_conserved(self, m, k):
        rng = np.random.default_rng(10 * m + k)
        c = random_config(rng, m=m, k=k)
        h = build_hamiltonian(c)
        n_exc = excitation_operator(c)
        comm = h @ n_exc - n_exc @ h
        assert np.max(np.abs(comm)) < 1e-12

    def test_number_operator_shape(self):
        c = ModelConfig(num_qubits=2, photon_order=1, fock_cutoff=4)
        nop = number_operator(c)
        assert nop.shape == (c.dim, c.dim)
        assert nop[1, 1] == 1.0 and nop[c.fock_cutoff + 1 + 2, c.fock_cutoff + 1 + 2] == 2.0

    def test_full_space_overflow(self):
        from qberry.errors import DimensionOverflowError

        c = ModelConfig(num_qubits=1, photon_order=1, fock_cutoff=2100)
        with pytest.raises(DimensionOverflowError):
            build_hamiltonian(c)


class TestSingleQubitBlock:
    def test_resonance_symmetry(self):
        c = ModelConfig.from_detuning(0.0, photon_order=1, coupling=0.8)
        block = single_qubit_block(c, 0)
        assert block[0, 1] == pytest.approx(0.8)
        assert block[0, 0] == pytest.approx(block[1, 1])

    def test_factorial_ratio(self):
        c = ModelConfig(num_qubits=1, photon_order=2, fock_cutoff=6, coupling=0.7)
        block = single_qubit_block(c, 1)
        # sqrt(3!/1!) = sqrt(6)
        assert block[0, 1].real == pytest.approx(0.7 * math.sqrt(6.0), rel=1e-14)

    @pytest.mark.parametrize("seed", [3, 4])
    def test_block_eigenvalues_in_full_spectrum(self, seed):
        rng = np.random.default_rng(seed)
        c = random_config(rng, m=1, k=1)
        full = np.linalg.eigvalsh(build_hamiltonian(c))
        for n in range(c.fock_cutoff - c.photon_order + 1):
            for val in np.linalg.eigvalsh(single_qubit_block(c, n)):
                assert np.min(np.abs(full - val)) < 1e-10

    def test_cutoff_guard(self):
        c = ModelConfig(num_qubits=1, photon_order=1, fock_cutoff=4)
        with pytest.raises(CutoffTooSmallError):
            single_qubit_block(c, 4)

    def test_wrong_qubit_count(self):
        c = ModelConfig(num_qubits=2, photon_order=1, fock_cutoff=4)
        with pytest.raises(WrongQubitCountError):
            single_qubit_block(c, 0)


class TestTwoQubitBlock:
    def test_swap_symmetry(self):
        c = ModelConfig(num_qubits=2, photon_order=1, fock_cutoff=6,
                        qubit_splitting=1.4, coupling=0.9, diag_coupling=0.2,
                        flux_ratio=0.3)
        block = two_qubit_block(c, 1)
        perm = [0, 2, 1, 3]
        assert np.max(np.abs(block - block[np.ix_(perm, perm)])) < 1e-12

    def test_decoupled_diagonal(self):
        w, e = 1.1, 1.7
        c = ModelConfig(num_qubits=2, photon_order=2, fock_cutoff=8,
                        photon_energy=w, qubit_splitting=e, coupling=0.0,
                        flux_ratio=0.5)
        n, k = 1, 2
        block = two_qubit_block(c, n)
        assert np.max(np.abs(block - np.diag(np.diag(block)))) == 0.0
        expected = [
            w * (n + 0.5) + e,
            w * (n + k + 0.5),
            w * (n + k + 0.5),
            w * (n + 2 * k + 0.5) - e,
        ]
        assert np.allclose(np.diag(block).real, expected, atol=1e-12)

    def test_no_direct_double_flip(self):
        rng = np.random.default_rng(8)
        c = random_config(rng, m=2, k=1)
        block = two_qubit_block(c, 0)
        assert block[0, 3] == 0.0

    @pytest.mark.parametrize("seed", [5, 6])
    def test_block_eigenvalues_in_full_spectrum(self, seed):
        rng = np.random.default_rng(seed)
        c = random_config(rng, m=2, k=1)
        full = np.linalg.eigvalsh(build_hamiltonian(c))
        for n in range(c.fock_cutoff - 2 * c.photon_order + 1):
            for val in np.linalg.eigvalsh(two_qubit_block(c, n)):
                assert np.min(np.abs(full - val)) < 1e-10

    def test_cutoff_guard(self):
        c = ModelConfig(num_qubits=2, photon_order=2, fock_cutoff=6)
        with pytest.raises(CutoffTooSmallError):
            two_qubit_block(c, 3)


class TestSectors:
    @pytest.mark.parametrize("m,k", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_sectors_partition_the_space(self, m, k):
        rng = np.random.default_rng(100 * m + k)
        c = random_config(rng, m=m, k=k)
        seen = []
        for sector in excitation_sectors(c):
            seen.extend(sector.indices)
        assert sorted(seen) == list(range(c.dim))

    @pytest.mark.parametrize("m,k", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_sector_spectra_union_is_full_spectrum(self, m, k):
        # H is block diagonal over excitation sectors, so the multiset of
        # all sector eigenvalues must reproduce the full spectrum
        rng = np.random.default_rng(200 * m + k)
        c = random_config(rng, m=m, k=k)
        h = build_hamiltonian(c)
        collected = []
        for sector in excitation_sectors(c):
            collected.extend(np.linalg.eigvalsh(sector_matrix(c, sector)))
        assert np.allclose(np.sort(collected), np.linalg.eigvalsh(h), atol=1e-9)

    def test_complete_sector_matches_block_builders(self):
        rng = np.random.default_rng(9)
        c1 = random_config(rng, m=1, k=2)
        for sector in excitation_sectors(c1):
            if sector.kind == "complete":
                n = sector.block_n
                assert np.allclose(sector_matrix(c1, sector), single_qubit_block(c1, n))
        c2 = random_config(rng, m=2, k=1)
        for sector in excitation_sectors(c2):
            if sector.kind == "complete":
                n = sector.block_n
                assert np.allclose(sector_matrix(c2, sector), two_qubit_block(c2, n))

    def test_uncoupled_band_size(self):
        c = ModelConfig(num_qubits=1, photon_order=3, fock_cutoff=8)
        uncoupled = [s for s in excitation_sectors(c) if s.kind == "uncoupled"]
        assert len(uncoupled) == 3
        assert all(s.labels[0].qubit_states == ("g",) for s in uncoupled)

    def test_state_index_round_trip(self):
        c = ModelConfig(num_qubits=2, photon_order=1, fock_cutoff=4)
        seen = set()
        for states in (("e", "e"), ("e", "g"), ("g", "e"), ("g", "g")):
            for n in range(c.fock_cutoff + 1):
                seen.add(state_index(c, BasisLabel(states, n)))
        assert seen == set(range(c.dim))

    def test_diagonal_energy_matches_full_matrix(self):
        rng = np.random.default_rng(12)
        c = random_config(rng, m=2, k=1)
        h = build_hamiltonian(c)
        label = BasisLabel(("g", "e"), 2)
        idx = state_index(c, label)
        assert h[idx, idx].real == pytest.approx(
            diagonal_energy(c, label.qubit_states, label.photon_number), rel=1e-14
        )
