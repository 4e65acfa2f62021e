"""End-to-end acceptance checks with their stated tolerances.

Each test prints one PASS/FAIL line (run with -s to see them all).
"""

import math

import numpy as np

from qberry.dynamics import evolution_operator, physical_projector
from qberry.entanglement import concurrence_pure, concurrence_wootters, von_neumann_entropy
from qberry.geometry import (
    MixedEnsemble,
    PhasePath,
    berry_phase_dressed_closed_form,
    berry_phase_mixed,
    berry_phase_mixed_for_cycle,
    berry_phase_pure,
    parallel_transport_residual,
)
from qberry.hamiltonian import ModelConfig, build_hamiltonian, single_qubit_block
from qberry.linalg import eig_hermitian, exp_hermitian
from qberry.sweep import parse_config, run_fig2, run_fig3

TWO_PI = 2.0 * math.pi


def report(number: int, name: str, ok: bool) -> None:
    print(f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} ({name}) failed"


def pipeline_single(delta: float, n: int, k: int = 1):
    """Dressed upper branch -> (berry phase, reduced entropy) via the library path."""
    c = ModelConfig.from_detuning(delta, photon_order=k, fock_cutoff=max(2 * k + 2, n + k))
    eig = eig_hermitian(single_qubit_block(c, n))
    amps = eig.vectors[:, 1]
    n_op = np.diag([float(n), float(n + k)]).astype(complex)
    phase = berry_phase_pure(amps, n_op, PhasePath.linear())
    rho = np.diag([abs(amps[0]) ** 2, abs(amps[1]) ** 2]).astype(complex)
    return phase, von_neumann_entropy(rho)


def random_config(rng):
    m = int(rng.integers(1, 3))
    k = int(rng.integers(1, 3))
    return ModelConfig(
        num_qubits=m,
        photon_order=k,
        fock_cutoff=int(rng.integers(2 * k + 2, 2 * k + 5)),
        photon_energy=float(rng.uniform(0.6, 1.4)),
        qubit_splitting=tuple(float(rng.uniform(0.5, 2.5)) for _ in range(m)),
        coupling=tuple(float(rng.uniform(0.2, 1.2)) for _ in range(m)),
        diag_coupling=tuple(float(rng.uniform(0.0, 0.4)) for _ in range(m)),
        flux_ratio=float(rng.uniform(0.0, 0.99)),
    )


def test_criterion_1_resonance_anchor():
    ok = True
    for n in (0, 10):
        phase, entropy = pipeline_single(0.0, n)
        ok &= abs(phase.reduced - math.pi) < 1e-9
        ok &= abs(entropy - math.log(2.0)) < 1e-9
    report(1, "resonance anchor", ok)


def test_criterion_2_detuning_decay(tmp_path):
    records = run_fig2(parse_config(b""), out_path=str(tmp_path / "fig2.csv"))
    ok = True
    for n in (0, 10):
        series = sorted(
            (r.delta_over_lambda, r.berry_over_pi, r.entropy_nats)
            for r in records
            if r.n == n
        )
        assert len(series) == 200
        berry = np.array([s[1] for s in series])
        entropy = np.array([s[2] for s in series])
        ok &= bool(np.all(np.diff(berry) <= 1e-12))
        ok &= bool(np.all(np.diff(entropy) <= 1e-12))
        if n == 0:
            ok &= berry[-1] < 0.35 * berry[0]
            ok &= entropy[-1] < 0.35 * entropy[0]
    report(2, "detuning decay", ok)


def test_criterion_3_closed_form_agreement():
    path = PhasePath.linear(sample_count=512)
    worst = 0.0
    for k in (1, 2):
        for n in (0, 1, 5, 10):
            for delta in np.linspace(0.0, 10.0, 50):
                c = ModelConfig.from_detuning(
                    float(delta), photon_order=k, fock_cutoff=max(2 * k + 2, n + k)
                )
                eig = eig_hermitian(single_qubit_block(c, n))
                n_op = np.diag([float(n), float(n + k)]).astype(complex)
                for branch, column in (("+", 1), ("-", 0)):
                    quad = berry_phase_pure(eig.vectors[:, column], n_op, path).reduced
                    closed = berry_phase_dressed_closed_form(c, n, branch).reduced
                    diff = abs(quad - closed)
                    worst = max(worst, min(diff, TWO_PI - diff))
    report(3, "closed-form/quadrature agreement", worst < 1e-9)


def test_criterion_4_spot_value():
    phase, entropy = pipeline_single(2.0, 0)
    # independent oracle: closed-form 2x2 mixing angle and scalar entropy
    delta, mu = 2.0, 1.0
    x = delta / math.hypot(delta, 2.0 * mu)
    sin2 = 0.5 * (1.0 - x)
    berry_oracle = TWO_PI * sin2
    p = 1.0 - sin2
    entropy_oracle = -(p * math.log(p) + sin2 * math.log(sin2))
    ok = abs(phase.reduced - berry_oracle) < 1e-6
    ok &= abs(phase.reduced / math.pi - (1.0 - 2.0 / math.sqrt(8.0))) < 1e-6
    ok &= abs(entropy - entropy_oracle) < 1e-6
    report(4, "spot value at delta/lambda = 2", ok)


def test_criterion_5_evolution_operator():
    rng = np.random.default_rng(2024)
    ok = True
    for _ in range(10):
        c = random_config(rng)
        t = float(rng.uniform(0.2, 5.0))
        u = evolution_operator(c, t)
        u_ref = exp_hermitian(build_hamiltonian(c), t)
        p = physical_projector(c)
        ok &= float(np.max(np.abs(p @ (u - u_ref) @ p))) < 1e-9
        t1, t2 = float(rng.uniform(0.0, 5.0)), float(rng.uniform(0.0, 5.0))
        group = evolution_operator(c, t1) @ evolution_operator(c, t2)
        ok &= float(np.max(np.abs(group - evolution_operator(c, t1 + t2)))) < 1e-9
    report(5, "spectral evolution operator", ok)


def test_criterion_6_parallel_transport():
    c = ModelConfig.from_detuning(0.6, photon_order=1, coupling=0.9)
    h = single_qubit_block(c, 1)
    eig = eig_hermitian(h)
    ts = np.linspace(0.0, TWO_PI, 200)
    ok = True
    for column in (0, 1):
        omega = float(eig.values[column])
        rho = np.outer(eig.vectors[:, column], eig.vectors[:, column].conj())
        bare = [exp_hermitian(h, t) for t in ts]
        corrected = [np.exp(1j * omega * t) * u for t, u in zip(ts, bare)]
        ok &= parallel_transport_residual(corrected, rho, TWO_PI) < 1e-6
        uncorrected = parallel_transport_residual(bare, rho, TWO_PI)
        ok &= abs(uncorrected - abs(omega)) <= 0.05 * abs(omega)
    report(6, "parallel transport condition", ok)


def test_criterion_7_mixed_phase_consistency():
    ok = True
    # single-component ensembles against the pure phase
    path = PhasePath.linear(period=TWO_PI)
    for delta, column in ((0.8, 1), (0.3, 0)):
        c = ModelConfig.from_detuning(delta, photon_order=1, coupling=1.0)
        h = single_qubit_block(c, 0)
        h = h - np.trace(h) / 2.0 * np.eye(2)
        n_op = np.diag([0.0, 1.0]).astype(complex)
        chi = eig_hermitian(h).vectors[:, column]
        ensemble = MixedEnsemble.from_states([1.0], [chi])
        got = berry_phase_mixed_for_cycle(ensemble, h, n_op, path)
        expected = berry_phase_pure(chi, n_op, path).raw
        wrapped = (expected + math.pi) % TWO_PI - math.pi
        ok &= abs(got - wrapped) < 1e-6
    # weighted two-component analytic case
    us = [np.eye(2, dtype=complex)] * 9
    u_final = np.diag([np.exp(1j * math.pi / 2.0), np.exp(-1j * math.pi / 2.0)])
    ensemble = MixedEnsemble.from_states([0.75, 0.25],
                                         [np.array([1.0, 0.0]), np.array([0.0, 1.0])])
    got = berry_phase_mixed(ensemble, us, u_final, period=1.0)
    ok &= abs(got - math.pi / 2.0) < 1e-9
    report(7, "mixed-state phase consistency", ok)


def test_criterion_8_concurrence_suite():
    ok = True
    for sign in (1.0, -1.0):
        bell = np.array([1.0, 0.0, 0.0, sign]) / math.sqrt(2.0)
        ok &= abs(concurrence_wootters(np.outer(bell, bell.conj())) - 1.0) < 1e-12
        ok &= abs(concurrence_pure(bell) - 1.0) < 1e-12
    for product_index in (0, 1, 2, 3):
        psi = np.zeros(4, dtype=complex)
        psi[product_index] = 1.0
        ok &= concurrence_wootters(np.outer(psi, psi.conj())) < 1e-12
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        gap = abs(concurrence_pure(psi) - concurrence_wootters(np.outer(psi, psi.conj())))
        worst = max(worst, gap)
    ok &= worst < 1e-8
    phi = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
    werner = 0.5 * np.outer(phi, phi.conj()) + 0.5 * np.eye(4) / 4.0
    ok &= abs(concurrence_wootters(werner) - 0.25) < 1e-9
    for _ in range(10):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        h1 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        h2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u = np.kron(exp_hermitian(h1 + h1.conj().T, 1.0), exp_hermitian(h2 + h2.conj().T, 1.0))
        gap = abs(concurrence_wootters(u @ rho @ u.conj().T) - concurrence_wootters(rho))
        ok &= gap < 1e-8
    report(8, "concurrence suite", ok)


def test_criterion_9_phase_concurrence_relation(tmp_path):
    records = run_fig3(parse_config(b"mode=fig3"), out_path=str(tmp_path / "fig3.csv"))
    off_resonant = [r for r in records if abs(r.delta_over_lambda - 0.3) < 1e-12]
    resonant = [r for r in records if r.delta_over_lambda == 0.0]
    assert len(off_resonant) == 11 and len(resonant) == 11
    x = np.array([r.berry_over_pi for r in off_resonant])
    y = np.array([r.concurrence for r in off_resonant])
    r_coeff = float(np.corrcoef(x, y)[0, 1])
    ok = abs(r_coeff) >= 0.95
    conc = np.array([r.concurrence for r in resonant])
    ok &= bool(np.all(conc >= 0.9 * conc.max()))
    report(9, "phase-concurrence relation", ok)


def test_criterion_10_determinism(tmp_path):
    fig2_spec = parse_config(b"steps=50")
    fig3_spec = parse_config(b"mode=fig3")
    blobs = []
    for tag, threads in (("a", 1), ("b", 1), ("c", 4)):
        out2 = tmp_path / f"fig2_{tag}.csv"
        out3 = tmp_path / f"fig3_{tag}.csv"
        run_fig2(fig2_spec, out_path=str(out2), threads=threads)
        run_fig3(fig3_spec, out_path=str(out3), threads=threads)
        blobs.append((out2.read_bytes(), out3.read_bytes()))
    ok = blobs[0] == blobs[1] == blobs[2]
    report(10, "byte-identical sweeps", ok)
