"""Detuning sweeps and CSV emission.

Two presets reproduce the library's reference curves: ``fig2`` sweeps the
one-qubit dressed state over the dimensionless detuning and records Berry
phase (units of pi) and qubit-field entropy; ``fig3`` walks the two-qubit
blocks over the photon number at fixed detunings and records the two-qubit
phase against concurrence. ``custom`` runs the same record schema over any
supported (m, k).

Units are dimensionless throughout: hbar = 1, cavity coupling scale = 1,
photon energy w = 1, and the qubit splitting is E = k*w + delta.

The per-point model is tiny, so evaluation is embarrassingly parallel;
results are always written in sorted (n, delta) order, making output
byte-identical across runs and thread counts.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .entanglement import concurrence_pure, paper_cn, von_neumann_entropy
from .errors import OutOfRangeError, ParseError, UnknownKeyError, WrongQubitCountError
from .geometry import PhasePath, berry_phase_pure, two_qubit_berry
from .hamiltonian import (
    BasisLabel,
    EXCITED,
    GROUND,
    ModelConfig,
    single_qubit_block,
    state_index,
    two_qubit_block,
)
from .linalg import HermitianEigen, eig_hermitian, partial_trace

CSV_HEADER = "delta_over_lambda,n,berry_over_pi,entropy_nats,concurrence,paper_cn"

MODES = ("fig2", "fig3", "custom")
# "first" tracks the instantaneous eigenstate the prepared state (qubits
# excited, field in |n>) projects onto most strongly, with ties broken
# toward the higher branch; the rest are plain descending-energy ranks.
SELECTORS = ("first", "second", "third")

_CONFIG_KEYS = ("mode", "delta_start", "delta_stop", "steps", "n", "k", "m",
                "flux_ratio", "eigenstate", "out")


@dataclass(frozen=True)
class SweepSpec:
    """Validated sweep request; see ``parse_config`` for the file format."""

    mode: str = "fig2"
    delta_start: float = 0.0
    delta_stop: float = 10.0
    steps: int = 200
    photon_numbers: tuple[int, ...] = (0, 10)
    photon_order: int = 1
    num_qubits: int = 1
    flux_ratio: float = 0.5
    eigenstate: str = "first"
    output_path: str = "fig2.csv"

    def __post_init__(self):
        if self.mode not in MODES:
            raise OutOfRangeError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.steps < 2:
            raise OutOfRangeError(f"steps must be >= 2, got {self.steps}")
        if self.delta_start > self.delta_stop:
            raise OutOfRangeError("delta_start must not exceed delta_stop")
        if not self.photon_numbers:
            raise OutOfRangeError("need at least one photon number")
        if any(n < 0 for n in self.photon_numbers):
            raise OutOfRangeError("photon numbers must be >= 0")
        if self.photon_order < 1:
            raise OutOfRangeError(f"k must be >= 1, got {self.photon_order}")
        if self.num_qubits not in (1, 2):
            raise OutOfRangeError(f"m must be 1 or 2, got {self.num_qubits}")
        if not 0.0 <= self.flux_ratio < 1.0:
            raise OutOfRangeError(f"flux_ratio must lie in [0, 1), got {self.flux_ratio}")
        if self.eigenstate not in SELECTORS:
            raise OutOfRangeError(f"eigenstate must be one of {SELECTORS}, got {self.eigenstate!r}")
        if self.eigenstate == "third" and self.num_qubits == 1:
            raise OutOfRangeError("the one-qubit blocks have only two branches")
        if self.mode == "fig2" and self.num_qubits != 1:
            raise OutOfRangeError("fig2 sweeps the one-qubit model (m=1)")
        if self.mode == "fig3" and self.num_qubits != 2:
            raise OutOfRangeError("fig3 sweeps the two-qubit model (m=2)")


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row; None marks columns not applicable to the sweep."""

    delta_over_lambda: float
    n: int
    berry_over_pi: float
    entropy_nats: float | None = None
    concurrence: float | None = None
    paper_cn: float | None = None


_MODE_DEFAULTS = {
    "fig2": dict(delta_start=0.0, delta_stop=10.0, steps=200,
                 photon_numbers=(0, 10), num_qubits=1, output_path="fig2.csv"),
    "fig3": dict(delta_start=0.0, delta_stop=0.3, steps=2,
                 photon_numbers=tuple(range(11)), num_qubits=2, output_path="fig3.csv"),
    "custom": dict(delta_start=0.0, delta_stop=10.0, steps=200,
                   photon_numbers=(0, 10), num_qubits=1, output_path="sweep.csv"),
}


def _parse_int(value: str, line_no: int, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(line_no, f"{key} expects an integer, got {value!r}") from None


def _parse_float(value: str, line_no: int, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(line_no, f"{key} expects a number, got {value!r}") from None


def parse_config(text: bytes | str, default_mode: str = "fig2") -> SweepSpec:
    """Parse a key=value sweep configuration.

    Blank lines and '#' comment lines are ignored; keys are
    mode, delta_start, delta_stop, steps, n (comma list), k, m,
    flux_ratio, eigenstate, out. Unknown keys are rejected. Missing keys
    fall back to per-mode defaults.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"config is not valid UTF-8: {exc}") from None
    raw: dict[str, tuple[int, str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ParseError(line_no, f"expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise UnknownKeyError(f"unknown key {key!r} on line {line_no}")
        if key in raw:
            raise ParseError(line_no, f"duplicate key {key!r}")
        raw[key] = (line_no, value)

    mode = raw.pop("mode", (0, default_mode))[1]
    if mode not in MODES:
        raise OutOfRangeError(f"mode must be one of {MODES}, got {mode!r}")
    fields: dict = dict(mode=mode, **_MODE_DEFAULTS[mode])

    if "delta_start" in raw:
        ln, v = raw.pop("delta_start")
        fields["delta_start"] = _parse_float(v, ln, "delta_start")
    if "delta_stop" in raw:
        ln, v = raw.pop("delta_stop")
        fields["delta_stop"] = _parse_float(v, ln, "delta_stop")
    if "steps" in raw:
        ln, v = raw.pop("steps")
        fields["steps"] = _parse_int(v, ln, "steps")
    if "n" in raw:
        ln, v = raw.pop("n")
        parts = [p for p in v.replace(",", " ").split() if p]
        if not parts:
            raise ParseError(ln, "n expects a comma-separated list of integers")
        fields["photon_numbers"] = tuple(_parse_int(p, ln, "n") for p in parts)
    if "k" in raw:
        ln, v = raw.pop("k")
        fields["photon_order"] = _parse_int(v, ln, "k")
    if "m" in raw:
        ln, v = raw.pop("m")
        fields["num_qubits"] = _parse_int(v, ln, "m")
    if "flux_ratio" in raw:
        ln, v = raw.pop("flux_ratio")
        fields["flux_ratio"] = _parse_float(v, ln, "flux_ratio")
    if "eigenstate" in raw:
        fields["eigenstate"] = raw.pop("eigenstate")[1]
    if "out" in raw:
        fields["output_path"] = raw.pop("out")[1]
    return SweepSpec(**fields)


def serialize_config(spec: SweepSpec) -> str:
    """Canonical key=value form; parse(serialize(spec)) round-trips exactly."""
    lines = [
        f"mode={spec.mode}",
        f"delta_start={spec.delta_start!r}",
        f"delta_stop={spec.delta_stop!r}",
        f"steps={spec.steps}",
        f"n={','.join(str(n) for n in spec.photon_numbers)}",
        f"k={spec.photon_order}",
        f"m={spec.num_qubits}",
        f"flux_ratio={spec.flux_ratio!r}",
        f"eigenstate={spec.eigenstate}",
        f"out={spec.output_path}",
    ]
    return "\n".join(lines) + "\n"


def _delta_grid(spec: SweepSpec) -> np.ndarray:
    return np.linspace(spec.delta_start, spec.delta_stop, spec.steps)


def _grid_points(spec: SweepSpec) -> list[tuple[int, float]]:
    """Sorted (n, delta) product with exact duplicates removed."""
    points = [(n, float(d)) for n in spec.photon_numbers for d in _delta_grid(spec)]
    points.sort()
    unique = []
    dropped = 0
    for pt in points:
        if unique and pt == unique[-1]:
            dropped += 1
            continue
        unique.append(pt)
    if dropped:
        warnings.warn(f"deduplicated {dropped} repeated grid point(s)", stacklevel=2)
    return unique


def _select_index(eig: HermitianEigen, selector: str) -> int:
    """Pick the eigenstate column per the selector (see SELECTORS)."""
    dim = eig.vectors.shape[1]
    if selector == "first":
        scores = np.abs(eig.vectors[0, :]) ** 2
        best = float(np.max(scores))
        for j in range(dim - 1, -1, -1):  # ties go to the higher branch
            if scores[j] >= best - 1e-12:
                return j
    rank = SELECTORS.index(selector)  # second -> 1, third -> 2
    if rank >= dim:
        raise OutOfRangeError(f"selector {selector!r} exceeds the {dim} block branches")
    return dim - 1 - rank


_SYMMETRIC_EMBED = np.array(
    [[1.0, 0.0, 0.0],
     [0.0, 1.0 / math.sqrt(2.0), 0.0],
     [0.0, 1.0 / math.sqrt(2.0), 0.0],
     [0.0, 0.0, 1.0]]
)

_CYCLE = PhasePath.linear()


def _eval_single(spec: SweepSpec, n: int, delta: float) -> SweepRecord:
    k = spec.photon_order
    c = ModelConfig.from_detuning(
        delta,
        photon_order=k,
        num_qubits=1,
        fock_cutoff=max(2 * k + 2, n + k),
        flux_ratio=spec.flux_ratio,
    )
    eig = eig_hermitian(single_qubit_block(c, n))
    amps = eig.vectors[:, _select_index(eig, spec.eigenstate)]
    n_op = np.diag([float(n), float(n + k)]).astype(complex)
    phase = berry_phase_pure(amps, n_op, _CYCLE)

    psi = np.zeros(c.dim, dtype=complex)
    psi[state_index(c, BasisLabel((EXCITED,), n))] = amps[0]
    psi[state_index(c, BasisLabel((GROUND,), n + k))] = amps[1]
    rho_qubit = partial_trace(np.outer(psi, psi.conj()), [2, c.fock_cutoff + 1], keep=0)
    entropy = von_neumann_entropy(rho_qubit)
    return SweepRecord(
        delta_over_lambda=delta,
        n=n,
        berry_over_pi=phase.reduced / math.pi,
        entropy_nats=entropy,
    )


def _eval_two(spec: SweepSpec, n: int, delta: float) -> SweepRecord:
    k = spec.photon_order
    c = ModelConfig.from_detuning(
        delta,
        photon_order=k,
        num_qubits=2,
        fock_cutoff=max(2 * k + 2, n + 2 * k),
        flux_ratio=spec.flux_ratio,
    )
    block = two_qubit_block(c, n)
    # identical qubits: diagonalize the swap-even sector so the resonance
    # degeneracy with the swap-odd dark state cannot mix the amplitudes
    h_sym = _SYMMETRIC_EMBED.T @ block @ _SYMMETRIC_EMBED
    eig = eig_hermitian(h_sym)
    amps = _SYMMETRIC_EMBED @ eig.vectors[:, _select_index(eig, spec.eigenstate)]
    phase = two_qubit_berry(amps)
    return SweepRecord(
        delta_over_lambda=delta,
        n=n,
        berry_over_pi=phase.reduced / math.pi,
        concurrence=concurrence_pure(amps),
        paper_cn=paper_cn(amps),
    )


def _evaluate(spec: SweepSpec, threads: int) -> list[SweepRecord]:
    evaluator: Callable[[SweepSpec, int, float], SweepRecord]
    evaluator = _eval_single if spec.num_qubits == 1 else _eval_two
    points = _grid_points(spec)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda pt: evaluator(spec, pt[0], pt[1]), points))
    else:
        records = [evaluator(spec, n, d) for n, d in points]
    for rec in records:
        for value in (rec.berry_over_pi, rec.entropy_nats, rec.concurrence, rec.paper_cn):
            if value is not None and not math.isfinite(value):
                raise ValueError(f"non-finite cell in record {rec}")
        if not 0.0 <= rec.berry_over_pi < 2.0:
            raise ValueError(f"berry_over_pi out of [0, 2) in record {rec}")
        if rec.entropy_nats is not None and not 0.0 <= rec.entropy_nats <= math.log(4.0) + 1e-9:
            raise ValueError(f"entropy out of range in record {rec}")
        if rec.concurrence is not None and not 0.0 <= rec.concurrence <= 1.0 + 1e-12:
            raise ValueError(f"concurrence out of range in record {rec}")
    return records


def _cell(value: float | None) -> str:
    return "" if value is None else f"{value:.9f}"


def _pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    if len(x) < 2:
        return None
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    sx = float(np.std(xa))
    sy = float(np.std(ya))
    if sx < 1e-15 or sy < 1e-15:
        return None
    return float(np.mean((xa - np.mean(xa)) * (ya - np.mean(ya))) / (sx * sy))


def _footer_lines(records: list[SweepRecord]) -> list[str]:
    """Per-detuning correlation summaries for two-qubit sweeps."""
    deltas = sorted({rec.delta_over_lambda for rec in records})
    lines = []
    for column, tag in (("concurrence", "pearson"), ("paper_cn", "pearson_paper_cn")):
        for delta in deltas:
            series = [rec for rec in records if rec.delta_over_lambda == delta]
            r = _pearson(
                [rec.berry_over_pi for rec in series],
                [getattr(rec, column) for rec in series],
            )
            r_cell = "undefined" if r is None else f"{r:.9f}"
            lines.append(f"# {tag} delta_over_lambda={_cell(delta)} r={r_cell}")
    return lines


def write_csv(records: list[SweepRecord], path: str, footers: Sequence[str] = ()) -> None:
    rows = [CSV_HEADER]
    for rec in records:
        rows.append(
            ",".join(
                (
                    _cell(rec.delta_over_lambda),
                    str(rec.n),
                    _cell(rec.berry_over_pi),
                    _cell(rec.entropy_nats),
                    _cell(rec.concurrence),
                    _cell(rec.paper_cn),
                )
            )
        )
    rows.extend(footers)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(rows) + "\n")


def run_fig2(spec: SweepSpec, out_path: str | None = None, threads: int = 1) -> list[SweepRecord]:
    """One-qubit detuning sweep: Berry phase and entropy per (n, delta)."""
    if spec.num_qubits != 1:
        raise WrongQubitCountError("fig2 needs a one-qubit spec")
    records = _evaluate(spec, threads)
    write_csv(records, out_path or spec.output_path)
    return records


def run_fig3(spec: SweepSpec, out_path: str | None = None, threads: int = 1) -> list[SweepRecord]:
    """Two-qubit sweep over n: phase vs concurrence, with correlation footers."""
    if spec.num_qubits != 2:
        raise WrongQubitCountError("fig3 needs a two-qubit spec")
    records = _evaluate(spec, threads)
    write_csv(records, out_path or spec.output_path, footers=_footer_lines(records))
    return records


def run_custom(spec: SweepSpec, out_path: str | None = None, threads: int = 1) -> list[SweepRecord]:
    """Generic grid sweep with the same record schema as the presets."""
    records = _evaluate(spec, threads)
    write_csv(records, out_path or spec.output_path)
    return records
