"""Brute-force channel verification for measurement-and-feedback circuits.

``check_implements`` proves that every measurement branch of a circuit,
after its conditioned fixups, acts on the data qubits as the target unitary
times an outcome-dependent but input-independent global phase. That
per-outcome phase freedom is exactly what "deterministically implements"
means here: the phase is unobservable per branch, but any input dependence
would be an error and is caught by assembling every outcome's full linear
map over all basis inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .circuit import Circuit, Gate
from .simulator import run_branches

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BranchReport:
    """Per-outcome-group evidence: probability, global phase, worst deviation."""

    outcomes: tuple[int, ...]
    probability: float
    phase: complex
    max_deviation: float


@dataclass(frozen=True)
class ChannelVerdict:
    """Result of checking a feedback circuit against a target unitary."""

    passed: bool
    branch_reports: tuple[BranchReport, ...]
    ancilla_clean: bool
    probability_total: float


def oracle_cnz(n: int) -> np.ndarray:
    """Diagonal (n+1)-qubit matrix with -1 on the all-ones state, +1 elsewhere.

    Built directly from the bit pattern, independently of any synthesis
    route, so it can serve as the ground-truth target.
    """
    if n < 1:
        raise ValueError("oracle_cnz requires n >= 1")
    dim = 1 << (n + 1)
    diag = np.ones(dim, dtype=complex)
    diag[dim - 1] = -1
    return np.diag(diag)


def equal_up_to_global_phase(
    a: np.ndarray, b: np.ndarray, tolerance: float = DEFAULT_TOLERANCE
) -> tuple[bool, complex]:
    """Test max-norm equality of A and phase*B, with phase fitted from B's largest entry."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    flat = int(np.argmax(np.abs(b)))
    pivot = b.flat[flat]
    if abs(pivot) <= tolerance:
        if np.abs(a).max() <= tolerance:
            return True, complex(1)
        raise ValueError("reference operator is ~0 but candidate is not")
    phase = complex(a.flat[flat] / pivot)
    return bool(np.abs(a - phase * b).max() <= tolerance), phase


def check_phase_identity() -> bool:
    """Exhaustively confirm i^(ab xor cd) = i^ab * i^cd * (-1)^abcd over {0,1}^4.

    Uses exact integer-exponent complex arithmetic; this is the cancellation
    that lets the conditioned CZ fixups erase the Toffoli kickback while
    leaving only the CCCZ sign.
    """
    for a, b, c, d in product((0, 1), repeat=4):
        lhs = 1j ** ((a * b) ^ (c * d))
        rhs = (1j ** (a * b)) * (1j ** (c * d)) * ((-1) ** (a * b * c * d))
        if lhs != rhs:
            return False
    return True


def _data_block_indices(data: list[int], base: int, dim_data: int) -> np.ndarray:
    """Full-register indices of the data block at ancilla assignment ``base``."""
    xs = np.arange(dim_data)
    full = np.full(dim_data, base, dtype=np.int64)
    for j, q in enumerate(data):
        full |= ((xs >> j) & 1) << q
    return full


def _expected_ancilla_sources(circuit: Circuit) -> dict[int, int | None]:
    """For each ancilla qubit: None if it must end in |0>, else the index of
    the measurement (in measurement order) whose outcome it is left holding.

    A wire whose last touching op is its measurement is "measured out" and
    deterministically holds that outcome; anything else must be |0>.
    """
    sources: dict[int, int | None] = {q: None for q in circuit.ancilla_qubits}
    meas_index = 0
    for op in circuit.ops:
        if op.gate is Gate.MEASURE:
            if op.qubits[0] in sources:
                sources[op.qubits[0]] = meas_index
            meas_index += 1
        else:
            for q in op.qubits:
                if q in sources:
                    sources[q] = None
    return sources


def check_implements(
    circuit: Circuit, target: np.ndarray, tolerance: float = DEFAULT_TOLERANCE
) -> ChannelVerdict:
    """Exhaustively check that ``circuit`` implements ``target`` on its data qubits.

    For every data-register basis state (ancillas in |0>), all measurement
    branches are enumerated and grouped by outcome string. The verdict
    passes iff each group's assembled map K_m is ~0 or equals
    lambda_m * sqrt(p_m) * target with |lambda_m| = 1, every branch leaves
    the ancilla register clean (|0>, or the recorded outcome for a
    measured-out wire), and the group probabilities sum to 1.
    """
    data = sorted(circuit.data_qubits)
    anc = sorted(circuit.ancilla_qubits)
    dim_data = 1 << len(data)
    target = np.asarray(target, dtype=complex)
    if target.shape != (dim_data, dim_data):
        raise ValueError(
            f"target dimension {target.shape} does not match "
            f"{len(data)} data qubits (expected {(dim_data, dim_data)})")

    anc_sources = _expected_ancilla_sources(circuit)
    groups: dict[tuple[int, ...], np.ndarray] = {}
    seen: set[tuple[tuple[int, ...], int]] = set()
    ancilla_clean = True
    split_branch = False

    dim_full = 1 << circuit.qubit_count
    input_indices = _data_block_indices(data, 0, dim_data)
    for x in range(dim_data):
        state = np.zeros(dim_full, dtype=complex)
        state[input_indices[x]] = 1.0
        for rec in run_branches(circuit, state):
            base = 0
            for q in anc:
                src = anc_sources[q]
                if src is not None and rec.outcomes[src] == 1:
                    base |= 1 << q
            block = _data_block_indices(data, base, dim_data)
            col = rec.final_state[block]
            off_mass = np.sqrt(max(0.0, 1.0 - float(np.sum(np.abs(col) ** 2))))
            if off_mass > tolerance:
                ancilla_clean = False
            key = (rec.outcomes, x)
            if key in seen:
                # a RESET split two histories into one outcome string; the
                # per-outcome map is then not a single linear map
                split_branch = True
            seen.add(key)
            k = groups.setdefault(
                rec.outcomes, np.zeros((dim_data, dim_data), dtype=complex))
            k[:, x] += np.sqrt(rec.probability) * col

    pivot_flat = int(np.argmax(np.abs(target)))
    pivot = target.flat[pivot_flat]
    reports: list[BranchReport] = []
    deviations_ok = True
    probability_total = 0.0
    for outcomes in sorted(groups):
        k = groups[outcomes]
        if np.abs(k).max() <= tolerance:
            reports.append(BranchReport(outcomes, 0.0, complex(1), float(np.abs(k).max())))
            continue
        scalar = complex(k.flat[pivot_flat] / pivot)
        deviation = float(np.abs(k - scalar * target).max())
        p = abs(scalar) ** 2
        phase = scalar / abs(scalar) if abs(scalar) > 0 else complex(1)
        probability_total += p
        reports.append(BranchReport(outcomes, p, phase, deviation))
        if deviation > tolerance:
            deviations_ok = False

    passed = (
        deviations_ok
        and ancilla_clean
        and not split_branch
        and abs(probability_total - 1.0) <= tolerance
    )
    return ChannelVerdict(passed, tuple(reports), ancilla_clean, probability_total)
