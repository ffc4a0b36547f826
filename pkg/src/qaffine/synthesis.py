"""Exact synthesis of small unitaries into single-qubit gates + CNOTs, and
gate-count comparison of the sequential pipeline against the augmented
(homogeneous-coordinate) baseline.

The decomposition is the recursive cosine-sine route (quantum Shannon
style): split off the most significant qubit with a CSD, turn the central
cosine-sine factor into a multiplexed Ry, demultiplex the two block-diagonal
factors into a multiplexed Rz between smaller unitaries, and recurse.
Multiplexed rotations lower to rotation/CNOT ladders; near-zero rotation
angles are pruned, so structured inputs give compact programs.  Counts are a
pure function of the input matrix: the same unitary always lowers to the
same program.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .baseline import build_augmented, run_augmented
from .circuits import Gate, GateList, block, cnot, gatelist_matrix, single
from .errors import CapacityError, QAffineError, ShapeError, UnitarityError
from .linalg import as_matrix, as_vector, completion_unitary, is_unitary, max_abs
from .pipeline import AffineSequence, AffineStep, extract_result, run_pipeline

MAX_SYNTH_QUBITS = 5
ANGLE_PRUNE_TOL = 1e-12
AGREEMENT_TOL = 1e-8


@dataclass(frozen=True)
class GateCountReport:
    single_qubit: int
    multi_qubit: int
    total: int


def _ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def _mux_rot(angles: np.ndarray, controls: tuple[int, ...], target: int, axis: str) -> list[Gate]:
    """Multiplexed rotation: rotation angle angles[i] on the target when the
    control qubits (controls[0] most significant) hold the bits of i."""
    if not controls:
        theta = float(angles[0])
        if abs(theta) < ANGLE_PRUNE_TOL:
            return []
        return [single(_ry(theta) if axis == "y" else _rz(theta), target)]
    half = angles.shape[0] // 2
    a, b = angles[:half], angles[half:]
    if max_abs(a - b) / 2 < ANGLE_PRUNE_TOL:
        # both halves equal: the control is inert, CNOT pair cancels
        return _mux_rot((a + b) / 2, controls[1:], target, axis)
    return (
        _mux_rot((a + b) / 2, controls[1:], target, axis)
        + [cnot(controls[0], target)]
        + _mux_rot((a - b) / 2, controls[1:], target, axis)
        + [cnot(controls[0], target)]
    )


def _demux(u1: np.ndarray, u2: np.ndarray, qs: tuple[int, ...]) -> list[Gate]:
    """Gates for the block-diagonal unitary u1 (+) u2 multiplexed on qs[0]."""
    m = u1 @ u2.conj().T
    t, z = scipy.linalg.schur(m, output="complex")
    d = np.exp(0.5j * np.angle(np.diagonal(t)))
    w = (z * d).conj().T @ u1  # (Z D)^dag u1 = D^dag Z^dag u1
    return (
        _synth(w, qs[1:])
        + _mux_rot(-2.0 * np.angle(d), qs[1:], qs[0], "z")
        + _synth(z, qs[1:])
    )


def _synth(u: np.ndarray, qs: tuple[int, ...]) -> list[Gate]:
    if len(qs) == 1:
        if max_abs(u - np.eye(2)) < ANGLE_PRUNE_TOL:
            return []
        return [single(u, qs[0])]
    half = u.shape[0] // 2
    (u1, u2), theta, (v1h, v2h) = scipy.linalg.cossin(u, p=half, q=half, separate=True)
    return (
        _demux(v1h, v2h, qs)
        + _mux_rot(2.0 * np.asarray(theta), qs[1:], qs[0], "y")
        + _demux(u1, u2, qs)
    )


def synthesize(u, qubits: int) -> GateList:
    """Decompose a 2^q x 2^q unitary into single-qubit gates and CNOTs.

    The program reproduces the matrix up to global phase; qubit q-1 is the
    most significant bit of the matrix index, matching the simulator.
    """
    qubits = int(qubits)
    if qubits < 1:
        raise ShapeError(f"qubit count must be >= 1, got {qubits}")
    if qubits > MAX_SYNTH_QUBITS:
        raise CapacityError(f"synthesis supports at most {MAX_SYNTH_QUBITS} qubits")
    m = as_matrix(u)
    if m.shape != (1 << qubits, 1 << qubits):
        raise ShapeError(f"matrix shape {m.shape} does not act on {qubits} qubit(s)")
    if not is_unitary(m, 1e-9):
        raise UnitarityError("synthesis input is not unitary within 1e-9")
    return GateList(qubits, _synth(m, tuple(range(qubits - 1, -1, -1))))


def count_gates(gl: GateList) -> GateCountReport:
    """Exact tallies: single-qubit gates vs everything wider (CNOTs and any
    unlowered blocks)."""
    singles = sum(1 for g in gl.gates if g.kind == "single")
    multi = len(gl.gates) - singles
    return GateCountReport(singles, multi, len(gl.gates))


def lower(gl: GateList) -> GateList:
    """Expand every block gate into single-qubit gates + CNOTs.

    A controlled block is lowered by synthesizing the dense controlled
    unitary on {controls} + {targets}."""
    out: list[Gate] = []
    for g in gl.gates:
        if g.kind != "block":
            out.append(g)
            continue
        locals_msb_first = g.controls + g.targets
        t = len(g.targets)
        dim = 1 << len(locals_msb_first)
        m = np.eye(dim, dtype=np.complex128)
        offset = 0
        for v in g.control_values:
            offset = (offset << 1) | v
        offset <<= t
        m[offset : offset + (1 << t), offset : offset + (1 << t)] = g.matrix
        sub = synthesize(m, len(locals_msb_first))
        # local label q-1 is the local MSB, i.e. the first entry of the list
        to_global = {ql: locals_msb_first[len(locals_msb_first) - 1 - ql]
                     for ql in range(len(locals_msb_first))}
        for sg in sub.gates:
            out.append(
                Gate(
                    sg.kind,
                    tuple(to_global[x] for x in sg.targets),
                    tuple(to_global[x] for x in sg.controls),
                    sg.control_values,
                    sg.matrix,
                )
            )
    return GateList(gl.qubit_count, out)


def reconstruction_error(gl: GateList, u) -> float:
    """Max-entry deviation of the program's matrix product from u, after
    aligning the global phase."""
    m = gatelist_matrix(gl)
    target = as_matrix(u)
    tr = np.trace(target.conj().T @ m)
    phase = tr / abs(tr) if abs(tr) > 1e-12 else 1.0
    return max_abs(m * np.conj(phase) - target)


def compare_methods(a, b, psi) -> tuple[GateCountReport, GateCountReport]:
    """Gate-count comparison on the 4-qubit instance: sequential pipeline
    (k=1, physical mode) versus the augmented single-dilation baseline.

    Both circuits are fully lowered before counting; the lowered programs
    must reproduce their block-level products, and both routes must yield
    the same affine image.  Returns (pipeline report, augmented report).
    """
    m = as_matrix(a)
    if m.shape != (4, 4):
        raise ShapeError(f"comparison is defined for 4x4 matrices, got {m.shape}")
    bv = None if b is None else as_vector(b)
    p = as_vector(psi)

    seq = AffineSequence(2, p, (AffineStep(m, bv),))
    res = run_pipeline(seq, mode="physical")
    ours_blocks = res.circuit
    ours = lower(ours_blocks)
    err = reconstruction_error(ours, gatelist_matrix(ours_blocks))
    if err > AGREEMENT_TOL:
        raise QAffineError(f"pipeline circuit lowering error {err:.3e} exceeds 1e-8")

    aug = build_augmented(m, bv if bv is not None else np.zeros(4), p)
    aug_blocks = GateList(
        4,
        [
            block(completion_unitary(aug.psi_tilde), (2, 1, 0)),
            block(aug.enc.U, (3, 2, 1, 0)),
        ],
    )
    augl = lower(aug_blocks)
    err = reconstruction_error(augl, gatelist_matrix(aug_blocks))
    if err > AGREEMENT_TOL:
        raise QAffineError(f"augmented circuit lowering error {err:.3e} exceeds 1e-8")

    diff = max_abs(extract_result(res) - run_augmented(aug))
    if diff > AGREEMENT_TOL:
        raise QAffineError(f"methods disagree by {diff:.3e} (tolerance 1e-8)")
    return count_gates(ours), count_gates(augl)
