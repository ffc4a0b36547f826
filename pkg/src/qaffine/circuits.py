"""Gate programs: single-qubit unitaries, CNOTs, and multi-qubit unitary
blocks with optional (anti-)controls.

A GateList is both an executable program for the simulator and a dense
matrix product (later gates multiply on the left).  Blocks are place-holders
for structured unitaries; `qaffine.synthesis.lower` expands them into
single-qubit gates and CNOTs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import simulator
from .errors import InvalidInputError, ShapeError
from .linalg import as_matrix
from .simulator import QuantumState, _apply_on_axes

SQRT2 = np.sqrt(2.0)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / SQRT2
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)


def phase_gate(theta: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Gate:
    kind: str  # "single" | "cnot" | "block"
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    control_values: tuple[int, ...] = ()
    matrix: np.ndarray | None = None


def single(matrix, target: int) -> Gate:
    m = as_matrix(matrix)
    if m.shape != (2, 2):
        raise ShapeError(f"single-qubit gate must be 2x2, got {m.shape}")
    return Gate("single", (int(target),), matrix=m)


def cnot(control: int, target: int) -> Gate:
    if control == target:
        raise InvalidInputError("cnot control and target must differ")
    return Gate("cnot", (int(target),), controls=(int(control),), control_values=(1,))


def block(matrix, targets, controls=(), control_values=()) -> Gate:
    m = as_matrix(matrix)
    ts = tuple(int(t) for t in targets)
    cs = tuple(int(c) for c in controls)
    vs = tuple(int(v) for v in control_values)
    if m.shape != (1 << len(ts), 1 << len(ts)):
        raise ShapeError(f"block matrix shape {m.shape} does not act on {len(ts)} qubit(s)")
    if len(cs) != len(vs):
        raise ShapeError(f"{len(cs)} controls but {len(vs)} control values")
    return Gate("block", ts, cs, vs, m)


@dataclass(eq=False)
class GateList:
    qubit_count: int
    gates: list[Gate] = field(default_factory=list)

    def copy(self) -> "GateList":
        return GateList(self.qubit_count, list(self.gates))


def dagger(g: Gate) -> Gate:
    if g.kind == "cnot":
        return g
    return Gate(g.kind, g.targets, g.controls, g.control_values, g.matrix.conj().T)


def inverted(gates) -> list[Gate]:
    return [dagger(g) for g in reversed(list(gates))]


def with_control(g: Gate, control: int, value: int = 1) -> Gate:
    """Same gate with one more (anti-)control attached."""
    control = int(control)
    if control in g.targets or control in g.controls:
        raise InvalidInputError(f"control {control} already used by the gate")
    matrix = PAULI_X if g.kind == "cnot" else g.matrix
    return Gate(
        "block",
        g.targets,
        g.controls + (control,),
        g.control_values + (int(value),),
        matrix,
    )


def apply_gate(state: QuantumState, g: Gate) -> QuantumState:
    if g.kind == "single":
        return simulator.apply_unitary(state, g.matrix, g.targets)
    if g.kind == "cnot":
        return simulator.apply_controlled(state, PAULI_X, g.targets, g.controls, (1,))
    if g.kind == "block":
        if not g.controls:
            return simulator.apply_unitary(state, g.matrix, g.targets)
        return simulator.apply_controlled(state, g.matrix, g.targets, g.controls, g.control_values)
    raise InvalidInputError(f"unknown gate kind {g.kind!r}")


def apply_gates(state: QuantumState, gates) -> QuantumState:
    for g in gates:
        state = apply_gate(state, g)
    return state


def apply_gatelist(state: QuantumState, gl: GateList) -> QuantumState:
    if gl.qubit_count != state.num_qubits:
        raise ShapeError(
            f"gate list is on {gl.qubit_count} qubits, state has {state.num_qubits}"
        )
    return apply_gates(state, gl.gates)


def run_gatelist(gl: GateList) -> QuantumState:
    """Execute the program from |0...0>."""
    return apply_gatelist(simulator.init_basis(gl.qubit_count), gl)


def _evolve_columns(mat: np.ndarray, g: Gate, q: int) -> np.ndarray:
    """Apply a gate to every column of a 2^q x 2^q matrix at once."""
    arr = mat.reshape([2] * q + [mat.shape[1]])
    u = PAULI_X if g.kind == "cnot" else g.matrix
    axes = [q - 1 - t for t in g.targets]
    if not g.controls:
        arr = _apply_on_axes(arr, u, axes)
    else:
        arr = arr.copy()
        sel: list[object] = [slice(None)] * q + [slice(None)]
        for c, v in zip(g.controls, g.control_values):
            sel[q - 1 - c] = int(v)
        c_axes = sorted(q - 1 - c for c in g.controls)
        local = [a - sum(1 for ca in c_axes if ca < a) for a in axes]
        arr[tuple(sel)] = _apply_on_axes(arr[tuple(sel)].copy(), u, local)
    return arr.reshape(mat.shape)


def gate_matrix(g: Gate, qubit_count: int) -> np.ndarray:
    """Dense 2^q expansion of one gate."""
    return _evolve_columns(np.eye(1 << qubit_count, dtype=np.complex128), g, qubit_count)


def gatelist_matrix(gl: GateList) -> np.ndarray:
    """Dense product of the whole program (application order)."""
    mat = np.eye(1 << gl.qubit_count, dtype=np.complex128)
    for g in gl.gates:
        mat = _evolve_columns(mat, g, gl.qubit_count)
    return mat
