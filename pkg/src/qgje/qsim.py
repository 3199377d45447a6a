"""Dense state-vector simulation of qubit registers.

Wire ``w`` is bit ``w`` of the basis index, so wire 0 is the least
significant bit. States are immutable: every gate returns a new state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import IndexOutOfRange, NonFiniteAngle, NonUnitary, NotNormalized, SameWire

NORM_TOL = 1e-10
UNITARY_TOL = 1e-10

_INV_SQRT2 = 1 / math.sqrt(2)
H = np.array([[1, 1], [1, -1]], dtype=complex) * _INV_SQRT2
X = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def phase_matrix(phi: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=complex)


@dataclass(frozen=True, eq=False)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise IndexOutOfRange(f"a register needs at least one qubit, got {self.n_qubits}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 1 << self.n_qubits:
            raise IndexOutOfRange(f"{self.n_qubits} qubits need {1 << self.n_qubits} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise NotNormalized("amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1) > NORM_TOL:
            raise NotNormalized(f"squared norm {norm!r} differs from 1")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def _evolve(self, amps: np.ndarray) -> "StateVector":
        return StateVector(self.n_qubits, amps)


@dataclass(frozen=True)
class MeasurementOutcome:
    basis_index: int
    probability: float


def basis_state(n: int, index: int) -> StateVector:
    if n < 1:
        raise IndexOutOfRange(f"a register needs at least one qubit, got {n}")
    if not 0 <= index < 1 << n:
        raise IndexOutOfRange(f"basis index {index} outside 0..{(1 << n) - 1}")
    amps = np.zeros(1 << n, dtype=complex)
    amps[index] = 1
    return StateVector(n, amps)


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


def _check_wire(state: StateVector, wire: int) -> None:
    if not 0 <= wire < state.n_qubits:
        raise IndexOutOfRange(f"wire {wire} outside 0..{state.n_qubits - 1}")


def check_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise NonUnitary(f"expected a 2x2 matrix, got shape {u.shape}")
    err = np.max(np.abs(u @ u.conj().T - I2))
    if err > tol:
        raise NonUnitary(f"U U^dagger deviates from identity by {err:.3g}")
    return u


def _pairs(state: StateVector, wire: int) -> np.ndarray:
    # axis 1 of the view is the bit on `wire`
    return state.amplitudes.reshape(-1, 2, 1 << wire)


def apply_gate(state: StateVector, wire: int, u: np.ndarray) -> StateVector:
    """Apply a one-qubit unitary to ``wire``."""
    _check_wire(state, wire)
    u = check_unitary(u)
    view = _pairs(state, wire)
    out = np.einsum("ij,ajb->aib", u, view)
    return state._evolve(out.reshape(-1))


def apply_hadamard(state: StateVector, wire: int) -> StateVector:
    _check_wire(state, wire)
    view = _pairs(state, wire)
    a0, a1 = view[:, 0, :], view[:, 1, :]
    out = np.stack(((a0 + a1) * _INV_SQRT2, (a0 - a1) * _INV_SQRT2), axis=1)
    return state._evolve(out.reshape(-1))


def apply_phase(state: StateVector, wire: int, phi: float) -> StateVector:
    """Multiply the amplitudes whose ``wire`` bit is 1 by ``exp(i*phi)``."""
    _check_wire(state, wire)
    if not math.isfinite(phi):
        raise NonFiniteAngle(f"phase angle must be finite, got {phi!r}")
    out = np.array(state.amplitudes)
    out.reshape(-1, 2, 1 << wire)[:, 1, :] *= np.exp(1j * phi)
    return state._evolve(out)


def _control_target_indices(state: StateVector, control: int, target: int) -> tuple[np.ndarray, np.ndarray]:
    _check_wire(state, control)
    _check_wire(state, target)
    if control == target:
        raise SameWire(f"control and target are both wire {control}")
    idx = np.arange(state.dim)
    low = idx[((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0)]
    return low, low | (1 << target)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    low, high = _control_target_indices(state, control, target)
    out = np.array(state.amplitudes)
    out[low], out[high] = state.amplitudes[high], state.amplitudes[low]
    return state._evolve(out)


def apply_controlled_unitary(state: StateVector, control: int, target: int, u: np.ndarray) -> StateVector:
    low, high = _control_target_indices(state, control, target)
    u = check_unitary(u)
    a0, a1 = state.amplitudes[low], state.amplitudes[high]
    out = np.array(state.amplitudes)
    out[low] = u[0, 0] * a0 + u[0, 1] * a1
    out[high] = u[1, 0] * a0 + u[1, 1] * a1
    return state._evolve(out)


def apply_controlled_phase(state: StateVector, control: int, target: int, phi: float) -> StateVector:
    return apply_controlled_unitary(state, control, target, phase_matrix(phi))


def apply_swap(state: StateVector, a: int, b: int) -> StateVector:
    if a == b:
        _check_wire(state, a)
        return state
    state = apply_cnot(state, a, b)
    state = apply_cnot(state, b, a)
    return apply_cnot(state, a, b)


def probabilities(state: StateVector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def marginal(state: StateVector, wires: list[int]) -> np.ndarray:
    """Probability distribution of the bits on ``wires`` (first wire = lowest bit)."""
    for w in wires:
        _check_wire(state, w)
    idx = np.arange(state.dim)
    keys = np.zeros(state.dim, dtype=int)
    for k, w in enumerate(wires):
        keys |= ((idx >> w) & 1) << k
    return np.bincount(keys, weights=probabilities(state), minlength=1 << len(wires))


def measure(state: StateVector, rng: np.random.Generator) -> MeasurementOutcome:
    """Sample a basis index with Born-rule probabilities.

    Draws exactly one uniform variate from ``rng`` and inverts the cumulative
    distribution, so outcomes depend only on the generator's state.
    """
    p = probabilities(state)
    cdf = np.cumsum(p)
    u = rng.random() * cdf[-1]
    index = int(np.searchsorted(cdf, u, side="right"))
    index = min(index, state.dim - 1)
    while p[index] == 0 and index > 0:
        # guard against landing on a zero-probability slot at the cdf boundary
        index -= 1
    return MeasurementOutcome(index, float(p[index]))


def operator_matrix(n: int, gate: Callable[[StateVector], StateVector]) -> np.ndarray:
    """Full ``2**n x 2**n`` matrix of a state map, built column by column from basis states."""
    cols = [gate(basis_state(n, k)).amplitudes for k in range(1 << n)]
    return np.column_stack(cols)
