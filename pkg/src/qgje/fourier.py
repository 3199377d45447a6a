"""Fourier-basis arithmetic.

Contains the classical base-q digit arithmetic used as a reference, the
unitary characters of ``(Z/q)^n``, the quantum Fourier transform built from
Hadamard and controlled-phase gates, and an adder that adds a classical
integer to a register by phase rotations in the Fourier basis.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import qsim
from .errors import BaseMismatch, LengthMismatch, OperandOutOfRange
from .qsim import StateVector


@dataclass(frozen=True)
class BaseQDigits:
    """Little-endian digits of a non-negative integer in base ``q``."""

    q: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"base must be at least 2, got {self.q}")
        digits = tuple(int(d) for d in self.digits) or (0,)
        for d in digits:
            if not 0 <= d < self.q:
                raise ValueError(f"digit {d} outside 0..{self.q - 1}")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def from_int(cls, value: int, q: int) -> "BaseQDigits":
        if value < 0:
            raise ValueError("only non-negative integers have base-q digits here")
        digits = []
        while True:
            value, d = divmod(value, q)
            digits.append(d)
            if value == 0:
                break
        return cls(q, tuple(digits))

    @property
    def value(self) -> int:
        return sum(d * self.q**i for i, d in enumerate(self.digits))

    def normalized(self) -> "BaseQDigits":
        """Drop high zero digits, keeping at least one digit."""
        digits = list(self.digits)
        while len(digits) > 1 and digits[-1] == 0:
            digits.pop()
        return BaseQDigits(self.q, tuple(digits))


def _same_base(a: BaseQDigits, b: BaseQDigits) -> int:
    if a.q != b.q:
        raise BaseMismatch(f"bases differ: {a.q} and {b.q}")
    return a.q


def classical_add_base_q(a: BaseQDigits, b: BaseQDigits) -> BaseQDigits:
    # c_i = a_i + b_i + carry (mod q), carry = floor((a_i + b_i + carry) / q)
    q = _same_base(a, b)
    width = max(len(a.digits), len(b.digits))
    out, carry = [], 0
    for i in range(width):
        s = (a.digits[i] if i < len(a.digits) else 0) + (b.digits[i] if i < len(b.digits) else 0) + carry
        carry, digit = divmod(s, q)
        out.append(digit)
    if carry:
        out.append(carry)
    return BaseQDigits(q, tuple(out)).normalized()


def classical_mul_base_q(a: BaseQDigits, b: BaseQDigits) -> BaseQDigits:
    """Schoolbook product, including the cross terms ``a_i * b_j`` with ``i != j``."""
    q = _same_base(a, b)
    acc = [0] * (len(a.digits) + len(b.digits))
    for i, x in enumerate(a.digits):
        for j, y in enumerate(b.digits):
            acc[i + j] += x * y
    out, carry = [], 0
    for column in acc:
        carry, digit = divmod(column + carry, q)
        out.append(digit)
    while carry:
        carry, digit = divmod(carry, q)
        out.append(digit)
    return BaseQDigits(q, tuple(out)).normalized()


@dataclass(frozen=True)
class CharacterParams:
    a: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"base must be at least 2, got {self.q}")
        modulus = self.q ** len(self.a)
        object.__setattr__(self, "a", tuple(int(v) % modulus for v in self.a))

    @property
    def n(self) -> int:
        return len(self.a)


def character(params: CharacterParams, x: Sequence[int]) -> complex:
    """``exp(2*pi*i * sum(a_i x_i) / q**n)``."""
    if len(x) != params.n:
        raise LengthMismatch(f"character of length {params.n} applied to vector of length {len(x)}")
    modulus = params.q**params.n
    # reduce the integer exponent first so the float angle stays in [0, 2*pi)
    k = sum(ai * int(xi) for ai, xi in zip(params.a, x)) % modulus
    return cmath.exp(2j * math.pi * k / modulus)


def qft(state: StateVector) -> StateVector:
    """Quantum Fourier transform on the whole register.

    Output amplitude ``k`` is ``2**(-n/2) * sum_y v_y exp(2*pi*i*y*k / 2**n)``.
    Built from n Hadamards, n(n-1)/2 controlled phases and a final wire reversal.
    """
    n = state.n_qubits
    for j in reversed(range(n)):
        state = qsim.apply_hadamard(state, j)
        for k in reversed(range(j)):
            state = qsim.apply_controlled_phase(state, k, j, math.pi / (1 << (j - k)))
    for j in range(n // 2):
        state = qsim.apply_swap(state, j, n - 1 - j)
    return state


def iqft(state: StateVector) -> StateVector:
    n = state.n_qubits
    for j in range(n // 2):
        state = qsim.apply_swap(state, j, n - 1 - j)
    for j in range(n):
        for k in range(j):
            state = qsim.apply_controlled_phase(state, k, j, -math.pi / (1 << (j - k)))
        state = qsim.apply_hadamard(state, j)
    return state


def _check_operand(value: int, n: int) -> None:
    if not 0 <= value < 1 << n:
        raise OperandOutOfRange(f"operand {value} does not fit in {n} qubits")


def phase_add(state: StateVector, b: int) -> StateVector:
    """Add the classical integer ``b`` to a Fourier-encoded register.

    Wire ``j`` carries the bit of weight ``2**j`` of the Fourier index, so it
    picks up the angle ``2*pi*b*2**j / 2**n``; the product over wires gives
    ``exp(2*pi*i*b*k / 2**n)`` on basis index ``k``. Carries need no extra
    register: they are whole turns absorbed into the accumulated phase.
    """
    n = state.n_qubits
    _check_operand(b, n)
    modulus = 1 << n
    for j in range(n):
        turns = (b << j) % modulus
        if turns:
            state = qsim.apply_phase(state, j, 2 * math.pi * turns / modulus)
    return state


def phase_word(state: StateVector) -> int:
    """Read the encoded integer back from the phase of the ``|1>`` amplitude.

    Only meaningful for the Fourier transform of a basis state.
    """
    n = state.n_qubits
    ratio = state.amplitudes[1] / state.amplitudes[0]
    turns = cmath.phase(ratio) / (2 * math.pi)
    return round(turns * (1 << n)) % (1 << n)


def format_phase_word(word: int, n: int) -> str:
    """Binary fraction ``0.w_{n-1}...w_0`` of ``word / 2**n``."""
    return "0." + format(word, f"0{n}b")


@dataclass(frozen=True)
class AddStage:
    label: str
    word: int
    fraction: str


def quantum_add_trace(a: int, b: int, n: int) -> tuple[int, list[AddStage]]:
    """Run the Fourier adder digit by digit and record the phase word after each stage."""
    _check_operand(a, n)
    _check_operand(b, n)
    state = qft(qsim.basis_state(n, a))

    def stage(label: str) -> AddStage:
        word = phase_word(state)
        return AddStage(label, word, format_phase_word(word, n))

    stages = [stage("qft")]
    for j in range(n):
        bit = (b >> j) & 1
        if bit:
            state = phase_add(state, 1 << j)
        stages.append(stage(f"add b{j}={bit}"))
    result = qsim.measure(iqft(state), np.random.default_rng(0)).basis_index
    return result, stages


def quantum_add(a: int, b: int, n: int, rng: np.random.Generator | None = None) -> int:
    """``(a + b) mod 2**n`` computed as iqft(phase_add(qft(|a>), b)) and measured.

    The final state is a basis state, so the measurement is certain whatever
    the generator does.
    """
    _check_operand(a, n)
    _check_operand(b, n)
    state = iqft(phase_add(qft(qsim.basis_state(n, a)), b))
    outcome = qsim.measure(state, rng if rng is not None else np.random.default_rng(0))
    if abs(outcome.probability - 1) > 1e-9:
        raise RuntimeError(f"adder output is not a basis state (p={outcome.probability:.3g})")
    return outcome.basis_index


def carry_phase_angle(carry: int, q: int, i: int) -> float:
    """Angle of the carry correction ``diag(1, exp(2*pi*i*carry/q**(i-1)))``.

    Provided for inspection only; :func:`phase_add` never needs an explicit
    carry gate. Apply it with :func:`qsim.apply_phase`.
    """
    return 2 * math.pi * carry / q ** (i - 1)
