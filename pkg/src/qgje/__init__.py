"""Gauss-Jordan elimination over the rationals with pivot search by a
simulated Grover algorithm, a Fourier-basis quantum adder, and the
operation-count formulas used to audit the elimination's cost."""

from .costs import (
    closed_form_cost,
    floored_closed_form,
    paper_cost_total,
    printed_theorem_cost,
    sum_of_squares,
)
from .elimination import GroverPivotStrategy, QgjeReport, cost_report, grover_pivot, qgje_rref
from .fourier import BaseQDigits, CharacterParams, character, iqft, phase_add, qft, quantum_add
from .grover import (
    DeutschResult,
    Oracle,
    deutsch_classify,
    diffusion,
    grover_iterate,
    grover_search,
    iteration_count,
    make_plan,
    oracle_reflect,
    uniform_state,
)
from .ledger import CostLedger
from .linalg import (
    AugmentedSystem,
    ClassicalPivot,
    Matrix,
    RrefResult,
    SolutionKind,
    SolutionSpace,
    classical_pivot_scan,
    rref,
    solve,
)
from .qsim import StateVector, basis_state, measure, probabilities

__version__ = "0.1.0"
