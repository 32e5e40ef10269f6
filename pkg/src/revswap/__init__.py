"""revswap: rewrites multiple-control Toffoli networks into cheaper quantum
circuits by factoring shared controls through controlled swaps against an
invariant ancilla register, with a two-qubit-gate cost model and
simulation-based equivalence certification."""

from .circuit import (AncillaMode, AncillaTracker, Circuit, Control, Gate, GateKind,
                      Polarity, Violation, cnot, fredkin, gate_arity, hadamard, mcx,
                      neg, pos, swap, toffoli, validate, x)
from .cost import (DEFAULT_MODEL, CostModel, GateDistribution, arity_cost,
                   circuit_cost, distribution, distribution_cost, gate_cost,
                   toffoli_count)
from .optimize import (AppliedBlock, BasisKind, InsufficientAncillaError,
                       NoFixedPointError, OptimizeError, OptimizeOptions,
                       PatternMismatchError, PlanMismatchError, PrepAction,
                       PreparationPlan, RegisterMismatchError, RewriteReport,
                       SharedControlBlock, apply_identity, choose_preparation,
                       commutation_pre_pass, commute_toffoli_past_cnot,
                       compile_if_then_else, evaluate_block, find_shared_blocks,
                       optimize)
from .realfmt import RealFormatError, emit, parse
from .sim import (CounterExample, CubePattern, CubeSymbol, Equivalent,
                  HadamardPresentError, Inconclusive, Permutation, SimulationError,
                  SparseState, TermBudgetExceededError, Verdict, WidthExceededError,
                  check_equivalence, find_fixed_cube, find_fixed_points, format_basis,
                  line_probability, permutation_of, simulate_dense, simulate_sparse)

__version__ = "0.1.0"

__all__ = [
    "AncillaMode", "AncillaTracker", "Circuit", "Control", "Gate", "GateKind",
    "Polarity", "Violation", "cnot", "fredkin", "gate_arity", "hadamard", "mcx",
    "neg", "pos", "swap", "toffoli", "validate", "x",
    "DEFAULT_MODEL", "CostModel", "GateDistribution", "arity_cost", "circuit_cost",
    "distribution", "distribution_cost", "gate_cost", "toffoli_count",
    "AppliedBlock", "BasisKind", "InsufficientAncillaError", "NoFixedPointError",
    "OptimizeError", "OptimizeOptions", "PatternMismatchError", "PlanMismatchError",
    "PrepAction", "PreparationPlan", "RegisterMismatchError", "RewriteReport",
    "SharedControlBlock", "apply_identity", "choose_preparation",
    "commutation_pre_pass", "commute_toffoli_past_cnot", "compile_if_then_else",
    "evaluate_block", "find_shared_blocks", "optimize",
    "RealFormatError", "emit", "parse",
    "CounterExample", "CubePattern", "CubeSymbol", "Equivalent",
    "HadamardPresentError", "Inconclusive", "Permutation", "SimulationError",
    "SparseState", "TermBudgetExceededError", "Verdict", "WidthExceededError",
    "check_equivalence", "find_fixed_cube", "find_fixed_points", "format_basis",
    "line_probability", "permutation_of", "simulate_dense", "simulate_sparse",
]
