"""Two-qubit-gate cost metric.

Single-qubit gates are free, every two-qubit gate costs 1, and an arity-n
multiple-control Toffoli or Fredkin (n >= 3) costs 10n - 25: the ladder
decomposition over zeroed ancillae needs 2n - 5 three-qubit gates, each worth
5 two-qubit gates. Control polarity never affects cost. The parameters are
configurable, but the defaults are the frozen reference metric and reports
should always state which model produced their numbers.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .circuit import Circuit, Gate, GateKind, gate_arity


@dataclass(frozen=True)
class CostModel:
    single_qubit_cost: int = 0
    two_qubit_cost: int = 1
    three_qubit_cost: int = 5
    mct_linear_coefficient: int = 10
    mct_linear_offset: int = -25

    def describe(self) -> dict:
        return {
            "single_qubit_cost": self.single_qubit_cost,
            "two_qubit_cost": self.two_qubit_cost,
            "three_qubit_cost": self.three_qubit_cost,
            "mct_linear_coefficient": self.mct_linear_coefficient,
            "mct_linear_offset": self.mct_linear_offset,
        }


DEFAULT_MODEL = CostModel()


def toffoli_count(arity: int) -> int:
    """Three-qubit gates in the ladder decomposition of an arity-n MCT/MCF (n >= 3)."""
    if arity < 3:
        raise ValueError("ladder decomposition applies to arity >= 3")
    return 2 * arity - 5


def arity_cost(arity: int, m: CostModel) -> int:
    if arity <= 1:
        return m.single_qubit_cost
    if arity == 2:
        return m.two_qubit_cost
    if arity == 3:
        return m.three_qubit_cost
    return m.mct_linear_coefficient * arity + m.mct_linear_offset


def gate_cost(g: Gate, m: CostModel = DEFAULT_MODEL) -> int:
    """Cost of one gate. X and Swap of equal arity cost the same; polarity is ignored."""
    return arity_cost(gate_arity(g), m)


def circuit_cost(c: Circuit, m: CostModel = DEFAULT_MODEL) -> int:
    return sum(gate_cost(g, m) for g in c.gates)


def _class_label(g: Gate) -> str:
    if g.kind is GateKind.H:
        return "H"
    prefix = "T" if g.kind is GateKind.X else "F"
    return f"{prefix}{gate_arity(g)}"


@dataclass(frozen=True)
class GateDistribution:
    """Gate counts keyed by class label: Tk (X of arity k), Fk (swap of arity k), H."""

    counts: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def labels(self) -> list[str]:
        """Labels in fixed report order: T1..Tmax, F2..Fmax, H."""
        def key(label: str) -> tuple[int, int]:
            if label == "H":
                return (2, 0)
            return (0 if label[0] == "T" else 1, int(label[1:]))
        return sorted(self.counts, key=key)


def distribution(c: Circuit) -> GateDistribution:
    counts: dict[str, int] = {}
    for g in c.gates:
        label = _class_label(g)
        counts[label] = counts.get(label, 0) + 1
    return GateDistribution(counts)


def distribution_cost(d: GateDistribution, m: CostModel = DEFAULT_MODEL) -> int:
    """Cost of a circuit from its distribution alone; matches circuit_cost exactly."""
    total = 0
    for label, count in d.counts.items():
        arity = 1 if label == "H" else int(label[1:])
        total += count * arity_cost(arity, m)
    return total
