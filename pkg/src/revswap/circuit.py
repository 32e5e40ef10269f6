"""Gate and circuit IR for reversible/quantum circuits.

The gate set is deliberately small:

    X     -- NOT with any number of controls (NOT, CNOT, Toffoli, C^mNOT)
    Swap  -- swap of two lines with any number of controls (Fredkin = 1 control)
    H     -- Hadamard, always uncontrolled

Controls carry a polarity: positive fires on |1>, negative on |0>.
All values are immutable; every editing operation returns a new Circuit.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, NamedTuple


class Polarity(Enum):
    POSITIVE = "+"  # fires when the control line holds 1
    NEGATIVE = "-"  # fires when the control line holds 0


class Control(NamedTuple):
    line: int
    polarity: Polarity = Polarity.POSITIVE


def pos(line: int) -> Control:
    return Control(line, Polarity.POSITIVE)


def neg(line: int) -> Control:
    return Control(line, Polarity.NEGATIVE)


def _as_control(value) -> Control:
    """Coerce an int (positive control) or (line, polarity) pair to Control."""
    if isinstance(value, Control):
        return value
    if isinstance(value, int):
        return Control(value, Polarity.POSITIVE)
    line, polarity = value
    return Control(int(line), Polarity(polarity) if not isinstance(polarity, Polarity) else polarity)


class GateKind(Enum):
    X = "x"
    SWAP = "swap"
    H = "h"


@dataclass(frozen=True)
class Gate:
    """One gate: kind, controls (sorted by line), targets.

    X and H take exactly one target; Swap takes two. Construction only
    canonicalizes (sorts controls, sorts Swap targets); structural rules are
    checked by validate() so that malformed gates are representable and
    reportable.
    """

    kind: GateKind
    controls: tuple[Control, ...] = ()
    targets: tuple[int, ...] = ()

    def __post_init__(self):
        controls = tuple(sorted((_as_control(c) for c in self.controls),
                                key=lambda c: (c.line, c.polarity.value)))
        targets = tuple(int(t) for t in self.targets)
        if self.kind is GateKind.SWAP and len(targets) == 2:
            targets = tuple(sorted(targets))
        object.__setattr__(self, "controls", controls)
        object.__setattr__(self, "targets", targets)

    @property
    def lines(self) -> frozenset[int]:
        return frozenset(c.line for c in self.controls) | frozenset(self.targets)

    @property
    def control_lines(self) -> frozenset[int]:
        return frozenset(c.line for c in self.controls)

    def __repr__(self):
        ctl = ",".join(f"{'-' if c.polarity is Polarity.NEGATIVE else ''}{c.line}" for c in self.controls)
        tgt = ",".join(str(t) for t in self.targets)
        return f"{self.kind.value}[{ctl}->{tgt}]" if ctl else f"{self.kind.value}[{tgt}]"


def x(target: int, controls: Iterable = ()) -> Gate:
    return Gate(GateKind.X, tuple(_as_control(c) for c in controls), (target,))


def cnot(control, target: int) -> Gate:
    return x(target, (control,))


def toffoli(c1, c2, target: int) -> Gate:
    return x(target, (c1, c2))


def mcx(controls: Iterable, target: int) -> Gate:
    return x(target, controls)


def swap(a: int, b: int, controls: Iterable = ()) -> Gate:
    return Gate(GateKind.SWAP, tuple(_as_control(c) for c in controls), (a, b))


def fredkin(control, a: int, b: int) -> Gate:
    return swap(a, b, (control,))


def hadamard(target: int) -> Gate:
    return Gate(GateKind.H, (), (target,))


def gate_arity(g: Gate) -> int:
    """Number of distinct lines the gate touches (controls + targets)."""
    return len(g.controls) + len(g.targets)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over named lines.

    constants[i] is 0/1 when the input on line i is fixed, None when free.
    garbage[i] marks the output on line i as don't-care. A circuit without
    Hadamards is Boolean-reversible (computes a permutation of bitstrings).
    """

    line_count: int
    line_names: tuple[str, ...] = ()
    constants: tuple = ()
    garbage: tuple[bool, ...] = ()
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        names = tuple(self.line_names) or tuple(f"x{i}" for i in range(self.line_count))
        constants = tuple(self.constants) or (None,) * self.line_count
        garbage = tuple(self.garbage) or (False,) * self.line_count
        object.__setattr__(self, "line_names", names)
        object.__setattr__(self, "constants", constants)
        object.__setattr__(self, "garbage", garbage)
        object.__setattr__(self, "gates", tuple(self.gates))

    @classmethod
    def from_gates(cls, line_count: int, gates: Iterable[Gate] = (), names: Iterable[str] = ()) -> "Circuit":
        return cls(line_count, tuple(names), (), (), tuple(gates))

    @property
    def is_boolean_reversible(self) -> bool:
        return all(g.kind is not GateKind.H for g in self.gates)

    # -- pure editing operations ------------------------------------------

    def append(self, gates: Iterable[Gate] | Gate) -> "Circuit":
        return self.splice(len(self.gates), len(self.gates), gates)

    def insert(self, position: int, gates: Iterable[Gate] | Gate) -> "Circuit":
        return self.splice(position, position, gates)

    def remove(self, position: int) -> "Circuit":
        return self.splice(position, position + 1, ())

    def splice(self, start: int, stop: int, gates: Iterable[Gate] | Gate) -> "Circuit":
        """Replace gates[start:stop] with the given gates; returns a new circuit."""
        if isinstance(gates, Gate):
            gates = (gates,)
        gates = tuple(gates)
        if not (0 <= start <= stop <= len(self.gates)):
            raise IndexError(f"splice range [{start}, {stop}) out of bounds for {len(self.gates)} gates")
        for g in gates:
            bad = [l for l in g.lines if not (0 <= l < self.line_count)]
            if bad:
                raise ValueError(f"gate {g!r} references lines {bad} outside 0..{self.line_count - 1}")
        return replace(self, gates=self.gates[:start] + gates + self.gates[stop:])

    def extend_lines(self, k: int, constant: int = 0) -> "Circuit":
        """Append k fresh lines, fixed to `constant` on input and marked garbage."""
        if k < 0:
            raise ValueError("cannot extend by a negative number of lines")
        if k == 0:
            return self
        existing = set(self.line_names)
        names = []
        i = 0
        while len(names) < k:
            name = f"anc{i}"
            if name not in existing:
                names.append(name)
                existing.add(name)
            i += 1
        return replace(
            self,
            line_count=self.line_count + k,
            line_names=self.line_names + tuple(names),
            constants=self.constants + (constant,) * k,
            garbage=self.garbage + (True,) * k,
        )


@dataclass(frozen=True)
class Violation:
    """One structural rule broken by a circuit. gate_index is None for
    circuit-level problems."""

    gate_index: int | None
    rule: str
    message: str

    def __str__(self):
        where = f"gate {self.gate_index}: " if self.gate_index is not None else ""
        return f"{where}{self.message}"


def validate(circuit: Circuit) -> list[Violation]:
    """Check every structural invariant; returns one Violation per breach."""
    out: list[Violation] = []
    if circuit.line_count < 1:
        out.append(Violation(None, "line-count", "circuit must have at least one line"))
    if len(circuit.line_names) != circuit.line_count:
        out.append(Violation(None, "line-names", "line name count does not match line count"))
    if len(set(circuit.line_names)) != len(circuit.line_names):
        out.append(Violation(None, "line-names", "line names are not unique"))
    if len(circuit.constants) != circuit.line_count:
        out.append(Violation(None, "constants", "constants length does not match line count"))
    if len(circuit.garbage) != circuit.line_count:
        out.append(Violation(None, "garbage", "garbage length does not match line count"))

    for i, g in enumerate(circuit.gates):
        control_lines = [c.line for c in g.controls]
        if len(set(control_lines)) != len(control_lines):
            out.append(Violation(i, "duplicate-control", f"{g!r} lists a control line twice"))
        overlap = set(control_lines) & set(g.targets)
        if overlap:
            out.append(Violation(i, "control-target-overlap", f"{g!r} uses lines {sorted(overlap)} as both control and target"))
        for l in g.lines:
            if not (0 <= l < circuit.line_count):
                out.append(Violation(i, "line-range", f"{g!r} references line {l} outside 0..{circuit.line_count - 1}"))
        if g.kind in (GateKind.X, GateKind.H):
            if len(g.targets) != 1:
                out.append(Violation(i, "target-count", f"{g!r} must have exactly one target"))
        elif g.kind is GateKind.SWAP:
            if len(g.targets) != 2 or len(set(g.targets)) != 2:
                out.append(Violation(i, "target-count", f"{g!r} must have exactly two distinct targets"))
        if g.kind is GateKind.H and g.controls:
            out.append(Violation(i, "controlled-hadamard", f"{g!r}: controlled Hadamard is not representable"))
    return out


class AncillaMode(Enum):
    ZERO = "zero"        # line holds |0> at the tracked point
    UNIFORM = "uniform"  # line holds the uniform superposition


class AncillaTracker:
    """Tracks Hadamard parity per ancilla line.

    Even Hadamard count => ZERO, odd => UNIFORM. Callers must route every
    Hadamard they emit on a tracked line through observe_hadamard().
    """

    def __init__(self, lines: Iterable[int] = ()):
        self._modes: dict[int, AncillaMode] = {int(l): AncillaMode.ZERO for l in lines}

    def track(self, line: int) -> None:
        self._modes.setdefault(int(line), AncillaMode.ZERO)

    def tracked(self) -> list[int]:
        return sorted(self._modes)

    def mode(self, line: int) -> AncillaMode:
        return self._modes[line]

    def observe_hadamard(self, line: int) -> None:
        if line in self._modes:
            cur = self._modes[line]
            self._modes[line] = AncillaMode.UNIFORM if cur is AncillaMode.ZERO else AncillaMode.ZERO

    def uniform_lines(self) -> list[int]:
        return sorted(l for l, m in self._modes.items() if m is AncillaMode.UNIFORM)
