"""Shared-control factoring: the main rewrite pass.

A run of adjacent gates that all carry the same control literal can be
replaced by a cheaper construction: prepare an ancilla register in a state
the stripped run leaves invariant (uniform superposition, a fixed point, or
a fixed cube), swap the run's data lines with the ancillae under the shared
control, apply the stripped run to the ancilla register unconditionally, swap
back, and undo the preparation. The uniform superposition works for every
run because it is a +1 eigenvector of any bit-permutation; fixed points and
fixed cubes trade Hadamards for NOTs when the stripped run has them.

With s >= 2 shared controls the product of the control literals is first
collected onto one extra ancilla, which then drives the swap layers.

Also here: a local commutation rewrite that moves a multi-controlled X past a
blocking CNOT (certified per application), and an if-then-else compiler that
runs both branches in parallel against a Hadamard-dressed ancilla register.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

from .circuit import (AncillaMode, AncillaTracker, Circuit, Control, Gate,
                      GateKind, Polarity, gate_arity, hadamard, pos, swap, validate, x)
from .cost import DEFAULT_MODEL, CostModel, arity_cost, circuit_cost, gate_cost
from .sim import (CUBE_WIDTH_LIMIT, CubePattern, CubeSymbol, HadamardPresentError,
                  WidthExceededError, find_fixed_cube, permutation_of)


class OptimizeError(Exception):
    pass


class InsufficientAncillaError(OptimizeError):
    pass


class PlanMismatchError(OptimizeError):
    pass


class NoFixedPointError(OptimizeError):
    pass


class PatternMismatchError(OptimizeError):
    pass


class RegisterMismatchError(OptimizeError):
    pass


# ---------------------------------------------------------------------------
# candidate blocks


@dataclass(frozen=True)
class SharedControlBlock:
    """A contiguous gate run [start, end) whose gates all carry the same
    control literals. residual_register lists the lines the run touches once
    those controls are stripped, ascending."""

    start: int
    end: int
    shared_controls: tuple[Control, ...]
    residual_register: tuple[int, ...]
    profit: int

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def k(self) -> int:
        return len(self.residual_register)

    @property
    def s(self) -> int:
        return len(self.shared_controls)

    @property
    def ancilla_need(self) -> int:
        """Swap partners for the residual register, plus one product collector."""
        return self.k + (1 if self.s >= 2 else 0)


def _blocks_in_range(c: Circuit, lo: int, hi: int, model: CostModel) -> list[SharedControlBlock]:
    blocks: list[SharedControlBlock] = []
    gates = c.gates
    for start in range(lo, hi - 1):
        shared = set(gates[start].controls)
        for end in range(start + 1, hi):
            shared &= set(gates[end].controls)
            if not shared:
                break
            shared_t = tuple(sorted(shared, key=lambda ctl: (ctl.line, ctl.polarity.value)))
            shared_lines = {ctl.line for ctl in shared_t}
            touched: set[int] = set()
            for g in gates[start:end + 1]:
                touched |= g.lines
            residual = tuple(sorted(touched - shared_lines))
            block = SharedControlBlock(start, end + 1, shared_t, residual, 0)
            blocks.append(replace(block, profit=evaluate_block(block, c, model)))
    return blocks


def find_shared_blocks(c: Circuit, model: CostModel = DEFAULT_MODEL) -> list[SharedControlBlock]:
    """Every contiguous run of >= 2 gates with a nonempty shared control set.

    Runs are enumerated at all lengths (a shorter run can share more
    controls), ordered by start then end. Each block carries its rewrite
    profit under `model`.
    """
    if not c.is_boolean_reversible:
        raise HadamardPresentError("shared-control search requires a Hadamard-free circuit")
    return _blocks_in_range(c, 0, len(c.gates), model)


def evaluate_block(b: SharedControlBlock, c: Circuit, model: CostModel = DEFAULT_MODEL,
                   plan: "PreparationPlan | None" = None) -> int:
    """Cost saved by rewriting the block: original run cost minus replacement.

    The replacement prices: preparation and un-preparation single-qubit gates
    (a full Hadamard layer when no plan is given), two controlled-swap layers
    of k Fredkins, the product collector pair when s >= 2, and the stripped
    residual gates. Reuse of already-prepared ancillae can only drop
    single-qubit gates from this estimate.
    """
    k, s = b.k, b.s
    original = sum(gate_cost(g, model) for g in c.gates[b.start:b.end])
    prep_gates = 2 * k if plan is None else 2 * sum(1 for a in plan.actions if a is not PrepAction.NONE)
    cost = prep_gates * model.single_qubit_cost
    if s >= 2:
        cost += 2 * arity_cost(s + 1, model)
    cost += 2 * k * arity_cost(3, model)
    for g in c.gates[b.start:b.end]:
        cost += arity_cost(gate_arity(g) - s, model)
    return original - cost


def _residual_circuit(c: Circuit, b: SharedControlBlock) -> Circuit:
    """The block's gates with shared controls stripped, renumbered onto
    0..k-1 in residual-register order."""
    posmap = {line: i for i, line in enumerate(b.residual_register)}
    shared = set(b.shared_controls)
    gates = []
    for g in c.gates[b.start:b.end]:
        controls = tuple(Control(posmap[ctl.line], ctl.polarity)
                         for ctl in g.controls if ctl not in shared)
        targets = tuple(posmap[t] for t in g.targets)
        gates.append(Gate(g.kind, controls, targets))
    return Circuit.from_gates(b.k, gates)


# ---------------------------------------------------------------------------
# preparation plans


class PrepAction(Enum):
    APPLY_H = "H"
    APPLY_NOT = "NOT"
    NONE = "None"


class BasisKind(Enum):
    UNIFORM_SUPERPOSITION = "uniform"
    FIXED_POINT = "fixed-point"
    FIXED_CUBE = "fixed-cube"


@dataclass(frozen=True)
class PreparationPlan:
    """How to prepare the ancilla register, one action per residual line.

    The pattern pins the invariant set of the stripped run: all-free for the
    uniform superposition, no free positions for a fixed point, mixed for a
    fixed cube. Free positions get a Hadamard, ones get a NOT, zeros nothing.
    """

    kind: BasisKind
    pattern: CubePattern

    @property
    def actions(self) -> tuple[PrepAction, ...]:
        table = {CubeSymbol.FREE: PrepAction.APPLY_H,
                 CubeSymbol.ONE: PrepAction.APPLY_NOT,
                 CubeSymbol.ZERO: PrepAction.NONE}
        return tuple(table[s] for s in self.pattern.symbols)

    @property
    def hadamard_count(self) -> int:
        return self.pattern.free_count

    @property
    def point(self) -> int | None:
        return self.pattern.fixed_value if self.pattern.free_count == 0 else None

    @classmethod
    def uniform(cls, k: int) -> "PreparationPlan":
        return cls(BasisKind.UNIFORM_SUPERPOSITION, CubePattern.all_free(k))

    @classmethod
    def for_cube(cls, pattern: CubePattern) -> "PreparationPlan":
        if pattern.free_count == pattern.width:
            return cls(BasisKind.UNIFORM_SUPERPOSITION, pattern)
        kind = BasisKind.FIXED_POINT if pattern.free_count == 0 else BasisKind.FIXED_CUBE
        return cls(kind, pattern)


def choose_preparation(b: SharedControlBlock, c: Circuit, mode: str = "auto",
                       cube_limit: int = CUBE_WIDTH_LIMIT) -> PreparationPlan:
    """Pick the ancilla preparation for a block.

    hadamard: always the full Hadamard layer. fixed-point: the smallest
    invariant cube of the stripped run (a point when one exists), error when
    only the full space qualifies. auto: the cube when it needs fewer
    Hadamards than the full layer, else the full layer.
    """
    if mode not in ("hadamard", "fixed-point", "auto"):
        raise ValueError(f"unknown preparation mode {mode!r}")
    k = b.k
    if mode == "hadamard":
        return PreparationPlan.uniform(k)
    if k > cube_limit:
        raise WidthExceededError(f"residual width {k} exceeds cube search limit {cube_limit}")
    cube = find_fixed_cube(permutation_of(_residual_circuit(c, b)), cube_limit)
    if mode == "fixed-point":
        if cube.free_count == k:
            raise NoFixedPointError(
                "the stripped run fixes no point and no proper cube; Hadamard preparation is required")
        return PreparationPlan.for_cube(cube)
    if cube.free_count < k:
        return PreparationPlan.for_cube(cube)
    return PreparationPlan.uniform(k)


# ---------------------------------------------------------------------------
# applying the identity


def _check_plan(c: Circuit, b: SharedControlBlock, plan: PreparationPlan) -> None:
    if plan.pattern.width != b.k:
        raise PlanMismatchError(f"plan covers {plan.pattern.width} lines, block residual has {b.k}")
    if plan.kind is BasisKind.UNIFORM_SUPERPOSITION:
        return
    perm = permutation_of(_residual_circuit(c, b))
    pattern = plan.pattern
    for point in pattern.points():
        if not pattern.contains(perm.apply(int(point))):
            raise PlanMismatchError(
                f"stripped run does not fix cube {pattern}: point {int(point)} escapes")


def _replacement_gates(c: Circuit, b: SharedControlBlock, plan: PreparationPlan,
                       swap_ancillae: Sequence[int], product_ancilla: int | None,
                       tracker: AncillaTracker, defer_unprep: bool) -> list[Gate]:
    """Emit the rewrite for one block, keeping the tracker in sync.

    Stage order: prepare ancillae, collect the control product (s >= 2), the
    controlled-swap layer in, the stripped run on the ancilla register, the
    swap layer out, uncompute the product, un-prepare. Preparation Hadamards
    are skipped on lines already in uniform mode; un-preparation Hadamards
    are left out when deferred for reuse by a later block.
    """
    out: list[Gate] = []

    def emit(g: Gate) -> None:
        if g.kind is GateKind.H:
            tracker.observe_hadamard(g.targets[0])
        out.append(g)

    actions = plan.actions
    for j, action in enumerate(actions):
        anc = swap_ancillae[j]
        uniform = tracker.mode(anc) is AncillaMode.UNIFORM
        if action is PrepAction.APPLY_H:
            if not uniform:
                emit(hadamard(anc))
        else:
            if uniform:
                emit(hadamard(anc))
            if action is PrepAction.APPLY_NOT:
                emit(x(anc))

    if b.s >= 2:
        assert product_ancilla is not None
        if tracker.mode(product_ancilla) is AncillaMode.UNIFORM:
            emit(hadamard(product_ancilla))
        product_gate = x(product_ancilla, b.shared_controls)
        emit(product_gate)
        swap_control: Control = pos(product_ancilla)
    else:
        product_gate = None
        swap_control = b.shared_controls[0]

    swap_layer = [swap(line, swap_ancillae[j], (swap_control,))
                  for j, line in enumerate(b.residual_register)]
    for g in swap_layer:
        emit(g)

    posmap = {line: swap_ancillae[j] for j, line in enumerate(b.residual_register)}
    shared = set(b.shared_controls)
    for g in c.gates[b.start:b.end]:
        controls = tuple(Control(posmap[ctl.line], ctl.polarity)
                         for ctl in g.controls if ctl not in shared)
        targets = tuple(posmap[t] for t in g.targets)
        emit(Gate(g.kind, controls, targets))

    for g in swap_layer:
        emit(g)
    if product_gate is not None:
        emit(product_gate)

    for j, action in enumerate(actions):
        if action is PrepAction.APPLY_NOT:
            emit(x(swap_ancillae[j]))
        elif action is PrepAction.APPLY_H and not defer_unprep:
            emit(hadamard(swap_ancillae[j]))

    return out


def apply_identity(c: Circuit, b: SharedControlBlock, plan: PreparationPlan,
                   ancilla_pool: Iterable[int], *, tracker: AncillaTracker | None = None,
                   defer_unprep: bool = False) -> Circuit:
    """Replace the block's gate range with the factored construction.

    The pool supplies the k swap partners (plus one product collector when
    s >= 2) as existing lines of `c` that must start in |0> and be untouched
    elsewhere. Fixed-point/cube plans are verified against the stripped run
    before anything is rewritten.
    """
    pool = [int(l) for l in ancilla_pool]
    if len(pool) < b.ancilla_need:
        raise InsufficientAncillaError(
            f"block needs {b.ancilla_need} ancilla lines, pool has {len(pool)}")
    block_lines = {ctl.line for ctl in b.shared_controls} | set(b.residual_register)
    for l in pool[:b.ancilla_need]:
        if not (0 <= l < c.line_count):
            raise InsufficientAncillaError(f"ancilla line {l} is not a line of the circuit")
        if l in block_lines:
            raise InsufficientAncillaError(f"ancilla line {l} collides with the block")
    _check_plan(c, b, plan)

    if tracker is None:
        tracker = AncillaTracker(pool[:b.ancilla_need])
    else:
        for l in pool[:b.ancilla_need]:
            tracker.track(l)
    swap_ancillae = pool[:b.k]
    product_ancilla = pool[b.k] if b.s >= 2 else None
    gates = _replacement_gates(c, b, plan, swap_ancillae, product_ancilla, tracker, defer_unprep)
    return c.splice(b.start, b.end, gates)


# ---------------------------------------------------------------------------
# the greedy driver


@dataclass(frozen=True)
class OptimizeOptions:
    model: CostModel = DEFAULT_MODEL
    ancilla_budget: int | None = None           # None: line count - 1
    prep: str = "auto"                          # hadamard | fixed-point | auto
    pre_pass: bool = False                      # commutation enabler before block search
    passes: int = 1
    cube_limit: int = CUBE_WIDTH_LIMIT


@dataclass
class AppliedBlock:
    block: SharedControlBlock
    plan: PreparationPlan
    cost_before: int
    cost_after: int


@dataclass
class RewriteReport:
    """What the rewrite did. Block deltas account for every emitted gate, so
    total_cost_before + pre_pass_cost_delta - sum(block savings) equals
    total_cost_after exactly (the delta is 0 unless the commutation enabler
    ran and its moves survived)."""

    blocks: list[AppliedBlock] = field(default_factory=list)
    ancillae_used: int = 0
    total_cost_before: int = 0
    total_cost_after: int = 0
    passes_run: int = 0
    pre_pass_cost_delta: int = 0

    @property
    def improvement_pct(self) -> float:
        if self.total_cost_before == 0:
            return 0.0
        return 100.0 * (self.total_cost_before - self.total_cost_after) / self.total_cost_before

    def to_dict(self, model: CostModel = DEFAULT_MODEL) -> dict:
        return {
            "cost_before": self.total_cost_before,
            "cost_after": self.total_cost_after,
            "improvement_pct": round(self.improvement_pct, 2),
            "ancillae_used": self.ancillae_used,
            "passes": self.passes_run,
            "pre_pass_cost_delta": self.pre_pass_cost_delta,
            "model": model.describe(),
            "blocks": [
                {
                    "start": ab.block.start,
                    "end": ab.block.end,
                    "shared_controls": [[ctl.line, ctl.polarity.value] for ctl in ab.block.shared_controls],
                    "residual_lines": list(ab.block.residual_register),
                    "preparation": str(ab.plan.pattern),
                    "basis": ab.plan.kind.value,
                    "cost_before": ab.cost_before,
                    "cost_after": ab.cost_after,
                }
                for ab in self.blocks
            ],
        }


def _segments(gates: Sequence[Gate]) -> list[tuple[int, int]]:
    """Maximal Hadamard-free runs, as [start, end) pairs."""
    out = []
    start = None
    for i, g in enumerate(gates):
        if g.kind is GateKind.H:
            if start is not None:
                out.append((start, i))
                start = None
        elif start is None:
            start = i
    if start is not None:
        out.append((start, len(gates)))
    return [(a, b) for a, b in out if b - a >= 2]


def _select_blocks(blocks: list[SharedControlBlock], budget: int) -> list[SharedControlBlock]:
    """Greedy: max profit, ties to the earliest start, then the longest run."""
    candidates = [b for b in blocks if b.profit > 0 and b.ancilla_need <= budget]
    selected: list[SharedControlBlock] = []
    while candidates:
        best = max(candidates, key=lambda b: (b.profit, -b.start, b.length))
        selected.append(best)
        candidates = [b for b in candidates if b.end <= best.start or b.start >= best.end]
    return sorted(selected, key=lambda b: b.start)


def _one_pass(c: Circuit, budget: int, options: OptimizeOptions) -> tuple[Circuit, list[AppliedBlock], int]:
    model = options.model
    blocks: list[SharedControlBlock] = []
    for lo, hi in _segments(c.gates):
        blocks.extend(_blocks_in_range(c, lo, hi, model))
    selected = _select_blocks(blocks, budget)
    if not selected:
        return c, [], 0

    pool_base = c.line_count
    tracker = AncillaTracker()
    new_gates: list[Gate] = []
    applied: list[AppliedBlock] = []
    cursor = 0
    used = 0
    for b in selected:
        try:
            plan = choose_preparation(b, c, options.prep, options.cube_limit)
        except WidthExceededError:
            if options.prep != "auto":
                raise
            plan = PreparationPlan.uniform(b.k)
        # re-estimate with the concrete plan; skip if no longer profitable
        if evaluate_block(b, c, model, plan) <= 0:
            continue
        pool = list(range(pool_base, pool_base + b.ancilla_need))
        for l in pool:
            tracker.track(l)
        gates = _replacement_gates(c, b, plan, pool[:b.k],
                                   pool[b.k] if b.s >= 2 else None, tracker, defer_unprep=True)
        new_gates.extend(c.gates[cursor:b.start])
        new_gates.extend(gates)
        cursor = b.end
        used = max(used, b.ancilla_need)
        range_cost = sum(gate_cost(g, model) for g in c.gates[b.start:b.end])
        applied.append(AppliedBlock(b, plan, range_cost, sum(gate_cost(g, model) for g in gates)))
    new_gates.extend(c.gates[cursor:])

    if not applied:
        return c, [], 0

    final_layer = [hadamard(l) for l in tracker.uniform_lines()]
    new_gates.extend(final_layer)
    applied[-1].cost_after += sum(gate_cost(g, model) for g in final_layer)

    extended = c.extend_lines(used)
    return replace(extended, gates=tuple(new_gates)), applied, used


def _run_pipeline(c: Circuit, budget: int, options: OptimizeOptions,
                  pre_pass: bool) -> tuple[Circuit, RewriteReport]:
    model = options.model
    report = RewriteReport(total_cost_before=circuit_cost(c, model))
    work = c
    remaining = budget
    for _ in range(options.passes):
        before_move = work
        move_delta = 0
        if pre_pass:
            work = commutation_pre_pass(work)
            move_delta = circuit_cost(work, model) - circuit_cost(before_move, model)
        work, applied, used = _one_pass(work, remaining, options)
        report.passes_run += 1
        if not applied:
            # drop this pass's enabler moves too: they paid for nothing
            work = before_move
            break
        report.pre_pass_cost_delta += move_delta
        report.blocks.extend(applied)
        report.ancillae_used += used
        remaining -= used
    report.total_cost_after = circuit_cost(work, model)
    return work, report


def optimize(c: Circuit, options: OptimizeOptions | None = None) -> tuple[Circuit, RewriteReport]:
    """Greedy shared-control factoring over the whole circuit.

    Repeatedly applies the most profitable non-overlapping blocks, reusing
    uniform-mode ancillae across consecutive blocks (their Hadamards are only
    undone once, in a final layer that returns every ancilla to |0>). The
    ancilla pool is capped at the budget (line count - 1 by default); blocks
    needing more are skipped rather than partially applied. Each extra pass
    reruns the pipeline on the rewritten circuit with fresh ancilla lines.

    The commutation enabler inserts gates on the bet that block rewrites
    recoup them, so with pre_pass enabled the pipeline runs both ways and
    keeps the cheaper result; the output never costs more than the input.
    """
    options = options or OptimizeOptions()
    violations = validate(c)
    if violations:
        raise ValueError("cannot optimize invalid circuit: " + "; ".join(str(v) for v in violations))
    if not c.is_boolean_reversible:
        raise HadamardPresentError("optimize expects a Hadamard-free input circuit")
    if options.passes < 1:
        raise ValueError("passes must be at least 1")

    budget = options.ancilla_budget if options.ancilla_budget is not None else c.line_count - 1
    if budget < 0:
        raise ValueError("ancilla budget cannot be negative")

    plain = _run_pipeline(c, budget, options, pre_pass=False)
    if not options.pre_pass:
        return plain
    moved = _run_pipeline(c, budget, options, pre_pass=True)
    return moved if moved[1].total_cost_after < plain[1].total_cost_after else plain


# ---------------------------------------------------------------------------
# commutation enabler


def commute_toffoli_past_cnot(c: Circuit, position: int) -> Circuit:
    """Rewrite [CNOT(u,v), G] as [G, G', CNOT(u,v)] where G' drops control v.

    G must be an X gate with positive controls on both u and v. The move lets
    G join gates to the left of the CNOT for the cost of one extra gate with
    one fewer control. Every application is certified by comparing the truth
    tables of the two windows on the touched lines; on mismatch the circuit
    is returned unchanged.
    """
    if not (0 <= position < len(c.gates) - 1):
        raise PatternMismatchError(f"no gate pair at position {position}")
    head, g = c.gates[position], c.gates[position + 1]
    if not (head.kind is GateKind.X and len(head.controls) == 1
            and head.controls[0].polarity is Polarity.POSITIVE):
        raise PatternMismatchError("gate at position is not a plain CNOT")
    u = head.controls[0].line
    v = head.targets[0]
    if g.kind is not GateKind.X or pos(u) not in g.controls or pos(v) not in g.controls:
        raise PatternMismatchError("next gate is not an X gate positively controlled on both CNOT lines")

    g_prime = Gate(GateKind.X, tuple(ctl for ctl in g.controls if ctl != pos(v)), g.targets)
    window = sorted(head.lines | g.lines)
    remap = {line: i for i, line in enumerate(window)}

    def local(gs: Iterable[Gate]) -> Circuit:
        return Circuit.from_gates(len(window), [
            Gate(gg.kind,
                 tuple(Control(remap[ctl.line], ctl.polarity) for ctl in gg.controls),
                 tuple(remap[t] for t in gg.targets))
            for gg in gs])

    before = permutation_of(local([head, g]))
    after = permutation_of(local([g, g_prime, head]))
    if before != after:
        return c
    return c.splice(position, position + 2, (g, g_prime, head))


def _common_controls(a: Gate, b: Gate) -> set[Control]:
    return set(a.controls) & set(b.controls)


def _commutes(a: Gate, b: Gate) -> bool:
    if not (a.lines & b.lines):
        return True
    if a.kind is GateKind.X and b.kind is GateKind.X:
        return (a.targets[0] not in b.control_lines
                and b.targets[0] not in a.control_lines)
    return False


def commutation_pre_pass(c: Circuit) -> Circuit:
    """One left-to-right scan of gate moves that extend shared-control runs.

    Applies the CNOT move above when the freed gate shares a control with the
    gate before the CNOT, and swaps adjacent commuting gates when that makes
    two control-sharing gates adjacent. Deterministic single pass.
    """
    i = 1
    while i < len(c.gates) - 1:
        prev, g1, g2 = c.gates[i - 1], c.gates[i], c.gates[i + 1]
        if (g1.kind is GateKind.X and len(g1.controls) == 1
                and g1.controls[0].polarity is Polarity.POSITIVE
                and g2.kind is GateKind.X
                and pos(g1.controls[0].line) in g2.controls
                and pos(g1.targets[0]) in g2.controls
                and _common_controls(prev, g2) and not _common_controls(prev, g1)):
            moved = commute_toffoli_past_cnot(c, i)
            if moved is not c:
                c = moved
                i += 3
                continue
        if (_commutes(g1, g2) and _common_controls(prev, g2)
                and not _common_controls(prev, g1)):
            c = c.splice(i, i + 2, (g2, g1))
            i += 2
            continue
        i += 1
    return c


# ---------------------------------------------------------------------------
# if-then-else compiler


def compile_if_then_else(x_line: int, a: Circuit, b: Circuit) -> Circuit:
    """Build `if x then A else B` with both branches running in parallel.

    Output layout: the data register keeps A/B's line indices 0..w-1, the
    control sits at `x_line` (>= w), and w ancilla lines follow it. The
    ancillae are Hadamard-dressed, swapped with the data under a positive
    control on x, A runs on the ancilla register while B runs on the data
    register, then everything is swapped back and undressed: for x=1 the
    data meets A and B acts on an invariant state, for x=0 the reverse.
    """
    if a.line_count != b.line_count:
        raise RegisterMismatchError(
            f"branch registers differ: {a.line_count} vs {b.line_count} lines")
    if not (a.is_boolean_reversible and b.is_boolean_reversible):
        raise RegisterMismatchError("both branches must be Hadamard-free")
    w = a.line_count
    if x_line < w:
        raise RegisterMismatchError(
            f"control line {x_line} collides with the {w}-line data register")

    anc = [x_line + 1 + j for j in range(w)]
    total = x_line + 1 + w
    gates: list[Gate] = [hadamard(l) for l in anc]
    swap_layer = [swap(j, anc[j], (pos(x_line),)) for j in range(w)]
    gates.extend(swap_layer)
    for g in a.gates:
        gates.append(Gate(g.kind,
                          tuple(Control(anc[ctl.line], ctl.polarity) for ctl in g.controls),
                          tuple(anc[t] for t in g.targets)))
    gates.extend(b.gates)
    gates.extend(swap_layer)
    gates.extend(hadamard(l) for l in anc)

    names = list(a.line_names)
    existing = set(names)
    for i in range(w, total):
        base = "ctl" if i == x_line else f"anc{i - x_line - 1}"
        name = base
        n = 0
        while name in existing:
            name = f"{base}_{n}"
            n += 1
        names.append(name)
        existing.add(name)
    constants = list(a.constants) + [None] * (x_line - w) + [None] + [0] * w
    garbage = list(a.garbage) + [False] * (x_line - w) + [False] + [True] * w
    return Circuit(total, tuple(names), tuple(constants), tuple(garbage), tuple(gates))
