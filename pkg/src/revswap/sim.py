"""Semantic ground truth: permutation extraction, dense and sparse state-vector
simulation, equivalence checking, fixed-point and fixed-cube search.

Basis encoding is fixed everywhere: bit i of a basis index is the value of
line i (line 0 is the least significant bit). All amplitudes are
double-precision complex; every unitary in the gate set has entries in
{0, +-1, +-1/sqrt(2)^j}, so the 1e-9 tolerances used by the checkers are
generous.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from .circuit import Circuit, Gate, GateKind, Polarity

PRUNE_EPS = 1e-12
NORM_TOL = 1e-9
SQRT_HALF = 1.0 / math.sqrt(2.0)

DENSE_WIDTH_LIMIT = 16
PERMUTATION_WIDTH_LIMIT = 20
CUBE_WIDTH_LIMIT = 14
TERM_BUDGET = 1 << 16


class SimulationError(Exception):
    pass


class WidthExceededError(SimulationError):
    pass


class HadamardPresentError(SimulationError):
    pass


class TermBudgetExceededError(SimulationError):
    pass


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True, eq=False)
class Permutation:
    """Truth table of a Boolean-reversible circuit: table[x] = image of x."""

    width: int
    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        if table.shape != (1 << self.width,):
            raise ValueError(f"table must have 2^{self.width} entries")
        object.__setattr__(self, "table", table)

    def __eq__(self, other):
        return (isinstance(other, Permutation) and self.width == other.width
                and np.array_equal(self.table, other.table))

    def __repr__(self):
        return f"Permutation(width={self.width}, table={self.table.tolist()!r})"

    @classmethod
    def identity(cls, width: int) -> "Permutation":
        return cls(width, np.arange(1 << width, dtype=np.int64))

    def is_bijection(self) -> bool:
        return bool(np.array_equal(np.sort(self.table), np.arange(1 << self.width)))

    def apply(self, x: int) -> int:
        return int(self.table[x])

    def then(self, other: "Permutation") -> "Permutation":
        """Composition: apply self first, then other."""
        if self.width != other.width:
            raise ValueError("cannot compose permutations of different widths")
        return Permutation(self.width, other.table[self.table])


def _fires(g: Gate, basis: np.ndarray) -> np.ndarray:
    """Boolean mask: which basis indices satisfy all of g's control literals."""
    ok = np.ones(basis.shape, dtype=bool)
    for c in g.controls:
        bit = (basis >> c.line) & 1
        ok &= bit == (1 if c.polarity is Polarity.POSITIVE else 0)
    return ok


def _apply_boolean_gate(g: Gate, basis: np.ndarray) -> np.ndarray:
    """Image of each basis index under one X or Swap gate."""
    fire = _fires(g, basis)
    if g.kind is GateKind.X:
        return np.where(fire, basis ^ (1 << g.targets[0]), basis)
    t1, t2 = g.targets
    differ = ((basis >> t1) ^ (basis >> t2)) & 1 == 1
    return np.where(fire & differ, basis ^ ((1 << t1) | (1 << t2)), basis)


def permutation_of(c: Circuit, width_limit: int = PERMUTATION_WIDTH_LIMIT) -> Permutation:
    """Propagate every basis state through the circuit to build its truth table."""
    if not c.is_boolean_reversible:
        raise HadamardPresentError("circuit contains Hadamard gates; it has no Boolean truth table")
    if c.line_count > width_limit:
        raise WidthExceededError(f"width {c.line_count} exceeds permutation limit {width_limit}")
    v = np.arange(1 << c.line_count, dtype=np.int64)
    for g in c.gates:
        v = _apply_boolean_gate(g, v)
    return Permutation(c.line_count, v)


def find_fixed_points(p: Permutation) -> list[int]:
    """All x with p(x) = x, ascending."""
    idx = np.arange(1 << p.width, dtype=np.int64)
    return [int(x) for x in np.flatnonzero(p.table == idx)]


# ---------------------------------------------------------------------------
# cubes


class CubeSymbol(Enum):
    ZERO = "0"
    ONE = "1"
    FREE = "-"


_SYMBOL_RANK = {CubeSymbol.FREE: 0, CubeSymbol.ZERO: 1, CubeSymbol.ONE: 2}


@dataclass(frozen=True)
class CubePattern:
    """Per-line symbol; position i of the pattern is line i (leftmost in the
    string form). '-' marks a free line, '0'/'1' pin it."""

    symbols: tuple[CubeSymbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(CubeSymbol(s) for s in self.symbols))

    @classmethod
    def from_string(cls, s: str) -> "CubePattern":
        return cls(tuple(CubeSymbol(ch) for ch in s))

    @classmethod
    def all_free(cls, width: int) -> "CubePattern":
        return cls((CubeSymbol.FREE,) * width)

    def __str__(self):
        return "".join(s.value for s in self.symbols)

    @property
    def width(self) -> int:
        return len(self.symbols)

    @property
    def free_positions(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.symbols) if s is CubeSymbol.FREE)

    @property
    def free_count(self) -> int:
        return len(self.free_positions)

    @property
    def fixed_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.symbols) if s is not CubeSymbol.FREE)

    @property
    def fixed_value(self) -> int:
        return sum(1 << i for i, s in enumerate(self.symbols) if s is CubeSymbol.ONE)

    def contains(self, x: int) -> bool:
        return (x & self.fixed_mask) == self.fixed_value

    def points(self) -> np.ndarray:
        """All basis indices inside the cube, ascending."""
        pts = np.array([self.fixed_value], dtype=np.int64)
        for pos in self.free_positions:
            pts = np.concatenate([pts, pts | (1 << pos)])
        pts.sort()
        return pts

    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic tie-break order: '-' < '0' < '1', position 0 first."""
        return tuple(_SYMBOL_RANK[s] for s in self.symbols)


def _pattern_from_mask(width: int, free_mask: int, value: int) -> CubePattern:
    symbols = []
    for i in range(width):
        if (free_mask >> i) & 1:
            symbols.append(CubeSymbol.FREE)
        else:
            symbols.append(CubeSymbol.ONE if (value >> i) & 1 else CubeSymbol.ZERO)
    return CubePattern(tuple(symbols))


def find_fixed_cube(p: Permutation, width_limit: int = CUBE_WIDTH_LIMIT) -> CubePattern:
    """Smallest cube C with p(C) inside C; the full space as a last resort.

    Candidates are ranked by cardinality 2^s first, then lexicographic pattern
    order ('-' < '0' < '1', position 0 most significant). Exhaustive over all
    3^W patterns, so the result is the true optimum; quadratic in the table
    size per free-set, which is fine at desk-scale widths.
    """
    W = p.width
    if W > width_limit:
        raise WidthExceededError(f"width {W} exceeds cube search limit {width_limit}")
    table = p.table
    idx = np.arange(1 << W, dtype=np.int64)
    full = (1 << W) - 1

    # best candidate per free-count: (pattern_rank_key, free_mask, value)
    best: dict[int, tuple[tuple[int, ...], int, int]] = {}
    for free_mask in range(1 << W):
        s = bin(free_mask).count("1")
        pinned = full & ~free_mask
        pin = idx & pinned
        escaped = (table & pinned) != pin
        ok = np.ones(1 << W, dtype=bool)
        ok[pin[escaped]] = False
        valid = ((idx & free_mask) == 0) & ok
        values = np.flatnonzero(valid)
        if len(values) == 0:
            continue
        # lex-min assignment for this free-set, then compare across free-sets
        candidates = [_pattern_from_mask(W, free_mask, int(v)) for v in values] if len(values) <= 64 else None
        if candidates is None:
            # avoid materializing huge candidate lists: minimize the
            # position-0-first reading of the pinned bits directly
            keys = np.zeros(len(values), dtype=np.int64)
            for i in range(W):
                keys = (keys << 1) | ((values >> i) & 1)
            v = int(values[int(np.argmin(keys))])
            candidates = [_pattern_from_mask(W, free_mask, v)]
        champion = min(candidates, key=lambda c: c.sort_key())
        key = champion.sort_key()
        if s not in best or key < best[s][0]:
            best[s] = (key, free_mask, champion.fixed_value)

    for s in range(W + 1):
        if s in best:
            _, free_mask, value = best[s]
            return _pattern_from_mask(W, free_mask, value)
    raise AssertionError("unreachable: the all-free cube is always fixed")


# ---------------------------------------------------------------------------
# states


def format_basis(index: int, width: int) -> str:
    """Render a basis index in line order: character j is the value of line j."""
    return "".join(str((index >> j) & 1) for j in range(width))


@dataclass(frozen=True)
class SparseState:
    """Map from basis indices to complex amplitudes."""

    width: int
    terms: dict[int, complex] = field(default_factory=dict)

    @classmethod
    def basis_state(cls, width: int, index: int) -> "SparseState":
        if not (0 <= index < (1 << width)):
            raise ValueError(f"basis index {index} out of range for width {width}")
        return cls(width, {index: 1.0 + 0.0j})

    @classmethod
    def uniform(cls, width: int) -> "SparseState":
        amp = complex((1 << width) ** -0.5)
        return cls(width, {i: amp for i in range(1 << width)})

    @classmethod
    def from_terms(cls, width: int, terms: dict[int, complex], *, check_norm: bool = True) -> "SparseState":
        pruned = {int(i): complex(a) for i, a in terms.items() if abs(a) >= PRUNE_EPS}
        state = cls(width, pruned)
        if check_norm and abs(state.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {state.norm()} is not 1 within {NORM_TOL}")
        return state

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.terms.values()))

    def single_term(self) -> tuple[int, complex] | None:
        if len(self.terms) != 1:
            return None
        [(i, a)] = self.terms.items()
        return i, a

    def amplitude(self, index: int) -> complex:
        return self.terms.get(index, 0.0 + 0.0j)

    def approx_eq(self, other: "SparseState", tol: float = 1e-10) -> bool:
        if self.width != other.width:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.amplitude(k) - other.amplitude(k)) <= tol for k in keys)

    def __repr__(self):
        parts = [f"{a:.4g}|{format_basis(i, self.width)}>"
                 for i, a in sorted(self.terms.items())]
        return " + ".join(parts) if parts else "0"


def line_probability(state: SparseState, line: int) -> float:
    """Probability that measuring `line` yields 1."""
    return sum(abs(a) ** 2 for i, a in state.terms.items() if (i >> line) & 1)


# ---------------------------------------------------------------------------
# dense simulation


def simulate_dense(c: Circuit, input_state: SparseState,
                   width_limit: int = DENSE_WIDTH_LIMIT) -> SparseState:
    """Full state-vector simulation. X/Swap permute amplitudes, H mixes
    |0> -> (|0>+|1>)/sqrt(2), |1> -> (|0>-|1>)/sqrt(2)."""
    W = c.line_count
    if W > width_limit:
        raise WidthExceededError(f"width {W} exceeds dense limit {width_limit}")
    if input_state.width != W:
        raise ValueError("input state width does not match circuit")

    vec = np.zeros(1 << W, dtype=np.complex128)
    for i, a in input_state.terms.items():
        vec[i] = a
    in_norm = np.linalg.norm(vec)
    idx = np.arange(1 << W, dtype=np.int64)

    for g in c.gates:
        if g.kind is GateKind.H:
            t = g.targets[0]
            arr = np.moveaxis(vec.reshape([2] * W), W - 1 - t, 0)
            s0 = arr[0].copy()
            s1 = arr[1].copy()
            arr[0] = (s0 + s1) * SQRT_HALF
            arr[1] = (s0 - s1) * SQRT_HALF
        else:
            # amplitude permutation: new[x] = old[source(x)]; the controls do
            # not touch the target bits, so sources pair up consistently
            src = _apply_boolean_gate(g, idx)
            vec = vec[src]

    if abs(np.linalg.norm(vec) - in_norm) > NORM_TOL:
        raise SimulationError("state norm drifted beyond tolerance")
    keep = np.flatnonzero(np.abs(vec) >= PRUNE_EPS)
    return SparseState(W, {int(i): complex(vec[i]) for i in keep})


# ---------------------------------------------------------------------------
# sparse simulation (single input and batched over many inputs)


def _hadamard_lines(c: Circuit) -> set[int]:
    return {g.targets[0] for g in c.gates if g.kind is GateKind.H}


def _run_sparse_batch(c: Circuit, ids: np.ndarray, basis: np.ndarray,
                      term_budget: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Propagate one term per input through the circuit.

    ids tags each term with the input it belongs to; gate action only depends
    on the basis index, so a whole batch of inputs shares every vector pass.
    Returns (ids, basis, amps) sorted by (id, basis).
    """
    amps = np.ones(len(basis), dtype=np.complex128)
    for g in c.gates:
        if g.kind is not GateKind.H:
            basis = _apply_boolean_gate(g, basis)
            continue
        bit = 1 << g.targets[0]
        was_set = (basis & bit) != 0
        ids = np.concatenate([ids, ids])
        new_basis = np.concatenate([basis & ~bit, basis | bit])
        amps = np.concatenate([amps, np.where(was_set, -amps, amps)]) * SQRT_HALF
        basis = new_basis
        # merge duplicates and prune cancellations
        order = np.lexsort((basis, ids))
        ids, basis, amps = ids[order], basis[order], amps[order]
        first = np.empty(len(ids), dtype=bool)
        first[:1] = True
        first[1:] = (ids[1:] != ids[:-1]) | (basis[1:] != basis[:-1])
        starts = np.flatnonzero(first)
        sums = np.add.reduceat(amps, starts)
        keep = np.abs(sums) >= PRUNE_EPS
        ids, basis, amps = ids[starts][keep], basis[starts][keep], sums[keep]
        if len(ids):
            id_starts = np.flatnonzero(np.concatenate([[True], ids[1:] != ids[:-1]]))
            runs = np.diff(np.concatenate([id_starts, [len(ids)]]))
            if int(runs.max()) > term_budget:
                raise TermBudgetExceededError(
                    f"{int(runs.max())} terms for one input exceeds budget {term_budget}")

    order = np.lexsort((basis, ids))
    return ids[order], basis[order], amps[order]


def simulate_sparse(c: Circuit, input_index: int, term_budget: int = TERM_BUDGET) -> SparseState:
    """Simulate a single basis input, tracking only nonzero amplitudes."""
    if not (0 <= input_index < (1 << c.line_count)):
        raise ValueError(f"basis index {input_index} out of range for width {c.line_count}")
    h = len(_hadamard_lines(c))
    if (1 << h) > term_budget:
        raise TermBudgetExceededError(
            f"{h} Hadamard lines could need 2^{h} terms, over budget {term_budget}")
    ids = np.zeros(1, dtype=np.int64)
    basis = np.array([input_index], dtype=np.int64)
    _, basis, amps = _run_sparse_batch(c, ids, basis, term_budget)
    return SparseState(c.line_count, {int(b): complex(a) for b, a in zip(basis, amps)})


# ---------------------------------------------------------------------------
# equivalence checking


@dataclass(frozen=True)
class Equivalent:
    checked: int

    def __str__(self):
        return f"Equivalent ({self.checked} basis inputs)"


@dataclass(frozen=True)
class CounterExample:
    input: int          # basis index over the optimized circuit's lines
    got: SparseState
    expected: int       # expected basis index (primary image, ancillae zero)
    width: int

    def __str__(self):
        return (f"CounterExample input={format_basis(self.input, self.width)} "
                f"expected=|{format_basis(self.expected, self.width)}> got={self.got!r}")


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    checked: int = 0

    def __str__(self):
        return f"Inconclusive ({self.reason})"


Verdict = Equivalent | CounterExample | Inconclusive


def _spread(values: np.ndarray, positions: list[int]) -> np.ndarray:
    """Scatter bit j of each value to line positions[j]."""
    out = np.zeros(len(values), dtype=np.int64)
    for j, p in enumerate(positions):
        out |= ((values >> j) & 1) << p
    return out


def check_equivalence(original: Circuit, optimized: Circuit,
                      ancilla_lines: Iterable[int] | None = None, *,
                      exhaustive_limit: int = 20, samples: int = 1000, seed: int = 0,
                      term_budget: int = TERM_BUDGET, chunk: int = 1 << 14) -> Verdict:
    """Does `optimized` compute the original's permutation on its primary lines?

    For each basis input x over the primary lines (ancillae at 0), the
    optimized circuit must return the single term |original(x)>|0...0> with an
    amplitude of modulus 1 within 1e-9. Exhaustive when the primary width is
    within `exhaustive_limit`; otherwise a seeded sample is drawn and a clean
    pass is reported as Inconclusive, never Equivalent.
    """
    if ancilla_lines is None:
        ancilla_lines = range(original.line_count, optimized.line_count)
    ancillas = set(int(a) for a in ancilla_lines)
    primary = [l for l in range(optimized.line_count) if l not in ancillas]
    if len(primary) != original.line_count:
        raise ValueError(
            f"{len(primary)} primary lines in optimized circuit, but original has {original.line_count}")

    if not original.is_boolean_reversible:
        return Inconclusive("reference circuit contains Hadamard gates")

    h = len(_hadamard_lines(optimized))
    if (1 << h) > term_budget:
        return Inconclusive(f"{h} Hadamard lines could need 2^{h} terms, over budget {term_budget}")

    w = original.line_count
    exhaustive = w <= exhaustive_limit
    if exhaustive:
        total = 1 << w
        chunks = (np.arange(lo, min(lo + chunk, total), dtype=np.int64)
                  for lo in range(0, total, chunk))
    else:
        rng = np.random.default_rng(seed)
        sample = rng.integers(0, 1 << w, size=samples, dtype=np.int64)
        chunks = (sample[lo:lo + chunk] for lo in range(0, len(sample), chunk))

    checked = 0
    for xs in chunks:
        start_basis = _spread(xs, primary)
        # reference images: the original is Boolean-reversible, so one batch
        # pass keeps exactly one term per input at any width
        images = xs.copy()
        for g in original.gates:
            images = _apply_boolean_gate(g, images)
        expected = _spread(images, primary)
        ids = np.arange(len(xs), dtype=np.int64)
        try:
            out_ids, out_basis, out_amps = _run_sparse_batch(
                optimized, ids.copy(), start_basis.copy(), term_budget)
        except SimulationError as e:
            return Inconclusive(str(e), checked=checked)

        counts = np.zeros(len(xs), dtype=np.int64)
        np.add.at(counts, out_ids, 1)
        single = counts == 1
        # positions of each id's first term in the (id-sorted) output
        first_pos = np.concatenate([[0], np.cumsum(counts)[:-1]])
        ok = single.copy()
        sel = first_pos[single]
        ok[single] &= out_basis[sel] == expected[single]
        ok[single] &= np.abs(np.abs(out_amps[sel]) - 1.0) <= 1e-9
        if not ok.all():
            bad = int(np.flatnonzero(~ok)[0])
            mask = out_ids == bad
            got = SparseState(optimized.line_count,
                              {int(b): complex(a) for b, a in zip(out_basis[mask], out_amps[mask])})
            return CounterExample(int(start_basis[bad]), got, int(expected[bad]),
                                  optimized.line_count)
        checked += len(xs)

    if exhaustive:
        return Equivalent(checked)
    return Inconclusive(f"sampled {checked} of 2^{w} basis inputs without discrepancy", checked)
