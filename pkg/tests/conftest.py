"""Shared builders and independent brute-force oracles.

The oracles here re-derive gate semantics with plain Python bit twiddling so
they stay independent of the numpy-backed implementation they check.
"""
from __future__ import annotations

import random

from revswap import (Circuit, Control, Gate, GateKind, Polarity, cnot, mcx, x)


# ---------------------------------------------------------------------------
# reference semantics (pure python, no numpy)


def gate_image(g: Gate, state: int) -> int:
    """Image of one basis index under one X/Swap gate, from first principles."""
    for c in g.controls:
        bit = (state >> c.line) & 1
        want = 1 if c.polarity is Polarity.POSITIVE else 0
        if bit != want:
            return state
    if g.kind is GateKind.X:
        return state ^ (1 << g.targets[0])
    if g.kind is GateKind.SWAP:
        t1, t2 = g.targets
        b1 = (state >> t1) & 1
        b2 = (state >> t2) & 1
        if b1 != b2:
            return state ^ ((1 << t1) | (1 << t2))
        return state
    raise ValueError("oracle only covers Boolean gates")


def circuit_image(c: Circuit, state: int) -> int:
    for g in c.gates:
        state = gate_image(g, state)
    return state


def brute_force_table(c: Circuit) -> list[int]:
    return [circuit_image(c, s) for s in range(1 << c.line_count)]


# ---------------------------------------------------------------------------
# circuit builders


def staircase(n: int) -> Circuit:
    """Descending cascade: for i = n..2, an X on line i-1 controlled by all of
    lines 0..i-2. Every gate shares the line-0 control."""
    gates = [mcx(range(i - 1), i - 1) for i in range(n, 1, -1)]
    return Circuit.from_gates(n, gates)


def increment_circuit(k: int) -> Circuit:
    """x -> x+1 mod 2^k: the maximal-length cycle shift."""
    gates = [mcx(range(j), j) for j in range(k - 1, 0, -1)]
    gates.append(x(0))
    return Circuit.from_gates(k, gates)


def cycle_analog() -> Circuit:
    """Two descending cascades on 12 lines sharing 3 and 4 controls, with a
    tail of small gates; gate distribution T2:2 .. T10:2, T11:1 (cost 727)."""
    gates = [
        mcx(range(10), 10),        # T11 } first run, shared {0,1,2}
        mcx(range(9), 9),          # T10
        mcx(range(8), 8),          # T9
        mcx(range(7), 7),          # T8
        mcx(range(6), 6),          # T7
        mcx([0, 1, 2, 10, 11], 5), # T6
        mcx(range(9), 9),          # T10 } second run, shared {0,1,2,3}
        mcx(range(8), 8),          # T9
        mcx(range(7), 7),          # T8
        mcx(range(6), 6),          # T7
        mcx(range(5), 5),          # T6
        mcx([0, 1, 2, 3], 4),      # T5
        mcx([4, 5, 6, 7], 11),     # T5 } tail, no adjacent sharing
        mcx([8, 9, 10], 0),        # T4
        mcx([5, 6, 7], 1),         # T4
        mcx([9, 10], 2),           # T3
        mcx([4, 8], 3),            # T3
        cnot(11, 4),               # T2
        cnot(6, 5),                # T2
    ]
    return Circuit.from_gates(12, gates)


def t481_like() -> Circuit:
    """Mid-size gates with no adjacent shared controls; nothing to factor."""
    gates = [
        mcx([0, 1, 2, 3], 4),
        mcx([5, 6, 7, 8], 9),
        mcx([0, 1, 2, 3], 10),
        mcx([5, 6, 7, 8], 11),
    ]
    return Circuit.from_gates(12, gates)


def controlled_version(c: Circuit, extra_lines: int = 1) -> Circuit:
    """Prefix `extra_lines` control lines and condition every gate on all of
    them (positively); the original lines shift up."""
    gates = []
    for g in c.gates:
        controls = tuple(Control(ctl.line + extra_lines, ctl.polarity) for ctl in g.controls)
        controls += tuple(Control(i, Polarity.POSITIVE) for i in range(extra_lines))
        targets = tuple(t + extra_lines for t in g.targets)
        gates.append(Gate(g.kind, controls, targets))
    return Circuit.from_gates(c.line_count + extra_lines, gates)


def random_boolean_circuit(rng: random.Random, lines: int, n_gates: int,
                           allow_swap: bool = True) -> Circuit:
    gates = []
    for _ in range(n_gates):
        use_swap = allow_swap and lines >= 2 and rng.random() < 0.25
        if use_swap:
            t1, t2 = rng.sample(range(lines), 2)
            pool = [l for l in range(lines) if l not in (t1, t2)]
            n_ctl = rng.randint(0, min(2, len(pool)))
            ctls = [Control(l, rng.choice((Polarity.POSITIVE, Polarity.NEGATIVE)))
                    for l in rng.sample(pool, n_ctl)]
            gates.append(Gate(GateKind.SWAP, tuple(ctls), (t1, t2)))
        else:
            t = rng.randrange(lines)
            pool = [l for l in range(lines) if l != t]
            n_ctl = rng.randint(0, len(pool))
            ctls = [Control(l, rng.choice((Polarity.POSITIVE, Polarity.NEGATIVE)))
                    for l in rng.sample(pool, n_ctl)]
            gates.append(Gate(GateKind.X, tuple(ctls), (t,)))
    return Circuit.from_gates(lines, gates)


def random_shared_block_case(rng: random.Random, s: int) -> Circuit:
    """A circuit that is one shared-control run: s control lines carried by
    every gate (mixed polarities), 3-8 X gates over a 2-3 line residual
    register. Lines 0..s-1 are the shared controls, the rest the residual."""
    k = rng.randint(2, 3)
    n_gates = rng.randint(3, 8)
    shared = tuple(Control(i, rng.choice((Polarity.POSITIVE, Polarity.NEGATIVE)))
                   for i in range(s))
    gates = []
    for _ in range(n_gates):
        t = s + rng.randrange(k)
        pool = [s + j for j in range(k) if s + j != t]
        n_ctl = rng.randint(0, len(pool))
        ctls = tuple(Control(l, rng.choice((Polarity.POSITIVE, Polarity.NEGATIVE)))
                     for l in rng.sample(pool, n_ctl))
        gates.append(Gate(GateKind.X, shared + ctls, (t,)))
    return Circuit.from_gates(s + k, gates)
