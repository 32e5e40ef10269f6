"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines.
"""
import contextlib
import itertools
import math
import random
import time

from revswap import (BasisKind, Circuit, Control, Equivalent, GateKind, Polarity,
                     PrepAction, PreparationPlan, apply_identity, check_equivalence,
                     choose_preparation, circuit_cost, cnot,
                     commute_toffoli_past_cnot, compile_if_then_else, distribution,
                     distribution_cost, emit, find_shared_blocks, gate_cost,
                     hadamard, line_probability, mcx, neg, optimize, parse,
                     permutation_of, simulate_dense, simulate_sparse, toffoli, x)
from revswap.cost import GateDistribution
from revswap.sim import SparseState

from conftest import (brute_force_table, controlled_version, cycle_analog,
                      increment_circuit, random_boolean_circuit,
                      random_shared_block_case, staircase, t481_like)


@contextlib.contextmanager
def criterion(number: int, description: str):
    started = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"[criterion {number:2d}] FAIL  {description}")
        raise
    elapsed = time.perf_counter() - started
    print(f"[criterion {number:2d}] PASS  {description}  ({elapsed:.2f}s)")


def test_criterion_01_cost_model_goldens():
    with criterion(1, "cost-model goldens"):
        assert gate_cost(toffoli(0, 1, 2)) == 5
        assert gate_cost(mcx([0, 1, 2], 3)) == 15
        assert gate_cost(mcx(range(10), 10)) == 85
        assert gate_cost(mcx(range(20), 20)) == 185
        assert gate_cost(cnot(0, 1)) == 1
        assert gate_cost(x(0)) == 0
        assert gate_cost(hadamard(0)) == 0
        from revswap import fredkin
        assert gate_cost(fredkin(0, 1, 2)) == 5
        row_25b = GateDistribution({"T2": 2, "T3": 2, "T4": 2, "T5": 2, "T6": 2,
                                    "T7": 2, "T8": 2, "T9": 2, "T10": 2, "T11": 1})
        row_25a = GateDistribution({"T1": 2, "T2": 4, "T3": 4, "T4": 4, "T5": 5,
                                    "T6": 4, "F3": 24, "H": 12})
        assert distribution_cost(row_25b) == 727
        assert distribution_cost(row_25a) == 469
        assert distribution_cost(GateDistribution({"T2": 4, "T3": 4, "T4": 8})) == 144
        assert distribution_cost(GateDistribution({"T1": 10, "T2": 4, "T3": 20})) == 104
        # the analog circuit realizes row 25b gate for gate
        assert distribution(cycle_analog()).counts == row_25b.counts
        assert circuit_cost(cycle_analog()) == 727


def _soundness_cases(s: int, count: int, seed: int) -> int:
    rng = random.Random(seed)
    polarities_seen = set()
    for _ in range(count):
        c = random_shared_block_case(rng, s)
        block = next(b for b in find_shared_blocks(c)
                     if b.start == 0 and b.end == len(c.gates))
        for ctl in block.shared_controls[:s]:
            polarities_seen.add(ctl.polarity)
        host = c.extend_lines(block.ancilla_need)
        pool = range(c.line_count, host.line_count)
        # every applicable preparation: the generic Hadamard layer plus the
        # invariant-cube plan whenever one narrower than all-H exists
        plans = [PreparationPlan.uniform(block.k)]
        auto = choose_preparation(block, c, "auto")
        if auto.pattern != plans[0].pattern:
            plans.append(auto)
        for plan in plans:
            rewritten = apply_identity(host, block, plan, pool)
            verdict = check_equivalence(c, rewritten)
            assert isinstance(verdict, Equivalent), f"s={s} plan={plan.pattern}: {verdict}"
    return len(polarities_seen)


def test_criterion_02_identity_soundness():
    with criterion(2, "identity soundness, 100 + 50 + 50 random blocks"):
        seen = _soundness_cases(1, 100, seed=1001)
        assert seen == 2  # both control polarities exercised
        _soundness_cases(2, 50, seed=2002)
        _soundness_cases(3, 50, seed=3003)


def test_criterion_03_preparation_variants():
    with criterion(3, "preparation variants"):
        # a) known fixed point -> FixedPoint plan, Equivalent
        c = Circuit.from_gates(4, [mcx([0, 1, 2], 3), mcx([0, 1, 3], 2)])
        block = next(b for b in find_shared_blocks(c) if (b.start, b.end) == (0, 2))
        plan = choose_preparation(block, c, "fixed-point")
        assert plan.kind is BasisKind.FIXED_POINT
        host = c.extend_lines(block.ancilla_need)
        out = apply_identity(host, block, plan, range(4, host.line_count))
        assert isinstance(check_equivalence(c, out), Equivalent)

        # b) six-variable block fixing the cube --01-0 -> exact action list
        inner = Circuit.from_gates(6, [
            x(0), cnot(0, 1), x(2, [neg(3)]), x(4, [2]), cnot(0, 4),
            x(5, [2, neg(3)]),
        ])
        host_c = controlled_version(inner, 1)
        blk = next(b for b in find_shared_blocks(host_c)
                   if b.start == 0 and b.end == len(host_c.gates))
        cube_plan = choose_preparation(blk, host_c, "auto")
        assert str(cube_plan.pattern) == "--01-0"
        assert cube_plan.actions == (PrepAction.APPLY_H, PrepAction.APPLY_H,
                                     PrepAction.NONE, PrepAction.APPLY_NOT,
                                     PrepAction.APPLY_H, PrepAction.NONE)

        # c) maximal cycle shift on 3 lines -> auto selects the full H layer
        shift = controlled_version(increment_circuit(3))
        blk = next(b for b in find_shared_blocks(shift)
                   if b.start == 0 and b.end == len(shift.gates))
        auto = choose_preparation(blk, shift, "auto")
        assert auto.kind is BasisKind.UNIFORM_SUPERPOSITION
        assert auto.actions == (PrepAction.APPLY_H,) * 3


def test_criterion_04_eigenvector_invariance():
    with criterion(4, "uniform superposition invariant, 50 random circuits"):
        rng = random.Random(4004)
        for _ in range(50):
            lines = rng.randint(1, 8)
            c = random_boolean_circuit(rng, lines, rng.randint(1, 12))
            uniform = SparseState.uniform(lines)
            out = simulate_dense(c, uniform)
            assert set(out.terms) == set(uniform.terms)
            for idx, amp in uniform.terms.items():
                assert abs(out.amplitude(idx) - amp) <= 1e-12


def test_criterion_05_derangement_counts():
    with criterion(5, "derangement counts over S_m, m=1..7"):
        expected = [0, 1, 2, 9, 44, 265, 1854]
        for m, want in zip(range(1, 8), expected):
            count = sum(
                1 for perm in itertools.permutations(range(m))
                if all(perm[i] != i for i in range(m))
            )
            assert count == want == round(math.factorial(m) / math.e)


def test_criterion_06_deutsch_jozsa():
    with criterion(6, "Deutsch-Jozsa outcomes 0,0,1,1"):
        oracles = [[], [x(1)], [cnot(0, 1)], [x(1, [neg(0)])]]
        for gates, outcome in zip(oracles, [0, 0, 1, 1]):
            circuit = Circuit.from_gates(
                2, [hadamard(0), hadamard(1)] + gates + [hadamard(0)])
            out = simulate_dense(circuit, SparseState.basis_state(2, 0b10))
            assert abs(line_probability(out, 0) - outcome) < 1e-12


def test_criterion_07_cnot_commutation_window():
    with criterion(7, "commutation rewrite window equality over 16 inputs"):
        a, b, c_, d = 0, 1, 2, 3
        window = Circuit.from_gates(4, [cnot(c_, b), mcx([a, b, c_], d)])
        moved = commute_toffoli_past_cnot(window, 0)
        assert len(moved.gates) == 3
        assert brute_force_table(window) == brute_force_table(moved)
        assert permutation_of(window) == permutation_of(moved)


def test_criterion_08_if_then_else():
    with criterion(8, "if-then-else case split, 20 random branch pairs"):
        rng = random.Random(8008)
        for _ in range(20):
            a = random_boolean_circuit(rng, 2, rng.randint(1, 6), allow_swap=False)
            b = random_boolean_circuit(rng, 2, rng.randint(1, 6), allow_swap=False)
            circuit = compile_if_then_else(2, a, b)
            pa, pb = brute_force_table(a), brute_force_table(b)
            for xv in (0, 1):
                for data in range(4):
                    out = simulate_sparse(circuit, data | (xv << 2))
                    term = out.single_term()
                    assert term is not None
                    idx, amp = term
                    image = pa[data] if xv else pb[data]
                    assert idx == image | (xv << 2)
                    assert abs(abs(amp) - 1) <= 1e-9


def test_criterion_09_end_to_end():
    with criterion(9, "staircase(10) and two-cascade analog: >=25% and Equivalent"):
        stair = staircase(10)
        out, report = optimize(stair)
        assert report.improvement_pct >= 25.0
        verdict = check_equivalence(stair, out)
        assert isinstance(verdict, Equivalent)
        assert verdict.checked == 1 << 10

        analog = cycle_analog()
        assert circuit_cost(analog) == 727
        out, report = optimize(analog)
        assert report.improvement_pct >= 25.0
        verdict = check_equivalence(analog, out)
        assert isinstance(verdict, Equivalent)
        assert verdict.checked == 1 << 12


def test_criterion_10_round_trip_and_determinism(tmp_path):
    with criterion(10, "parse/emit round trip and byte-identical reruns"):
        rng = random.Random(1010)
        corpus = [staircase(n) for n in range(6, 11)]
        corpus += [cycle_analog(), t481_like(), increment_circuit(4),
                   optimize(staircase(9))[0], optimize(cycle_analog())[0]]
        corpus += [random_boolean_circuit(rng, rng.randint(1, 7), rng.randint(0, 10))
                   for _ in range(20)]
        for c in corpus:
            text = emit(c)
            assert parse(text) == c
            assert emit(parse(text)) == text

        from revswap.cli import main
        src = tmp_path / "analog.real"
        src.write_text(emit(cycle_analog()))
        outs = []
        for name in ("one", "two"):
            out_path = tmp_path / f"{name}.real"
            report_path = tmp_path / f"{name}.json"
            assert main(["optimize", str(src), "-o", str(out_path),
                         "--json", str(report_path)]) == 0
            outs.append(out_path.read_bytes())
        assert outs[0] == outs[1]
