"""Command-line front end: cost reports, optimization, verification, benchmarks.

Exit codes: 0 success/Equivalent, 1 usage or parse error, 2 verification
failure, 3 Inconclusive under --strict (and always for `verify`, which may
only exit 0 on a proven Equivalent).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .circuit import Circuit
from .cost import DEFAULT_MODEL, circuit_cost, distribution
from .optimize import OptimizeError, OptimizeOptions, RewriteReport, optimize
from .realfmt import RealFormatError, emit, parse
from .sim import (CounterExample, Equivalent, Inconclusive, SimulationError,
                  Verdict, check_equivalence)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load(path: str) -> Circuit:
    return parse(Path(path).read_text())


def _budget(value: str, circuit: Circuit) -> int:
    if value == "auto":
        return circuit.line_count - 1
    return int(value)


def _run_verification(original: Circuit, optimized: Circuit, mode: str, seed: int) -> Verdict | None:
    if mode == "off":
        return None
    if mode == "exhaustive":
        limit = original.line_count
    elif mode == "sample":
        limit = -1
    else:  # auto: exhaustive while tractable, sampled beyond
        limit = 20
    return check_equivalence(original, optimized, exhaustive_limit=limit, seed=seed)


def _verdict_name(verdict: Verdict | None) -> str:
    if verdict is None:
        return "Skipped"
    if isinstance(verdict, Equivalent):
        return "Equivalent"
    if isinstance(verdict, Inconclusive):
        return "Inconclusive"
    return "FAILED"


# ---------------------------------------------------------------------------
# cost


def cmd_cost(args) -> int:
    try:
        circuit = _load(args.input)
    except (OSError, RealFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    dist = distribution(circuit)
    cost = circuit_cost(circuit, DEFAULT_MODEL)
    labels = dist.labels()
    if args.json:
        payload = {
            "name": Path(args.input).stem,
            "lines": circuit.line_count,
            "gates": len(circuit.gates),
            "cost": cost,
            "distribution": {label: dist.counts[label] for label in labels},
            "model": DEFAULT_MODEL.describe(),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"name:  {Path(args.input).stem}")
        print(f"lines: {circuit.line_count}")
        print(f"gates: {len(circuit.gates)}")
        print(f"cost:  {cost}  (two-qubit gate metric, arity-n MCT/MCF = 10n-25)")
        if labels:
            print("distribution:")
            for label in labels:
                print(f"  {label:<4} {dist.counts[label]}")
    if args.plot:
        from .plots import save_distribution_figure
        path = save_distribution_figure(labels, [dist.counts[l] for l in labels],
                                        args.plot, title=Path(args.input).stem)
        print(f"figure written to {path}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# optimize


def _print_report(report: RewriteReport, budget: int) -> None:
    print(f"cost before:  {report.total_cost_before}")
    print(f"cost after:   {report.total_cost_after}")
    print(f"improvement:  {report.improvement_pct:.2f}%")
    print(f"ancillae:     {report.ancillae_used} used (budget {budget})")
    print(f"blocks:       {len(report.blocks)}")
    for ab in report.blocks:
        ctl = ",".join(f"{'-' if c.polarity.value == '-' else ''}{c.line}"
                       for c in ab.block.shared_controls)
        print(f"  gates [{ab.block.start},{ab.block.end}) shared({ctl}) "
              f"k={ab.block.k} prep={ab.plan.pattern} "
              f"cost {ab.cost_before} -> {ab.cost_after}")


def cmd_optimize(args) -> int:
    try:
        circuit = _load(args.input)
    except (OSError, RealFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if not circuit.is_boolean_reversible:
        print("error: input circuit already contains Hadamard gates", file=sys.stderr)
        return EXIT_USAGE

    budget = _budget(args.ancilla_budget, circuit)
    options = OptimizeOptions(ancilla_budget=budget, prep=args.prep,
                              pre_pass=args.pre_pass == "commute", passes=args.passes)
    started = time.perf_counter()
    try:
        optimized, report = optimize(circuit, options)
    except (OptimizeError, SimulationError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    verdict = _run_verification(circuit, optimized, args.verify, args.seed)
    elapsed_ms = int((time.perf_counter() - started) * 1000)

    _print_report(report, budget)
    print(f"verification: {verdict if verdict is not None else 'off'}")

    failed = isinstance(verdict, CounterExample)
    if args.json:
        payload = report.to_dict(options.model)
        payload["verdict"] = _verdict_name(verdict)
        payload["ms"] = elapsed_ms
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
    if args.output and (not failed or args.force):
        Path(args.output).write_text(emit(optimized))
        print(f"written: {args.output}", file=sys.stderr)
    elif args.output and failed:
        print("output not written (verification failed; use --force to override)", file=sys.stderr)

    if failed:
        return EXIT_VERIFY_FAILED
    if args.strict and isinstance(verdict, Inconclusive):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    try:
        a = _load(args.original)
        b = _load(args.candidate)
    except (OSError, RealFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    mode = args.verify if args.verify != "off" else "auto"
    verdict = _run_verification(a, b, mode, args.seed)
    print(str(verdict))
    if isinstance(verdict, Equivalent):
        return EXIT_OK
    if isinstance(verdict, CounterExample):
        return EXIT_VERIFY_FAILED
    return EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------
# bench


BENCH_HEADER = "name,in,out,gates_before,cost_before,gates_after,cost_after,ancillae,improvement_pct,verdict,ms"


def _bench_one(path: Path, args) -> dict:
    started = time.perf_counter()
    row = {"name": path.stem, "in": 0, "out": 0, "gates_before": 0, "cost_before": 0,
           "gates_after": 0, "cost_after": 0, "ancillae": 0, "improvement_pct": 0.0,
           "verdict": "FAILED", "ms": 0, "error": ""}
    try:
        circuit = parse(path.read_text())
        row["in"] = circuit.line_count
        row["gates_before"] = len(circuit.gates)
        row["cost_before"] = circuit_cost(circuit)
        options = OptimizeOptions(ancilla_budget=_budget(args.ancilla_budget, circuit),
                                  prep=args.prep, pre_pass=args.pre_pass == "commute",
                                  passes=args.passes)
        optimized, report = optimize(circuit, options)
        verdict = _run_verification(circuit, optimized, args.verify, args.seed)
        row.update({
            "out": optimized.line_count,
            "gates_after": len(optimized.gates),
            "cost_after": report.total_cost_after,
            "ancillae": report.ancillae_used,
            "improvement_pct": round(report.improvement_pct, 2),
            "verdict": _verdict_name(verdict),
        })
        if isinstance(verdict, Inconclusive):
            row["error"] = verdict.reason
        elif isinstance(verdict, CounterExample):
            row["verdict"] = "FAILED"
            row["error"] = str(verdict)
    except Exception as e:  # per-file isolation: one bad file must not kill the run
        row["error"] = str(e)
    row["ms"] = int((time.perf_counter() - started) * 1000)
    return row


def _format_row(row: dict) -> str:
    return (f"{row['name']},{row['in']},{row['out']},{row['gates_before']},"
            f"{row['cost_before']},{row['gates_after']},{row['cost_after']},"
            f"{row['ancillae']},{row['improvement_pct']:.2f},{row['verdict']},{row['ms']}")


def cmd_bench(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_USAGE
    files = sorted(directory.glob("*.real"))
    if not files:
        print(f"error: no .real files in {directory}", file=sys.stderr)
        return EXIT_USAGE

    rows = [_bench_one(path, args) for path in files]
    csv_text = BENCH_HEADER + "\n" + "\n".join(_format_row(r) for r in rows) + "\n"
    if args.output:
        Path(args.output).write_text(csv_text)
        print(f"written: {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(csv_text)

    if args.json:
        payload = {"model": DEFAULT_MODEL.describe(), "rows": rows}
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")

    plot_dir = args.plot
    if plot_dir is None and args.output and not args.no_plot:
        plot_dir = str(Path(args.output).parent)
    if plot_dir is not None:
        from .plots import save_bench_figures
        stem = Path(args.output).stem if args.output else "bench"
        for p in save_bench_figures(rows, plot_dir, stem):
            print(f"figure written to {p}", file=sys.stderr)

    if any(r["verdict"] == "FAILED" for r in rows):
        return EXIT_VERIFY_FAILED
    if args.strict and any(r["verdict"] == "Inconclusive" for r in rows):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ancilla-budget", default="auto", metavar="N|auto",
                   help="ancilla pool cap (auto = line count - 1)")
    p.add_argument("--prep", default="auto", choices=["hadamard", "fixed-point", "auto"],
                   help="ancilla preparation strategy")
    p.add_argument("--pre-pass", default=None, choices=["commute"],
                   help="enable the commutation enabler before block search")
    p.add_argument("--passes", type=int, default=1, help="pipeline repetitions")
    p.add_argument("--verify", default="auto", choices=["auto", "exhaustive", "sample", "off"],
                   help="equivalence check mode (auto: exhaustive while tractable)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for sampled verification")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when verification is Inconclusive")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="revswap",
                     description="Rewrite multiple-control Toffoli networks via shared-control factoring")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cost", help="report circuit cost and gate distribution")
    p.add_argument("input")
    p.add_argument("--json", action="store_true", help="emit a JSON object instead of text")
    p.add_argument("--plot", metavar="PATH", help="write a distribution chart to PATH")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("optimize", help="rewrite a circuit and report the cost delta")
    p.add_argument("input")
    p.add_argument("-o", "--output", metavar="PATH", help="write the optimized circuit here")
    p.add_argument("--json", metavar="PATH", help="write the rewrite report as JSON")
    p.add_argument("--force", action="store_true",
                   help="write the output even when verification fails")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="check two circuits for functional equivalence")
    p.add_argument("original")
    p.add_argument("candidate")
    p.add_argument("--verify", default="auto", choices=["auto", "exhaustive", "sample"],
                   help="equivalence check mode")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="optimize every .real file in a directory")
    p.add_argument("directory")
    p.add_argument("-o", "--output", metavar="PATH", help="write the CSV report here")
    p.add_argument("--json", metavar="PATH", help="write the report as JSON too")
    p.add_argument("--plot", metavar="DIR", help="directory for report figures")
    p.add_argument("--no-plot", action="store_true", help="skip figures even with -o")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
