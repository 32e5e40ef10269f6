import json
from pathlib import Path

import pytest

from revswap import Circuit, emit, parse
from revswap.cli import main

from conftest import controlled_version, cycle_analog, increment_circuit, staircase


@pytest.fixture
def cycle_file(tmp_path):
    path = tmp_path / "cycle_analog.real"
    path.write_text(emit(cycle_analog()))
    return path


def test_cost_text(cycle_file, capsys):
    assert main(["cost", str(cycle_file)]) == 0
    out = capsys.readouterr().out
    assert "cost:  727" in out
    assert "T11  1" in out
    assert "T2   2" in out


def test_cost_json(cycle_file, capsys):
    assert main(["cost", "--json", str(cycle_file)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cost"] == 727
    assert payload["distribution"]["T11"] == 1
    assert payload["model"]["two_qubit_cost"] == 1
    assert payload["lines"] == 12
    assert payload["gates"] == 19


def test_cost_empty_circuit(tmp_path, capsys):
    path = tmp_path / "empty.real"
    path.write_text(emit(Circuit(2, ("a", "b"))))
    assert main(["cost", "--json", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cost"] == 0
    assert payload["distribution"] == {}


def test_cost_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.real"
    bad.write_text(".numvars 2\n.variables a b\n.begin\np2 a b\n.end\n")
    assert main(["cost", str(bad)]) == 1
    assert "mnemonic" in capsys.readouterr().err


def test_cost_plot(cycle_file, tmp_path, capsys):
    fig = tmp_path / "dist.png"
    assert main(["cost", str(cycle_file), "--plot", str(fig)]) == 0
    assert fig.exists() and fig.stat().st_size > 0


def test_optimize_roundtrip_and_verdict(cycle_file, tmp_path, capsys):
    out_path = tmp_path / "out.real"
    report_path = tmp_path / "report.json"
    code = main(["optimize", str(cycle_file), "-o", str(out_path),
                 "--json", str(report_path)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "cost before:  727" in stdout
    assert "Equivalent" in stdout
    optimized = parse(out_path.read_text())
    assert optimized.line_count > 12
    report = json.loads(report_path.read_text())
    assert report["cost_before"] == 727
    assert report["cost_after"] < 600
    assert report["verdict"] == "Equivalent"
    assert report["model"]["three_qubit_cost"] == 5
    assert report["blocks"]


def test_optimize_unchanged_is_identical(tmp_path, capsys):
    src = tmp_path / "t481.real"
    from conftest import t481_like
    src.write_text(emit(t481_like()))
    out_path = tmp_path / "out.real"
    assert main(["optimize", str(src), "-o", str(out_path)]) == 0
    assert out_path.read_text() == src.read_text()
    assert "improvement:  0.00%" in capsys.readouterr().out


def test_optimize_deterministic_bytes(cycle_file, tmp_path):
    a, b = tmp_path / "a.real", tmp_path / "b.real"
    assert main(["optimize", str(cycle_file), "-o", str(a)]) == 0
    assert main(["optimize", str(cycle_file), "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_optimize_fixed_point_on_derangement_errors(tmp_path, capsys):
    # x -> x+3 mod 8 is a full cycle (no fixed point, no proper fixed cube)
    # and its controlled form is profitable, so preparation is attempted
    inc = increment_circuit(3)
    shift3 = Circuit.from_gates(3, inc.gates * 3)
    src = tmp_path / "cycle_shift.real"
    src.write_text(emit(controlled_version(shift3)))
    code = main(["optimize", str(src), "--prep", "fixed-point"])
    assert code == 1
    assert "NoFixedPoint" in capsys.readouterr().err
    # auto mode falls back to the Hadamard layer and succeeds
    assert main(["optimize", str(src), "--prep", "auto"]) == 0
    assert "Equivalent" in capsys.readouterr().out


def test_optimize_rejects_quantum_input(tmp_path, capsys):
    src = tmp_path / "h.real"
    src.write_text(".numvars 1\n.variables q\n.begin\nh1 q\n.end\n")
    assert main(["optimize", str(src)]) == 1


def test_verify_same_file(cycle_file, capsys):
    assert main(["verify", str(cycle_file), str(cycle_file)]) == 0
    assert "Equivalent" in capsys.readouterr().out


def test_verify_detects_mutilation(cycle_file, tmp_path, capsys):
    # optimize, drop one controlled swap, expect a counterexample
    out_path = tmp_path / "out.real"
    assert main(["optimize", str(cycle_file), "-o", str(out_path)]) == 0
    assert main(["verify", str(cycle_file), str(out_path)]) == 0
    capsys.readouterr()
    optimized = parse(out_path.read_text())
    from revswap import GateKind
    swap_idx = next(i for i, g in enumerate(optimized.gates) if g.kind is GateKind.SWAP)
    broken = optimized.remove(swap_idx)
    broken_path = tmp_path / "broken.real"
    broken_path.write_text(emit(broken))
    code = main(["verify", str(cycle_file), str(broken_path)])
    out = capsys.readouterr().out
    assert code == 2
    assert "CounterExample" in out
    assert "input=" in out


def test_verify_sampled_inconclusive(cycle_file, capsys):
    code = main(["verify", str(cycle_file), str(cycle_file), "--verify", "sample"])
    assert code == 3
    assert "Inconclusive" in capsys.readouterr().out


def test_bench_csv_and_failures(tmp_path, capsys):
    bench_dir = tmp_path / "suite"
    bench_dir.mkdir()
    for n in (6, 7, 8):
        (bench_dir / f"stair{n}.real").write_text(emit(staircase(n)))
    (bench_dir / "broken.real").write_text("not a circuit\n")
    code = main(["bench", str(bench_dir)])
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert code == 2  # one FAILED row
    assert lines[0] == ("name,in,out,gates_before,cost_before,gates_after,"
                        "cost_after,ancillae,improvement_pct,verdict,ms")
    rows = {l.split(",")[0]: l.split(",") for l in lines[1:]}
    assert rows["broken"][9] == "FAILED"
    assert set(rows) == {"broken", "stair6", "stair7", "stair8"}
    assert lines[1].startswith("broken")  # sorted by name
    for n in (6, 7, 8):
        r = rows[f"stair{n}"]
        assert r[9] == "Equivalent"
        assert float(r[8]) > 0.0


def test_bench_monotone_staircase_improvements(tmp_path, capsys):
    bench_dir = tmp_path / "suite"
    bench_dir.mkdir()
    for n in (6, 7, 8, 9, 10):
        (bench_dir / f"stair{n:02d}.real").write_text(emit(staircase(n)))
    assert main(["bench", str(bench_dir)]) == 0
    lines = capsys.readouterr().out.strip().split("\n")[1:]
    improvements = [float(l.split(",")[8]) for l in lines]
    assert improvements == sorted(improvements)
    assert all(i > 0 for i in improvements)


def test_bench_output_file_and_figures(tmp_path, capsys):
    bench_dir = tmp_path / "suite"
    bench_dir.mkdir()
    for n in (6, 7):
        (bench_dir / f"stair{n}.real").write_text(emit(staircase(n)))
    report = tmp_path / "report.csv"
    json_path = tmp_path / "report.json"
    assert main(["bench", str(bench_dir), "-o", str(report), "--json", str(json_path)]) == 0
    assert report.exists()
    assert (tmp_path / "report_cost.png").exists()
    assert (tmp_path / "report_improvement.png").exists()
    payload = json.loads(json_path.read_text())
    assert len(payload["rows"]) == 2
    assert payload["model"]["mct_linear_coefficient"] == 10


def test_bench_no_plot(tmp_path, capsys):
    bench_dir = tmp_path / "suite"
    bench_dir.mkdir()
    (bench_dir / "stair6.real").write_text(emit(staircase(6)))
    report = tmp_path / "report.csv"
    assert main(["bench", str(bench_dir), "-o", str(report), "--no-plot"]) == 0
    assert not (tmp_path / "report_cost.png").exists()


def test_bench_determinism_modulo_walltime(tmp_path):
    bench_dir = tmp_path / "suite"
    bench_dir.mkdir()
    for n in (6, 8):
        (bench_dir / f"stair{n}.real").write_text(emit(staircase(n)))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["bench", str(bench_dir), "-o", str(a), "--no-plot"]) == 0
    assert main(["bench", str(bench_dir), "-o", str(b), "--no-plot"]) == 0

    def strip_ms(text):
        return [",".join(line.split(",")[:-1]) for line in text.splitlines()]

    assert strip_ms(a.read_text()) == strip_ms(b.read_text())


def test_optimize_pipeline_flags(tmp_path, capsys):
    src = tmp_path / "stair.real"
    src.write_text(emit(staircase(10)))
    code = main(["optimize", str(src), "--ancilla-budget", "14", "--passes", "2",
                 "--prep", "hadamard", "--verify", "exhaustive", "--strict"])
    assert code == 0
    out = capsys.readouterr().out
    assert "Equivalent" in out


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["optimize"])  # missing input
    assert exc.value.code == 1
