import csv
import hashlib
import io
import subprocess
import sys

import pytest

from cbitsim import cli
from cbitsim import experiments as ex


def run_main(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    return list(csv.reader(io.StringIO(text)))


# -- parsing -----------------------------------------------------------------------------

def test_parse_examples():
    c = cli.parse_cli(["mz-sweep", "--points", "256", "--backend", "quantum", "--out", "mz.csv"])
    assert (c.experiment, c.points, c.backend, c.out) == ("mz-sweep", 256, "quantum", "mz.csv")
    c = cli.parse_cli(["swap-test", "--trials", "1000", "--seed", "42"])
    assert (c.trials, c.seed, c.backend, c.g, c.dt) == (1000, 42, "all", 1.0, 1e-3)
    assert c.format == "csv" and c.phase_arm == "L"


@pytest.mark.parametrize("argv", [
    ["jc-compare", "--fock-dim", "1"],
    ["mz-sweep", "--points", "1"],
    ["mz-sweep", "--backend", "hybrid_one_way"],
    ["sharpness", "--backend", "quantum"],
    ["swap-test", "--dt", "0"],
    ["swap-test", "--trials", "0"],
    ["mz-sweep", "--phase-arm", "M"],
    ["mz-sweep", "--colour", "red"],
    ["teleport"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        cli.parse_cli(argv)
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_help_documents_defaults(capsys):
    with pytest.raises(SystemExit) as info:
        cli.parse_cli(["swap-test", "--help"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert "default 42" in out and "default 1e-3" in out


# -- writers ---------------------------------------------------------------------------------

def test_empty_records_header_only():
    assert cli.records_to_csv("mz-sweep", []) == "phi,backend,i_L,i_R\n"


def test_format_value_round_trips():
    for v in (0.1, 1 / 3, 2.0 ** -40, 1e300, -0.0):
        assert float(cli.format_value(v)) == v
    assert cli.format_value(7) == "7"
    assert cli.format_value(True) == "1"


def test_write_records_bad_path(tmp_path, capsys):
    code, _, err = run_main(["mz-sweep", "--points", "4", "--out", str(tmp_path / "no" / "x.csv")], capsys)
    assert code == 1
    assert "no/x.csv" in err


# -- end to end ---------------------------------------------------------------------------------

E2E = [
    ["mz-sweep", "--points", "16"],
    ["mz-sweep", "--points", "16", "--backend", "classical_cbit", "--phase-arm", "R"],
    ["sharpness", "--trials", "20"],
    ["swap-test", "--trials", "3", "--dt", "1e-2", "--t-max", "2"],
    ["swap-test", "--trials", "2", "--dt", "1e-2", "--t-max", "1", "--backend", "ehrenfest"],
    ["jc-compare", "--points", "50"],
    ["convergence", "--dt", "1e-2", "--t-max", "2"],
]


@pytest.mark.parametrize("argv", E2E, ids=lambda a: " ".join(a))
def test_end_to_end_csv(argv, tmp_path, capsys):
    out_file = tmp_path / "out.csv"
    code, stdout, _ = run_main(argv + ["--out", str(out_file)], capsys)
    assert code == 0 and stdout == ""
    raw = out_file.read_bytes()
    assert b"\r" not in raw
    rows = parse_csv(raw.decode("utf-8"))
    assert rows[0] == cli.header(argv[0])
    assert len(rows) > 1 and all(len(r) == len(rows[0]) for r in rows)
    backends = {r[1] for r in rows[1:]}
    assert backends <= set(ex.BACKENDS)


@pytest.mark.parametrize("argv", E2E[:1] + E2E[2:3] + E2E[5:6], ids=lambda a: a[0])
def test_end_to_end_text(argv, capsys):
    code, out, _ = run_main(argv + ["--format", "text"], capsys)
    assert code == 0
    assert out.startswith(f"# {argv[0]}")
    assert "[PASS]" in out and "[FAIL]" not in out


def test_text_prints_entropy_in_bits(capsys):
    _, out, _ = run_main(["jc-compare", "--points", "20", "--format", "text"], capsys)
    assert "nats (" in out and "bits)" in out


def test_runtime_error_exit_1(capsys):
    # a coupling this strong at dt 0.5 defeats the fixed-point iteration in every trial,
    # but per-trial failures are recorded rather than fatal
    code, out, _ = run_main(["swap-test", "--trials", "1", "--g", "100", "--dt", "0.5", "--t-max", "1",
                             "--backend", "ehrenfest"], capsys)
    assert code == 0
    assert parse_csv(out)[1][-1] == "1"
    code, _, err = run_main(["convergence", "--g", "100", "--dt", "0.5", "--t-max", "1"], capsys)
    assert code == 1
    assert "did not converge" in err


def test_byte_identical_repeats(tmp_path, capsys):
    digests = set()
    for k in range(2):
        path = tmp_path / f"run{k}.csv"
        assert cli.main(["swap-test", "--trials", "3", "--seed", "7", "--dt", "1e-2", "--t-max", "2",
                         "--out", str(path)]) == 0
        digests.add(hashlib.sha256(path.read_bytes()).hexdigest())
    assert len(digests) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cbitsim", "mz-sweep", "--points", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "phi,backend,i_L,i_R"
    bad = subprocess.run([sys.executable, "-m", "cbitsim", "jc-compare", "--fock-dim", "1"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2
