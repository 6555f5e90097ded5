"""Command-line front end and CSV/text writers.

    cbitsim mz-sweep   --points 256 --backend both --out mz.csv
    cbitsim sharpness  --trials 1000 --seed 42
    cbitsim swap-test  --trials 1000 --seed 42 --g 1 --dt 1e-3 --t-max 20
    cbitsim jc-compare --g 1 --t-max 3.14159 --points 400 --fock-dim 8
    cbitsim convergence --g 1 --t-max 20 --seed 42

Exit status: 0 on success, 1 on a runtime error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass

from . import experiments as ex
from .errors import ConvergenceError, DomainError, TruncationError
from .hybrid import CouplingSpec

SUBCOMMANDS = ("mz-sweep", "sharpness", "swap-test", "jc-compare", "convergence")

BACKEND_CHOICES = {
    "mz-sweep": ("both", "classical_cbit", "quantum"),
    "swap-test": ("all", "one_way", "one_way_frozen", "ehrenfest"),
}


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    backend: str = "both"
    points: int = 256
    phase_arm: str = "L"
    g: float = 1.0
    dt: float = 1e-3
    t_max: float | None = None
    fock_dim: int = 8
    trials: int = 100
    seed: int = 42
    out: str | None = None
    format: str = "csv"


def _positive_float(text):
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _finite_float(text):
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", default=None,
                        help="mz-sweep: both|classical_cbit|quantum (default both); "
                             "swap-test: all|one_way|one_way_frozen|ehrenfest (default all)")
    common.add_argument("--points", type=int, default=None,
                        help="mz-sweep phase grid size incl. endpoints (default 256); "
                             "jc-compare time steps (default 400)")
    common.add_argument("--phase-arm", choices=("L", "R"), default="L", help="arm carrying the phase (default L)")
    common.add_argument("--g", type=_finite_float, default=1.0, help="coupling strength (default 1)")
    common.add_argument("--dt", type=_positive_float, default=1e-3, help="time step (default 1e-3)")
    common.add_argument("--t-max", type=_positive_float, default=None,
                        help="horizon (default 20; jc-compare: pi/g)")
    common.add_argument("--fock-dim", type=int, default=8, help="Fock truncation for jc-compare (default 8, >= 2)")
    common.add_argument("--trials", type=int, default=None,
                        help="random trials / samples (default 100 for swap-test, 1000 for sharpness)")
    common.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    common.add_argument("--out", default=None, metavar="PATH", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "text"), default="csv", help="output format (default csv)")

    parser = argparse.ArgumentParser(prog="cbitsim", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="EXPERIMENT")
    helps = {
        "mz-sweep": "Mach-Zehnder fringes, classical c-bit vs quantum photon",
        "sharpness": "simultaneous sharpness of c-bit bilinears vs qubit uncertainty",
        "swap-test": "attempted c-bit/qubit swap under the hybrid coupling vs quantum SWAP",
        "jc-compare": "Jaynes-Cummings vacuum Rabi oscillation vs a classical mode",
        "convergence": "implicit-midpoint order and Ehrenfest energy drift",
    }
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name], description=helps[name])
    return parser


def parse_cli(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    exp = ns.experiment
    choices = BACKEND_CHOICES.get(exp)
    backend = ns.backend
    if backend is not None and choices is None:
        parser.error(f"{exp} does not take --backend")
    if choices is not None:
        backend = backend or choices[0]
        if backend not in choices:
            parser.error(f"--backend for {exp} must be one of {', '.join(choices)}")
    if ns.fock_dim < 2:
        parser.error("--fock-dim must be at least 2")
    points = ns.points if ns.points is not None else (400 if exp == "jc-compare" else 256)
    if points < (1 if exp == "jc-compare" else 2):
        parser.error("--points is too small")
    trials = ns.trials if ns.trials is not None else (1000 if exp == "sharpness" else 100)
    if trials < 1:
        parser.error("--trials must be at least 1")
    return RunConfig(exp, backend or "", points, ns.phase_arm, ns.g, ns.dt, ns.t_max,
                     ns.fock_dim, trials, ns.seed, ns.out, ns.format)


# -- output ---------------------------------------------------------------------

def format_value(v) -> str:
    """Shortest round-trip decimal for floats; plain digits for integers."""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def header(experiment: str) -> list[str]:
    param, names = ex.SCHEMAS[experiment]
    return [param, "backend", *names]


def records_to_csv(experiment: str, records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header(experiment))
    for r in records:
        w.writerow([format_value(r.param_value), r.backend,
                    *(format_value(r.observables[k]) for k in ex.SCHEMAS[experiment][1])])
    return buf.getvalue()


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(wd) for c, wd in zip(row, widths)).rstrip() for row in rows)


def result_to_text(result: ex.ExperimentResult, max_rows: int = 20) -> str:
    lines = [f"# {result.experiment}", ""]
    rows = [header(result.experiment)]
    shown = result.records[:max_rows]
    for r in shown:
        rows.append([format_value(r.param_value), r.backend,
                     *(f"{r.observables[k]:.10g}" for k in ex.SCHEMAS[result.experiment][1])])
    lines.append(_table(rows))
    if len(result.records) > len(shown):
        lines.append(f"... {len(result.records) - len(shown)} more rows")
    if result.summary:
        lines += ["", "summary:"]
        for k, v in result.summary.items():
            lines.append(f"  {k} = {format_value(v)}")
            if "entropy" in k and isinstance(v, float) and math.isfinite(v):
                lines[-1] += f" nats ({v / math.log(2):.6g} bits)"
    if result.verdicts:
        lines += ["", "claims:"]
        for v in result.verdicts:
            lines.append(f"  [{'PASS' if v.passed else 'FAIL'}] {v.claim}: {v.detail}")
    return "\n".join(lines) + "\n"


def write_records(result: ex.ExperimentResult, config: RunConfig) -> None:
    text = records_to_csv(result.experiment, result.records) if config.format == "csv" else result_to_text(result)
    if config.out is None:
        sys.stdout.write(text)
        return
    try:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {config.out}: {exc.strerror or exc}") from exc


def run(config: RunConfig) -> ex.ExperimentResult:
    e = config.experiment
    if e == "mz-sweep":
        return ex.run_mz_sweep(config.backend, config.points, config.phase_arm)
    if e == "sharpness":
        return ex.run_sharpness_report(config.trials, config.seed)
    if e == "swap-test":
        variants = tuple(ex.HYBRID_VARIANTS) if config.backend == "all" else (f"hybrid_{config.backend}",)
        return ex.run_swap_experiment(config.trials, CouplingSpec(g=config.g), config.seed,
                                      config.dt, config.t_max or 20.0, variants)
    if e == "jc-compare":
        t_max = config.t_max or (math.pi / abs(config.g) if config.g else math.pi)
        return ex.run_jc_compare(config.g, t_max, config.points, config.fock_dim)
    if e == "convergence":
        return ex.run_convergence(t_end=config.t_max or 20.0, g=config.g, seed=config.seed,
                                  ehrenfest_dts=(2 * config.dt, config.dt))
    raise DomainError(f"unknown experiment {e!r}")


def main(argv=None) -> int:
    config = parse_cli(argv)
    try:
        result = run(config)
        write_records(result, config)
    except (DomainError, ConvergenceError, TruncationError, OSError) as exc:
        print(f"cbitsim: error: {exc}", file=sys.stderr)
        return 1
    if config.format == "text" and config.out is not None:
        sys.stderr.write("".join(
            f"[{'PASS' if v.passed else 'FAIL'}] {v.claim}\n" for v in result.verdicts))
    return 0


if __name__ == "__main__":
    sys.exit(main())
