"""Benchmark harness: run the six standard configurations over a model suite.

Each run executes the CLI in a separate process under a wall-clock timeout
and parses its structured output; results land in a CSV
(``model,config,status,wall_ms,popped,pushed,optimum,disjuncts``) plus
optional scatter data files comparing two configurations
(``x y flag`` lines, timeouts clamped to the timeout value and flagged).

Configurations (reductions are on unless stated):

* ``MTReach``       minimal-time reachability
* ``MTSynth``       minimal-time synthesis
* ``MTSynth-noRed`` minimal-time synthesis without reductions
* ``MPReach``       parameter minimization of the time parameter
* ``MPSynth``       parameter minimization of the time parameter
* ``EFSynth``       plain reachability synthesis

The MP configurations run on a time-instrumented copy of the model (a fresh
never-reset clock tied to a fresh parameter on every edge into the targets),
minimizing that parameter; both map onto the ``minparam`` CLI algorithm.
"""

from __future__ import annotations

import csv
import json
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from .model import (
    instrument_global_clock, instrument_min_time_as_param, parse_model,
    parse_property, print_model,
)

CONFIGURATIONS = ("MTReach", "MTSynth", "MTSynth-noRed", "MPReach",
                  "MPSynth", "EFSynth")

CSV_COLUMNS = ("model", "config", "status", "wall_ms", "popped", "pushed",
               "optimum", "disjuncts")


@dataclass(frozen=True)
class BenchEntry:
    model: Path
    property_file: Path
    expected_optimum: str | None = None
    overrides: tuple = ()


@dataclass
class BenchSuite:
    entries: list
    timeout: float = 60.0
    configurations: tuple = CONFIGURATIONS


@dataclass
class BenchRecord:
    model: str
    config: str
    status: str            # ok | partial | timeout | error
    wall_ms: float
    popped: int | None
    pushed: int | None
    optimum: str | None
    disjuncts: int | None

    def row(self):
        return [self.model, self.config, self.status,
                f"{self.wall_ms:.1f}",
                "" if self.popped is None else self.popped,
                "" if self.pushed is None else self.pushed,
                self.optimum or "",
                "" if self.disjuncts is None else self.disjuncts]


def load_manifest(path: Path, timeout: float = 60.0) -> BenchSuite:
    """Suite manifest: one `model;property;config-overrides` line per model."""
    entries = []
    base = path.parent
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(";")
        if len(parts) < 2:
            raise ValueError(f"bad manifest line: {raw!r}")
        model, prop = parts[0].strip(), parts[1].strip()
        overrides = tuple(parts[2].split()) if len(parts) > 2 and parts[2].strip() \
            else ()
        entries.append(BenchEntry(base / model, base / prop, None, overrides))
    return BenchSuite(entries, timeout=timeout)


def default_suite(timeout: float = 60.0) -> BenchSuite:
    from . import models as bundled

    suite = load_manifest(bundled.path("suite.manifest"), timeout=timeout)
    expected = {
        "branching.ptm": "(2, =)",
        "train_scheduling.ptm": "(405, =)",
        "train_scheduling_scaled.ptm": "(81, =)",
        "single_clock_loop.ptm": "(4, =)",
        "lu_bounds.ptm": "(3, =)",
        "unreachable.ptm": "infinity",
    }
    suite.entries = [BenchEntry(e.model, e.property_file,
                                expected.get(e.model.name), e.overrides)
                     for e in suite.entries]
    return suite


def _never_reset_clock(pta):
    for clock in pta.clocks:
        if not pta.is_reset(clock):
            return clock
    return None


def _prepare_instrumented(entry: BenchEntry, workdir: Path) -> tuple[Path, str]:
    """Time-instrumented copy for the parameter-minimization configurations."""
    pta = parse_model(entry.model.read_text())
    prop = parse_property(entry.property_file.read_text())
    pta, clock = instrument_global_clock(pta, reuse=_never_reset_clock(pta))
    pta, param = instrument_min_time_as_param(pta, prop.targets, clock)
    out = workdir / (entry.model.stem + "_timed.ptm")
    out.write_text(print_model(pta))
    return out, param


def _invocation(entry: BenchEntry, config: str, workdir: Path):
    base = [sys.executable, "-m", "ptsynth.cli"]
    tail = ["--property", str(entry.property_file), "--output", "structured",
            *entry.overrides]
    if config in ("MPReach", "MPSynth"):
        model, param = _prepare_instrumented(entry, workdir)
        return base + [str(model), "--algorithm", "minparam",
                       "--minimize", param] + tail
    argv = base + [str(entry.model)]
    if config == "EFSynth":
        argv += ["--algorithm", "efsynth"]
    else:
        algo = "mintime-reach" if config == "MTReach" else "mintime"
        argv += ["--algorithm", algo]
        clock = _never_reset_clock(parse_model(entry.model.read_text()))
        if clock:
            argv += ["--global-clock", clock]
        if config == "MTSynth-noRed":
            argv += ["--no-inclusion", "--merge", "off"]
    return argv + tail


def run_one(entry: BenchEntry, config: str, timeout: float,
            workdir: Path) -> BenchRecord:
    argv = _invocation(entry, config, workdir)
    started = time.perf_counter()
    try:
        proc = subprocess.run(argv, capture_output=True, text=True,
                              timeout=timeout)
    except subprocess.TimeoutExpired:
        return BenchRecord(entry.model.name, config, "timeout",
                           timeout * 1000.0, None, None, None, None)
    wall_ms = (time.perf_counter() - started) * 1000.0
    if proc.returncode not in (0, 2):
        return BenchRecord(entry.model.name, config, "error", wall_ms,
                           None, None, None, None)
    try:
        doc = json.loads(proc.stdout.strip().splitlines()[-1])
    except (ValueError, IndexError):
        return BenchRecord(entry.model.name, config, "error", wall_ms,
                           None, None, None, None)
    stats = doc.get("stats", {})
    opt = doc.get("optimum")
    if isinstance(opt, dict):
        opt_text = f"({opt['value']}, {opt['strictness']})"
    else:
        opt_text = opt  # "infinity" or None (efsynth)
    return BenchRecord(entry.model.name, config,
                       "ok" if doc.get("status") == "complete" else "partial",
                       stats.get("wall_ms", wall_ms),
                       stats.get("popped"), stats.get("pushed"),
                       opt_text, len(doc.get("constraint", [])))


def run_suite(suite: BenchSuite, csv_path: Path | None = None,
              configurations=None) -> list:
    """One record per (model, configuration); failures are recorded, not fatal."""
    records = []
    configurations = configurations or suite.configurations
    with tempfile.TemporaryDirectory(prefix="ptsynth-bench-") as tmp:
        workdir = Path(tmp)
        for entry in suite.entries:
            for config in configurations:
                records.append(run_one(entry, config, suite.timeout, workdir))
    if csv_path is not None:
        write_csv(records, csv_path)
    return records


def write_csv(records, path: Path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(record.row())


def emit_scatter(records, config_x: str, config_y: str, path: Path,
                 timeout: float = 60.0):
    """Two-column time pairs per model; timeouts clamped and flagged."""
    by_model: dict[str, dict] = {}
    for r in records:
        by_model.setdefault(r.model, {})[r.config] = r
    clamp = timeout * 1000.0
    lines = [f"# x={config_x} y={config_y} (ms; flag=1 marks a timeout)"]
    for model in sorted(by_model):
        pair = by_model[model]
        if config_x not in pair or config_y not in pair:
            continue
        rx, ry = pair[config_x], pair[config_y]
        flag = 1 if "timeout" in (rx.status, ry.status) else 0
        x = clamp if rx.status == "timeout" else rx.wall_ms
        y = clamp if ry.status == "timeout" else ry.wall_ms
        lines.append(f"{x:.1f} {y:.1f} {flag}")
    path.write_text("\n".join(lines) + "\n")
    return path


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(
        prog="python -m ptsynth.bench",
        description="Run the benchmark suite and write CSV/scatter files.")
    parser.add_argument("--suite", help="suite manifest (default: bundled)")
    parser.add_argument("--timeout", type=float, default=60.0)
    parser.add_argument("--out-dir", default="bench-out")
    parser.add_argument("--scatter", nargs=2, action="append",
                        metavar=("CFG_X", "CFG_Y"), default=[])
    args = parser.parse_args(argv)
    suite = load_manifest(Path(args.suite), args.timeout) if args.suite \
        else default_suite(args.timeout)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records = run_suite(suite, out / "results.csv")
    for cfg_x, cfg_y in args.scatter:
        emit_scatter(records, cfg_x, cfg_y,
                     out / f"scatter_{cfg_x}_vs_{cfg_y}.dat", suite.timeout)
    bad = [r for r in records if r.status == "error"]
    for r in records:
        print(f"{r.model:32s} {r.config:14s} {r.status:8s} "
              f"{r.wall_ms:10.1f}ms  opt={r.optimum or '-'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
