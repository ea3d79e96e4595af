import csv

from ptsynth import models as bundled
from ptsynth.bench import (
    BenchEntry, BenchSuite, CONFIGURATIONS, emit_scatter, load_manifest,
    run_suite,
)
from ptsynth.model import parse_model
from ptsynth.synth import min_param_synth

import pytest


@pytest.fixture(scope="module")
def light_records(tmp_path_factory):
    suite = BenchSuite([
        BenchEntry(bundled.path("branching.ptm"),
                   bundled.path("branching.prop"), "(2, =)"),
        BenchEntry(bundled.path("lu_bounds.ptm"),
                   bundled.path("lu_bounds.prop"), "(3, =)"),
        BenchEntry(bundled.path("unreachable.ptm"),
                   bundled.path("unreachable.prop"), "infinity"),
        BenchEntry(bundled.path("single_clock_loop.ptm"),
                   bundled.path("single_clock_loop.prop"), "(4, =)"),
    ], timeout=120.0)
    out = tmp_path_factory.mktemp("bench") / "results.csv"
    records = run_suite(suite, out)
    return suite, records, out


def test_one_record_per_model_and_config(light_records):
    suite, records, _ = light_records
    assert len(records) == len(suite.entries) * len(CONFIGURATIONS)
    assert {r.config for r in records} == set(CONFIGURATIONS)


def test_csv_columns(light_records):
    _, _, out = light_records
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["model", "config", "status", "wall_ms", "popped",
                       "pushed", "optimum", "disjuncts"]
    assert len(rows) == 1 + 4 * 6


def test_expected_optima_reproduced(light_records):
    suite, records, _ = light_records
    expected = {e.model.name: e.expected_optimum for e in suite.entries}
    for r in records:
        if r.config == "EFSynth":
            continue  # plain reachability reports no optimum
        assert r.status == "ok"
        assert r.optimum == expected[r.model]


def test_no_reduction_explores_at_least_as_much(light_records):
    _, records, _ = light_records
    by_key = {(r.model, r.config): r for r in records}
    for model in {r.model for r in records}:
        assert by_key[(model, "MTSynth-noRed")].popped >= \
            by_key[(model, "MTSynth")].popped


def test_pruning_dominance(light_records):
    _, records, _ = light_records
    by_key = {(r.model, r.config): r for r in records}
    for model in {r.model for r in records}:
        assert by_key[(model, "MTReach")].popped \
            <= by_key[(model, "MTSynth")].popped \
            <= by_key[(model, "EFSynth")].popped


def test_harness_matches_direct_library_call(light_records):
    _, records, _ = light_records
    row = next(r for r in records
               if r.model == "branching.ptm" and r.config == "MPSynth")
    # MPSynth runs minparam on the time-instrumented model
    from ptsynth.model import (instrument_global_clock,
                               instrument_min_time_as_param)
    pta = parse_model(bundled.read("branching.ptm"))
    gpta, clock = instrument_global_clock(pta)
    ipta, param = instrument_min_time_as_param(gpta, ("l3",), clock)
    direct = min_param_synth(ipta, ("l3",), param)
    assert row.optimum == direct.optimum.render()
    assert row.disjuncts == len(direct.constraint.disjuncts)


def test_scatter_file_shape(light_records, tmp_path):
    suite, records, _ = light_records
    path = emit_scatter(records, "MTSynth", "EFSynth",
                        tmp_path / "scatter.dat", suite.timeout)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("#")
    assert len(lines) == 1 + len(suite.entries)
    for line in lines[1:]:
        x, y, flag = line.split()
        assert float(x) >= 0 and float(y) >= 0 and flag in ("0", "1")


def test_scatter_empty_records(tmp_path):
    path = emit_scatter([], "MTSynth", "EFSynth", tmp_path / "empty.dat")
    assert path.read_text().startswith("#")


def test_scatter_flags_timeouts(tmp_path):
    from ptsynth.bench import BenchRecord
    records = [BenchRecord("m.ptm", "MTSynth", "timeout", 60000.0,
                           None, None, None, None),
               BenchRecord("m.ptm", "EFSynth", "ok", 12.0, 5, 5, "(1, =)", 1)]
    path = emit_scatter(records, "MTSynth", "EFSynth",
                        tmp_path / "t.dat", timeout=60.0)
    line = path.read_text().splitlines()[1]
    assert line == "60000.0 12.0 1"


def test_manifest_loader(tmp_path):
    manifest = tmp_path / "suite.manifest"
    (tmp_path / "m.ptm").write_text("x")
    (tmp_path / "m.prop").write_text("y")
    manifest.write_text("# comment\nm.ptm;m.prop;--max-states 50\n")
    suite = load_manifest(manifest, timeout=5.0)
    assert len(suite.entries) == 1
    entry = suite.entries[0]
    assert entry.model.name == "m.ptm"
    assert entry.overrides == ("--max-states", "50")
    assert suite.timeout == 5.0


def test_bundled_manifest_covers_six_models():
    suite = load_manifest(bundled.path("suite.manifest"))
    assert len(suite.entries) == 6
    for entry in suite.entries:
        assert entry.model.exists() and entry.property_file.exists()
