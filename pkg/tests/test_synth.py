from fractions import Fraction

import pytest

from ptsynth import models as bundled
from ptsynth.model import (
    ModelError, instrument_global_clock, instrument_min_time_as_param,
    parse_model,
)
from ptsynth.polyhedra import Minimum
from ptsynth.semantics import SymbolicState, replay
from ptsynth.synth import (
    AlgoConfig, DisjunctiveConstraint, apply_inclusion_filter, ef_synth,
    lu_min_time_fast_path, merge_pass, min_param_synth, min_time_reach,
    min_time_synth, render_constraint, render_result_text, result_document,
)

from helpers import atom, nonneg, poly

BRANCHING = parse_model(bundled.read("branching.ptm"))
LU = parse_model(bundled.read("lu_bounds.ptm"))
UNREACHABLE = parse_model(bundled.read("unreachable.ptm"))


def expected_branching_k():
    # p1 = 2 && 1 < p2 < 2  union  p1 = p3 = 2 && p2 > 1, over the
    # nonnegative parameter space (p1, p2, p3)
    d1 = nonneg(3).conjoin(atom(0, "=", 2)).conjoin(atom(1, ">", 1)) \
        .conjoin(atom(1, "<", 2))
    d2 = nonneg(3).conjoin(atom(0, "=", 2)).conjoin(atom(2, "=", 2)) \
        .conjoin(atom(1, ">", 1))
    k = DisjunctiveConstraint(3)
    k.or_with(d1)
    k.or_with(d2)
    return k


class TestEfSynth:
    def test_branching_union(self):
        res = ef_synth(BRANCHING, ("l3",))
        expected = expected_branching_k()
        expected.or_with(nonneg(3).conjoin(atom(0, ">", 2)))
        assert res.constraint.equivalent(expected)
        assert res.optimum is None and res.status == "complete"

    def test_initial_target_gives_true_space(self):
        res = ef_synth(BRANCHING, ("l1",))
        assert res.constraint.equivalent(
            DisjunctiveConstraint(3, [nonneg(3)]))
        assert render_constraint(res.constraint, BRANCHING.params) == "true"

    def test_unreachable_target_gives_false(self):
        res = ef_synth(UNREACHABLE, ("goal",))
        assert res.constraint.is_false
        assert render_constraint(res.constraint, UNREACHABLE.params) == "false"


class TestMinParamSynth:
    def test_branching_optimum_and_valuations(self):
        res = min_param_synth(BRANCHING, ("l3",), "p1")
        assert res.optimum == Minimum.finite(2)
        assert res.constraint.equivalent(expected_branching_k())

    def test_unreachable(self):
        res = min_param_synth(UNREACHABLE, ("goal",), "p")
        assert res.optimum.is_infinite and res.constraint.is_false

    def test_unknown_parameter(self):
        with pytest.raises(ModelError):
            min_param_synth(BRANCHING, ("l3",), "nope")

    def test_agrees_with_min_time_via_instrumentation(self):
        gpta, clock = instrument_global_clock(BRANCHING)
        ipta, param = instrument_min_time_as_param(gpta, ("l3",), clock)
        mp = min_param_synth(ipta, ("l3",), param)
        mt = min_time_synth(gpta, ("l3",), clock)
        assert mp.optimum == mt.optimum == Minimum.finite(2)
        projected = DisjunctiveConstraint(3, [
            d.project(range(3)).rename({0: 0, 1: 1, 2: 2}, 3)
            for d in mp.constraint.disjuncts])
        assert projected.equivalent(mt.constraint)


class TestMinTimeSynth:
    def test_initial_target(self):
        gpta, clock = instrument_global_clock(BRANCHING)
        res = min_time_synth(gpta, ("l1",), clock)
        assert res.optimum == Minimum.finite(0)
        assert res.constraint.equivalent(DisjunctiveConstraint(3, [nonneg(3)]))

    def test_branching_time_two(self):
        gpta, clock = instrument_global_clock(BRANCHING)
        res = min_time_synth(gpta, ("l3",), clock)
        assert res.optimum == Minimum.finite(2)
        # only the direct route reaches l3 at time 2
        assert res.constraint.equivalent(
            DisjunctiveConstraint(3, [nonneg(3).conjoin(atom(0, ">", 2))]))

    def test_strict_bound_closure_mode(self):
        pta = parse_model("clocks x; params p; actions ;\n"
                          "init loc a;\nloc goal;\n"
                          "edge a -> goal when x > 1 && x <= p;")
        res = min_time_synth(pta, ("goal",), "x")
        assert res.optimum == Minimum.finite(1, attained=False)
        assert not res.constraint.is_false
        # closure mode keeps the valuations reaching arbitrarily close to 1
        assert res.constraint.equivalent(
            DisjunctiveConstraint(1, [poly(1, atom(0, ">=", 1))]))

    def test_strict_bound_epsilon_mode(self):
        pta = parse_model("clocks x; params p; actions ;\n"
                          "init loc a;\nloc goal;\n"
                          "edge a -> goal when x > 1 && x <= p;")
        res = min_time_synth(pta, ("goal",), "x",
                             AlgoConfig(strict_min="epsilon",
                                        epsilon=Fraction(1, 1024)))
        assert res.optimum == Minimum.finite(1, attained=False)
        # time elapsing in the goal already dropped the x <= p facet, so the
        # epsilon slice projects to exactly the valuations that can cross
        assert res.constraint.equivalent(DisjunctiveConstraint(
            1, [poly(1, atom(0, ">", 1))]))

    def test_strict_bound_epsilon_witnesses_replay(self, rng):
        pta = parse_model("clocks x; params p; actions ;\n"
                          "init loc a;\nloc goal;\n"
                          "edge a -> goal when x > 1 && x <= p;")
        res = min_time_synth(pta, ("goal",), "x",
                             AlgoConfig(strict_min="epsilon",
                                        epsilon=Fraction(1, 1024)))
        from ptsynth.polyhedra import sample_point
        for disjunct, witness in zip(res.constraint.disjuncts, res.witnesses):
            pt = sample_point(disjunct, rng)
            path = witness.resolve(pt)
            assert path is not None
            valuation = {"p": pt[0]}
            margin = res.optimum.value + Fraction(1, 1024)
            assert replay(pta, [pta.edges[i] for i in path], valuation,
                          max_duration=margin) is not None

    def test_reset_global_clock_rejected(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc b;\nedge a -> b reset { x };")
        with pytest.raises(ModelError):
            min_time_synth(pta, ("b",), "x")

    def test_pop_keys_non_decreasing(self):
        gpta, clock = instrument_global_clock(BRANCHING)
        res = min_time_synth(gpta, ("l3",), clock)
        keys = res.pop_keys
        assert all(a <= b for a, b in zip(keys, keys[1:]))
        # first target pop carries exactly the optimum
        assert res.optimum in keys


class TestMinTimeReach:
    def test_single_disjunct_inside_synth_result(self):
        gpta, clock = instrument_global_clock(BRANCHING)
        reach = min_time_reach(gpta, ("l3",), clock)
        synth = min_time_synth(gpta, ("l3",), clock)
        assert reach.optimum == synth.optimum
        assert len(reach.constraint.disjuncts) == 1
        assert synth.constraint.covers(reach.constraint.disjuncts[0])

    def test_unreachable(self):
        gpta, clock = instrument_global_clock(UNREACHABLE)
        res = min_time_reach(gpta, ("goal",), clock)
        assert res.optimum.is_infinite and res.constraint.is_false
        assert res.status == "complete"


class TestLuFastPath:
    def test_matches_parametric_min_time(self):
        fast = lu_min_time_fast_path(LU, ("goal",))
        gpta, clock = instrument_global_clock(LU)
        full = min_time_reach(gpta, ("goal",), clock)
        assert fast == full.optimum == Minimum.finite(3)

    def test_parameter_free_model_identical(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc goal;\nedge a -> goal when x = 2;")
        fast = lu_min_time_fast_path(pta, ("goal",))
        gpta, clock = instrument_global_clock(pta)
        assert fast == min_time_reach(gpta, ("goal",), clock).optimum

    def test_not_lu_rejected(self):
        with pytest.raises(ModelError):
            lu_min_time_fast_path(BRANCHING, ("l3",))


class TestReductions:
    def test_inclusion_filter_drops_covered(self):
        seen = [SymbolicState("a", poly(1, atom(0, ">", 2)))]
        cands = [SymbolicState("a", poly(1, atom(0, ">", 5))),
                 SymbolicState("b", poly(1, atom(0, ">", 5))),
                 SymbolicState("a", poly(1, atom(0, ">", 2)))]
        kept = apply_inclusion_filter(cands, seen)
        assert [s.location for s in kept] == ["b"]

    def test_merge_pass_joins_adjacent(self):
        states = [SymbolicState("a", poly(1, atom(0, ">=", 0), atom(0, "<=", 1))),
                  SymbolicState("a", poly(1, atom(0, ">=", 1), atom(0, "<=", 2))),
                  SymbolicState("b", poly(1, atom(0, "=", 0)))]
        merged, events = merge_pass(states)
        assert events == 1 and len(merged) == 2
        assert merged[0].zone.equals(poly(1, atom(0, ">=", 0), atom(0, "<=", 2)))

    def test_merge_pass_keeps_gap(self):
        states = [SymbolicState("a", poly(1, atom(0, "<=", 0))),
                  SymbolicState("a", poly(1, atom(0, ">=", 1)))]
        merged, events = merge_pass(states)
        assert events == 0 and len(merged) == 2

    def test_merging_preserves_ef_synth_valuations(self):
        base = ef_synth(BRANCHING, ("l3",),
                        AlgoConfig(inclusion=False, merge="off"))
        merged = ef_synth(BRANCHING, ("l3",), AlgoConfig())
        assert base.constraint.equivalent(merged.constraint)


class TestLimitsAndStatus:
    def test_max_states_yields_partial(self):
        pta = parse_model(bundled.read("train_scheduling.ptm"))
        res = ef_synth(pta, ("goal",), AlgoConfig(max_states=10))
        assert res.status == "partial"

    def test_timeout_yields_partial(self):
        pta = parse_model(bundled.read("train_scheduling.ptm"))
        res = ef_synth(pta, ("goal",), AlgoConfig(timeout=1e-9))
        assert res.status == "partial"

    def test_partial_k_is_sound_underapproximation(self, rng):
        gpta, clock = instrument_global_clock(BRANCHING)
        res = min_time_synth(gpta, ("l3",), clock, AlgoConfig(max_states=3))
        for disjunct, witness in zip(res.constraint.disjuncts, res.witnesses):
            from ptsynth.polyhedra import sample_point
            pt = sample_point(disjunct, rng)
            path = witness.resolve(pt)
            assert path is not None
            valuation = {name: pt[i] for i, name in enumerate(gpta.params)}
            assert replay(gpta, [gpta.edges[i] for i in path],
                          valuation) is not None


class TestRendering:
    def test_result_text_contains_labels(self):
        res = min_param_synth(BRANCHING, ("l3",), "p1")
        text = render_result_text(res, BRANCHING.params)
        assert "Opt = (2, =)" in text
        assert "(p1 = 2 && p2 > 1 && p2 < 2)" in text

    def test_document_shape(self):
        res = min_param_synth(BRANCHING, ("l3",), "p1")
        doc = result_document(res, BRANCHING.params)
        assert doc["optimum"] == {"value": "2", "strictness": "="}
        assert doc["status"] == "complete"
        assert sorted(doc["constraint"]) == doc["constraint"]

    def test_infinite_optimum_document(self):
        res = min_param_synth(UNREACHABLE, ("goal",), "p")
        doc = result_document(res, UNREACHABLE.params)
        assert doc["optimum"] == "infinity" and doc["constraint"] == []
