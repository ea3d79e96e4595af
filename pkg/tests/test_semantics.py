from fractions import Fraction

import pytest

from ptsynth import models as bundled
from ptsynth.model import parse_model, valuate
from ptsynth.polyhedra import Minimum, render_polyhedron
from ptsynth.semantics import (
    ConcreteStepError, EmptyModelError, MinTimeOracle, ZoneGraph,
    concrete_min_time_oracle, concrete_step, initial_concrete_state, replay,
)

BRANCHING = parse_model(bundled.read("branching.ptm"))
PARAMS = {1, 2, 3}  # variable indices of p1..p3 (after the clock)


def render(zone):
    return render_polyhedron(zone, BRANCHING.var_names, PARAMS)


@pytest.fixture(scope="module")
def zg():
    return ZoneGraph(BRANCHING)


class TestInitialState:
    def test_branching_initial_zone(self, zg):
        init = zg.initial()
        assert init.location == "l1"
        assert render(init.zone) == "x >= 0"

    def test_zero_invariant_pins_clock(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a inv x <= 0;")
        init = ZoneGraph(pta).initial()
        assert render_polyhedron(init.zone, ("x",)) == "x = 0"

    def test_infeasible_invariant_is_an_error(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a inv x < 0;")
        with pytest.raises(EmptyModelError):
            ZoneGraph(pta).initial()

    def test_future_of_zero_point_can_satisfy_later_bounds(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a inv x >= 1;")
        # the zero point violates the invariant, but its future does not
        assert ZoneGraph(pta).initial() is not None
        pta2 = parse_model("clocks x, y; params ; actions ;\n"
                           "init loc a inv x >= 1 && y <= 0;")
        with pytest.raises(EmptyModelError):
            ZoneGraph(pta2).initial()


class TestSuccessors:
    def test_direct_edge_zone(self, zg):
        s2 = zg.succ_edge(zg.initial(), 0)
        assert s2.location == "l3"
        assert render(s2.zone) == "x >= 2 && p1 > 2"

    def test_reset_edge_zone(self, zg):
        s3 = zg.succ_edge(zg.initial(), 1)
        assert s3.location == "l2"
        assert render(s3.zone) == "x >= 0 && p2 > 1"

    def test_second_layer_zones(self, zg):
        s3 = zg.succ_edge(zg.initial(), 1)
        succs = zg.successors(s3)
        assert [i for i, _ in succs] == [2, 3]
        s4, s5 = succs[0][1], succs[1][1]
        assert render(s4.zone) == "x >= 2 && p1 = 2 && p2 > 1 && p2 < 2"
        assert render(s5.zone) == "x >= 2 && p1 = 2 && p2 > 1 && p3 = 2"

    def test_contradicted_guard_absent(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc b;\n"
                          "edge a -> b when x = 1 && x = 2;")
        zgx = ZoneGraph(pta)
        assert zgx.succ_edge(zgx.initial(), 0) is None
        assert zgx.successors(zgx.initial()) == []

    def test_successor_order_is_deterministic(self, zg):
        a = [(i, render(s.zone)) for i, s in zg.successors(zg.initial())]
        b = [(i, render(s.zone)) for i, s in zg.successors(zg.initial())]
        assert a == b

    def test_module_level_helpers(self):
        from ptsynth.semantics import initial_symbolic_state, symbolic_successors
        init = initial_symbolic_state(BRANCHING)
        succs = symbolic_successors(BRANCHING, init)
        assert [e.target for e, _ in succs] == ["l3", "l2"]


class TestConcreteStep:
    def test_guarded_step_with_reset(self):
        v = {"p1": 2, "p2": Fraction(3, 2), "p3": 2}
        state = initial_concrete_state(BRANCHING)
        nxt = concrete_step(BRANCHING, state, 1, BRANCHING.edges[1], v)
        assert nxt.location == "l2" and nxt.clocks == (Fraction(0),)

    def test_zero_delay_reset_only(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc b;\nedge a -> b reset { x };")
        nxt = concrete_step(pta, initial_concrete_state(pta), 0, pta.edges[0])
        assert nxt.location == "b" and nxt.clocks == (Fraction(0),)

    def test_violated_guard_raises(self):
        v = {"p1": 2, "p2": Fraction(3, 2), "p3": 2}
        state = initial_concrete_state(BRANCHING)
        with pytest.raises(ConcreteStepError):
            concrete_step(BRANCHING, state, 5, BRANCHING.edges[1], v)

    def test_wrong_source_location(self):
        state = initial_concrete_state(BRANCHING)
        with pytest.raises(ConcreteStepError):
            concrete_step(BRANCHING, state, 0, BRANCHING.edges[2],
                          {"p1": 2, "p2": 1, "p3": 2})


class TestReplay:
    def test_feasible_sequence(self):
        edges = [BRANCHING.edges[1], BRANCHING.edges[3]]
        run = replay(BRANCHING, edges, {"p1": 2, "p2": Fraction(3, 2), "p3": 2})
        assert run is not None
        assert run.states[-1].location == "l3"
        assert run.duration == 3  # x = 1 to leave l1, then x = 2 more

    def test_parameter_violation_infeasible(self):
        edges = [BRANCHING.edges[1], BRANCHING.edges[3]]
        assert replay(BRANCHING, edges, {"p1": 2, "p2": 1, "p3": 2}) is None

    def test_empty_sequence(self):
        run = replay(BRANCHING, [], {"p1": 1, "p2": 1, "p3": 1})
        assert run is not None and run.duration == 0
        assert run.states[0].location == "l1"

    def test_total_duration_constraint(self):
        edges = [BRANCHING.edges[0]]
        v = {"p1": 3, "p2": 1, "p3": 1}
        run = replay(BRANCHING, edges, v, total_duration=2)
        assert run is not None and run.duration == 2
        assert replay(BRANCHING, edges, v, total_duration=1) is None

    def test_time_parameter_tracks_run_duration(self):
        # a run reaching the target corresponds to an instrumented run whose
        # fresh parameter equals the duration, and to nothing else
        from ptsynth.model import (instrument_global_clock,
                                   instrument_min_time_as_param)
        gpta, clock = instrument_global_clock(BRANCHING)
        ipta, param = instrument_min_time_as_param(gpta, ("l3",), clock)
        v = {"p1": 3, "p2": 1, "p3": 1}
        base = replay(gpta, [gpta.edges[0]], v, total_duration=2)
        assert base is not None
        good = dict(v, **{param: base.duration})
        assert replay(ipta, [ipta.edges[0]], good) is not None
        # the guard pins the entering time, so a wrong value is infeasible
        bad = dict(v, **{param: base.duration + 7})
        assert replay(ipta, [ipta.edges[0]], bad) is None


class TestOracle:
    def test_single_guarded_edge(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc goal;\nedge a -> goal when x = 3;")
        res = concrete_min_time_oracle(pta, ("goal",), 10)
        assert res.minimum == Minimum.finite(3) and res.complete

    def test_train_model_reference_optimum(self):
        pta = parse_model(bundled.read("train_scheduling.ptm"))
        ta = valuate(pta, {"D1": 25, "D2": 15})
        res = concrete_min_time_oracle(ta, ("goal",), 550)
        assert res.minimum == Minimum.finite(405)

    def test_unreachable_within_horizon(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc goal;\nedge a -> goal when x >= 30;")
        res = concrete_min_time_oracle(pta, ("goal",), 10)
        assert res.minimum.is_infinite and not res.complete

    def test_truly_unreachable(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc goal;\n"
                          "edge a -> goal when x = 1 && x = 2;")
        res = concrete_min_time_oracle(pta, ("goal",), 10)
        assert res.minimum.is_infinite and res.complete

    def test_strict_guard_rejected(self):
        pta = parse_model("clocks x; params ; actions ;\n"
                          "init loc a;\nloc goal;\nedge a -> goal when x > 3;")
        with pytest.raises(ValueError):
            concrete_min_time_oracle(pta, ("goal",), 10)

    def test_parametric_model_rejected(self):
        with pytest.raises(ValueError):
            concrete_min_time_oracle(BRANCHING, ("l3",), 10)

    def test_half_integer_delays_found(self):
        pta = parse_model("clocks x, y; params ; actions ;\n"
                          "init loc a inv y <= 1;\nloc b;\nloc goal;\n"
                          "edge a -> b when x = 1 reset { x };\n"
                          "edge b -> goal when x = 3 && y = 4;")
        # y = 4 at the end forces total 4; the split 1 + 3 fits the grid
        res = concrete_min_time_oracle(pta, ("goal",), 10)
        assert res.minimum == Minimum.finite(4)

    def test_witness_path_recovered(self):
        pta = parse_model(bundled.read("train_scheduling.ptm"))
        engine = MinTimeOracle(pta, ("goal",), 550)
        res = engine.run({"D1": 25, "D2": 15}, witness=True)
        assert res.witness is not None
        assert pta.edges[res.witness[-1]].target == "goal"

    def test_oracle_runs_exist_in_zone_graph(self, rng):
        # every oracle-found run's discrete sequence is a symbolic path
        from helpers import random_acyclic_ta

        found = 0
        for _ in range(60):
            pta, target = random_acyclic_ta(rng)
            res = MinTimeOracle(pta, (target,), 20).run(witness=True)
            if not res.hit:
                continue
            found += 1
            zgx = ZoneGraph(pta)
            state = zgx.initial()
            for edge_index in res.witness:
                state = zgx.succ_edge(state, edge_index)
                assert state is not None
            assert state.location == target
        assert found > 0
