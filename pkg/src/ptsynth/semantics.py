"""Symbolic and concrete semantics.

The symbolic side computes parametric-zone-graph successors: for an edge
``(l, g, a, R, l')`` the successor zone is
``((C && g)[R] && I(l'))^up && I(l')`` where ``^up`` is time elapsing; the
target invariant is intersected both before and after elapsing, exactly as
the successor formula states.  The concrete side is an independent testing
oracle: a small-step simulator over rational clock valuations, a replayer
that solves for delays realizing a given discrete edge sequence, and an
exhaustive minimal-time search on half-integer delay grids.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .model import Pta, check_targets
from .polyhedra import (
    EQ, LE, Inequality, LinearTerm, Minimum, Polyhedron, bound, sample_point,
)


class EmptyModelError(ValueError):
    """The initial state is infeasible (initial invariant excludes the zero point)."""


class ConcreteStepError(ValueError):
    """A concrete transition violates a guard, an invariant or the source location."""


@dataclass(frozen=True)
class SymbolicState:
    location: str
    zone: Polyhedron


@dataclass(frozen=True)
class ConcreteState:
    location: str
    clocks: tuple  # Fractions aligned with pta.clocks


@dataclass(frozen=True)
class Run:
    """Alternating concrete states and (delay, edge) steps."""
    states: tuple
    steps: tuple  # (Fraction delay, Edge)

    @property
    def duration(self) -> Fraction:
        return sum((d for d, _ in self.steps), Fraction(0))

    def edge_sequence(self):
        return [e for _, e in self.steps]


class ZoneGraph:
    """Successor computation over the parametric zone graph of one PTA.

    Guard and invariant polyhedra are precomputed per edge/location; states
    and zones are immutable, so one instance can serve many explorations.
    """

    def __init__(self, pta: Pta):
        self.pta = pta
        self._invariants = {loc.name: pta.guard_polyhedron(loc.invariant)
                            for loc in pta.locations}
        self._edges_from = {}
        self._guards = []
        self._resets = []
        for idx, e in enumerate(pta.edges):
            self._edges_from.setdefault(e.source, []).append(idx)
            self._guards.append(pta.guard_polyhedron(e.guard))
            self._resets.append(frozenset(pta.var_index(c) for c in e.resets))
        self._clock_set = frozenset(pta.clock_indices())

    def invariant(self, location: str) -> Polyhedron:
        return self._invariants[location]

    def initial(self) -> SymbolicState:
        """Elapse of the all-zeros point under the initial invariant and axioms."""
        pta = self.pta
        zone = pta.nonnegativity_axioms()
        for v in pta.clock_indices():
            zone = zone.conjoin(Inequality(LinearTerm.variable(v), EQ))
        zone = zone.time_elapse(self._clock_set)
        zone = zone.conjoin(self._invariants[pta.initial])
        if zone.is_empty():
            raise EmptyModelError(
                f"invariant of initial location {pta.initial!r} is unsatisfiable "
                "at the zero clock valuation")
        return SymbolicState(pta.initial, zone)

    def succ_edge(self, state: SymbolicState, edge_index: int) -> SymbolicState | None:
        edge = self.pta.edges[edge_index]
        if edge.source != state.location:
            raise ValueError(f"edge {edge_index} does not leave {state.location!r}")
        inv = self._invariants[edge.target]
        zone = state.zone.conjoin(self._guards[edge_index])
        if zone.is_empty():
            return None
        zone = zone.reset(self._resets[edge_index])
        zone = zone.conjoin(inv)
        zone = zone.time_elapse(self._clock_set)
        zone = zone.conjoin(inv)
        if zone.is_empty():
            return None
        return SymbolicState(edge.target, zone)

    def successors(self, state: SymbolicState):
        """All satisfiable edge successors, ordered by edge declaration index."""
        out = []
        for idx in self._edges_from.get(state.location, ()):
            nxt = self.succ_edge(state, idx)
            if nxt is not None:
                out.append((idx, nxt))
        return out

    def project_params(self, zone: Polyhedron) -> Polyhedron:
        """Shadow onto the parameters, reindexed to a |P|-dimensional space."""
        pta = self.pta
        shadow = zone.project(set(pta.param_indices()))
        mapping = {v: v - pta.n_clocks for v in pta.param_indices()}
        return shadow.rename(mapping, len(pta.params))


def initial_symbolic_state(pta: Pta) -> SymbolicState:
    """Entry point for one-off use; explorations share a ZoneGraph instead."""
    return ZoneGraph(pta).initial()


def symbolic_successors(pta: Pta, state: SymbolicState):
    """All satisfiable edge successors as (edge, state) pairs."""
    zg = ZoneGraph(pta)
    return [(pta.edges[i], nxt) for i, nxt in zg.successors(state)]


# ---------------------------------------------------------------------------
# concrete semantics
# ---------------------------------------------------------------------------

def initial_concrete_state(pta: Pta) -> ConcreteState:
    return ConcreteState(pta.initial, tuple(Fraction(0) for _ in pta.clocks))


def _atom_holds(atom, clocks_by_name, valuation) -> bool:
    lhs = clocks_by_name[atom.clock]
    rhs = valuation[atom.rhs] if isinstance(atom.rhs, str) else Fraction(atom.rhs)
    return {"<": lhs < rhs, "<=": lhs <= rhs, "=": lhs == rhs,
            ">=": lhs >= rhs, ">": lhs > rhs}[atom.op]


def _guard_holds(guard, pta, clocks, valuation) -> bool:
    by_name = dict(zip(pta.clocks, clocks))
    return all(_atom_holds(a, by_name, valuation) for a in guard)


def concrete_step(pta: Pta, state: ConcreteState, delay, edge,
                  valuation=None) -> ConcreteState:
    """One delay-then-edge step of the concrete semantics.

    Invariants are convex in this guard fragment, so holding at the endpoint
    of the delay implies holding throughout it.
    """
    valuation = {k: Fraction(v) for k, v in (valuation or {}).items()}
    delay = Fraction(delay)
    if delay < 0:
        raise ConcreteStepError("negative delay")
    if edge.source != state.location:
        raise ConcreteStepError(
            f"edge leaves {edge.source!r} but state is at {state.location!r}")
    advanced = tuple(c + delay for c in state.clocks)
    inv = pta.location(state.location).invariant
    if not _guard_holds(inv, pta, advanced, valuation):
        raise ConcreteStepError(
            f"invariant of {state.location!r} violated after delay {delay}")
    if not _guard_holds(edge.guard, pta, advanced, valuation):
        raise ConcreteStepError(f"guard violated after delay {delay}")
    reset = set(edge.resets)
    landed = tuple(Fraction(0) if name in reset else value
                   for name, value in zip(pta.clocks, advanced))
    if not _guard_holds(pta.location(edge.target).invariant, pta, landed, valuation):
        raise ConcreteStepError(f"invariant of {edge.target!r} violated on entry")
    return ConcreteState(edge.target, landed)


def replay(pta: Pta, edges, valuation=None, *, total_duration=None,
           max_duration=None, rng=None) -> Run | None:
    """Concrete delays realizing a discrete edge sequence, or None.

    Solves for the firing times t_0 <= t_1 <= ... of the transitions: a
    clock's value at step i is t_i minus the time of its last reset, which
    turns every guard and (endpoint-checked) invariant atom into a
    difference constraint over at most two firing-time variables.  Such
    systems stay small under elimination, so a witness point is cheap even
    for long paths; the returned run is re-validated step by step through
    the simulator.
    """
    valuation = {k: Fraction(v) for k, v in (valuation or {}).items()}
    k = len(edges)
    constraints = []

    def rhs_const(atom):
        if isinstance(atom.rhs, str):
            return LinearTerm.constant(valuation[atom.rhs])
        return LinearTerm.constant(atom.rhs)

    def clock_expr(reset_step, at_step):
        # value of a clock last reset at `reset_step` when step `at_step` fires
        expr = LinearTerm.variable(at_step)
        if reset_step >= 0:
            expr = expr - LinearTerm.variable(reset_step)
        return expr

    last_reset = {c: -1 for c in pta.clocks}  # -1: never reset (time origin)
    location = pta.initial
    if not _guard_holds(pta.location(location).invariant, pta,
                        tuple(Fraction(0) for _ in pta.clocks), valuation):
        return None
    prev = None
    for i, edge in enumerate(edges):
        if edge.source != location:
            raise ValueError(
                f"edge {i} leaves {edge.source!r}, path is at {location!r}")
        if prev is None:
            constraints.append(Inequality(LinearTerm({i: -1}), LE))  # t_i >= 0
        else:
            constraints.append(bound(LinearTerm.variable(prev), "<=",
                                     LinearTerm.variable(i)))
        for atom in pta.location(location).invariant:
            constraints.append(bound(clock_expr(last_reset[atom.clock], i),
                                     atom.op, rhs_const(atom)))
        for atom in edge.guard:
            constraints.append(bound(clock_expr(last_reset[atom.clock], i),
                                     atom.op, rhs_const(atom)))
        for c in edge.resets:
            last_reset[c] = i
        location = edge.target
        for atom in pta.location(location).invariant:
            expr = LinearTerm() if last_reset[atom.clock] == i \
                else clock_expr(last_reset[atom.clock], i)
            constraints.append(bound(expr, atom.op, rhs_const(atom)))
        prev = i
    if k:
        final = LinearTerm.variable(k - 1)
        if total_duration is not None:
            constraints.append(Inequality(
                final - LinearTerm.constant(total_duration), EQ))
        if max_duration is not None:
            constraints.append(Inequality(
                final - LinearTerm.constant(max_duration), LE))
    else:
        if total_duration is not None and Fraction(total_duration) != 0:
            return None
    poly = Polyhedron(max(k, 1), constraints)
    point = sample_point(poly, rng)
    if point is None:
        return None
    times = [point.get(i, Fraction(0)) for i in range(k)]
    states = [initial_concrete_state(pta)]
    steps = []
    previous_time = Fraction(0)
    for t, edge in zip(times, edges):
        delay = t - previous_time
        states.append(concrete_step(pta, states[-1], delay, edge, valuation))
        steps.append((delay, edge))
        previous_time = t
    return Run(tuple(states), tuple(steps))


# ---------------------------------------------------------------------------
# minimal-time oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    minimum: Minimum
    complete: bool  # False when the horizon truncated the search
    witness: tuple | None = None  # edge indices of a minimal run, when asked

    @property
    def hit(self) -> bool:
        return not self.minimum.is_infinite


class MinTimeOracle:
    """Exhaustive minimal-duration search over half-integer delay grids.

    Valid only for models with integer constants and non-strict comparisons:
    minimal durations of such models are attained on the half-integer grid,
    so a uniform-cost search over (location, clock valuation) pairs with
    delays in steps of 1/2 is exact.  States are explored in duration order
    and pruned on revisits and past the horizon.

    The model is preprocessed once; ``run`` substitutes one parameter
    valuation, so sweeping a grid of valuations stays cheap.  All arithmetic
    is on integers in doubled units.
    """

    def __init__(self, pta: Pta, targets, horizon):
        self.pta = pta
        self.targets = set(check_targets(pta, targets))
        self.horizon2 = _twice(horizon)
        for atom in _all_atoms(pta):
            if atom.op in ("<", ">"):
                raise ValueError("oracle requires non-strict guards and invariants")
            if not atom.is_parametric() and Fraction(atom.rhs).denominator != 1:
                raise ValueError("oracle requires integer constants")
        idx = {c: i for i, c in enumerate(pta.clocks)}
        self.n_clocks = len(pta.clocks)
        # atoms as (clock index, op, rhs) with rhs an int (doubled) or a name
        self.inv_atoms = {loc.name: tuple((idx[a.clock], a.op, _rhs2(a.rhs))
                                          for a in loc.invariant)
                          for loc in pta.locations}
        self.edges_from: dict[str, list] = {}
        for ei, e in enumerate(pta.edges):
            guard = tuple((idx[a.clock], a.op, _rhs2(a.rhs)) for a in e.guard)
            resets = tuple(idx[c] for c in e.resets)
            self.edges_from.setdefault(e.source, []).append(
                (e.target, guard, resets, ei))

    def run(self, valuation=None, witness=False) -> OracleResult:
        if self.pta.params and valuation is None:
            raise ValueError("oracle requires a parameter valuation")
        vals = {}
        for p in self.pta.params:
            vals[p] = _twice(valuation[p])
        inv = {loc: tuple((c, op, vals[b] if isinstance(b, str) else b)
                          for c, op, b in atoms)
               for loc, atoms in self.inv_atoms.items()}
        edges = {loc: [(dst, tuple((c, op, vals[b] if isinstance(b, str) else b)
                                   for c, op, b in guard), resets, ei)
                       for dst, guard, resets, ei in lst]
                 for loc, lst in self.edges_from.items()}
        return self._search(inv, edges, witness)

    def _search(self, inv, edges, witness) -> OracleResult:
        horizon2 = self.horizon2
        targets = self.targets
        n = self.n_clocks
        start = (0,) * n
        if not _atoms_hold(inv[self.pta.initial], start):
            return OracleResult(Minimum.infinite(), True)
        heap = [(0, self.pta.initial, start)]
        best = {(self.pta.initial, start): 0}
        parents = {(self.pta.initial, start): None} if witness else None
        big = 1 << 62
        truncated = False
        while heap:
            dur, loc, clocks = heapq.heappop(heap)
            if best.get((loc, clocks), big) < dur:
                continue
            if loc in targets:
                path = None
                if witness:
                    path, key = [], (loc, clocks)
                    while parents[key] is not None:
                        key, ei = parents[key]
                        path.append(ei)
                    path = tuple(reversed(path))
                return OracleResult(Minimum.finite(Fraction(dur, 2)), True,
                                    path)
            inv_here = inv[loc]
            budget = horizon2 - dur
            for dst, guard, resets, ei in edges.get(loc, ()):
                lo = 0
                hi_c = None  # constraint-imposed delay cap, None = unbounded
                for c, op, b in inv_here:
                    gap = b - clocks[c]
                    if op != ">=" and (hi_c is None or gap < hi_c):
                        hi_c = gap
                    if op != "<=" and gap > lo:
                        lo = gap
                for c, op, b in guard:
                    gap = b - clocks[c]
                    if op != ">=" and (hi_c is None or gap < hi_c):
                        hi_c = gap
                    if op != "<=" and gap > lo:
                        lo = gap
                if hi_c is None or lo <= hi_c:
                    if hi_c is None or hi_c > budget:
                        truncated = True  # feasible delays beyond the horizon
                hi = budget if hi_c is None else min(hi_c, budget)
                if lo > hi:
                    continue
                tinv = inv[dst]
                for d in range(lo, hi + 1):
                    landed = tuple(0 if c in resets else clocks[c] + d
                                   for c in range(n))
                    if tinv and not _atoms_hold(tinv, landed):
                        continue
                    ndur = dur + d
                    nkey = (dst, landed)
                    if best.get(nkey, big) <= ndur:
                        continue
                    best[nkey] = ndur
                    if witness:
                        parents[nkey] = ((loc, clocks), ei)
                    heapq.heappush(heap, (ndur, dst, landed))
        return OracleResult(Minimum.infinite(), not truncated)


def concrete_min_time_oracle(pta: Pta, targets, horizon) -> OracleResult:
    """Minimal duration reaching `targets` in a parameter-free model.

    See MinTimeOracle; errors out on parametric models, strict comparisons
    or non-integer constants.
    """
    if pta.params:
        raise ValueError("oracle requires a parameter-free model")
    return MinTimeOracle(pta, targets, horizon).run()


def _all_atoms(pta: Pta):
    for loc in pta.locations:
        yield from loc.invariant
    for e in pta.edges:
        yield from e.guard


def _twice(x) -> int:
    doubled = Fraction(x) * 2
    if doubled.denominator != 1:
        raise ValueError(f"value {x} is not on the half-integer grid")
    return int(doubled)


def _rhs2(rhs):
    return rhs if isinstance(rhs, str) else _twice(rhs)


def _atoms_hold(atoms, clocks) -> bool:
    for c, op, b in atoms:
        v = clocks[c]
        if op == "<=":
            if v > b:
                return False
        elif op == ">=":
            if v < b:
                return False
        elif v != b:
            return False
    return True
