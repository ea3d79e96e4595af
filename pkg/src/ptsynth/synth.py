"""Synthesis algorithms over the parametric zone graph.

Four explorations share one machinery:

* ``ef_synth``       -- BFS reachability synthesis; accumulates the parameter
                        projection of every target state and cuts its successors.
* ``min_param_synth``-- BFS that tracks the least value of one parameter over
                        target states, replacing the accumulated valuations
                        whenever a strictly better optimum appears.
* ``min_time_synth`` -- priority-queue search ordered by the minimal value of a
                        never-reset global clock; stops once the head of the
                        queue exceeds the best target time.
* ``min_time_reach`` -- same, returning right after the first target pop.

Two reductions apply to all of them: dropping candidate states whose zone is
included in an already-seen zone at the same location, and merging same-location
waiting states whose zone union is exactly convex.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .model import (
    Diagnostic, ModelError, Pta, check_targets, instrument_global_clock,
    zero_infinity_substitution,
)
from .polyhedra import (
    EQ, Inequality, LinearTerm, Minimum, Polyhedron, render_atoms,
    render_polyhedron, try_convex_merge, _render_rat,
)
from .semantics import SymbolicState, ZoneGraph

MERGE_OFF = "off"
MERGE_LAYER = "layer"   # between BFS layers
MERGE_AUTO = "auto"     # layer for BFS algorithms, every 10 pops for queue search

STRICT_MIN_CLOSURE = "closure"
STRICT_MIN_EPSILON = "epsilon"

COMPLETE = "complete"
PARTIAL = "partial"


@dataclass
class AlgoConfig:
    """Exploration switches: reductions, strict-minimum handling and limits."""

    inclusion: bool = True
    merge: object = MERGE_AUTO          # "off" | "layer" | "auto" | int (every N pops)
    strict_min: str = STRICT_MIN_CLOSURE
    epsilon: Fraction = Fraction(1, 1024)
    max_states: int | None = None
    timeout: float | None = None        # seconds of wall time
    record_trace: bool = False

    def __post_init__(self):
        if isinstance(self.merge, int) and not isinstance(self.merge, bool):
            if self.merge < 1:
                raise ValueError("merge interval must be >= 1")
        elif self.merge not in (MERGE_OFF, MERGE_LAYER, MERGE_AUTO):
            raise ValueError(f"bad merge policy {self.merge!r}")
        self.epsilon = Fraction(self.epsilon)
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.strict_min not in (STRICT_MIN_CLOSURE, STRICT_MIN_EPSILON):
            raise ValueError(f"bad strict-min mode {self.strict_min!r}")


@dataclass
class ExplorationStats:
    popped: int = 0
    pushed: int = 0
    inclusion_hits: int = 0
    merge_events: int = 0
    wall_ms: float = 0.0
    peak_waiting: int = 0

    def as_dict(self):
        return {"popped": self.popped, "pushed": self.pushed,
                "inclusion_hits": self.inclusion_hits,
                "merge_events": self.merge_events,
                "wall_ms": round(self.wall_ms, 3),
                "peak_waiting": self.peak_waiting}


@dataclass(frozen=True)
class TraceRecord:
    index: int
    location: str
    zone_text: str
    parent: int
    edge: int

    def line(self) -> str:
        parent = str(self.parent) if self.parent >= 0 else "-"
        edge = str(self.edge) if self.edge >= 0 else "-"
        return f"{self.index} | {self.location} | {self.zone_text} | {parent} | {edge}"


class DisjunctiveConstraint:
    """Finite union of parameter-space polyhedra (the synthesis result K)."""

    def __init__(self, dim: int, disjuncts=()):
        self.dim = dim
        self.disjuncts: list[Polyhedron] = [d for d in disjuncts
                                            if d.is_satisfiable()]

    @property
    def is_false(self) -> bool:
        return not self.disjuncts

    def copy(self) -> DisjunctiveConstraint:
        out = DisjunctiveConstraint(self.dim)
        out.disjuncts = list(self.disjuncts)
        return out

    def or_with(self, poly: Polyhedron) -> int | None:
        """Add a disjunct, dropping disjuncts included in other disjuncts.

        Returns the index the new disjunct ends up at, or None when it was
        subsumed by an existing one.
        """
        if poly.is_empty():
            return None
        for d in self.disjuncts:
            if d.includes(poly):
                return None
        self.disjuncts = [d for d in self.disjuncts if not poly.includes(d)]
        self.disjuncts.append(poly)
        return len(self.disjuncts) - 1

    def covers(self, poly: Polyhedron) -> bool:
        """True when `poly` is contained in the union of the disjuncts."""
        return _union_covers(self.disjuncts, poly)

    def equivalent(self, other: DisjunctiveConstraint) -> bool:
        """Set equality of the two unions (mutual coverage)."""
        return (all(other.covers(d) for d in self.disjuncts)
                and all(self.covers(d) for d in other.disjuncts))

    def contains_point(self, point) -> bool:
        return any(d.contains_point(point) for d in self.disjuncts)


def _union_covers(disjuncts, poly: Polyhedron) -> bool:
    """poly <= union(disjuncts), by recursive complement splitting."""
    if poly.is_empty():
        return True
    if not disjuncts:
        return False
    head, tail = disjuncts[0], disjuncts[1:]
    for q in head.ineqs:
        for comp in q.complement():
            piece = poly.conjoin(comp)
            if not _union_covers(tail, piece):
                return False
        # points satisfying every previous complement branch were handled;
        # restrict to the part inside this inequality and continue
        poly = poly.conjoin(q)
    return True


class Witness:
    """Replay guidance for one disjunct of K.

    Carries the target node of the exploration tree plus the slice that was
    projected into K.  ``resolve`` turns a parameter valuation into one
    concrete edge path: exact merges stand for unions, so at every merged
    ancestor the constituent whose recomputed zone still admits the
    valuation is followed.
    """

    __slots__ = ("_node", "_zg", "_pin", "_use_closure")

    def __init__(self, node, zg, pin=None, use_closure=False):
        self._node = node
        self._zg = zg
        self._pin = pin
        self._use_closure = use_closure

    def paths(self, limit=32):
        """Up to `limit` candidate edge paths (cartesian merge alternatives)."""
        return self._node.witness_paths(limit)

    def resolve(self, valuation: dict) -> list | None:
        """One edge path realizing `valuation`, or None.

        `valuation` maps parameter indices of K's space to rationals.
        """
        pta = self._zg.pta
        shift = {pta.n_clocks + i: v for i, v in valuation.items()}

        def feasible(state, below):
            current = state
            for edge_index in below:
                current = self._zg.succ_edge(current, edge_index)
                if current is None:
                    return False
            zone = current.zone
            if self._use_closure:
                zone = zone.closure()
            if self._pin is not None:
                zone = zone.conjoin(self._pin)
            return zone.substitute(shift).is_satisfiable()

        def walk(node, below):
            if node.alts is not None:
                for alt in node.alts:
                    if feasible(alt.state, below):
                        return walk(alt, below)
                return None
            if node.parent is None:
                return below
            return walk(node.parent, [node.edge] + below)

        if not feasible(self._node.state, []):
            return None
        return walk(self._node, [])


class _Accumulator:
    """K under construction: disjuncts paired with replay witnesses.

    Mirrors DisjunctiveConstraint.or_with (drop subsumed disjuncts as they
    appear) while keeping each surviving disjunct's witness aligned.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.pairs: list = []  # (Polyhedron, Witness)

    def add(self, poly: Polyhedron, witness: Witness) -> bool:
        if poly.is_empty():
            return False
        for d, _ in self.pairs:
            if d.includes(poly):
                return False
        self.pairs = [(d, w) for d, w in self.pairs if not poly.includes(d)]
        self.pairs.append((poly, witness))
        return True

    def constraint(self) -> DisjunctiveConstraint:
        return DisjunctiveConstraint(self.dim, [d for d, _ in self.pairs])

    def witnesses(self) -> list:
        return [w for _, w in self.pairs]


@dataclass
class SynthResult:
    algorithm: str
    optimum: Minimum | None      # None for plain reachability synthesis
    constraint: DisjunctiveConstraint
    stats: ExplorationStats
    status: str
    witnesses: list = field(default_factory=list)   # edge-index path per disjunct
    trace: list = field(default_factory=list)       # TraceRecord, when recorded
    pop_keys: list = field(default_factory=list)    # Minimum per pop (queue search)
    exploration_edges: list = field(default_factory=list)  # (parent zone, child zone)

    @property
    def k(self) -> DisjunctiveConstraint:
        return self.constraint


# ---------------------------------------------------------------------------
# shared exploration machinery
# ---------------------------------------------------------------------------

class _Node:
    __slots__ = ("state", "parent", "edge", "index", "alts")

    def __init__(self, state, parent, edge, index, alts=None):
        self.state = state
        self.parent = parent
        self.edge = edge
        self.index = index
        self.alts = alts  # constituent nodes of an exact merge

    def paths(self):
        """Edge-index paths from the root to this state.

        A merged state stands for the union of its constituents, so each
        constituent ancestry yields one candidate path; every valuation in a
        descendant's projected zone is realizable along at least one of them.
        """
        if self.alts is not None:
            for alt in self.alts:
                yield from alt.paths()
        elif self.parent is None:
            yield []
        else:
            for prefix in self.parent.paths():
                yield prefix + [self.edge]

    def witness_paths(self, limit=32):
        out = []
        for path in self.paths():
            out.append(path)
            if len(out) >= limit:
                break
        return tuple(out)


class _Explorer:
    """Seen-set bookkeeping, reductions, limits, stats and trace recording."""

    def __init__(self, pta: Pta, targets, cfg: AlgoConfig, param_names):
        self.zg = ZoneGraph(pta)
        self.pta = pta
        self.targets = set(check_targets(pta, targets))
        self.cfg = cfg
        self.stats = ExplorationStats()
        self.trace: list[TraceRecord] = []
        self.exploration_edges = []
        self.started = time.perf_counter()
        self._seen_keys = set()
        self._seen_fast = set()
        self._merge_failed = set()
        self._seen_by_loc: dict[str, list[Polyhedron]] = {}
        self._counter = itertools.count()
        self._names = pta.var_names
        self._suppress = frozenset(pta.param_indices())
        self.param_names = param_names

    # -- state admission ---------------------------------------------------

    def admit(self, state: SymbolicState) -> bool:
        """Membership and inclusion filtering for a candidate state.

        Membership is semantic: zones are compared through their canonical
        form, with a cheap syntactic first tier for the common case of a
        zone re-derived along a commuting interleaving.
        """
        fast = (state.location, state.zone.ineqs)
        if fast in self._seen_fast:
            return False
        key = (state.location, state.zone.canonical_key())
        if key in self._seen_keys:
            self._seen_fast.add(fast)
            return False
        if self.cfg.inclusion:
            for zone in self._seen_by_loc.get(state.location, ()):
                if zone.includes(state.zone):
                    self.stats.inclusion_hits += 1
                    return False
        self._seen_fast.add(fast)
        self._seen_keys.add(key)
        self._seen_by_loc.setdefault(state.location, []).append(state.zone)
        return True

    def make_node(self, state, parent, edge) -> _Node:
        index = next(self._counter)
        node = _Node(state, parent, edge, index)
        self.stats.pushed += 1
        if self.cfg.record_trace:
            text = render_polyhedron(state.zone, self._names, self._suppress)
            self.trace.append(TraceRecord(
                index, state.location, text,
                parent.index if parent is not None else -1, edge))
        if parent is not None:
            self.exploration_edges.append((parent.state, state))
        return node

    def expand(self, node: _Node):
        out = []
        for edge_idx, succ in self.zg.successors(node.state):
            if self.admit(succ):
                out.append(self.make_node(succ, node, edge_idx))
        return out

    # -- limits --------------------------------------------------------------

    def exhausted(self) -> bool:
        cfg = self.cfg
        if cfg.max_states is not None and self.stats.pushed >= cfg.max_states:
            return True
        if cfg.timeout is not None and \
                time.perf_counter() - self.started > cfg.timeout:
            return True
        return False

    def finish(self):
        self.stats.wall_ms = (time.perf_counter() - self.started) * 1000.0

    # -- merging ---------------------------------------------------------------

    def merge_nodes(self, nodes: list, protect_targets=True) -> list:
        """Greedy pairwise exact merging within each location bucket.

        Target states are left alone so each accumulated disjunct keeps an
        exact replay witness; they are never expanded anyway.
        """
        buckets: dict[str, list] = {}
        order = []
        for node in nodes:
            loc = node.state.location
            if protect_targets and loc in self.targets:
                buckets.setdefault(("#target", node.index), []).append(node)
                order.append(("#target", node.index))
            else:
                if loc not in buckets:
                    order.append(loc)
                buckets.setdefault(loc, []).append(node)
        out = []
        failed = self._merge_failed  # pairs already known not to merge
        for key in order:
            bucket = buckets[key]
            changed = True
            while changed:
                changed = False
                for i in range(len(bucket)):
                    for j in range(i + 1, len(bucket)):
                        za, zb = bucket[i].state.zone, bucket[j].state.zone
                        pair = (id(za), id(zb))
                        if pair in failed:
                            continue
                        merged = try_convex_merge(za, zb)
                        if merged is None:
                            failed.add(pair)
                            continue
                        loc = bucket[i].state.location
                        state = SymbolicState(loc, merged)
                        node = _Node(state, None, -1, bucket[i].index,
                                     alts=(bucket[i], bucket[j]))
                        self._seen_keys.add((loc, merged.canonical_key()))
                        self._seen_fast.add((loc, merged.ineqs))
                        self._seen_by_loc.setdefault(loc, []).append(merged)
                        bucket[i] = node
                        del bucket[j]
                        self.stats.merge_events += 1
                        changed = True
                        break
                    if changed:
                        break
            out.extend(bucket)
        out.sort(key=lambda n: n.index)
        return out

    def project_params(self, zone: Polyhedron) -> Polyhedron:
        return self.zg.project_params(zone)


def _pin_ineq(var: int, value) -> Inequality:
    return Inequality(LinearTerm.variable(var) - LinearTerm.constant(value), EQ)


def _pin(zone: Polyhedron, var: int, value: Fraction) -> Polyhedron:
    return zone.conjoin(_pin_ineq(var, value))


def _merge_every(cfg: AlgoConfig, bfs: bool):
    """Resolve the merge policy to (every_n_pops, per_layer).

    `auto` merges every BFS layer and, for the queue search, every 10 pops.
    """
    merge = cfg.merge
    if merge == MERGE_AUTO:
        return (None, True) if bfs else (10, False)
    if merge == MERGE_LAYER:
        return (None, True)
    if merge == MERGE_OFF:
        return (None, False)
    return (int(merge), False)


# ---------------------------------------------------------------------------
# BFS algorithms (reachability synthesis and parameter minimization)
# ---------------------------------------------------------------------------

def ef_synth(pta: Pta, targets, cfg: AlgoConfig | None = None) -> SynthResult:
    """All parameter valuations for which some target location is reachable."""
    return _bfs_synth(pta, targets, cfg or AlgoConfig(), minimize=None)


def min_param_synth(pta: Pta, targets, minimize: str,
                    cfg: AlgoConfig | None = None) -> SynthResult:
    """Valuations reaching the targets with `minimize` at its least value."""
    if minimize not in pta.params:
        raise ModelError(Diagnostic(1, 1, f"unknown parameter {minimize!r}"))
    return _bfs_synth(pta, targets, cfg or AlgoConfig(), minimize=minimize)


def _bfs_synth(pta, targets, cfg, *, minimize) -> SynthResult:
    ex = _Explorer(pta, targets, cfg, pta.params)
    algorithm = "minparam" if minimize else "efsynth"
    opt_var = pta.var_index(minimize) if minimize else None
    every_n, per_layer = _merge_every(cfg, bfs=True)

    opt = Minimum.infinite()
    accum = _Accumulator(len(pta.params))
    status = COMPLETE

    root = ex.zg.initial()
    ex.admit(root)
    layer = [ex.make_node(root, None, -1)]
    pops = 0
    done = False
    while layer and not done:
        if per_layer:
            layer = ex.merge_nodes(layer)
        next_layer = []
        ex.stats.peak_waiting = max(ex.stats.peak_waiting, len(layer))
        for node in layer:
            if ex.exhausted():
                status = PARTIAL
                done = True
                break
            ex.stats.popped += 1
            pops += 1
            state = node.state
            if state.location in ex.targets:
                if minimize is None:
                    accum.add(ex.project_params(state.zone),
                              Witness(node, ex.zg))
                else:
                    local = state.zone.get_min(opt_var)
                    pin = _pin_ineq(opt_var, local.value) if local.attained \
                        else None
                    if local < opt:
                        opt = local
                        accum = _Accumulator(len(pta.params))
                        accum.add(ex.project_params(
                            _pinned_zone(state.zone, opt_var, local)),
                            Witness(node, ex.zg, pin))
                    elif local == opt:
                        accum.add(ex.project_params(
                            _pinned_zone(state.zone, opt_var, local)),
                            Witness(node, ex.zg, pin))
                continue  # target states are never expanded
            next_layer.extend(ex.expand(node))
            if every_n and pops % every_n == 0:
                next_layer = ex.merge_nodes(next_layer)
        layer = next_layer
    ex.finish()
    return SynthResult(algorithm, opt if minimize else None, accum.constraint(),
                       ex.stats, status, accum.witnesses(), ex.trace, [],
                       ex.exploration_edges)


def _pinned_zone(zone: Polyhedron, var: int, minimum: Minimum) -> Polyhedron:
    # An attained optimum pins the minimized variable before projecting, so
    # only the valuations actually achieving it are kept; an unattained
    # optimum keeps the whole zone (there is no witnessing hyperplane).
    if minimum.attained:
        return _pin(zone, var, minimum.value)
    return zone


# ---------------------------------------------------------------------------
# priority-queue algorithms (minimal time)
# ---------------------------------------------------------------------------

def min_time_synth(pta: Pta, targets, global_clock: str,
                   cfg: AlgoConfig | None = None) -> SynthResult:
    """All valuations reaching the targets at the least possible global time."""
    return _pq_synth(pta, targets, global_clock, cfg or AlgoConfig(),
                     reach_only=False)


def min_time_reach(pta: Pta, targets, global_clock: str,
                   cfg: AlgoConfig | None = None) -> SynthResult:
    """Minimal global time plus one witness family of valuations."""
    return _pq_synth(pta, targets, global_clock, cfg or AlgoConfig(),
                     reach_only=True)


def _pq_synth(pta, targets, global_clock, cfg, *, reach_only) -> SynthResult:
    if global_clock not in pta.clocks:
        raise ModelError(Diagnostic(1, 1, f"unknown clock {global_clock!r}"))
    if pta.is_reset(global_clock):
        raise ModelError(Diagnostic(
            1, 1, f"global clock {global_clock!r} is reset on some edge"))
    gvar = pta.var_index(global_clock)
    ex = _Explorer(pta, targets, cfg, pta.params)
    algorithm = "mintime-reach" if reach_only else "mintime"
    every_n, _ = _merge_every(cfg, bfs=False)

    t_opt = Minimum.infinite()
    accum = _Accumulator(len(pta.params))
    pop_keys: list = []
    status = COMPLETE

    heap: list = []
    root = ex.zg.initial()
    ex.admit(root)
    root_node = ex.make_node(root, None, -1)
    heapq.heappush(heap, (root.zone.get_min(gvar), root_node.index, root_node))

    while heap:
        if ex.exhausted():
            status = PARTIAL
            break
        key, _, node = heapq.heappop(heap)
        ex.stats.popped += 1
        pop_keys.append(key)
        state = node.state
        if key > t_opt:
            break
        if state.location in ex.targets:
            if key < t_opt:
                t_opt = key  # only possible when the initial state is a target
            accum.add(ex.project_params(
                _strict_min_slice(state.zone, gvar, key, cfg)),
                _slice_witness(node, ex.zg, gvar, key, cfg))
            if reach_only:
                break
            continue
        for succ_node in ex.expand(node):
            t_succ = succ_node.state.zone.get_min(gvar)
            if t_succ > t_opt:
                continue
            if succ_node.state.location in ex.targets and t_succ < t_opt:
                t_opt = t_succ
            heapq.heappush(heap, (t_succ, succ_node.index, succ_node))
        ex.stats.peak_waiting = max(ex.stats.peak_waiting, len(heap))
        if every_n and ex.stats.popped % every_n == 0 and heap:
            nodes = [entry[2] for entry in sorted(heap, key=lambda e: e[1])]
            merged = ex.merge_nodes(nodes)
            if len(merged) < len(nodes):
                heap = [(n.state.zone.get_min(gvar), n.index, n) for n in merged]
                heapq.heapify(heap)
    ex.finish()
    constraint = accum.constraint()
    if constraint.is_false:
        t_opt = Minimum.infinite()
    return SynthResult(algorithm, t_opt, constraint, ex.stats, status,
                       accum.witnesses(), ex.trace, pop_keys,
                       ex.exploration_edges)


def _strict_min_slice(zone: Polyhedron, gvar: int, key: Minimum,
                      cfg: AlgoConfig) -> Polyhedron:
    """The zone slice whose projection joins K when a target pops at `key`."""
    if key.attained:
        return _pin(zone, gvar, key.value)
    if cfg.strict_min == STRICT_MIN_CLOSURE:
        # valuations reaching the target arbitrarily close to the infimum
        return _pin(zone.closure(), gvar, key.value)
    return _pin(zone, gvar, key.value + cfg.epsilon)


def _slice_witness(node, zg, gvar: int, key: Minimum, cfg: AlgoConfig) -> Witness:
    if key.attained:
        return Witness(node, zg, _pin_ineq(gvar, key.value))
    if cfg.strict_min == STRICT_MIN_CLOSURE:
        return Witness(node, zg, _pin_ineq(gvar, key.value), use_closure=True)
    return Witness(node, zg, _pin_ineq(gvar, key.value + cfg.epsilon))


def lu_min_time_fast_path(pta: Pta, targets, global_clock: str | None = None,
                          cfg: AlgoConfig | None = None) -> Minimum:
    """Minimal time over all valuations of an L/U model via 0/inf substitution.

    Replacing lower-bound parameters by 0 and deleting upper-bound atoms
    yields a parameter-free model whose minimal reach time equals the
    parametric one, so a single non-parametric search answers the question.
    """
    substituted = zero_infinity_substitution(pta)
    if global_clock is None or global_clock not in substituted.clocks \
            or substituted.is_reset(global_clock):
        substituted, global_clock = instrument_global_clock(substituted,
                                                            reuse=global_clock)
    result = min_time_reach(substituted, targets, global_clock, cfg)
    return result.optimum


# ---------------------------------------------------------------------------
# stand-alone reduction entry points
# ---------------------------------------------------------------------------

def apply_inclusion_filter(candidates, seen):
    """Drop candidates whose zone is included in a same-location seen zone."""
    out = []
    for state in candidates:
        if any(old.zone.includes(state.zone) for old in seen
               if old.location == state.location):
            continue
        out.append(state)
    return out


def merge_pass(states):
    """Greedy exact merging of same-location states, to a fixed point."""
    buckets: dict[str, list] = {}
    order = []
    for s in states:
        if s.location not in buckets:
            order.append(s.location)
        buckets.setdefault(s.location, []).append(s)
    merges = 0
    out = []
    for loc in order:
        bucket = buckets[loc]
        changed = True
        while changed:
            changed = False
            for i in range(len(bucket)):
                for j in range(i + 1, len(bucket)):
                    merged = try_convex_merge(bucket[i].zone, bucket[j].zone)
                    if merged is not None:
                        bucket[i] = SymbolicState(loc, merged)
                        del bucket[j]
                        merges += 1
                        changed = True
                        break
                if changed:
                    break
        out.extend(bucket)
    return out, merges


# ---------------------------------------------------------------------------
# result rendering
# ---------------------------------------------------------------------------

def render_constraint(constraint: DisjunctiveConstraint, names) -> str:
    """Disjuncts as '&&'-joined conjunctions, 'or'-joined, sorted, deduplicated."""
    if constraint.is_false:
        return "false"
    texts = sorted(render_polyhedron(d, names, frozenset(range(constraint.dim)))
                   for d in constraint.disjuncts)
    if len(texts) == 1:
        return texts[0]
    return " or ".join(f"({t})" for t in texts)


def constraint_atoms(constraint: DisjunctiveConstraint, names):
    """Machine-readable form: one list of inequality strings per disjunct."""
    out = []
    for d in constraint.disjuncts:
        atoms = render_atoms(d, names, frozenset(range(constraint.dim)))
        out.append(atoms if atoms is not None else ["false"])
    return sorted(out)


def optimum_document(opt: Minimum | None):
    if opt is None:
        return None
    if opt.is_infinite:
        return "infinity"
    return {"value": _render_rat(opt.value),
            "strictness": "=" if opt.attained else ">"}


def result_document(result: SynthResult, param_names) -> dict:
    return {
        "algorithm": result.algorithm,
        "optimum": optimum_document(result.optimum),
        "constraint": constraint_atoms(result.constraint, param_names),
        "stats": result.stats.as_dict(),
        "status": result.status,
    }


def render_result_text(result: SynthResult, param_names) -> str:
    lines = [f"algorithm: {result.algorithm}", f"status: {result.status}"]
    if result.optimum is not None:
        label = "Opt" if result.algorithm == "minparam" else "T_opt"
        lines.append(f"{label} = {result.optimum.render()}")
    lines.append(f"K = {render_constraint(result.constraint, param_names)}")
    return "\n".join(lines)
