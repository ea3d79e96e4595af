#!/usr/bin/env python3
"""Generate the bundled train-scheduling models.

Two circular trains share stations B and D.  Train 1 serves A, B, C, D with
travel time 100 per leg and a parametric dwell time D1; train 2 shuttles
between D and B with travel time 55 and dwell D2.  Alice travels A -> D,
Bob B -> A; both may board any train that is at their station and must get
off whenever their train reaches a station (staying aboard is re-boarding at
departure, which costs nothing).  The product automaton over
(train1 position, train2 position, Alice, Bob) is flattened here, with a
single absorbing `goal` location for Alice-at-D and Bob-at-A and a global
clock `xg` bounded by a horizon so the cyclic system has a finite symbolic
state space.

Run from the repository root:

    python3 scripts/generate_train_model.py
"""

from __future__ import annotations

import sys
from collections import deque
from pathlib import Path

# train 1 cycle: position -> (next position, kind of move)
T1_NEXT = {
    "A": "AB", "AB": "B", "B": "BC", "BC": "C",
    "C": "CD", "CD": "D", "D": "DA", "DA": "A",
}
T1_STATIONS = {"A", "B", "C", "D"}

# train 2 cycle over stations D and B (lowercase to keep the names distinct)
T2_NEXT = {"d": "db", "db": "b", "b": "bd", "bd": "d"}
T2_STATIONS = {"d": "D", "b": "B"}  # position -> station it serves

ALICE_GOAL = "D"
BOB_GOAL = "A"


def passenger_moves(pos, train, station, kind, goal):
    """Possible passenger positions after one train move.

    `kind` is 'depart' (station -> track: boarding choice) or 'arrive'
    (track -> station: forced alighting).  A passenger already at its goal
    never boards again.
    """
    tag = "T1" if train == 1 else "T2"
    if kind == "depart":
        if pos == station and pos != goal:
            return [pos, tag]  # stay or board
        return [pos]
    # arrival
    if pos == tag:
        return [station]
    return [pos]


def loc_name(t1, t2, alice, bob):
    if alice == ALICE_GOAL and bob == BOB_GOAL:
        return "goal"
    return f"L_{t1}_{t2}_{alice}_{bob}"


def valid(t1, t2, alice, bob):
    if alice == "T1" and t1 in T1_STATIONS:
        return False
    if alice == "T2" and t2 in T2_STATIONS:
        return False
    if bob == "T1" and t1 in T1_STATIONS:
        return False
    if bob == "T2" and t2 in T2_STATIONS:
        return False
    return True


def build(travel1, travel2, horizon):
    initial = ("CD", "db", "A", "B")  # train 1 between C and D, train 2 heading to B
    seen = {initial}
    queue = deque([initial])
    locations = {}
    raw_edges = []
    while queue:
        state = queue.popleft()
        t1, t2, alice, bob = state
        name = loc_name(*state)
        if name == "goal":
            locations[name] = None
            continue
        inv = [f"xg <= {horizon}"]
        inv.append(f"x1 <= D1" if t1 in T1_STATIONS else f"x1 <= {travel1}")
        inv.append(f"x2 <= D2" if t2 in T2_STATIONS else f"x2 <= {travel2}")
        locations[name] = " && ".join(inv)

        # train 1 move
        nxt1 = T1_NEXT[t1]
        if t1 in T1_STATIONS:
            kind, station, guard, w = "depart", t1, "x1 = D1", 0
        else:
            kind, station, guard, w = "arrive", nxt1, f"x1 = {travel1}", travel1
        for al2 in passenger_moves(alice, 1, station, kind, ALICE_GOAL):
            for bob2 in passenger_moves(bob, 1, station, kind, BOB_GOAL):
                dest = (nxt1, t2, al2, bob2)
                if not valid(*dest):
                    continue
                raw_edges.append((name, loc_name(*dest), guard, "t1", "x1", w))
                if dest not in seen and loc_name(*dest) != "goal":
                    seen.add(dest)
                    queue.append(dest)
                elif loc_name(*dest) == "goal":
                    locations.setdefault("goal", None)

        # train 2 move
        nxt2 = T2_NEXT[t2]
        if t2 in T2_STATIONS:
            kind, station, guard, w = "depart", T2_STATIONS[t2], "x2 = D2", 0
        else:
            kind, station, guard, w = "arrive", T2_STATIONS[nxt2], f"x2 = {travel2}", travel2
        for al2 in passenger_moves(alice, 2, station, kind, ALICE_GOAL):
            for bob2 in passenger_moves(bob, 2, station, kind, BOB_GOAL):
                dest = (t1, nxt2, al2, bob2)
                if not valid(*dest):
                    continue
                raw_edges.append((name, loc_name(*dest), guard, "t2", "x2", w))
                if dest not in seen and loc_name(*dest) != "goal":
                    seen.add(dest)
                    queue.append(dest)
                elif loc_name(*dest) == "goal":
                    locations.setdefault("goal", None)
    locations, edges = _prune(locations, raw_edges, loc_name(*initial), horizon)
    return locations, edges, loc_name(*initial)


def _dijkstra(sources, adjacency):
    import heapq
    dist = {s: 0 for s in sources}
    heap = [(0, s) for s in sources]
    while heap:
        d, node = heapq.heappop(heap)
        if d > dist.get(node, 1 << 60):
            continue
        for nxt, w in adjacency.get(node, ()):
            nd = d + w
            if nd < dist.get(nxt, 1 << 60):
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return dist


def _prune(locations, raw_edges, initial, horizon):
    """Keep only states that can lie on a goal run within the horizon.

    The trains run concurrently, so path timing is a makespan, not a sum:
    global time on any run is at least travel_i times the number of train-i
    track legs traversed.  Counting each train's legs separately (forward
    from the initial state, backward from the goal) gives a sound lower
    bound; edges that cannot sit on a goal run within the horizon are cut,
    and states stranded by that are dropped with them.
    """
    adj = {1: ({}, {}), 2: ({}, {})}  # train -> (forward, backward) leg graphs
    for src, dst, _, act, _, w in raw_edges:
        train = 1 if act == "t1" else 2
        for t, (fwd, bwd) in adj.items():
            legs = 1 if (t == train and w) else 0
            fwd.setdefault(src, []).append((dst, legs))
            bwd.setdefault(dst, []).append((src, legs))
    big = 1 << 60
    fw1 = _dijkstra([initial], adj[1][0])
    bw1 = _dijkstra(["goal"], adj[1][1])
    fw2 = _dijkstra([initial], adj[2][0])
    bw2 = _dijkstra(["goal"], adj[2][1])
    travel = {}
    for src, dst, _, act, _, w in raw_edges:
        if w:
            travel[1 if act == "t1" else 2] = w
    t1 = travel.get(1, 0)
    t2 = travel.get(2, 0)
    edges = []
    live = set()
    for src, dst, guard, act, reset, w in raw_edges:
        legs1 = 1 if (act == "t1" and w) else 0
        legs2 = 1 if (act == "t2" and w) else 0
        need1 = fw1.get(src, big) + legs1 + bw1.get(dst, big)
        need2 = fw2.get(src, big) + legs2 + bw2.get(dst, big)
        if max(t1 * need1, t2 * need2) <= horizon:
            edges.append((src, dst, guard, act, reset))
            live.add(src)
            live.add(dst)
    live.add(initial)
    kept = {name: inv for name, inv in locations.items() if name in live}
    return kept, edges


def emit(travel1, travel2, horizon, out_path):
    locations, edges, initial = build(travel1, travel2, horizon)
    lines = [
        "# Two circular trains sharing stations B and D; Alice rides A -> D,",
        "# Bob rides B -> A.  Product of train positions and passenger",
        f"# positions; global clock xg bounded by {horizon} keeps the cyclic",
        "# system finite for breadth-first synthesis.",
        "clocks x1, x2, xg;",
        "params D1, D2;",
        "actions t1, t2;",
        "",
    ]
    names = sorted(locations)
    names.remove(initial)
    names.insert(0, initial)
    for name in names:
        inv = locations[name]
        head = "init loc" if name == initial else "loc"
        if inv is None:
            lines.append(f"{head} {name};")
        else:
            lines.append(f"{head} {name} inv {inv};")
    lines.append("")
    for src, dst, guard, act, reset in sorted(edges):
        lines.append(f"edge {src} -> {dst} when {guard} act {act} "
                     f"reset {{ {reset} }};")
    out_path.write_text("\n".join(lines) + "\n")
    print(f"{out_path}: {len(locations)} locations, {len(edges)} edges")


def main():
    models = Path(__file__).resolve().parent.parent / "src" / "ptsynth" / "models"
    emit(100, 55, 550, models / "train_scheduling.ptm")
    emit(20, 11, 110, models / "train_scheduling_scaled.ptm")
    for name in ("train_scheduling", "train_scheduling_scaled"):
        (models / f"{name}.prop").write_text("targets { goal }\n")


if __name__ == "__main__":
    sys.exit(main())
