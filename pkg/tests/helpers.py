"""Shared constructors for polyhedra and random models in tests."""

from __future__ import annotations

from ptsynth.model import Atom, Edge, Location, Pta
from ptsynth.polyhedra import LinearTerm, Polyhedron, bound, universe


def var(v):
    return LinearTerm.variable(v)


def const(c):
    return LinearTerm.constant(c)


def atom(v, op, c):
    """Single-variable constraint `v op c`."""
    return bound(var(v), op, const(c))


def poly(dim, *ineqs) -> Polyhedron:
    p = universe(dim)
    for q in ineqs:
        p = p.conjoin(q)
    return p


def nonneg(dim) -> Polyhedron:
    return poly(dim, *(atom(v, ">=", 0) for v in range(dim)))


def random_acyclic_ta(rng, max_locs=3, max_clocks=2, max_const=5) -> tuple[Pta, str]:
    """Parameter-free, non-strict, acyclic model plus its target location.

    Acyclicity keeps both the symbolic search and the concrete oracle
    conclusive, so their minima can be compared exactly.
    """
    n_locs = rng.randint(2, max_locs)
    n_clocks = rng.randint(1, max_clocks)
    clocks = tuple(f"c{i}" for i in range(n_clocks))
    names = [f"n{i}" for i in range(n_locs)]
    locations = []
    for name in names:
        inv = ()
        if rng.random() < 0.4:
            inv = (Atom(rng.choice(clocks), "<=", rng.randint(1, max_const)),)
        locations.append(Location(name, inv))
    edges = []
    for i in range(n_locs):
        for j in range(i + 1, n_locs):
            for _ in range(rng.randint(0, 2)):
                guard = tuple(
                    Atom(rng.choice(clocks), rng.choice(("<=", "=", ">=")),
                         rng.randint(0, max_const))
                    for _ in range(rng.randint(0, 2)))
                resets = tuple(sorted({c for c in clocks
                                       if rng.random() < 0.3}))
                edges.append(Edge(names[i], names[j], guard, None, resets))
    pta = Pta(clocks, (), (), tuple(locations), names[0], tuple(edges))
    return pta, names[-1]
