"""Exact rational convex polyhedra and extended minima.

A polyhedron is kept in constraint (H-) representation only: a finite
conjunction of inequalities ``term < 0``, ``term <= 0`` or ``term = 0``
where ``term`` is a rational linear expression over variable indices
``0..dim-1``.  Constraint rows are integer-normalized on construction
(multiplied through by the lcm of denominators, divided by the gcd), so all
elimination arithmetic runs on plain ints; rational values only appear at
the API boundary (minima, sample points, substitutions).  Projection,
satisfiability and entailment use Fourier-Motzkin elimination with equality
substitution.  Open/closed facets are tracked exactly: combining a strict
with a non-strict bound yields a strict bound.

Variable roles (clock vs. parameter) are not known here; callers fix an
indexing convention and pass index sets.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

Rat = Fraction

# Relations, always read as `term REL 0`.
LT = "<"
LE = "<="
EQ = "="

_FLIP = {"<": ">", "<=": ">=", "=": "=", ">": "<", ">=": "<="}


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LinearTerm:
    """Rational linear expression ``sum(coeff_v * v) + const`` over variable indices.

    Values are exact: ints or Fractions.  Term arithmetic keeps value
    semantics (no rescaling); inequalities built from terms integerize.
    """

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs=None, const=0):
        cleaned = {}
        if coeffs:
            for v, c in coeffs.items():
                if c:
                    cleaned[v] = c
        self.coeffs = cleaned
        self.const = const

    @classmethod
    def variable(cls, v: int, coeff=1) -> LinearTerm:
        return cls({v: coeff})

    @classmethod
    def constant(cls, c) -> LinearTerm:
        return cls({}, c)

    def __add__(self, other: LinearTerm) -> LinearTerm:
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            n = coeffs.get(v, 0) + c
            if n:
                coeffs[v] = n
            elif v in coeffs:
                del coeffs[v]
        return LinearTerm(coeffs, self.const + other.const)

    def __sub__(self, other: LinearTerm) -> LinearTerm:
        return self + other.scaled(-1)

    def __neg__(self) -> LinearTerm:
        return self.scaled(-1)

    def scaled(self, k) -> LinearTerm:
        if not k:
            return LinearTerm()
        return LinearTerm({v: c * k for v, c in self.coeffs.items()}, self.const * k)

    def evaluate(self, point) -> Fraction:
        total = _rat(self.const)
        for v, c in self.coeffs.items():
            total += c * point[v]
        return total

    def __repr__(self):
        return f"LinearTerm({self.coeffs!r}, {self.const!r})"


def _integerize(coeffs: dict, const) -> tuple[dict, int]:
    """Clear denominators, returning int coefficient dict and int constant."""
    mult = 1
    for c in coeffs.values():
        if isinstance(c, Fraction):
            d = c.denominator
            mult = mult * d // gcd(mult, d)
    if isinstance(const, Fraction):
        d = const.denominator
        mult = mult * d // gcd(mult, d)
    out = {}
    for v, c in coeffs.items():
        n = c * mult
        out[v] = int(n)
    return out, int(const * mult)


def _reduce_row(coeffs: dict, const: int) -> tuple[dict, int]:
    """Divide an integer row by the gcd of all its entries."""
    g = abs(const)
    for c in coeffs.values():
        g = gcd(g, c)
        if g == 1:
            return coeffs, const
    if g <= 1:
        return coeffs, const
    return {v: c // g for v, c in coeffs.items()}, const // g


class Inequality:
    """A single constraint ``term rel 0`` with rel in {<, <=, =}.

    Rows are stored integer-normalized: int coefficients with gcd 1, and a
    canonical sign (positive leading coefficient) for equalities.
    """

    __slots__ = ("coeffs", "const", "rel", "_key", "_dir")

    def __init__(self, term, rel: str, _raw=None):
        if rel not in (LT, LE, EQ):
            raise ValueError(f"bad relation {rel!r}")
        if _raw is not None:
            coeffs, const = _raw
        else:
            coeffs, const = _integerize(term.coeffs, term.const)
            coeffs, const = _reduce_row(coeffs, const)
        if rel == EQ and coeffs:
            if coeffs[min(coeffs)] < 0:
                coeffs = {v: -c for v, c in coeffs.items()}
                const = -const
        self.coeffs = coeffs
        self.const = const
        self.rel = rel
        self._key = None
        self._dir = None

    @classmethod
    def _from_row(cls, coeffs: dict, const: int, rel: str) -> Inequality:
        coeffs = {v: c for v, c in coeffs.items() if c}
        coeffs, const = _reduce_row(coeffs, const)
        return cls(None, rel, _raw=(coeffs, const))

    @property
    def term(self) -> LinearTerm:
        return LinearTerm(dict(self.coeffs), self.const)

    def normalized(self) -> Inequality:
        return self

    def key(self):
        if self._key is None:
            self._key = (tuple(sorted(self.coeffs.items())), self.const, self.rel)
        return self._key

    def direction(self):
        """(normalized variable part, positive denominator, sign).

        The row reads ``sign * den * (vec part) + const REL 0``; rows with
        the same vec are parallel, bounding the vec part by ``-const*sign/den``
        from above (sign > 0) or below (sign < 0).
        """
        if self._dir is None:
            items = self.key()[0]
            g = 0
            for _, c in items:
                g = gcd(g, c)
            sign = 1 if items[0][1] > 0 else -1
            if g * sign != 1:
                vec = tuple((v, c // (g * sign)) for v, c in items)
            else:
                vec = items
            self._dir = (vec, g, sign)
        return self._dir

    def __eq__(self, other):
        return isinstance(other, Inequality) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def negated_row(self) -> tuple[dict, int]:
        return {v: -c for v, c in self.coeffs.items()}, -self.const

    def complement(self) -> tuple[Inequality, ...]:
        """Atoms whose disjunction is the negation of this inequality."""
        ncoeffs, nconst = self.negated_row()
        if self.rel == LT:
            return (Inequality._from_row(ncoeffs, nconst, LE),)
        if self.rel == LE:
            return (Inequality._from_row(ncoeffs, nconst, LT),)
        return (Inequality._from_row(dict(self.coeffs), self.const, LT),
                Inequality._from_row(ncoeffs, nconst, LT))

    def relaxed(self) -> Inequality:
        if self.rel != LT:
            return self
        return Inequality._from_row(dict(self.coeffs), self.const, LE)

    def satisfied_by(self, point) -> bool:
        val = _rat(self.const)
        for v, c in self.coeffs.items():
            val += c * point[v]
        if self.rel == LT:
            return val < 0
        if self.rel == LE:
            return val <= 0
        return val == 0

    def __repr__(self):
        return f"Inequality({self.coeffs!r} + {self.const!r} {self.rel} 0)"


def bound(lhs: LinearTerm, op: str, rhs: LinearTerm) -> Inequality:
    """Build `lhs op rhs` for op in {<, <=, =, >=, >}."""
    if op in (LT, LE, EQ):
        return Inequality(lhs - rhs, op)
    if op == ">=":
        return Inequality(rhs - lhs, LE)
    if op == ">":
        return Inequality(rhs - lhs, LT)
    raise ValueError(f"bad operator {op!r}")


_FALSE = Inequality(LinearTerm.constant(1), LE)  # 1 <= 0


# ---------------------------------------------------------------------------
# light normalization: per-vector bound merging
# ---------------------------------------------------------------------------

def _light_normalize(ineqs, sort=True):
    """Merge parallel constraints into tightest bounds; None when contradictory.

    Works per direction vector: keeps the max lower bound, min upper bound,
    turns `t <= b` + `t >= b` into `t = b`, and spots constant falsities.
    Bounds are compared by integer cross-multiplication; unchanged rows are
    reused as-is.
    """
    groups: dict = {}
    for q in ineqs:
        if not q.coeffs:
            c = q.const
            ok = c < 0 if q.rel == LT else c <= 0 if q.rel == LE else c == 0
            if not ok:
                return None
            continue
        vec, den, sign = q.direction()
        num = -q.const * sign  # bound value num/den on the vec part
        entry = groups.get(vec)
        if entry is None:
            entry = groups[vec] = [None, None, None]  # lower, upper, equality
        if q.rel == EQ:
            eq = entry[2]
            if eq is not None:
                if eq[0] * den != num * eq[1]:
                    return None
            else:
                entry[2] = (num, den, q)
        elif sign > 0:  # vec-part <= / < num/den
            cur = entry[1]
            if cur is None:
                entry[1] = (num, den, q.rel == LT, q)
            else:
                diff = num * cur[1] - cur[0] * den
                if diff < 0 or (diff == 0 and q.rel == LT and not cur[2]):
                    entry[1] = (num, den, q.rel == LT, q)
        else:  # vec-part >= / > num/den
            cur = entry[0]
            if cur is None:
                entry[0] = (num, den, q.rel == LT, q)
            else:
                diff = num * cur[1] - cur[0] * den
                if diff > 0 or (diff == 0 and q.rel == LT and not cur[2]):
                    entry[0] = (num, den, q.rel == LT, q)
    out = []
    for vec, (lo, hi, eq) in groups.items():
        if eq is not None:
            e_num, e_den, e_obj = eq
            if lo is not None:
                diff = e_num * lo[1] - lo[0] * e_den
                if diff < 0 or (diff == 0 and lo[2]):
                    return None
            if hi is not None:
                diff = e_num * hi[1] - hi[0] * e_den
                if diff > 0 or (diff == 0 and hi[2]):
                    return None
            out.append(e_obj)
            continue
        if lo is not None and hi is not None:
            diff = lo[0] * hi[1] - hi[0] * lo[1]
            if diff > 0 or (diff == 0 and (lo[2] or hi[2])):
                return None
            if diff == 0:
                out.append(Inequality._from_row(
                    {v: c * hi[1] for v, c in vec}, -hi[0], EQ))
                continue
        if lo is not None:
            out.append(lo[3])
        if hi is not None:
            out.append(hi[3])
    if sort:
        out.sort(key=Inequality.key)
    return tuple(out)


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination
# ---------------------------------------------------------------------------

def _eliminate_one(ineqs, var):
    """Eliminate `var` exactly; None when a contradiction surfaces."""
    pivot = None
    for q in ineqs:
        if q.rel == EQ and var in q.coeffs:
            pivot = q
            break
    out = []
    if pivot is not None:
        a = pivot.coeffs[var]
        s = 1 if a > 0 else -1
        sa = s * a  # |a|
        pc, pk = pivot.coeffs, pivot.const
        for q in ineqs:
            if q is pivot:
                continue
            b = q.coeffs.get(var)
            if b is None:
                out.append(q)
                continue
            sb = s * b
            coeffs = {}
            for v, c in q.coeffs.items():
                if v != var:
                    coeffs[v] = c * sa
            for v, c in pc.items():
                if v != var:
                    n = coeffs.get(v, 0) - sb * c
                    if n:
                        coeffs[v] = n
                    elif v in coeffs:
                        del coeffs[v]
            out.append(Inequality._from_row(
                coeffs, q.const * sa - sb * pk, q.rel))
    else:
        pos, neg = [], []
        for q in ineqs:
            a = q.coeffs.get(var)
            if a is None:
                out.append(q)
            elif a > 0:
                pos.append(q)
            else:
                neg.append(q)
        for p, n in itertools.product(pos, neg):
            ap = p.coeffs[var]
            an = n.coeffs[var]
            coeffs = {}
            for v, c in p.coeffs.items():
                if v != var:
                    coeffs[v] = c * -an
            for v, c in n.coeffs.items():
                if v != var:
                    k = coeffs.get(v, 0) + c * ap
                    if k:
                        coeffs[v] = k
                    elif v in coeffs:
                        del coeffs[v]
            rel = LT if LT in (p.rel, n.rel) else LE
            out.append(Inequality._from_row(
                coeffs, p.const * -an + n.const * ap, rel))
    cleaned = _light_normalize(out, sort=False)
    return None if cleaned is None else list(cleaned)


def _pick_var(ineqs, candidates):
    """Next variable to eliminate: equality pivots first, then min fan-out."""
    eq_vars = []
    counts: dict[int, list[int]] = {}
    for q in ineqs:
        is_eq = q.rel == EQ
        for v, c in q.coeffs.items():
            if v not in candidates:
                continue
            if is_eq:
                eq_vars.append(v)
            entry = counts.get(v)
            if entry is None:
                entry = counts[v] = [0, 0]
            entry[0 if c > 0 else 1] += 1
    if not counts:
        return None
    if eq_vars:
        return min(eq_vars)
    return min(counts, key=lambda v: (counts[v][0] * counts[v][1], v))


def _eliminate_all(ineqs, victims):
    """Eliminate every variable in `victims`; None when infeasible surfaces."""
    work = _light_normalize(ineqs, sort=False)
    if work is None:
        return None
    work = list(work)
    victims = set(victims)
    while True:
        var = _pick_var(work, victims)
        if var is None:
            return work
        work = _eliminate_one(work, var)
        if work is None:
            return None
        victims.discard(var)


# ---------------------------------------------------------------------------
# Polyhedron
# ---------------------------------------------------------------------------

class Polyhedron:
    """Immutable convex polyhedron over variables ``0..dim-1``.

    Instances are values: every operation returns a new polyhedron, so they
    are safe to share across threads.  Emptiness is computed lazily and
    cached; ``canonical_key()`` yields a semantic normal form used for
    state-set membership during exploration.
    """

    __slots__ = ("dim", "ineqs", "_sat", "_ckey")

    def __init__(self, dim: int, ineqs=(), *, _sat=None):
        self.dim = dim
        normalized = _light_normalize(ineqs)
        if normalized is None:
            self.ineqs: tuple[Inequality, ...] = (_FALSE,)
            self._sat = False
        else:
            self.ineqs = normalized
            self._sat = _sat
        self._ckey = None

    @classmethod
    def _empty(cls, dim: int) -> Polyhedron:
        p = cls.__new__(cls)
        p.dim = dim
        p.ineqs = (_FALSE,)
        p._sat = False
        p._ckey = None
        return p

    @classmethod
    def _make(cls, dim: int, ineqs, sat=None) -> Polyhedron:
        p = cls.__new__(cls)
        p.dim = dim
        p.ineqs = tuple(sorted(ineqs, key=Inequality.key))
        p._sat = sat
        p._ckey = None
        return p

    # -- basic predicates ---------------------------------------------------

    def is_satisfiable(self) -> bool:
        if self._sat is None:
            self._sat = _eliminate_all(self.ineqs, range(self.dim)) is not None
        return self._sat

    def is_empty(self) -> bool:
        return not self.is_satisfiable()

    def contains_point(self, point) -> bool:
        return all(q.satisfied_by(point) for q in self.ineqs)

    # -- constructors per operation -----------------------------------------

    def conjoin(self, other) -> Polyhedron:
        """Intersection with another polyhedron or a single inequality."""
        if isinstance(other, Inequality):
            extra = (other,)
        else:
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            if self._sat is False or other._sat is False:
                return Polyhedron._empty(self.dim)
            extra = other.ineqs
        if self._sat is False:
            return Polyhedron._empty(self.dim)
        return Polyhedron(self.dim, self.ineqs + tuple(extra))

    def time_elapse(self, clocks) -> Polyhedron:
        """Future closure: shift all `clocks` uniformly by some delay >= 0."""
        if self.is_empty():
            return self
        d = self.dim  # scratch variable for the delay
        clocks = set(clocks)
        shifted = []
        for q in self.ineqs:
            delta = sum(c for v, c in q.coeffs.items() if v in clocks)
            if delta:
                coeffs = dict(q.coeffs)
                coeffs[d] = -delta
                shifted.append(Inequality._from_row(coeffs, q.const, q.rel))
            else:
                shifted.append(q)
        shifted.append(Inequality._from_row({d: -1}, 0, LE))  # d >= 0
        out = _eliminate_all(shifted, [d])
        if out is None:
            return Polyhedron._empty(self.dim)
        return Polyhedron(self.dim, out, _sat=True)

    def reset(self, clocks) -> Polyhedron:
        """Existentially drop each clock in `clocks`, then pin it to 0."""
        clocks = sorted(set(clocks))
        if not clocks:
            return self
        if self.is_empty():
            return self
        out = _eliminate_all(self.ineqs, clocks)
        if out is None:
            return Polyhedron._empty(self.dim)
        for v in clocks:
            out.append(Inequality._from_row({v: 1}, 0, EQ))
        return Polyhedron(self.dim, out, _sat=True)

    def project(self, keep) -> Polyhedron:
        """Exact shadow onto `keep` (other variables become unconstrained)."""
        keep = set(keep)
        victims = [v for v in range(self.dim) if v not in keep]
        if self.is_empty():
            return self
        out = _eliminate_all(self.ineqs, victims)
        if out is None:
            return Polyhedron._empty(self.dim)
        return Polyhedron(self.dim, out, _sat=True)

    def closure(self) -> Polyhedron:
        """Relax strict facets; the topological closure for satisfiable inputs."""
        if self.is_empty():
            return self
        return Polyhedron(self.dim, tuple(q.relaxed() for q in self.ineqs),
                          _sat=True)

    def substitute(self, values: dict) -> Polyhedron:
        """Pin variables to rational values (they drop out of all constraints)."""
        if self.is_empty():
            return self
        out = []
        for q in self.ineqs:
            if not any(v in values for v in q.coeffs):
                out.append(q)
                continue
            coeffs = {}
            shift = Fraction(0)
            for v, c in q.coeffs.items():
                if v in values:
                    shift += c * _rat(values[v])
                else:
                    coeffs[v] = c
            out.append(Inequality(LinearTerm(coeffs, q.const + shift), q.rel))
        return Polyhedron(self.dim, out)

    def rename(self, mapping: dict, new_dim: int) -> Polyhedron:
        """Reindex variables; constraints on unmapped variables must be gone."""
        if self._sat is False:
            return Polyhedron._empty(new_dim)
        out = []
        for q in self.ineqs:
            coeffs = {}
            for v, c in q.coeffs.items():
                if v not in mapping:
                    raise ValueError(f"variable {v} still constrained")
                coeffs[mapping[v]] = c
            out.append(Inequality._from_row(coeffs, q.const, q.rel))
        return Polyhedron(new_dim, out, _sat=self._sat)

    # -- queries --------------------------------------------------------------

    def _test_rows(self) -> tuple[Inequality, ...]:
        """Rows for entailment-style tests: the canonical (minimal) set when
        it is already cached, the raw set otherwise."""
        if self._ckey is not None and self._ckey[1] != "empty":
            return self.canonical_ineqs()
        return self.ineqs

    def get_min(self, var: int) -> Minimum:
        """Infimum of `var` over the polyhedron as an extended minimum."""
        if self.is_empty():
            return Minimum.infinite()
        shadow = _eliminate_all(self._test_rows(),
                                [v for v in range(self.dim) if v != var])
        if shadow is None:
            return Minimum.infinite()
        best = None  # [value, any strict bound at that value]
        for q in shadow:
            a = q.coeffs.get(var)
            if a is None:
                continue
            val = Fraction(-q.const, a)
            if q.rel == EQ:
                return Minimum.finite(val, attained=True)
            if a < 0:  # lower bound: var >= / > val
                strict = q.rel == LT
                if best is None or val > best[0]:
                    best = [val, strict]
                elif val == best[0] and strict:
                    best[1] = True
        if best is None:
            raise ValueError(f"variable {var} has no lower bound")
        return Minimum.finite(best[0], attained=not best[1])

    def entails(self, ineq: Inequality) -> bool:
        """True when every point of the polyhedron satisfies `ineq`."""
        if self._sat is False:
            return True
        rows = self._test_rows()
        for comp in ineq.complement():
            if _eliminate_all(rows + (comp,), range(self.dim)) is not None:
                return False
        return True

    def includes(self, inner: Polyhedron) -> bool:
        """Set inclusion ``inner <= self``."""
        if inner.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {inner.dim}")
        if inner.is_empty():
            return True
        if self._sat is False:
            return False
        inner_rows = inner._test_rows()
        outer_rows = self._test_rows()
        # with both sides canonical, outer equalities are decided by reducing
        # them against the inner echelon basis: an equality holds on the
        # (full-dimensional-in-its-hull) inner set iff it vanishes on the hull
        fast_eq = self._ckey is not None and inner._ckey is not None
        if fast_eq:
            pivots = {min(r.coeffs): (r.coeffs, r.const)
                      for r in inner_rows if r.rel == EQ}
            for q in outer_rows:
                if q.rel != EQ:
                    continue
                coeffs, const = dict(q.coeffs), q.const
                for v in sorted(set(coeffs) & set(pivots)):
                    coeffs, const = _substitute_row(coeffs, const, v, pivots[v])
                if const or any(coeffs.values()):
                    return False
        for q in outer_rows:
            if fast_eq and q.rel == EQ:
                continue
            for comp in q.complement():
                if _eliminate_all(inner_rows + (comp,),
                                  range(self.dim)) is not None:
                    return False
        return True

    def equals(self, other: Polyhedron) -> bool:
        """Semantic equality (mutual inclusion)."""
        if self.dim != other.dim:
            return False
        if self.ineqs == other.ineqs:
            return True
        return self.includes(other) and other.includes(self)

    # -- canonical form -------------------------------------------------------

    def canonical_key(self):
        """Hashable semantic normal form.

        Equalities are promoted (a non-strict facet whose reverse is entailed
        becomes an equality), Gauss-reduced to a unique echelon basis, and
        substituted into the remaining inequalities, which are then pruned to
        an irredundant facet set.  Semantically equal zones built along
        different exploration paths hash identically.
        """
        if self._ckey is None:
            self._ckey = self._canonicalize()
        return self._ckey

    def _canonicalize(self):
        if not self.is_satisfiable():
            return (self.dim, "empty")
        eqs = [q for q in self.ineqs if q.rel == EQ]
        rest = [q for q in self.ineqs if q.rel != EQ]
        # reduce by the equalities first so the facet tests below run in the
        # (much smaller) quotient space; promoting an implied equality
        # re-enters the loop with a richer basis
        while True:
            pivot_rows = _echelon(eqs)
            reduced = _light_normalize(
                [_reduce_by_pivots(q, pivot_rows) for q in rest])
            if reduced is None:
                return (self.dim, "empty")
            eq_ineqs = [Inequality._from_row(dict(coeffs), const, EQ)
                        for coeffs, const in pivot_rows.values()]
            base = tuple(eq_ineqs) + tuple(reduced)
            promoted = set()
            for q in reduced:
                if q.rel != LE:
                    continue
                if _eliminate_all(
                        base + (Inequality._from_row(dict(q.coeffs), q.const, LT),),
                        range(self.dim)) is None:
                    # facet interior infeasible: the bound is really an equality
                    promoted.add(q)
            if not promoted:
                break
            eqs = eq_ineqs + [Inequality._from_row(dict(q.coeffs), q.const, EQ)
                              for q in promoted]
            rest = [q for q in reduced if q not in promoted]
        eq_ineqs.sort(key=Inequality.key)
        reduced = list(reduced)
        kept = []
        for i, q in enumerate(reduced):
            others = tuple(eq_ineqs) + tuple(kept) + tuple(reduced[i + 1:])
            entailed = True
            for comp in q.complement():
                if _eliminate_all(others + (comp,), range(self.dim)) is not None:
                    entailed = False
                    break
            if not entailed:
                kept.append(q)
        final = sorted(eq_ineqs + kept, key=Inequality.key)
        return (self.dim, tuple(q.key() for q in final))

    def canonical_ineqs(self) -> tuple[Inequality, ...]:
        """Minimal constraint list corresponding to ``canonical_key``."""
        key = self.canonical_key()
        if key[1] == "empty":
            return (_FALSE,)
        return tuple(Inequality._from_row(dict(vec), const, rel)
                     for vec, const, rel in key[1])

    def __repr__(self):
        if self._sat is False:
            return f"Polyhedron(dim={self.dim}, false)"
        return f"Polyhedron(dim={self.dim}, {len(self.ineqs)} ineqs)"


def _echelon(eqs):
    """Gauss-reduce equality rows to `pivot var -> (coeffs, const)` rows.

    Each returned row reads ``var*a + rest + const = 0`` normalized so rows
    are mutually reduced and deterministic (pivot on the smallest variable).
    """
    pivots: dict[int, tuple[dict, int]] = {}
    for q in eqs:
        coeffs, const = dict(q.coeffs), q.const
        for v in sorted(set(coeffs) & set(pivots)):
            coeffs, const = _substitute_row(coeffs, const, v, pivots[v])
        coeffs = {v: c for v, c in coeffs.items() if c}
        if not coeffs:
            continue
        coeffs, const = _reduce_row(coeffs, const)
        v = min(coeffs)
        if coeffs[v] < 0:
            coeffs = {u: -c for u, c in coeffs.items()}
            const = -const
        for u, row in list(pivots.items()):
            if v in row[0]:
                pivots[u] = _substitute_row(row[0], row[1], v, (coeffs, const))
        pivots[v] = (coeffs, const)
    return pivots


def _substitute_row(coeffs, const, var, pivot_row):
    """Eliminate `var` from an integer row using an equality pivot row."""
    pc, pk = pivot_row
    a = pc[var]
    b = coeffs.get(var, 0)
    if not b:
        return dict(coeffs), const
    s = 1 if a > 0 else -1
    sa, sb = s * a, s * b
    out = {}
    for v, c in coeffs.items():
        if v != var:
            out[v] = c * sa
    for v, c in pc.items():
        if v != var:
            n = out.get(v, 0) - sb * c
            if n:
                out[v] = n
            elif v in out:
                del out[v]
    out, k = _reduce_row(out, const * sa - sb * pk)
    return out, k


def _reduce_by_pivots(q: Inequality, pivots) -> Inequality:
    coeffs, const = dict(q.coeffs), q.const
    hit = False
    for v in sorted(set(coeffs) & set(pivots)):
        coeffs, const = _substitute_row(coeffs, const, v, pivots[v])
        hit = True
    if not hit:
        return q
    return Inequality._from_row(coeffs, const, q.rel)


def universe(dim: int) -> Polyhedron:
    """The unconstrained space of the given dimension."""
    if dim < 0:
        raise ValueError("dimension must be >= 0")
    return Polyhedron(dim, (), _sat=True)


def intersection(polys, dim: int) -> Polyhedron:
    acc = universe(dim)
    for p in polys:
        acc = acc.conjoin(p)
    return acc


# ---------------------------------------------------------------------------
# exact convex merge
# ---------------------------------------------------------------------------

def try_convex_merge(a: Polyhedron, b: Polyhedron) -> Polyhedron | None:
    """Union of two polyhedra when that union is itself a polyhedron.

    Builds the envelope (each constraint of one side that the other side
    satisfies, strict constraints relaxed when only their closure holds) and
    keeps it iff it contains no point outside ``a | b``.  The envelope always
    contains the union, so a returned value equals the union exactly.

    When both sides have the same affine hull the whole check runs on their
    inequality parts only; the general mixed-dimension case falls back to
    complement pairs over all constraints.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.is_empty():
        return b
    if b.is_empty():
        return a
    # disjoint closures cannot have a convex union; one cheap test rejects
    # most same-location pairs before the envelope is attempted
    touch = tuple(q.relaxed() for q in a._test_rows()) \
        + tuple(q.relaxed() for q in b._test_rows())
    if _eliminate_all(touch, range(a.dim)) is None:
        return None
    a_rows = a.canonical_ineqs()
    b_rows = b.canonical_ineqs()
    a_eqs = [q for q in a_rows if q.rel == EQ]
    b_eqs = [q for q in b_rows if q.rel == EQ]
    if [q.key() for q in a_eqs] == [q.key() for q in b_eqs]:
        a_in = tuple(q for q in a_rows if q.rel != EQ)
        b_in = tuple(q for q in b_rows if q.rel != EQ)
        eqs = tuple(a_eqs)
        env = list(eqs)
        for own, own_in, other in ((a, a_in, b), (b, b_in, a)):
            for q in own_in:
                if other.entails(q):
                    env.append(q)
                elif q.rel == LT and other.entails(q.relaxed()):
                    env.append(q.relaxed())
        hull_rows = tuple(env)
        # any hull point lies on the shared affine hull, so leaving a or b
        # means violating one of their inequality parts
        for ca, cb in itertools.product(
                [c for q in a_in for c in q.complement()],
                [c for q in b_in for c in q.complement()]):
            if _eliminate_all(hull_rows + (ca, cb), range(a.dim)) is not None:
                return None
        return Polyhedron(a.dim, hull_rows, _sat=True)
    env = []
    for own_rows, other in ((a_rows, b), (b_rows, a)):
        for q in own_rows:
            if other.entails(q):
                env.append(q)
            elif q.rel == LT and other.entails(q.relaxed()):
                env.append(q.relaxed())
    hull = Polyhedron(a.dim, env, _sat=True)
    outside_a = [c for q in a_rows for c in q.complement()]
    outside_b = [c for q in b_rows for c in q.complement()]
    for ca, cb in itertools.product(outside_a, outside_b):
        if _eliminate_all(hull.ineqs + (ca, cb), range(a.dim)) is not None:
            return None
    return hull


# ---------------------------------------------------------------------------
# witness sampling
# ---------------------------------------------------------------------------

def sample_point(poly: Polyhedron, rng=None, spread: int = 2):
    """A rational point of the polyhedron, or None when empty.

    Eliminates variables one at a time, then back-substitutes picking a value
    inside the 1-D feasible interval at each stage.  `rng` (random.Random)
    perturbs interior picks so repeated calls explore different witnesses.
    """
    if poly.is_empty():
        return None
    stages = []
    work = list(poly.ineqs)
    remaining = set()
    for q in work:
        remaining.update(q.coeffs)
    order = sorted(remaining)
    for var in order:
        stages.append((var, list(work)))
        work = _eliminate_one(work, var)
        if work is None:
            return None
    point = {v: Fraction(0) for v in range(poly.dim)}
    for var, system in reversed(stages):
        lo = hi = None
        lo_strict = hi_strict = False
        pinned = None
        for q in system:
            a = q.coeffs.get(var)
            if a is None:
                continue
            rest = Fraction(q.const)
            for v, c in q.coeffs.items():
                if v != var:
                    rest += c * point[v]
            val = -rest / a
            if q.rel == EQ:
                pinned = val
            elif a > 0:  # var <= / < val
                if hi is None or val < hi or (val == hi and q.rel == LT):
                    hi, hi_strict = val, q.rel == LT
            else:  # var >= / > val
                if lo is None or val > lo or (val == lo and q.rel == LT):
                    lo, lo_strict = val, q.rel == LT
        if pinned is not None:
            point[var] = pinned
            continue
        point[var] = _pick_in_interval(lo, lo_strict, hi, hi_strict, rng, spread)
    return point


def _pick_in_interval(lo, lo_strict, hi, hi_strict, rng, spread):
    jitter = Fraction(rng.randint(1, 15), 16) if rng is not None else Fraction(1, 2)
    if lo is None and hi is None:
        return Fraction(rng.randint(0, spread)) if rng is not None else Fraction(0)
    if lo is None:
        return hi if not hi_strict else hi - 1 - jitter
    if hi is None:
        if not lo_strict and (rng is None or rng.random() < 0.5):
            return lo
        return lo + jitter + (rng.randint(0, spread) if rng is not None else 0)
    if not lo_strict and (rng is None or rng.random() < 0.4):
        return lo
    return lo + (hi - lo) * jitter


# ---------------------------------------------------------------------------
# extended minima
# ---------------------------------------------------------------------------

class Minimum:
    """Extended lower bound: a rational tagged attained/infimum, or infinity.

    Total order: ``(c, =) < (c, >)`` and every finite minimum is below
    infinity.  The attained tag records whether the bounding value itself
    belongs to the set (closed bound) or is only approached (open bound).
    """

    __slots__ = ("value", "attained")

    def __init__(self, value, attained=True):
        self.value = None if value is None else _rat(value)
        self.attained = bool(attained) if value is not None else False

    @classmethod
    def finite(cls, value, attained=True) -> Minimum:
        return cls(value, attained)

    @classmethod
    def infinite(cls) -> Minimum:
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _sort_key(self):
        if self.value is None:
            return (1, Fraction(0), 0)
        return (0, self.value, 0 if self.attained else 1)

    def __eq__(self, other):
        return isinstance(other, Minimum) and self._sort_key() == other._sort_key()

    def __hash__(self):
        return hash(self._sort_key())

    def __lt__(self, other):
        return self._sort_key() < other._sort_key()

    def __le__(self, other):
        return self._sort_key() <= other._sort_key()

    def __gt__(self, other):
        return self._sort_key() > other._sort_key()

    def __ge__(self, other):
        return self._sort_key() >= other._sort_key()

    def render(self) -> str:
        if self.is_infinite:
            return "infinity"
        return f"({_render_rat(self.value)}, {'=' if self.attained else '>'})"

    def __repr__(self):
        return f"Minimum{self.render()}"


def compare_minimum(a: Minimum, b: Minimum) -> int:
    """-1, 0 or 1 as a is below, equal to or above b."""
    if a == b:
        return 0
    return -1 if a < b else 1


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_rat(x) -> str:
    x = _rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _render_side(items, const) -> str:
    parts = []
    for v, c, name in items:
        parts.append(name if c == 1 else f"{c}*{name}")
    if const or not parts:
        parts.append(str(const))
    return " + ".join(parts)


def render_inequality(ineq: Inequality, names) -> str:
    pos, neg = [], []
    for v, c in sorted(ineq.coeffs.items()):
        (pos if c > 0 else neg).append((v, abs(c), names[v]))
    c = ineq.const
    lhs_const = c if c > 0 else 0
    rhs_const = -c if c < 0 else 0
    op = ineq.rel
    if not pos and neg:
        pos, neg = neg, pos
        lhs_const, rhs_const = rhs_const, lhs_const
        op = _FLIP[op]
    lhs = _render_side(pos, lhs_const)
    rhs = _render_side(neg, rhs_const)
    return f"{lhs} {op} {rhs}"


def render_polyhedron(poly: Polyhedron, names, suppress_nonneg=frozenset()) -> str:
    """Canonical text form: '&&'-joined integer-normalized inequalities.

    `suppress_nonneg` hides plain nonnegativity atoms (v >= 0) for the given
    variable indices; the trivially-true domain axioms of parameters are not
    worth printing.
    """
    parts = render_atoms(poly, names, suppress_nonneg)
    if parts is None:
        return "false"
    if not parts:
        return "true"
    return " && ".join(parts)


def render_atoms(poly: Polyhedron, names, suppress_nonneg=frozenset()):
    """Individual inequality strings in canonical order; None for the empty set."""
    if poly.is_empty():
        return None
    ineqs = poly.canonical_ineqs()
    out = []
    for q in sorted(ineqs, key=_render_order):
        if suppress_nonneg and _is_nonneg_atom(q, suppress_nonneg):
            continue
        out.append(render_inequality(q, names))
    return out


def _is_nonneg_atom(ineq: Inequality, vars_) -> bool:
    if ineq.rel != LE or ineq.const != 0 or len(ineq.coeffs) != 1:
        return False
    (v, c), = ineq.coeffs.items()
    return v in vars_ and c == -1


def _render_order(ineq: Inequality):
    vec = tuple(sorted(ineq.coeffs.items()))
    return (vec[0][0] if vec else -1, vec, 0 if ineq.rel == EQ else 1, ineq.const)
