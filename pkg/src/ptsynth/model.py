"""PTA domain model: the input language, validation and model transformations.

The model language covers exactly the guard fragment the algorithms support:
conjunctions of atoms ``clock op constant`` and ``clock op parameter`` with
natural-number constants.  Urgent locations are syntactic sugar for an extra
hidden clock that is reset on every incoming edge and bounded by ``<= 0`` in
the invariant.

Grammar::

    model    := header loc+ edge*
    header   := "clocks" ident ("," ident)* ";"
                "params" [ident ("," ident)*] ";"
                "actions" [ident ("," ident)*] ";"
    loc      := ["init"] ["urgent"] "loc" ident ["inv" guard] ";"
    edge     := "edge" ident "->" ident ["when" guard] ["act" ident]
                ["reset" "{" ident ("," ident)* "}"] ";"
    guard    := atom ("&&" atom)*
    atom     := ident op (nat | ident)
    op       := "<" | "<=" | "=" | ">=" | ">"

Property files: ``targets { ident (, ident)* }`` plus optional
``minimize ident``.  ``#`` starts a comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polyhedra import LinearTerm, Polyhedron, bound, universe

URGENT_CLOCK = "_urgent"

OPS = ("<", "<=", "=", ">=", ">")
LOWER_OPS = (">", ">=")   # x > p / x >= p: p bounds x from below
UPPER_OPS = ("<", "<=")   # x < p / x <= p: p bounds x from above


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class ModelError(ValueError):
    """Parse or validation failure, carrying positioned diagnostics."""

    def __init__(self, diagnostics):
        if isinstance(diagnostics, Diagnostic):
            diagnostics = [diagnostics]
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Atom:
    """One guard conjunct `clock op rhs`; rhs is a number or a parameter name."""
    clock: str
    op: str
    rhs: object  # int | Fraction | str

    def is_parametric(self) -> bool:
        return isinstance(self.rhs, str)


Guard = tuple  # tuple[Atom, ...]


@dataclass(frozen=True)
class Location:
    name: str
    invariant: Guard = ()


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    guard: Guard = ()
    action: str | None = None
    resets: tuple = ()


@dataclass(frozen=True)
class Pta:
    """A parametric timed automaton; immutable after construction.

    Variable indexing convention used everywhere downstream: clocks first in
    declaration order, then parameters in declaration order.
    """

    clocks: tuple
    params: tuple
    actions: tuple
    locations: tuple
    initial: str
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "_loc_by_name",
                           {loc.name: loc for loc in self.locations})
        index = {name: i for i, name in enumerate(self.clocks)}
        for j, name in enumerate(self.params):
            index[name] = len(self.clocks) + j
        object.__setattr__(self, "_var_index", index)

    @property
    def n_clocks(self) -> int:
        return len(self.clocks)

    @property
    def n_vars(self) -> int:
        return len(self.clocks) + len(self.params)

    @property
    def var_names(self) -> tuple:
        return self.clocks + self.params

    def var_index(self, name: str) -> int:
        return self._var_index[name]

    def clock_indices(self):
        return range(len(self.clocks))

    def param_indices(self):
        return range(len(self.clocks), self.n_vars)

    def location(self, name: str) -> Location:
        return self._loc_by_name[name]

    def has_location(self, name: str) -> bool:
        return name in self._loc_by_name

    def edges_from(self, name: str):
        return [e for e in self.edges if e.source == name]

    def atom_inequality(self, atom: Atom):
        lhs = LinearTerm.variable(self.var_index(atom.clock))
        if isinstance(atom.rhs, str):
            rhs = LinearTerm.variable(self.var_index(atom.rhs))
        else:
            rhs = LinearTerm.constant(atom.rhs)
        return bound(lhs, atom.op, rhs)

    def guard_polyhedron(self, guard: Guard) -> Polyhedron:
        poly = universe(self.n_vars)
        for atom in guard:
            poly = poly.conjoin(self.atom_inequality(atom))
        return poly

    def nonnegativity_axioms(self) -> Polyhedron:
        poly = universe(self.n_vars)
        for v in range(self.n_vars):
            poly = poly.conjoin(bound(LinearTerm.constant(0), "<=",
                                      LinearTerm.variable(v)))
        return poly

    def is_reset(self, clock: str) -> bool:
        return any(clock in e.resets for e in self.edges)


@dataclass(frozen=True)
class PropertySpec:
    targets: tuple
    minimize: str | None = None


# ---------------------------------------------------------------------------
# lexer / parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>\d+(\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>->|&&|<=|>=|<|>|=|;|,|\{|\})
""", re.VERBOSE)

_KEYWORDS = {"clocks", "params", "actions", "loc", "edge", "init", "urgent",
             "inv", "when", "act", "reset", "targets", "minimize"}


@dataclass
class _Token:
    kind: str  # num | ident | punct | eof
    text: str
    line: int
    col: int


def _lex(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ModelError(Diagnostic(line, col,
                                        f"unexpected character {text[pos]!r}"))
        lexeme = m.group(0)
        kind = m.lastgroup
        if kind != "ws":
            if kind == "num" and "." in lexeme:
                raise ModelError(Diagnostic(
                    line, col,
                    f"constant {lexeme} is not a natural number; "
                    "rescale the model so all constants are integers"))
            tokens.append(_Token(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(_Token("eof", "<eof>", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message, token=None):
        tok = token or self.cur
        return ModelError(Diagnostic(tok.line, tok.col, message))

    def accept(self, text: str):
        if self.cur.kind != "eof" and self.cur.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> _Token:
        if self.cur.kind == "eof" or self.cur.text != text:
            raise self.error(f"expected {text!r}, found {self.cur.text!r}")
        tok = self.cur
        self.pos += 1
        return tok

    def ident(self, what="identifier") -> _Token:
        if self.cur.kind != "ident" or self.cur.text in _KEYWORDS:
            raise self.error(f"expected {what}, found {self.cur.text!r}")
        tok = self.cur
        self.pos += 1
        return tok

    def ident_list(self) -> list:
        names = [self.ident()]
        while self.accept(","):
            names.append(self.ident())
        return names

    def guard(self) -> list:
        atoms = [self.atom()]
        while self.accept("&&"):
            atoms.append(self.atom())
        return atoms

    def atom(self):
        clock = self.ident("clock name")
        if self.cur.text not in OPS:
            raise self.error(f"expected comparison operator, found {self.cur.text!r}")
        op = self.cur.text
        self.pos += 1
        if self.cur.kind == "num":
            rhs_tok = self.cur
            self.pos += 1
            return clock, op, int(rhs_tok.text), rhs_tok
        rhs_tok = self.ident("constant or parameter")
        return clock, op, rhs_tok.text, rhs_tok


def parse_model(text: str) -> Pta:
    """Parse and validate a model, raising ModelError with diagnostics."""
    p = _Parser(text)
    diags: list[Diagnostic] = []

    p.expect("clocks")
    clock_toks = p.ident_list()
    p.expect(";")
    p.expect("params")
    param_toks = [] if p.cur.text == ";" else p.ident_list()
    p.expect(";")
    p.expect("actions")
    action_toks = [] if p.cur.text == ";" else p.ident_list()
    p.expect(";")

    clocks = [t.text for t in clock_toks]
    params = [t.text for t in param_toks]
    actions = [t.text for t in action_toks]
    declared = {}
    for toks, role in ((clock_toks, "clock"), (param_toks, "parameter"),
                       (action_toks, "action")):
        for t in toks:
            if t.text in declared:
                diags.append(Diagnostic(t.line, t.col,
                                        f"duplicate declaration of {t.text!r}"))
            declared[t.text] = role

    def check_guard(raw_atoms):
        atoms = []
        for clock_tok, op, rhs, rhs_tok in raw_atoms:
            if declared.get(clock_tok.text) != "clock":
                diags.append(Diagnostic(clock_tok.line, clock_tok.col,
                                        f"{clock_tok.text!r} is not a declared clock"))
                continue
            if isinstance(rhs, str):
                role = declared.get(rhs)
                if role != "parameter":
                    msg = (f"{rhs!r} is not a declared parameter"
                           if role is None else
                           f"cannot compare a clock against {role} {rhs!r}; "
                           "guards allow only clock-constant and clock-parameter atoms")
                    diags.append(Diagnostic(rhs_tok.line, rhs_tok.col, msg))
                    continue
            atoms.append(Atom(clock_tok.text, op, rhs))
        return tuple(atoms)

    locations = []
    urgent_names = []
    initial = None
    seen_locs = {}
    while p.cur.text in ("loc", "init", "urgent"):
        is_init = p.accept("init")
        is_urgent = p.accept("urgent")
        p.expect("loc")
        name_tok = p.ident("location name")
        invariant = ()
        if p.accept("inv"):
            invariant = check_guard(p.guard())
        p.expect(";")
        if name_tok.text in seen_locs:
            diags.append(Diagnostic(name_tok.line, name_tok.col,
                                    f"duplicate location {name_tok.text!r}"))
        seen_locs[name_tok.text] = True
        if name_tok.text in declared:
            diags.append(Diagnostic(name_tok.line, name_tok.col,
                                    f"location {name_tok.text!r} collides with a declaration"))
        if is_init:
            if initial is not None:
                diags.append(Diagnostic(name_tok.line, name_tok.col,
                                        "more than one init location"))
            initial = name_tok.text
        if is_urgent:
            urgent_names.append(name_tok.text)
        locations.append(Location(name_tok.text, invariant))

    if not locations:
        raise p.error("model declares no locations")
    if initial is None:
        diags.append(Diagnostic(1, 1, "no init location"))

    edges = []
    while p.cur.text == "edge":
        p.expect("edge")
        src_tok = p.ident("location name")
        p.expect("->")
        dst_tok = p.ident("location name")
        guard = ()
        if p.accept("when"):
            guard = check_guard(p.guard())
        action = None
        if p.accept("act"):
            act_tok = p.ident("action name")
            if act_tok.text not in actions:
                diags.append(Diagnostic(act_tok.line, act_tok.col,
                                        f"undeclared action {act_tok.text!r}"))
            action = act_tok.text
        resets = ()
        if p.accept("reset"):
            p.expect("{")
            reset_toks = p.ident_list()
            p.expect("}")
            for t in reset_toks:
                if declared.get(t.text) != "clock":
                    diags.append(Diagnostic(t.line, t.col,
                                            f"{t.text!r} is not a declared clock"))
            resets = tuple(sorted({t.text for t in reset_toks}))
        p.expect(";")
        for tok in (src_tok, dst_tok):
            if tok.text not in seen_locs:
                diags.append(Diagnostic(tok.line, tok.col,
                                        f"unknown location {tok.text!r}"))
        edges.append(Edge(src_tok.text, dst_tok.text, guard, action, resets))

    if p.cur.kind != "eof":
        raise p.error(f"unexpected {p.cur.text!r} after edges")
    if diags:
        raise ModelError(diags)

    if urgent_names:
        clocks, locations, edges = _desugar_urgent(
            clocks, locations, edges, urgent_names, declared)

    return Pta(tuple(clocks), tuple(params), tuple(actions),
               tuple(locations), initial, tuple(edges))


def _desugar_urgent(clocks, locations, edges, urgent_names, declared):
    """Urgent locations: hidden clock reset on entry, invariant clock <= 0."""
    if URGENT_CLOCK in declared:
        raise ModelError(Diagnostic(
            1, 1, f"clock name {URGENT_CLOCK!r} is reserved for urgent locations"))
    clocks = clocks + [URGENT_CLOCK]
    urgent = set(urgent_names)
    new_locs = []
    for loc in locations:
        if loc.name in urgent:
            inv = loc.invariant + (Atom(URGENT_CLOCK, "<=", 0),)
            new_locs.append(Location(loc.name, inv))
        else:
            new_locs.append(loc)
    new_edges = []
    for e in edges:
        if e.target in urgent:
            e = Edge(e.source, e.target, e.guard, e.action,
                     tuple(sorted(set(e.resets) | {URGENT_CLOCK})))
        new_edges.append(e)
    return clocks, new_locs, new_edges


def parse_property(text: str) -> PropertySpec:
    p = _Parser(text)
    p.expect("targets")
    p.expect("{")
    targets = tuple(t.text for t in p.ident_list())
    p.expect("}")
    minimize = None
    if p.accept("minimize"):
        minimize = p.ident("parameter name").text
    if p.cur.kind != "eof":
        raise p.error(f"unexpected {p.cur.text!r}")
    return PropertySpec(targets, minimize)


def check_targets(pta: Pta, targets) -> tuple:
    """Resolve a target location set against the model."""
    targets = tuple(targets)
    if not targets:
        raise ModelError(Diagnostic(1, 1, "empty target set"))
    missing = [t for t in targets if not pta.has_location(t)]
    if missing:
        raise ModelError([Diagnostic(1, 1, f"unknown target location {t!r}")
                          for t in missing])
    return targets


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

def _atom_text(atom: Atom) -> str:
    rhs = atom.rhs
    if isinstance(rhs, Fraction):
        rhs = int(rhs) if rhs.denominator == 1 else str(rhs)
    return f"{atom.clock} {atom.op} {rhs}"


def print_model(pta: Pta) -> str:
    """Textual form that reparses to the same model (modulo urgent sugar)."""
    lines = []
    lines.append("clocks " + ", ".join(pta.clocks) + ";")
    lines.append("params " + ", ".join(pta.params) + ";")
    lines.append("actions " + ", ".join(pta.actions) + ";")
    lines.append("")
    for loc in pta.locations:
        head = "init loc" if loc.name == pta.initial else "loc"
        inv = ""
        if loc.invariant:
            inv = " inv " + " && ".join(_atom_text(a) for a in loc.invariant)
        lines.append(f"{head} {loc.name}{inv};")
    lines.append("")
    for e in pta.edges:
        parts = [f"edge {e.source} -> {e.target}"]
        if e.guard:
            parts.append("when " + " && ".join(_atom_text(a) for a in e.guard))
        if e.action:
            parts.append(f"act {e.action}")
        if e.resets:
            parts.append("reset { " + ", ".join(e.resets) + " }")
        lines.append(" ".join(parts) + ";")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LuClassification:
    polarity: dict  # param -> "lower" | "upper" | "both" | "unused"

    @property
    def is_lu(self) -> bool:
        return all(v != "both" for v in self.polarity.values())


def _all_guards(pta: Pta):
    for loc in pta.locations:
        yield from loc.invariant
    for e in pta.edges:
        yield from e.guard


def classify_lu(pta: Pta) -> LuClassification:
    """Per-parameter bound polarity; `x = p` counts as both polarities."""
    polarity = {p: "unused" for p in pta.params}

    def mark(p, kind):
        cur = polarity[p]
        polarity[p] = kind if cur in ("unused", kind) else "both"

    for atom in _all_guards(pta):
        if not atom.is_parametric():
            continue
        if atom.op in UPPER_OPS:
            mark(atom.rhs, "upper")
        elif atom.op in LOWER_OPS:
            mark(atom.rhs, "lower")
        else:
            polarity[atom.rhs] = "both"
    return LuClassification(polarity)


def instrument_global_clock(pta: Pta, reuse: str | None = None,
                            fresh_name: str = "xg") -> tuple[Pta, str]:
    """Ensure a clock that is never reset and so measures global time.

    A declared clock is reused only when explicitly flagged via `reuse` and
    never reset anywhere; otherwise a fresh clock absent from all guards,
    invariants and resets is added.
    """
    if reuse is not None and reuse in pta.clocks and not pta.is_reset(reuse):
        return pta, reuse
    name = fresh_name
    taken = set(pta.clocks) | set(pta.params) | set(pta.actions)
    if name in taken:
        raise ModelError(Diagnostic(
            1, 1, f"cannot add global clock {name!r}: name already declared"))
    return Pta(pta.clocks + (name,), pta.params, pta.actions,
               pta.locations, pta.initial, pta.edges), name


def instrument_min_time_as_param(pta: Pta, targets, global_clock: str,
                                 param_name: str = "pg") -> tuple[Pta, str]:
    """Tie total time to a fresh parameter on every edge entering a target.

    Each edge into the target set gains the conjunct
    ``global_clock = param_name``; minimizing the parameter then minimizes
    the global time at which the target is entered.
    """
    targets = check_targets(pta, targets)
    if global_clock not in pta.clocks:
        raise ModelError(Diagnostic(1, 1, f"unknown clock {global_clock!r}"))
    if pta.is_reset(global_clock):
        raise ModelError(Diagnostic(
            1, 1, f"clock {global_clock!r} is reset and cannot measure global time"))
    taken = set(pta.clocks) | set(pta.params) | set(pta.actions)
    if param_name in taken:
        raise ModelError(Diagnostic(
            1, 1, f"cannot add parameter {param_name!r}: name already declared"))
    target_set = set(targets)
    edges = []
    for e in pta.edges:
        if e.target in target_set:
            e = Edge(e.source, e.target,
                     e.guard + (Atom(global_clock, "=", param_name),),
                     e.action, e.resets)
        edges.append(e)
    return Pta(pta.clocks, pta.params + (param_name,), pta.actions,
               pta.locations, pta.initial, tuple(edges)), param_name


def zero_infinity_substitution(pta: Pta) -> Pta:
    """L/U fast-path model: lower-bound parameters become 0, upper bounds drop.

    Only valid on L/U models; atoms ``x < p`` / ``x <= p`` are always
    satisfiable for a large enough upper bound, so they are deleted, while
    lower-bound parameters are replaced by the constant 0.
    """
    classification = classify_lu(pta)
    if not classification.is_lu:
        offenders = [p for p, v in classification.polarity.items() if v == "both"]
        raise ModelError(Diagnostic(
            1, 1, "model is not L/U: parameter(s) used as both lower and upper "
                  f"bound: {', '.join(offenders)}"))

    def rewrite(guard: Guard) -> Guard:
        out = []
        for atom in guard:
            if not atom.is_parametric():
                out.append(atom)
            elif atom.op in LOWER_OPS:
                out.append(Atom(atom.clock, atom.op, 0))
            # upper-bound atoms are deleted (replaced by true)
        return tuple(out)

    locations = tuple(Location(l.name, rewrite(l.invariant)) for l in pta.locations)
    edges = tuple(Edge(e.source, e.target, rewrite(e.guard), e.action, e.resets)
                  for e in pta.edges)
    return Pta(pta.clocks, (), pta.actions, locations, pta.initial, edges)


def valuate(pta: Pta, valuation: dict) -> Pta:
    """Substitute a total parameter valuation, yielding a parameter-free model."""
    missing = [p for p in pta.params if p not in valuation]
    if missing:
        raise ModelError(Diagnostic(1, 1, f"valuation misses parameters {missing}"))
    vals = {p: Fraction(v) for p, v in valuation.items()}
    for p, v in vals.items():
        if v < 0:
            raise ModelError(Diagnostic(1, 1, f"negative value for parameter {p!r}"))

    def rewrite(guard: Guard) -> Guard:
        return tuple(Atom(a.clock, a.op, vals[a.rhs]) if a.is_parametric() else a
                     for a in guard)

    locations = tuple(Location(l.name, rewrite(l.invariant)) for l in pta.locations)
    edges = tuple(Edge(e.source, e.target, rewrite(e.guard), e.action, e.resets)
                  for e in pta.edges)
    return Pta(pta.clocks, (), pta.actions, locations, pta.initial, edges)
