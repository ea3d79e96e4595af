"""Request execution shared by the HTTP endpoints and the CLI."""

from __future__ import annotations

from fractions import Fraction

from ..model import (
    ModelError, classify_lu, check_targets, instrument_global_clock,
    parse_model, parse_property,
)
from ..synth import (
    AlgoConfig, MERGE_AUTO, MERGE_LAYER, MERGE_OFF, SynthResult,
    ef_synth, lu_min_time_fast_path, min_param_synth, min_time_reach,
    min_time_synth, optimum_document, constraint_atoms, render_constraint,
)
from .schemas import (
    DiagnosticModel, LuModel, ModelSummary, ParseRequest, ParseResponse,
    StatsModel, SynthesisRequest, SynthesisResponse,
)


class RequestError(ValueError):
    """Invalid request payload (bad flags, parse failures, missing targets)."""

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)

    @classmethod
    def from_model_error(cls, err: ModelError) -> RequestError:
        return cls(str(err), [DiagnosticModel(line=d.line, col=d.col,
                                              message=d.message)
                              for d in err.diagnostics])


def parse_merge(text: str):
    if text in (MERGE_OFF, MERGE_LAYER, MERGE_AUTO):
        return text
    if text.startswith("every:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise RequestError(f"bad merge policy {text!r}")
        if n < 1:
            raise RequestError("merge interval must be >= 1")
        return n
    raise RequestError(f"bad merge policy {text!r}")


def parse_strict_min(text: str):
    if text == "closure":
        return "closure", Fraction(1, 1024)
    if text.startswith("epsilon"):
        eps = Fraction(1, 1024)
        if ":" in text:
            try:
                eps = Fraction(text.split(":", 1)[1])
            except (ValueError, ZeroDivisionError):
                raise RequestError(f"bad epsilon in {text!r}")
        if eps <= 0:
            raise RequestError("epsilon must be positive")
        return "epsilon", eps
    raise RequestError(f"bad strict-min mode {text!r}")


def build_config(req: SynthesisRequest) -> AlgoConfig:
    mode, eps = parse_strict_min(req.strict_min)
    return AlgoConfig(inclusion=req.inclusion, merge=parse_merge(req.merge),
                      strict_min=mode, epsilon=eps, max_states=req.max_states,
                      timeout=req.timeout_seconds,
                      record_trace=req.include_trace)


def resolve_goal(req: SynthesisRequest, pta):
    """Targets and minimize-parameter from inline fields or the property text."""
    targets, minimize = req.targets, req.minimize
    if req.property_text:
        prop = parse_property(req.property_text)
        targets = targets or list(prop.targets)
        minimize = minimize or prop.minimize
    if not targets:
        raise RequestError("no target locations given")
    return check_targets(pta, targets), minimize


def execute_synthesis(req: SynthesisRequest) -> SynthesisResponse:
    try:
        return _execute(req)
    except ModelError as err:
        raise RequestError.from_model_error(err)


def _execute(req: SynthesisRequest) -> SynthesisResponse:
    pta = parse_model(req.model_text)
    targets, minimize = resolve_goal(req, pta)
    cfg = build_config(req)
    algorithm = req.algorithm

    if algorithm == "efsynth":
        result = ef_synth(pta, targets, cfg)
        return _synth_response(result, pta.params, req)
    if algorithm == "minparam":
        if not minimize:
            raise RequestError("minparam needs a parameter to minimize "
                               "(--minimize or a `minimize` property line)")
        result = min_param_synth(pta, targets, minimize, cfg)
        return _synth_response(result, pta.params, req)
    if algorithm in ("mintime", "mintime-reach"):
        pta, clock = instrument_global_clock(pta, reuse=req.global_clock)
        run = min_time_synth if algorithm == "mintime" else min_time_reach
        result = run(pta, targets, clock, cfg)
        return _synth_response(result, pta.params, req)
    if algorithm == "lu-fast":
        minimum = lu_min_time_fast_path(pta, targets, req.global_clock, cfg)
        return SynthesisResponse(
            algorithm="lu-fast", status="complete",
            optimum=optimum_document(minimum), optimum_text=minimum.render(),
            constraint=[], constraint_text="", parameters=list(pta.params),
            stats=StatsModel(popped=0, pushed=0, inclusion_hits=0,
                             merge_events=0, wall_ms=0.0, peak_waiting=0))
    raise RequestError(f"unknown algorithm {algorithm!r}")


def _synth_response(result: SynthResult, params, req) -> SynthesisResponse:
    opt = result.optimum
    return SynthesisResponse(
        algorithm=result.algorithm if result.algorithm != "efsynth" else "efsynth",
        status=result.status,
        optimum=optimum_document(opt),
        optimum_text=opt.render() if opt is not None else None,
        constraint=constraint_atoms(result.constraint, params),
        constraint_text=render_constraint(result.constraint, params),
        parameters=list(params),
        stats=StatsModel(**result.stats.as_dict()),
        trace=[r.line() for r in result.trace] if req.include_trace else None)


def parse_request(req: ParseRequest) -> ParseResponse:
    try:
        pta = parse_model(req.model_text)
    except ModelError as err:
        return ParseResponse(valid=False, diagnostics=[
            DiagnosticModel(line=d.line, col=d.col, message=d.message)
            for d in err.diagnostics])
    targets = minimize = None
    if req.property_text:
        try:
            prop = parse_property(req.property_text)
            check_targets(pta, prop.targets)
            targets, minimize = list(prop.targets), prop.minimize
        except ModelError as err:
            return ParseResponse(valid=False, diagnostics=[
                DiagnosticModel(line=d.line, col=d.col, message=d.message)
                for d in err.diagnostics])
    lu = classify_lu(pta)
    return ParseResponse(valid=True, summary=ModelSummary(
        clocks=list(pta.clocks), params=list(pta.params),
        locations=len(pta.locations), edges=len(pta.edges),
        initial=pta.initial, lu=LuModel(polarity=lu.polarity, is_lu=lu.is_lu),
        targets=targets, minimize=minimize))
