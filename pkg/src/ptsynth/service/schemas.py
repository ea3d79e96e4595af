"""Request/response models for the synthesis service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

Algorithm = Literal["efsynth", "minparam", "mintime", "mintime-reach", "lu-fast"]


class SynthesisRequest(BaseModel):
    model_text: str
    property_text: Optional[str] = None
    targets: Optional[list[str]] = None
    minimize: Optional[str] = None
    algorithm: Algorithm = "efsynth"
    global_clock: Optional[str] = None
    inclusion: bool = True
    merge: str = "auto"              # off | layer | auto | every:N
    strict_min: str = "closure"      # closure | epsilon:R
    max_states: Optional[int] = Field(default=None, ge=1)
    timeout_seconds: Optional[float] = Field(default=None, gt=0)
    include_trace: bool = False


class OptimumModel(BaseModel):
    value: str
    strictness: Literal["=", ">"]


class StatsModel(BaseModel):
    popped: int
    pushed: int
    inclusion_hits: int
    merge_events: int
    wall_ms: float
    peak_waiting: int


class SynthesisResponse(BaseModel):
    algorithm: Algorithm
    status: Literal["complete", "partial"]
    optimum: Union[OptimumModel, Literal["infinity"], None] = None
    constraint: list[list[str]]
    constraint_text: str
    optimum_text: Optional[str] = None
    parameters: list[str]
    stats: StatsModel
    trace: Optional[list[str]] = None


class DiagnosticModel(BaseModel):
    line: int
    col: int
    message: str


class ParseRequest(BaseModel):
    model_text: str
    property_text: Optional[str] = None


class LuModel(BaseModel):
    polarity: dict[str, str]
    is_lu: bool


class ModelSummary(BaseModel):
    clocks: list[str]
    params: list[str]
    locations: int
    edges: int
    initial: str
    lu: LuModel
    targets: Optional[list[str]] = None
    minimize: Optional[str] = None


class ParseResponse(BaseModel):
    valid: bool
    diagnostics: list[DiagnosticModel] = []
    summary: Optional[ModelSummary] = None


class HealthResponse(BaseModel):
    status: str
    version: str
