"""FastAPI application exposing the synthesis engine."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from .handlers import RequestError, execute_synthesis, parse_request
from .schemas import (
    HealthResponse, ParseRequest, ParseResponse, SynthesisRequest,
    SynthesisResponse,
)

app = FastAPI(title="ptsynth", version=__version__,
              description="Parameter synthesis and minimal-time reachability "
                          "for parametric timed automata")


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/parse", response_model=ParseResponse)
def parse(request: ParseRequest) -> ParseResponse:
    return parse_request(request)


@app.post("/synthesize", response_model=SynthesisResponse)
def synthesize(request: SynthesisRequest) -> SynthesisResponse:
    try:
        return execute_synthesis(request)
    except RequestError as err:
        raise HTTPException(status_code=400, detail={
            "message": str(err),
            "diagnostics": [d.model_dump() for d in err.diagnostics],
        })
