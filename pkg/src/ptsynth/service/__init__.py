from .handlers import RequestError, execute_synthesis, parse_request
from .schemas import ParseRequest, ParseResponse, SynthesisRequest, SynthesisResponse

__all__ = [
    "ParseRequest", "ParseResponse", "RequestError", "SynthesisRequest",
    "SynthesisResponse", "execute_synthesis", "parse_request",
]
