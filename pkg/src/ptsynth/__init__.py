"""Parameter synthesis and minimal-time reachability for parametric timed automata."""

from .model import Pta, parse_model, parse_property, print_model
from .polyhedra import Minimum, Polyhedron
from .synth import (
    AlgoConfig, DisjunctiveConstraint, SynthResult, ef_synth,
    lu_min_time_fast_path, min_param_synth, min_time_reach, min_time_synth,
)

__all__ = [
    "AlgoConfig", "DisjunctiveConstraint", "Minimum", "Polyhedron", "Pta",
    "SynthResult", "ef_synth", "lu_min_time_fast_path", "min_param_synth",
    "min_time_reach", "min_time_synth", "parse_model", "parse_property",
    "print_model",
]

__version__ = "0.1.0"
