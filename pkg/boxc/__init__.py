"""boxc: a compiler, validator and simulator for hybrid AI design diagrams."""

__version__ = "0.1.0"

from boxc.core import (
    Document,
    builtin_taxonomy,
    from_json,
    to_canonical_json,
)
from boxc.parsers import format_document, parse, parse_file
from boxc.patterns import builtin_patterns, detect, instantiate
from boxc.render import RenderOptions, to_dot
from boxc.sim import SimulationRegistry, check_trace, register_simulation
from boxc.validation import validate

__all__ = [
    "Document",
    "RenderOptions",
    "SimulationRegistry",
    "builtin_patterns",
    "builtin_taxonomy",
    "check_trace",
    "detect",
    "format_document",
    "from_json",
    "instantiate",
    "parse",
    "parse_file",
    "register_simulation",
    "to_canonical_json",
    "to_dot",
    "validate",
]
