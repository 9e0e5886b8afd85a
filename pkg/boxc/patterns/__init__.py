"""Design-pattern catalogue, instantiation and detection."""

from boxc.patterns.matcher import Match, detect
from boxc.patterns.templates import (
    PatternTemplate,
    Slot,
    TemplateEdge,
    builtin_patterns,
    get_pattern,
    instantiate,
)

__all__ = [
    "Match",
    "PatternTemplate",
    "Slot",
    "TemplateEdge",
    "builtin_patterns",
    "detect",
    "get_pattern",
    "instantiate",
]
