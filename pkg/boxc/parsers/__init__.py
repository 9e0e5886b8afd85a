"""Parsers and formatter for the .bxl diagram language."""

from boxc.parsers.base import Parser, ParseResult
from boxc.parsers.bxl import BxlParser, parse, parse_file
from boxc.parsers.formatter import format_document

__all__ = [
    "BxlParser",
    "ParseResult",
    "Parser",
    "format_document",
    "parse",
    "parse_file",
]
