"""Semantic validation of diagram documents."""

from boxc.validation.legality import DEFAULT_TABLE, LegalityTable, edge_legal
from boxc.validation.validator import Validator, validate

__all__ = ["DEFAULT_TABLE", "LegalityTable", "Validator", "edge_legal", "validate"]
