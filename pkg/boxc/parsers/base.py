"""Base parser class."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path

from boxc.core.diagnostic import Diagnostic
from boxc.core.document import Document


@dataclass
class ParseResult:
    """Outcome of parsing one source text."""

    document: Document | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True iff no error diagnostic was produced."""
        return self.document is not None and not any(
            d.is_error for d in self.diagnostics
        )

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]


class Parser(ABC):
    """Base class for diagram source parsers."""

    def parse(self, source: str | Path) -> ParseResult:
        """
        Parse a diagram from a file path or from source text.

        Args:
            source: Either a Path to a source file or the source text itself

        Returns:
            ParseResult with the document or the diagnostics
        """
        if isinstance(source, Path):
            return self.parse_file(source)
        return self.parse_string(source)

    def parse_file(self, file_path: Path) -> ParseResult:
        """
        Parse a diagram from a UTF-8 file.

        Args:
            file_path: Path to the source file

        Returns:
            ParseResult with the document or the diagnostics
        """
        return self.parse_string(file_path.read_text(encoding="utf-8"))

    @abstractmethod
    def parse_string(self, content: str) -> ParseResult:
        """
        Parse a diagram from source text.

        Args:
            content: Source text

        Returns:
            ParseResult with the document or the diagnostics
        """
        pass
