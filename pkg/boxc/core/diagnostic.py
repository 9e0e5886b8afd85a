"""Diagnostics shared by the parser and the validator."""

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any


class Severity(str, Enum):
    """Diagnostic severity. Errors sort before warnings."""

    ERROR = "error"
    WARNING = "warning"

    @property
    def rank(self) -> int:
        return 0 if self is Severity.ERROR else 1


# Published code table: code -> (severity, short title)
CODES: dict[str, tuple[Severity, str]] = {
    "P001": (Severity.ERROR, "unexpected token"),
    "P002": (Severity.ERROR, "unterminated block"),
    "P003": (Severity.ERROR, "arrow requires label"),
    "D001": (Severity.ERROR, "duplicate id"),
    "D002": (Severity.ERROR, "dangling reference"),
    "E001": (Severity.ERROR, "unknown concept path"),
    "E002": (Severity.ERROR, "node kind does not match concept"),
    "E003": (Severity.ERROR, "label segment not a descendant"),
    "E004": (Severity.ERROR, "illegal edge"),
    "E005": (Severity.ERROR, "message label is not a symbol"),
    "E006": (Severity.ERROR, "zoom badge missing"),
    "E007": (Severity.ERROR, "individual actor zoom contains actors"),
    "E008": (Severity.ERROR, "frames partially overlap"),
    "W001": (Severity.WARNING, "isolated node"),
    "W002": (Severity.WARNING, "pattern frame matches no built-in pattern"),
}


@dataclass(frozen=True)
class SourceSpan:
    """A 1-based position in a source text."""

    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}")


@dataclass(frozen=True)
class Diagnostic:
    """A parser or validator finding."""

    code: str
    message: str
    span: SourceSpan | None = None
    element: str | None = None
    severity: Severity | None = None

    def __post_init__(self) -> None:
        if self.code not in CODES:
            raise ValueError(f"unpublished diagnostic code {self.code}")
        if self.severity is None:
            object.__setattr__(self, "severity", CODES[self.code][0])

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def sort_key(self) -> tuple[int, str, str]:
        """Validator ordering: (severity, code, element id)."""
        assert self.severity is not None
        return (self.severity.rank, self.code, self.element or "")

    def promoted(self) -> "Diagnostic":
        """Return this finding with warning severity raised to error (--strict)."""
        return Diagnostic(
            code=self.code,
            message=self.message,
            span=self.span,
            element=self.element,
            severity=Severity.ERROR,
        )

    def to_text(self, file: str) -> str:
        """Render as `file:line:col: severity[code]: message`."""
        line, column = (self.span.line, self.span.column) if self.span else (1, 1)
        assert self.severity is not None
        where = f"{file}:{line}:{column}"
        return f"{where}: {self.severity.value}[{self.code}]: {self.message}"

    def to_dict(self, file: str) -> dict[str, Any]:
        assert self.severity is not None
        return {
            "code": self.code,
            "severity": self.severity.value,
            "message": self.message,
            "file": file,
            "line": self.span.line if self.span else 1,
            "column": self.span.column if self.span else 1,
        }

    def to_json_line(self, file: str) -> str:
        return json.dumps(self.to_dict(file), sort_keys=True)
