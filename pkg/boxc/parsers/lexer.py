"""Tokenizer for the .bxl diagram language."""

import re
from dataclasses import dataclass
from enum import Enum

from boxc.core.diagnostic import Diagnostic, SourceSpan


class TokenType(Enum):
    IDENT = "identifier"
    STRING = "string"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LBRACKET = "'['"
    RBRACKET = "']'"
    COLON = "':'"
    COMMA = "','"
    ARROW = "arrow"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    type: TokenType
    value: str
    span: SourceSpan

    def describe(self) -> str:
        if self.type in (TokenType.IDENT, TokenType.ARROW):
            return f"'{self.value}'"
        if self.type is TokenType.STRING:
            return f'string "{self.value}"'
        return self.type.value


_PUNCTUATION = {
    "{": TokenType.LBRACE,
    "}": TokenType.RBRACE,
    "[": TokenType.LBRACKET,
    "]": TokenType.RBRACKET,
    ":": TokenType.COLON,
    ",": TokenType.COMMA,
}

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_ARROW = re.compile(r"-initiates->|-supports->|->|~>|=>")
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n"}


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    """Split source text into tokens.

    Lexical errors become P001 diagnostics and the offending characters
    are skipped. The token list always ends with EOF.
    """
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    tokens: list[Token] = []
    diagnostics: list[Diagnostic] = []
    pos, line, line_start = 0, 1, 0

    while pos < len(text):
        char = text[pos]
        column = pos - line_start + 1

        if char == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if char.isspace():
            pos += 1
            continue
        if text.startswith("//", pos):
            end = text.find("\n", pos)
            pos = len(text) if end == -1 else end
            continue

        if char in _PUNCTUATION:
            tokens.append(Token(_PUNCTUATION[char], char, SourceSpan(line, column)))
            pos += 1
            continue

        if arrow := _ARROW.match(text, pos):
            value = arrow.group()
            span = SourceSpan(line, column, len(value))
            tokens.append(Token(TokenType.ARROW, value, span))
            pos = arrow.end()
            continue

        if ident := _IDENT.match(text, pos):
            value = ident.group()
            span = SourceSpan(line, column, len(value))
            tokens.append(Token(TokenType.IDENT, value, span))
            pos = ident.end()
            continue

        if char == '"':
            chars: list[str] = []
            cursor = pos + 1
            while cursor < len(text) and text[cursor] not in '"\n':
                escaped = text[cursor + 1 : cursor + 2]
                if text[cursor] == "\\" and escaped not in ("", "\n"):
                    chars.append(_ESCAPES.get(escaped, escaped))
                    cursor += 2
                else:
                    chars.append(text[cursor])
                    cursor += 1
            if cursor >= len(text) or text[cursor] != '"':
                span = SourceSpan(line, column)
                message = "unterminated string literal"
                diagnostics.append(Diagnostic("P001", message, span))
                pos = cursor
                continue
            span = SourceSpan(line, column, cursor - pos + 1)
            tokens.append(Token(TokenType.STRING, "".join(chars), span))
            pos = cursor + 1
            continue

        message = f"unexpected character '{char}'"
        diagnostics.append(Diagnostic("P001", message, SourceSpan(line, column)))
        pos += 1

    # EOF sits right after the last token so its span stays on a source line.
    last = tokens[-1].span if tokens else SourceSpan(1, 1, 0)
    eof = SourceSpan(last.line, last.column + last.length)
    tokens.append(Token(TokenType.EOF, "", eof))
    return tokens, diagnostics
