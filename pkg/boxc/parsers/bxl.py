"""Recursive-descent parser for the .bxl diagram language."""

import logging
from collections import Counter
from pathlib import Path

from boxc.core.diagnostic import Diagnostic, SourceSpan
from boxc.core.document import Edge, EdgeKind, Frame, FrameKind, Node, Role, build
from boxc.core.errors import IntegrityError, TaxonomyError
from boxc.core.taxonomy import (
    ConceptRef,
    NodeKind,
    Taxonomy,
    builtin_taxonomy,
    resolve_path,
)
from boxc.parsers.base import Parser, ParseResult
from boxc.parsers.lexer import Token, TokenType, tokenize

logger = logging.getLogger(__name__)

KIND_KEYWORDS = {kind.value: kind for kind in NodeKind}

ARROWS: dict[str, tuple[EdgeKind, Role | None]] = {
    "->": (EdgeKind.FLOW, None),
    "~>": (EdgeKind.INFLUENCE, None),
    "=>": (EdgeKind.MESSAGE, None),
    "-initiates->": (EdgeKind.ROLE, Role.INITIATES),
    "-supports->": (EdgeKind.ROLE, Role.SUPPORTS),
}

TEAM_LABEL = "actor:team"


class _Abort(Exception):
    """Unwinds out of a malformed item."""

    def __init__(self, diagnostic: Diagnostic) -> None:
        self.diagnostic = diagnostic
        super().__init__(diagnostic.message)


class _Reader:
    """Parser state for a single source text."""

    def __init__(self, tokens: list[Token], tax: Taxonomy) -> None:
        self.tokens = tokens
        self.tax = tax
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []
        self.nodes: list[Node] = []
        self.edges: list[Edge] = []
        self.frames: list[Frame] = []
        self.pattern_ordinals: Counter[str] = Counter()

    # -- token helpers -------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        if token.type is not TokenType.EOF:
            self.pos += 1
        return token

    def expect(self, token_type: TokenType, what: str) -> Token:
        token = self.peek()
        if token.type is not token_type:
            message = f"expected {what}, found {token.describe()}"
            raise _Abort(Diagnostic("P001", message, token.span))
        return self.advance()

    def error(self, code: str, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic(code, message, span))

    def resolve(self, label: str) -> ConceptRef | None:
        try:
            return resolve_path(self.tax, label)
        except TaxonomyError:
            # Reported by the validator with the node's span.
            return None

    # -- structure -----------------------------------------------------

    def at_item_start(self, top_level: bool) -> bool:
        token, following = self.peek(), self.peek(1)
        if token.type is not TokenType.IDENT:
            return False
        if following.type is TokenType.IDENT and (
            token.value in KIND_KEYWORDS or token.value == "team"
        ):
            return True
        if not top_level:
            return False
        if following.type is TokenType.ARROW:
            return True
        if token.value == "zoom" and following.type is TokenType.IDENT:
            return self.peek(2).type is TokenType.LBRACE
        return token.value == "pattern" and following.type is TokenType.STRING

    def synchronize(self, start: int, top_level: bool) -> None:
        """Skip to the next item start or the end of the enclosing block."""
        if self.pos == start:
            self.advance()
        depth = 0
        while self.peek().type is not TokenType.EOF:
            token = self.peek()
            if token.type is TokenType.RBRACE:
                if depth == 0:
                    return
                depth -= 1
            elif token.type is TokenType.LBRACE:
                depth += 1
            elif depth == 0 and self.at_item_start(top_level):
                return
            self.advance()

    def parse_document(self) -> str | None:
        token = self.peek()
        if token.type is not TokenType.IDENT or token.value != "diagram":
            message = f"expected 'diagram', found {token.describe()}"
            self.error("P001", message, token.span)
            return None
        self.advance()
        try:
            name = self.expect(TokenType.STRING, "diagram name").value
            opening = self.expect(TokenType.LBRACE, "'{'")
        except _Abort as e:
            self.diagnostics.append(e.diagnostic)
            return None

        self.parse_items(top_level=True)
        if self.peek().type is TokenType.EOF:
            self.error("P002", f"unterminated block 'diagram \"{name}\"'", opening.span)
            return name
        self.advance()
        trailing = self.peek()
        if trailing.type is not TokenType.EOF:
            message = f"unexpected {trailing.describe()} after diagram"
            self.error("P001", message, trailing.span)
        return name

    def parse_items(self, top_level: bool) -> list[str]:
        """Parse items up to the closing brace; returns the ids declared here."""
        declared: list[str] = []
        while self.peek().type not in (TokenType.RBRACE, TokenType.EOF):
            start = self.pos
            try:
                declared.extend(self.parse_item(top_level))
            except _Abort as e:
                self.diagnostics.append(e.diagnostic)
                self.synchronize(start, top_level)
        return declared

    def parse_item(self, top_level: bool) -> list[str]:
        token, following = self.peek(), self.peek(1)
        if token.type is TokenType.IDENT and following.type is TokenType.IDENT:
            if token.value in KIND_KEYWORDS:
                return [self.parse_node()]
            if token.value == "team":
                return [self.parse_team()]
        if top_level and self.at_item_start(top_level):
            if following.type is TokenType.ARROW:
                self.parse_edge()
            elif token.value == "zoom":
                self.parse_zoom()
            else:
                self.parse_pattern()
            return []
        where = "" if top_level else " inside team block"
        message = f"unexpected {token.describe()}{where}"
        raise _Abort(Diagnostic("P001", message, token.span))

    def parse_label(self) -> str:
        parts = [self.expect(TokenType.IDENT, "concept name").value]
        while self.peek().type is TokenType.COLON:
            self.advance()
            parts.append(self.expect(TokenType.IDENT, "concept name").value)
        return ":".join(parts)

    def parse_node(self) -> str:
        kind = KIND_KEYWORDS[self.advance().value]
        ident = self.advance()
        self.expect(TokenType.COLON, "':'")
        label = self.parse_label()
        display_name = None
        if (
            self.peek().type is TokenType.IDENT
            and self.peek().value == "as"
            and self.peek(1).type is TokenType.STRING
        ):
            self.advance()
            display_name = self.advance().value
        self.nodes.append(
            Node(
                id=ident.value,
                kind=kind,
                label=label,
                display_name=display_name,
                concept=self.resolve(label),
                span=ident.span,
            )
        )
        return ident.value

    def parse_team(self) -> str:
        self.advance()
        ident = self.advance()
        opening = self.expect(TokenType.LBRACE, "'{'")
        members = self.parse_items(top_level=False)
        if self.peek().type is TokenType.EOF:
            self.error("P002", f"unterminated block 'team {ident.value}'", opening.span)
        else:
            self.advance()
        self.nodes.append(
            Node(
                id=ident.value,
                kind=NodeKind.ACTOR,
                label=TEAM_LABEL,
                concept=self.resolve(TEAM_LABEL),
                span=ident.span,
            )
        )
        self.frames.append(
            Frame(
                id=f"zoom:{ident.value}",
                kind=FrameKind.ZOOM,
                members=tuple(members),
                badge=ident.value,
                span=ident.span,
            )
        )
        return ident.value

    def parse_edge(self) -> None:
        source = self.advance()
        arrow = self.advance()
        target = self.expect(TokenType.IDENT, "edge target")
        label = None
        if self.peek().type is TokenType.LBRACKET:
            self.advance()
            label = self.parse_label()
            self.expect(TokenType.RBRACKET, "']'")
        kind, role = ARROWS[arrow.value]
        if kind is EdgeKind.MESSAGE and label is None:
            raise _Abort(
                Diagnostic("P003", "'=>' requires a [symbol] label", arrow.span)
            )
        self.edges.append(
            Edge(
                source=source.value,
                target=target.value,
                kind=kind,
                role=role,
                label=label,
                label_concept=self.resolve(label) if label is not None else None,
                span=arrow.span,
            )
        )

    def parse_members(self, opening: Token) -> tuple[str, ...] | None:
        """Parse `a, b, c }`; errors skip to the closing brace and drop the frame."""
        members: list[str] = []
        try:
            if self.peek().type is not TokenType.RBRACE:
                members.append(self.expect(TokenType.IDENT, "member id").value)
                while self.peek().type is TokenType.COMMA:
                    self.advance()
                    members.append(self.expect(TokenType.IDENT, "member id").value)
            if self.peek().type is TokenType.EOF:
                self.error("P002", "unterminated member list", opening.span)
                return None
            self.expect(TokenType.RBRACE, "',' or '}'")
        except _Abort as e:
            self.diagnostics.append(e.diagnostic)
            while self.peek().type not in (TokenType.RBRACE, TokenType.EOF):
                self.advance()
            if self.peek().type is TokenType.EOF:
                self.error("P002", "unterminated member list", opening.span)
            else:
                self.advance()
            return None
        return tuple(members)

    def parse_zoom(self) -> None:
        keyword = self.advance()
        badge = self.advance()
        opening = self.advance()
        members = self.parse_members(opening)
        if members is not None:
            self.frames.append(
                Frame(
                    id=f"zoom:{badge.value}",
                    kind=FrameKind.ZOOM,
                    members=members,
                    badge=badge.value,
                    span=keyword.span,
                )
            )

    def parse_pattern(self) -> None:
        keyword = self.advance()
        name = self.advance().value
        opening = self.expect(TokenType.LBRACE, "'{'")
        members = self.parse_members(opening)
        self.pattern_ordinals[name] += 1
        if members is not None:
            self.frames.append(
                Frame(
                    id=f"pattern:{name}:{self.pattern_ordinals[name]}",
                    kind=FrameKind.PATTERN,
                    members=members,
                    pattern_name=name,
                    span=keyword.span,
                )
            )


def _position(diagnostic: Diagnostic) -> tuple[int, int, str]:
    span = diagnostic.span or SourceSpan(1, 1)
    return (span.line, span.column, diagnostic.code)


class BxlParser(Parser):
    """Parser for `.bxl` diagram sources."""

    def __init__(self, tax: Taxonomy | None = None) -> None:
        self.tax = tax or builtin_taxonomy()

    def parse_string(self, content: str) -> ParseResult:
        """
        Parse source text into a Document.

        Syntax errors are recovered at item boundaries so one run reports
        every malformed item. Integrity checks run only on syntactically
        clean input.

        Args:
            content: .bxl source text (LF or CRLF line endings)

        Returns:
            ParseResult with the document, or None and the diagnostics
        """
        tokens, diagnostics = tokenize(content)
        reader = _Reader(tokens, self.tax)
        reader.diagnostics.extend(diagnostics)
        name = reader.parse_document()

        if reader.diagnostics or name is None:
            found = sorted(reader.diagnostics, key=_position)
            logger.info(f"Parse failed with {len(found)} diagnostic(s)")
            return ParseResult(document=None, diagnostics=found)

        try:
            doc = build(name, reader.nodes, reader.edges, reader.frames)
        except IntegrityError as e:
            found = [
                Diagnostic(
                    code=issue.code,
                    message=issue.message,
                    span=issue.span,
                    element=issue.element_id,
                )
                for issue in e.issues
            ]
            logger.info(f"Document '{name}' failed integrity checks: {len(found)}")
            return ParseResult(document=None, diagnostics=sorted(found, key=_position))

        logger.info(
            f"Parsed '{name}': {len(doc.nodes)} nodes, "
            f"{len(doc.edges)} edges, {len(doc.frames)} frames"
        )
        return ParseResult(document=doc)


def parse(text: str, tax: Taxonomy | None = None) -> ParseResult:
    """Parse .bxl source text."""
    return BxlParser(tax).parse_string(text)


def parse_file(path: str | Path, tax: Taxonomy | None = None) -> ParseResult:
    """Parse a .bxl file."""
    return BxlParser(tax).parse_file(Path(path))
