"""Tests for the .bxl lexer and parser."""

from pathlib import Path

import pytest

from boxc.core.document import EdgeKind, FrameKind, Role
from boxc.core.taxonomy import NodeKind, Taxonomy
from boxc.parsers import BxlParser, parse, parse_file
from boxc.parsers.lexer import TokenType, tokenize

from tests.conftest import CORPUS, CORPUS_DIR

SOURCE = """\
// A tiny pipeline
diagram "tiny" {
    instance raw : instance:data as "say \\"hi\\"\\n"
    process learn : infer:induce
    model net : model:statistical
    actor bob : agent:software

    raw -> learn
    learn -> net
    bob -initiates-> learn
    learn ~> net
    pattern "1a-train" { raw, learn, net }
}
"""


def codes(text: str, tax: Taxonomy) -> list[str]:
    return [d.code for d in parse(text, tax).diagnostics]


def test_tokenize_arrows_and_strings() -> None:
    """Test arrows lex greedily and strings decode their escapes."""
    tokens, diagnostics = tokenize('a -initiates-> b "x\\"y" // gone')
    assert diagnostics == []
    assert [t.type for t in tokens] == [
        TokenType.IDENT,
        TokenType.ARROW,
        TokenType.IDENT,
        TokenType.STRING,
        TokenType.EOF,
    ]
    assert tokens[1].value == "-initiates->"
    assert tokens[3].value == 'x"y'


def test_parse_source(tax: Taxonomy) -> None:
    """Test a small diagram parses into the expected document."""
    result = parse(SOURCE, tax)
    assert result.ok
    doc = result.document
    assert doc is not None
    assert doc.name == "tiny"
    assert doc.node_ids == ["bob", "learn", "net", "raw"]
    assert doc.node("raw").display_name == 'say "hi"\n'
    assert doc.node("learn").concept == tax.get("induce")
    assert doc.node("learn").span is not None
    assert doc.node("learn").span.line == 4

    kinds = {(e.source, e.target): (e.kind, e.role) for e in doc.edges}
    assert kinds[("bob", "learn")] == (EdgeKind.ROLE, Role.INITIATES)
    assert (EdgeKind.INFLUENCE, None) in kinds.values()

    (frame,) = doc.frames
    assert frame.id == "pattern:1a-train:1"
    assert frame.pattern_name == "1a-train"


def test_crlf_equals_lf(tax: Taxonomy) -> None:
    """Test CRLF line endings produce the same document."""
    lf = parse(SOURCE, tax).document
    crlf = parse(SOURCE.replace("\n", "\r\n"), tax).document
    assert lf is not None and lf == crlf


def test_team_block_desugars(tax: Taxonomy) -> None:
    """Test a team block declares an actor:team node and its zoom frame."""
    text = """diagram "t" {
    team crew {
        actor a : agent:robot
        team inner {
            actor b : agent:robot
        }
    }
}"""
    doc = parse(text, tax).document
    assert doc is not None
    crew = doc.node("crew")
    assert crew.kind is NodeKind.ACTOR and crew.label == "actor:team"
    assert doc.frame("zoom:crew").members == ("a", "inner")
    assert doc.frame("zoom:crew").badge == "crew"
    assert doc.frame("zoom:inner").members == ("b",)
    assert doc.frame_contents("zoom:crew") == {"a", "inner", "b"}


def test_pattern_ordinals_count_per_name(tax: Taxonomy) -> None:
    """Test repeated pattern frames get ordinals in declaration order."""
    text = """diagram "p" {
    instance a : instance:data
    pattern "x" { a }
    pattern "y" { a }
    pattern "x" { }
}"""
    doc = parse(text, tax).document
    assert doc is not None
    assert [f.id for f in doc.frames] == ["pattern:x:1", "pattern:x:2", "pattern:y:1"]
    assert all(f.kind is FrameKind.PATTERN for f in doc.frames)


def test_unresolved_labels_are_left_to_the_validator(tax: Taxonomy) -> None:
    """Test unknown concept paths parse with no concept attached."""
    result = parse('diagram "u" { instance a : data:nonsense }', tax)
    assert result.ok
    assert result.document is not None
    assert result.document.node("a").concept is None


@pytest.mark.parametrize("k", [1, 2, 5])
def test_recovery_reports_every_malformed_item(k: int, tax: Taxonomy) -> None:
    """Test k malformed items give k diagnostics and no document."""
    lines = ['diagram "r" {']
    bad_lines = []
    for i in range(k):
        lines.append(f"    process ok{i} : infer:deduce")
        lines.append(f"    instance bad{i} instance:data")
        bad_lines.append(len(lines))
    lines.append("}")
    result = parse("\n".join(lines), tax)

    assert result.document is None
    assert [d.code for d in result.diagnostics] == ["P001"] * k
    assert [d.span.line for d in result.diagnostics if d.span] == bad_lines


def test_error_inside_team_block(tax: Taxonomy) -> None:
    """Test recovery inside a team block resumes at the next member."""
    text = """diagram "t" {
    team crew {
        oops
        actor a : agent:robot
    }
}"""
    result = parse(text, tax)
    assert [d.code for d in result.diagnostics] == ["P001"]
    assert "inside team block" in result.diagnostics[0].message


def test_unterminated_block(tax: Taxonomy) -> None:
    """Test a missing closing brace reports P002 at the opening brace."""
    result = parse('diagram "x" {\n    instance a : instance:data\n', tax)
    assert [d.code for d in result.diagnostics] == ["P002"]
    span = result.diagnostics[0].span
    assert span is not None and (span.line, span.column) == (1, 13)


def test_message_requires_label(tax: Taxonomy) -> None:
    """Test an unlabeled => reports P003 at the arrow."""
    text = """diagram "m" {
    actor a : agent:software
    actor b : agent:software
    a => b
}"""
    result = parse(text, tax)
    assert [d.code for d in result.diagnostics] == ["P003"]
    span = result.diagnostics[0].span
    assert span is not None and (span.line, span.column) == (4, 7)


def test_lexical_errors(tax: Taxonomy) -> None:
    """Test stray characters and unterminated strings are P001."""
    assert codes('diagram "x" { instance a : instance:data $ }', tax) == ["P001"]
    assert "P001" in codes('diagram "x {\n}', tax)


def test_trailing_tokens(tax: Taxonomy) -> None:
    """Test text after the diagram is rejected."""
    assert codes('diagram "x" { } extra', tax) == ["P001"]


def test_integrity_errors_from_parse(tax: Taxonomy) -> None:
    """Test duplicates and dangling references surface as D001 and D002."""
    text = """diagram "d" {
    instance a : instance:data
    instance a : instance:data
    a -> ghost
}"""
    result = parse(text, tax)
    assert result.document is None
    assert sorted(d.code for d in result.diagnostics) == ["D001", "D002"]


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_parses(name: str, tax: Taxonomy) -> None:
    """Test every corpus diagram parses without diagnostics."""
    result = parse_file(CORPUS_DIR / name, tax)
    assert result.ok
    assert result.diagnostics == []


def test_parser_accepts_paths_and_text(tax: Taxonomy, tmp_path: Path) -> None:
    """Test Parser.parse dispatches on its argument type."""
    path = tmp_path / "tiny.bxl"
    path.write_text(SOURCE, encoding="utf-8")
    parser = BxlParser(tax)
    assert parser.parse(path).document == parser.parse(SOURCE).document
