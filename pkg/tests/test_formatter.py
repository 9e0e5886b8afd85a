"""Tests for the canonical .bxl formatter."""

import random
from collections.abc import Callable

import pytest

from boxc.core.canonical import from_json, to_canonical_json
from boxc.core.document import Document, Frame, FrameKind, Node, build
from boxc.core.taxonomy import NodeKind, Taxonomy
from boxc.parsers import format_document, parse

from tests.conftest import CORPUS
from tests.generators import random_document


def reparse(text: str, tax: Taxonomy) -> Document:
    result = parse(text, tax)
    assert result.ok, [d.to_text("<formatted>") for d in result.diagnostics]
    assert result.document is not None
    return result.document


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_round_trip(
    name: str, corpus_doc: Callable[[str], Document], tax: Taxonomy
) -> None:
    """Test parse(format(d)) == d and formatting is idempotent."""
    doc = corpus_doc(name)
    text = format_document(doc)
    again = reparse(text, tax)
    assert again == doc
    assert format_document(again) == text


def test_random_round_trip(tax: Taxonomy) -> None:
    """Test the round trip on generated documents, frames and escapes included."""
    rng = random.Random(20240611)
    for _ in range(500):
        doc = random_document(rng, tax=tax)
        text = format_document(doc)
        assert reparse(text, tax) == doc, text


def test_json_input_round_trip(tax: Taxonomy) -> None:
    """Test documents accepted from JSON print and parse back unchanged."""
    rng = random.Random(77)
    for _ in range(200):
        doc = from_json(to_canonical_json(random_document(rng, tax=tax)), tax)
        assert reparse(format_document(doc), tax) == doc


def test_team_sugar(corpus_doc: Callable[[str], Document]) -> None:
    """Test zoom frames over plain team nodes print as team blocks."""
    text = format_document(corpus_doc("mobile_learning.bxl"))
    assert (
        "    team team_a {\n"
        "        process learn : infer:induce\n"
        "        instance local_data : instance:data\n"
        "        actor member : agent:software\n"
    ) in text
    assert "zoom team_a" not in text


def test_layout() -> None:
    """Test sections, indentation and escaping of the canonical form."""
    doc = build(
        'say "hi"',
        [
            Node("b", NodeKind.PROCESS, "infer:deduce"),
            Node("a", NodeKind.INSTANCE, "instance:data", "two\nlines"),
        ],
        frames=[Frame("pattern:p:1", FrameKind.PATTERN, ("a",), pattern_name="p")],
    )
    assert format_document(doc) == (
        'diagram "say \\"hi\\"" {\n'
        '    instance a : instance:data as "two\\nlines"\n'
        "    process b : infer:deduce\n"
        '    pattern "p" { a }\n'
        "}\n"
    )


def test_named_team_stays_a_zoom_frame(tax: Taxonomy) -> None:
    """Test a team node with a display name keeps its raw zoom frame."""
    doc = build(
        "named",
        [
            Node("crew", NodeKind.ACTOR, "actor:team", "The crew"),
            Node("a", NodeKind.ACTOR, "agent:robot"),
        ],
        frames=[Frame("zoom:crew", FrameKind.ZOOM, ("a",), badge="crew")],
    )
    text = format_document(doc)
    assert "    zoom crew { a }\n" in text
    assert "team crew" not in text
    assert reparse(text, tax) == doc


def test_mutual_teams_do_not_cycle(tax: Taxonomy) -> None:
    """Test two teams zooming into each other print one block and one frame."""
    doc = build(
        "mutual",
        [
            Node("x", NodeKind.ACTOR, "actor:team"),
            Node("y", NodeKind.ACTOR, "actor:team"),
        ],
        frames=[
            Frame("zoom:x", FrameKind.ZOOM, ("y",), badge="x"),
            Frame("zoom:y", FrameKind.ZOOM, ("x",), badge="y"),
        ],
    )
    text = format_document(doc)
    assert "    team x {\n        actor y : actor:team\n    }\n" in text
    assert "    zoom y { x }\n" in text
    assert reparse(text, tax) == doc
