"""Tests for the Graphviz DOT renderer."""

from collections.abc import Callable
from pathlib import Path

import pytest

from boxc.core.document import Document, Frame, FrameKind, Node, build
from boxc.core.taxonomy import NodeKind
from boxc.render import RenderOptions, to_dot

from tests.conftest import CORPUS


@pytest.mark.parametrize("name", CORPUS)
def test_golden_output(
    name: str, corpus_doc: Callable[[str], Document], golden_dir: Path
) -> None:
    """Test rendering the corpus reproduces the golden files byte for byte."""
    expected = (golden_dir / name).with_suffix(".dot").read_bytes()
    assert to_dot(corpus_doc(name)).encode("utf-8") == expected


def test_rendering_is_deterministic(
    corpus_doc: Callable[[str], Document],
) -> None:
    """Test two renders of the same document are identical."""
    doc = corpus_doc("distributed_planning.bxl")
    assert to_dot(doc) == to_dot(doc)


def test_frame_toggles(corpus_doc: Callable[[str], Document]) -> None:
    """Test pattern and zoom clusters can be switched off separately."""
    doc = corpus_doc("mobile_learning.bxl")
    no_patterns = to_dot(doc, RenderOptions(show_pattern_frames=False))
    assert "cluster_pattern:" not in no_patterns
    assert "cluster_zoom:team_a" in no_patterns

    no_zoom = to_dot(doc, RenderOptions(show_zoom_frames=False))
    assert "cluster_zoom:" not in no_zoom
    assert "cluster_pattern:federated-learning:1" in no_zoom


def test_rankdir() -> None:
    """Test the layout direction option and its validation."""
    doc = build("r", [Node("a", NodeKind.INSTANCE, "instance:data")])
    assert "    rankdir=TB;\n" in to_dot(doc, RenderOptions(rankdir="TB"))
    with pytest.raises(ValueError):
        RenderOptions(rankdir="RL")  # type: ignore[arg-type]


def test_quoting() -> None:
    """Test names with quotes and backslashes are escaped."""
    doc = build("say \"hi\"", [Node("a", NodeKind.ACTOR, "agent:robot", "R\\2")])
    dot = to_dot(doc)
    assert dot.startswith('digraph "say \\"hi\\"" {\n')
    assert '"a" [shape=triangle, label="R\\\\2"];' in dot


def test_nested_zoom_frames_render_inside() -> None:
    """Test a zoom frame whose badge sits in another frame is drawn inside it."""
    doc = build(
        "nest",
        [
            Node("outer", NodeKind.ACTOR, "actor:team"),
            Node("inner", NodeKind.ACTOR, "actor:team"),
            Node("a", NodeKind.ACTOR, "agent:robot"),
        ],
        frames=[
            Frame("zoom:outer", FrameKind.ZOOM, ("inner",), badge="outer"),
            Frame("zoom:inner", FrameKind.ZOOM, ("a",), badge="inner"),
        ],
    )
    lines = to_dot(doc).splitlines()
    outer = lines.index('    subgraph "cluster_zoom:outer" {')
    assert lines[outer + 3] == '        subgraph "cluster_zoom:inner" {'
    assert lines.count('    subgraph "cluster_zoom:inner" {') == 0


def test_zoomed_process_badge_is_a_triangle() -> None:
    """Test a zoom badge is drawn as a small triangle whatever its kind."""
    doc = build(
        "zoomed",
        [
            Node("p", NodeKind.PROCESS, "infer:deduce"),
            Node("a", NodeKind.INSTANCE, "instance:data"),
        ],
        frames=[Frame("zoom:p", FrameKind.ZOOM, ("a",), badge="p")],
    )
    lines = to_dot(doc).splitlines()
    assert '    "p" [shape=ellipse, label="infer:deduce"];' in lines
    cluster = lines.index('    subgraph "cluster_zoom:p" {')
    assert lines[cluster + 2] == (
        '        "p" [shape=triangle, width=0.4, height=0.4, fixedsize=true];'
    )
    assert lines[cluster + 3] == '        "a";'
