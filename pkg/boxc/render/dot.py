"""Graphviz DOT output for documents."""

import logging
from dataclasses import dataclass
from typing import Literal

from boxc.core.document import Document, Edge, EdgeKind, Frame, FrameKind, natural_key
from boxc.core.taxonomy import NodeKind

logger = logging.getLogger(__name__)

SHAPES = {
    NodeKind.INSTANCE: "box",
    NodeKind.MODEL: "hexagon",
    NodeKind.PROCESS: "ellipse",
    NodeKind.ACTOR: "triangle",
}

ZOOM_STYLE = "style=filled, fillcolor=lightgrey"
PATTERN_STYLE = 'style="dashed,filled", fillcolor=grey'
BADGE_STYLE = "shape=triangle, width=0.4, height=0.4, fixedsize=true"
INDENT = "    "


@dataclass(frozen=True)
class RenderOptions:
    show_pattern_frames: bool = True
    show_zoom_frames: bool = True
    rankdir: Literal["LR", "TB"] = "LR"

    def __post_init__(self) -> None:
        if self.rankdir not in ("LR", "TB"):
            raise ValueError(f"rankdir must be LR or TB, not {self.rankdir!r}")


def dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _edge_statement(edge: Edge) -> str:
    attrs = []
    if edge.role is not None:
        attrs.append(f"label={dot_quote(edge.role.value)}")
    elif edge.label is not None:
        attrs.append(f"label={dot_quote(edge.label.rsplit(':', 1)[-1])}")
    if edge.kind is EdgeKind.INFLUENCE:
        attrs.append("style=dotted")
    elif edge.kind is EdgeKind.MESSAGE:
        attrs.append("style=bold")
    statement = f"{dot_quote(edge.source)} -> {dot_quote(edge.target)}"
    if attrs:
        statement += f" [{', '.join(attrs)}]"
    return statement + ";"


class DotRenderer:
    """Writes one document as a DOT digraph, one statement per line."""

    def __init__(self, doc: Document, opts: RenderOptions) -> None:
        self.doc = doc
        self.opts = opts
        self.lines: list[str] = []

    def emit(self, depth: int, text: str) -> None:
        self.lines.append(INDENT * depth + text)

    def render(self) -> str:
        self.emit(0, f"digraph {dot_quote(self.doc.name)} {{")
        self.emit(1, f"rankdir={self.opts.rankdir};")
        for node in self.doc.nodes:
            label = node.display_name if node.display_name is not None else node.label
            shape = SHAPES[node.kind]
            self.emit(
                1, f"{dot_quote(node.id)} [shape={shape}, label={dot_quote(label)}];"
            )
        for edge in self.doc.edges:
            self.emit(1, _edge_statement(edge))

        nested_badges = self.nested_badges()
        for frame in self.doc.frames:
            if frame.kind is FrameKind.PATTERN and self.opts.show_pattern_frames:
                self.pattern_cluster(frame)
            elif (
                frame.kind is FrameKind.ZOOM
                and self.opts.show_zoom_frames
                and frame.badge not in nested_badges
            ):
                self.zoom_cluster(frame, 1, {frame.id})
        self.emit(0, "}")
        return "\n".join(self.lines) + "\n"

    def nested_badges(self) -> set[str]:
        """Badges of zoom frames drawn inside another zoom frame."""
        members = {m for f in self.doc.zoom_frames() for m in f.members if m != f.badge}
        return {f.badge for f in self.doc.zoom_frames() if f.badge in members}

    def pattern_cluster(self, frame: Frame) -> None:
        self.emit(1, f"subgraph {dot_quote('cluster_' + frame.id)} {{")
        title = dot_quote(frame.pattern_name or "")
        self.emit(2, f"graph [{PATTERN_STYLE}, label={title}];")
        for member in frame.members:
            self.emit(2, f"{dot_quote(member)};")
        self.emit(1, "}")

    def zoom_cluster(self, frame: Frame, depth: int, seen: set[str]) -> None:
        self.emit(depth, f"subgraph {dot_quote('cluster_' + frame.id)} {{")
        self.emit(depth + 1, f"graph [{ZOOM_STYLE}];")
        if frame.badge is not None:
            self.emit(depth + 1, f"{dot_quote(frame.badge)} [{BADGE_STYLE}];")
        inner = sorted(
            (f for f in self.doc.nested_frames(frame.id) if f.id not in seen),
            key=lambda f: natural_key(f.id),
        )
        for nested in inner:
            self.zoom_cluster(nested, depth + 1, seen | {nested.id})
        drawn = {frame.badge} | {f.badge for f in inner}
        for member in frame.members:
            if member not in drawn:
                self.emit(depth + 1, f"{dot_quote(member)};")
        self.emit(depth, "}")


def to_dot(doc: Document, opts: RenderOptions | None = None) -> str:
    """Render a document as byte-deterministic DOT text.

    Node, edge and cluster statements appear in document order, which is
    sorted by id.
    """
    dot = DotRenderer(doc, opts or RenderOptions()).render()
    logger.debug(f"Rendered '{doc.name}' to {len(dot)} bytes of DOT")
    return dot
