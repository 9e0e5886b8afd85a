"""Canonical .bxl pretty-printer."""

import logging

from boxc.core.document import Document, Edge, EdgeKind, Frame, FrameKind, Node
from boxc.core.taxonomy import NodeKind
from boxc.parsers.bxl import ARROWS, TEAM_LABEL

logger = logging.getLogger(__name__)

INDENT = "    "

_GLYPHS = {value: glyph for glyph, value in ARROWS.items()}


def quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _team_frames(doc: Document) -> dict[str, Frame]:
    """Zoom frames that can be written back as `team` blocks, keyed by badge.

    A frame qualifies when its badge is a plain `actor:team` declaration and
    none of its members already belongs to another team block. Claiming a
    member that is an ancestor team would create a cycle, so those frames
    stay raw zoom frames.
    """
    nodes = {n.id: n for n in doc.nodes}
    candidates = {
        f.badge: f
        for f in doc.zoom_frames()
        if f.badge is not None
        and f.id == f"zoom:{f.badge}"
        and nodes[f.badge].kind is NodeKind.ACTOR
        and nodes[f.badge].label == TEAM_LABEL
        and nodes[f.badge].display_name is None
    }

    owner: dict[str, str] = {}
    accepted: dict[str, Frame] = {}
    for badge in sorted(candidates):
        frame = candidates[badge]
        if badge in frame.members or any(m in owner for m in frame.members):
            continue
        # Walk up the owner chain of the badge: it must not pass through a member.
        ancestor, cyclic = owner.get(badge), False
        while ancestor is not None:
            if ancestor in frame.members:
                cyclic = True
                break
            ancestor = owner.get(ancestor)
        if cyclic:
            continue
        accepted[badge] = frame
        for member in frame.members:
            owner[member] = badge
    return accepted


def _node_line(node: Node) -> str:
    line = f"{node.kind.value} {node.id} : {node.label}"
    if node.display_name is not None:
        line += f" as {quote(node.display_name)}"
    return line


def _edge_line(edge: Edge) -> str:
    glyph = _GLYPHS[(edge.kind, edge.role)]
    line = f"{edge.source} {glyph} {edge.target}"
    if edge.label is not None:
        line += f" [{edge.label}]"
    return line


def _frame_line(frame: Frame) -> str:
    members = ", ".join(frame.members)
    body = f"{{ {members} }}" if members else "{ }"
    if frame.kind is FrameKind.ZOOM:
        return f"zoom {frame.badge} {body}"
    return f"pattern {quote(frame.pattern_name or '')} {body}"


def format_document(doc: Document) -> str:
    """Pretty-print a document as canonical .bxl text.

    Sections appear as nodes, edges, frames; each sorted by id. Zoom frames
    over `actor:team` nodes are written as `team` blocks.
    """
    nodes = {n.id: n for n in doc.nodes}
    teams = _team_frames(doc)
    owned = {member for frame in teams.values() for member in frame.members}
    lines = [f"diagram {quote(doc.name)} {{"]

    def emit_node(node_id: str, depth: int) -> None:
        pad = INDENT * depth
        if node_id in teams:
            lines.append(f"{pad}team {node_id} {{")
            for member in teams[node_id].members:
                emit_node(member, depth + 1)
            lines.append(f"{pad}}}")
        else:
            lines.append(pad + _node_line(nodes[node_id]))

    for node in doc.nodes:
        if node.id not in owned:
            emit_node(node.id, 1)

    for edge in doc.edges:
        if edge.kind is EdgeKind.MESSAGE and edge.label is None:
            logger.warning(f"Message edge {edge.element_id} has no label")
        lines.append(INDENT + _edge_line(edge))

    sugared = {frame.id for frame in teams.values()}
    for frame in doc.frames:
        if frame.id not in sugared:
            lines.append(INDENT + _frame_line(frame))

    lines.append("}")
    return "\n".join(lines) + "\n"
