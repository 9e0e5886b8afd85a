"""The diagram graph: typed boxes, typed arrows and frames."""

import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum

from boxc.core.diagnostic import SourceSpan
from boxc.core.errors import IntegrityError, IntegrityIssue, UnknownFrame
from boxc.core.taxonomy import ConceptRef, NodeKind

logger = logging.getLogger(__name__)


class EdgeKind(str, Enum):
    FLOW = "flow"
    ROLE = "role"
    INFLUENCE = "influence"
    MESSAGE = "message"


class Role(str, Enum):
    INITIATES = "initiates"
    SUPPORTS = "supports"


class FrameKind(str, Enum):
    ZOOM = "zoom"
    PATTERN = "pattern"


@dataclass(frozen=True)
class Node:
    """A box.

    `label` is the concept path as written (`infer:deduce`); `concept` is
    the resolved concept when the label resolves. Only the written form
    takes part in equality.
    """

    id: str
    kind: NodeKind
    label: str
    display_name: str | None = None
    concept: ConceptRef | None = field(default=None, compare=False)
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Edge:
    """An arrow between two nodes. Message edges carry a symbol label."""

    source: str
    target: str
    kind: EdgeKind
    role: Role | None = None
    label: str | None = None
    label_concept: ConceptRef | None = field(default=None, compare=False)
    span: SourceSpan | None = field(default=None, compare=False)

    @property
    def element_id(self) -> str:
        return f"{self.source}->{self.target}"

    def sort_key(self) -> tuple[str, str, str, str, str]:
        return (
            self.source,
            self.target,
            self.kind.value,
            self.role.value if self.role else "",
            self.label or "",
        )


@dataclass(frozen=True)
class Frame:
    """A zoom frame (badged) or a pattern frame (named annotation)."""

    id: str
    kind: FrameKind
    members: tuple[str, ...] = ()
    badge: str | None = None
    pattern_name: str | None = None
    span: SourceSpan | None = field(default=None, compare=False)


def natural_key(text: str) -> tuple[tuple[int, int | str], ...]:
    """Sort key that compares digit runs numerically (`p:2` < `p:10`)."""
    return tuple(
        (0, int(part)) if part.isdigit() else (1, part)
        for part in re.split(r"(\d+)", text)
        if part
    )


@dataclass(frozen=True)
class Document:
    """An immutable, integrity-checked diagram. Create it with build()."""

    name: str
    nodes: tuple[Node, ...] = ()
    edges: tuple[Edge, ...] = ()
    frames: tuple[Frame, ...] = ()

    def node(self, node_id: str) -> Node:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    def frame(self, frame_id: str) -> Frame:
        for frame in self.frames:
            if frame.id == frame_id:
                return frame
        raise UnknownFrame(frame_id)

    @property
    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    @property
    def spans(self) -> dict[str, SourceSpan]:
        """Map of element id to source position, for parsed documents."""
        spans: dict[str, SourceSpan] = {}
        for element in (*self.nodes, *self.frames):
            if element.span is not None:
                spans[element.id] = element.span
        for edge in self.edges:
            if edge.span is not None:
                spans.setdefault(edge.element_id, edge.span)
        return spans

    def incident(self, node_id: str) -> list[Edge]:
        return [e for e in self.edges if node_id in (e.source, e.target)]

    def zoom_frames(self) -> list[Frame]:
        return [f for f in self.frames if f.kind is FrameKind.ZOOM]

    def pattern_frames(self) -> list[Frame]:
        return [f for f in self.frames if f.kind is FrameKind.PATTERN]

    def nested_frames(self, frame_id: str) -> list[Frame]:
        """Zoom frames whose badge is a direct member of the given frame."""
        members = set(self.frame(frame_id).members)
        return [
            f
            for f in self.zoom_frames()
            if f.id != frame_id and f.badge is not None and f.badge in members
        ]

    def frame_contents(self, frame_id: str) -> set[str]:
        return frame_contents(self, frame_id)

    def subdocument(self, node_ids: Iterable[str]) -> "Document":
        """Node-induced subdocument without frames."""
        keep = set(node_ids)
        return Document(
            name=self.name,
            nodes=tuple(n for n in self.nodes if n.id in keep),
            edges=tuple(
                e for e in self.edges if e.source in keep and e.target in keep
            ),
        )


def frame_contents(doc: Document, frame_id: str) -> set[str]:
    """Member closure of a frame, following nested zoom frames.

    The zoom badge of the requested frame is never part of its own contents.

    Raises:
        UnknownFrame: no frame has this id
    """
    root = doc.frame(frame_id)
    contents: set[str] = set()
    seen = {root.id}
    pending = [root]
    while pending:
        frame = pending.pop()
        contents.update(frame.members)
        for nested in doc.nested_frames(frame.id):
            if nested.id not in seen:
                seen.add(nested.id)
                pending.append(nested)
    if root.badge is not None:
        contents.discard(root.badge)
    return contents


def build(
    name: str,
    nodes: Iterable[Node],
    edges: Iterable[Edge] = (),
    frames: Iterable[Frame] = (),
) -> Document:
    """Check referential integrity and return a normalized Document.

    Nodes are sorted by id, edges by (source, target, kind, role, label) and
    frames by natural id order; frame members become a sorted tuple.

    Raises:
        IntegrityError: carrying every duplicate id and dangling reference
    """
    nodes = list(nodes)
    edges = list(edges)
    frames = list(frames)
    issues: list[IntegrityIssue] = []

    seen: dict[str, SourceSpan | None] = {}
    for element in (*nodes, *frames):
        if element.id in seen:
            issues.append(
                IntegrityIssue(
                    code="D001",
                    element_id=element.id,
                    message=f"duplicate id '{element.id}'",
                    span=element.span,
                )
            )
        else:
            seen[element.id] = element.span

    node_ids = {n.id for n in nodes}

    def dangling(owner: str, ref: str, span: SourceSpan | None) -> None:
        issues.append(
            IntegrityIssue(
                code="D002",
                element_id=owner,
                message=f"'{owner}' references unknown node '{ref}'",
                span=span,
            )
        )

    for edge in edges:
        for ref in (edge.source, edge.target):
            if ref not in node_ids:
                dangling(edge.element_id, ref, edge.span)

    normalized_frames = []
    for frame in frames:
        if frame.badge is not None and frame.badge not in node_ids:
            dangling(frame.id, frame.badge, frame.span)
        for member in frame.members:
            if member not in node_ids:
                dangling(frame.id, member, frame.span)
        normalized_frames.append(
            Frame(
                id=frame.id,
                kind=frame.kind,
                members=tuple(sorted(set(frame.members))),
                badge=frame.badge,
                pattern_name=frame.pattern_name,
                span=frame.span,
            )
        )

    if issues:
        logger.debug(f"Document '{name}' failed integrity with {len(issues)} issue(s)")
        raise IntegrityError(issues)

    return Document(
        name=name,
        nodes=tuple(sorted(nodes, key=lambda n: n.id)),
        edges=tuple(sorted(edges, key=Edge.sort_key)),
        frames=tuple(sorted(normalized_frames, key=lambda f: natural_key(f.id))),
    )
