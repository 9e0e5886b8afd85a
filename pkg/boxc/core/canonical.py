"""Canonical JSON form of documents."""

import json
import logging
from typing import Any

from boxc.core.document import (
    Document,
    Edge,
    EdgeKind,
    Frame,
    FrameKind,
    Node,
    Role,
    build,
)
from boxc.core.errors import MalformedJson
from boxc.core.taxonomy import NodeKind, Taxonomy, builtin_taxonomy, resolve_path

logger = logging.getLogger(__name__)


def document_to_dict(doc: Document) -> dict[str, Any]:
    """Serialize to the canonical dictionary (optional fields omitted when unset)."""
    nodes = []
    for node in doc.nodes:
        entry: dict[str, Any] = {
            "id": node.id,
            "kind": node.kind.value,
            "concept": node.label,
        }
        if node.display_name is not None:
            entry["display_name"] = node.display_name
        nodes.append(entry)

    edges = []
    for edge in doc.edges:
        entry = {"from": edge.source, "to": edge.target, "kind": edge.kind.value}
        if edge.role is not None:
            entry["role"] = edge.role.value
        if edge.label is not None:
            entry["label"] = edge.label
        edges.append(entry)

    frames = []
    for frame in doc.frames:
        entry = {
            "id": frame.id,
            "kind": frame.kind.value,
            "members": list(frame.members),
        }
        if frame.badge is not None:
            entry["badge"] = frame.badge
        if frame.pattern_name is not None:
            entry["pattern_name"] = frame.pattern_name
        frames.append(entry)

    return {"name": doc.name, "nodes": nodes, "edges": edges, "frames": frames}


def to_canonical_json(doc: Document) -> str:
    """Byte-deterministic JSON: sorted keys, two-space indent, trailing newline."""
    data = document_to_dict(doc)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(data: dict[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in data:
        raise MalformedJson(f"{where}: missing field '{key}'")
    value = data[key]
    if not isinstance(value, kind):
        raise MalformedJson(f"{where}: field '{key}' must be {kind.__name__}")
    return value


def _optional(data: dict[str, Any], key: str, where: str) -> str | None:
    value = data.get(key)
    if value is not None and not isinstance(value, str):
        raise MalformedJson(f"{where}: field '{key}' must be str")
    return value


def _enum(enum_cls: type, value: str, where: str) -> Any:
    try:
        return enum_cls(value)
    except ValueError:
        raise MalformedJson(f"{where}: invalid {enum_cls.__name__} '{value}'") from None


def _check_frame_ids(frames: list[Frame]) -> None:
    """Frame ids must be the ones the notation assigns.

    Zoom frames are `zoom:<badge>`; pattern frames are `pattern:<name>:<k>`
    with k running 1..n per pattern name.
    """
    ordinals: dict[str, list[int]] = {}
    for frame in frames:
        if frame.kind is FrameKind.ZOOM:
            if frame.badge is None or frame.pattern_name is not None:
                raise MalformedJson(
                    f"frame '{frame.id}': zoom frames take a badge only"
                )
            if frame.id != f"zoom:{frame.badge}":
                raise MalformedJson(
                    f"frame '{frame.id}': expected id 'zoom:{frame.badge}'"
                )
            continue
        name = frame.pattern_name
        if name is None or frame.badge is not None:
            raise MalformedJson(f"frame '{frame.id}': pattern frames take a name only")
        prefix = f"pattern:{name}:"
        ordinal = frame.id.removeprefix(prefix)
        numeric = ordinal.isascii() and ordinal.isdecimal()
        if ordinal == frame.id or not numeric or ordinal.startswith("0"):
            raise MalformedJson(
                f"frame '{frame.id}': expected id '{prefix}<k>' with k from 1"
            )
        ordinals.setdefault(name, []).append(int(ordinal))
    for name, seen in ordinals.items():
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise MalformedJson(
                f"pattern '{name}': frame ordinals must run 1..{len(seen)}"
            )


def from_json(text: str, tax: Taxonomy | None = None) -> Document:
    """Parse canonical JSON back into a built Document.

    Labels are resolved strictly against the taxonomy.

    Raises:
        MalformedJson: the text is not JSON, lacks required fields or uses
            frame ids the notation cannot express
        UnknownConcept, NotADescendant: a label does not resolve
        IntegrityError: the document fails build()
    """
    tax = tax or builtin_taxonomy()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJson(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise MalformedJson("document must be a JSON object")

    name = _require(data, "name", str, "document")
    nodes = []
    for raw in _require(data, "nodes", list, "document"):
        if not isinstance(raw, dict):
            raise MalformedJson("node entries must be objects")
        node_id = _require(raw, "id", str, "node")
        where = f"node '{node_id}'"
        label = _require(raw, "concept", str, where)
        nodes.append(
            Node(
                id=node_id,
                kind=_enum(NodeKind, _require(raw, "kind", str, where), node_id),
                label=label,
                display_name=_optional(raw, "display_name", node_id),
                concept=resolve_path(tax, label),
            )
        )

    edges = []
    for raw in _require(data, "edges", list, "document"):
        if not isinstance(raw, dict):
            raise MalformedJson("edge entries must be objects")
        where = f"edge {raw.get('from')}->{raw.get('to')}"
        role = _optional(raw, "role", where)
        label = _optional(raw, "label", where)
        edges.append(
            Edge(
                source=_require(raw, "from", str, where),
                target=_require(raw, "to", str, where),
                kind=_enum(EdgeKind, _require(raw, "kind", str, where), where),
                role=_enum(Role, role, where) if role is not None else None,
                label=label,
                label_concept=resolve_path(tax, label) if label is not None else None,
            )
        )

    frames = []
    for raw in _require(data, "frames", list, "document"):
        if not isinstance(raw, dict):
            raise MalformedJson("frame entries must be objects")
        frame_id = _require(raw, "id", str, "frame")
        members = _require(raw, "members", list, f"frame '{frame_id}'")
        if not all(isinstance(m, str) for m in members):
            raise MalformedJson(f"frame '{frame_id}': members must be strings")
        frames.append(
            Frame(
                id=frame_id,
                kind=_enum(FrameKind, _require(raw, "kind", str, frame_id), frame_id),
                members=tuple(members),
                badge=_optional(raw, "badge", frame_id),
                pattern_name=_optional(raw, "pattern_name", frame_id),
            )
        )
    _check_frame_ids(frames)

    doc = build(name, nodes, edges, frames)
    logger.debug(f"Loaded document '{name}' from JSON")
    return doc
