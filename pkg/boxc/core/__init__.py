"""Core data model: taxonomy, documents and diagnostics."""

from boxc.core.canonical import from_json, to_canonical_json
from boxc.core.diagnostic import Diagnostic, Severity, SourceSpan
from boxc.core.document import (
    Document,
    Edge,
    EdgeKind,
    Frame,
    FrameKind,
    Node,
    Role,
    build,
    frame_contents,
)
from boxc.core.taxonomy import (
    ConceptRef,
    NodeKind,
    Taxonomy,
    builtin_taxonomy,
    is_subconcept,
    kind_of,
    resolve_path,
)

__all__ = [
    "ConceptRef",
    "Diagnostic",
    "Document",
    "Edge",
    "EdgeKind",
    "Frame",
    "FrameKind",
    "Node",
    "NodeKind",
    "Role",
    "Severity",
    "SourceSpan",
    "Taxonomy",
    "build",
    "builtin_taxonomy",
    "frame_contents",
    "from_json",
    "is_subconcept",
    "kind_of",
    "resolve_path",
    "to_canonical_json",
]
