"""Semantic checks of documents against the taxonomy and notation rules."""

import logging

from boxc.core.diagnostic import Diagnostic
from boxc.core.document import Document, EdgeKind, FrameKind
from boxc.core.errors import NotADescendant, UnknownConcept, UnknownPattern
from boxc.core.taxonomy import (
    ConceptRef,
    NodeKind,
    Taxonomy,
    is_subconcept,
    kind_of,
    resolve_path,
)
from boxc.patterns import builtin_patterns, detect, get_pattern
from boxc.validation.legality import DEFAULT_TABLE, LegalityTable, edge_legal

logger = logging.getLogger(__name__)


class Validator:
    """Collects diagnostics for one document."""

    def __init__(self, tax: Taxonomy, table: LegalityTable = DEFAULT_TABLE) -> None:
        self.tax = tax
        self.table = table

    def validate(self, doc: Document) -> list[Diagnostic]:
        self.doc = doc
        self.spans = doc.spans
        self.findings: list[Diagnostic] = []
        self.check_nodes()
        self.check_edges()
        self.check_zoom_frames()
        self.check_isolated()
        self.check_pattern_frames()
        logger.debug(f"Validated '{doc.name}': {len(self.findings)} finding(s)")
        return sorted(self.findings, key=Diagnostic.sort_key)

    def report(self, code: str, element: str, message: str) -> None:
        self.findings.append(
            Diagnostic(code, message, span=self.spans.get(element), element=element)
        )

    def resolve(self, label: str, element: str) -> ConceptRef | None:
        try:
            return resolve_path(self.tax, label)
        except UnknownConcept as e:
            message = f"unknown concept '{e.name}' in label '{label}'"
            self.report("E001", element, message)
        except NotADescendant as e:
            message = f"'{e.child}' is not a subconcept of '{e.ancestor}' in '{label}'"
            self.report("E003", element, message)
        return None

    def check_nodes(self) -> None:
        for node in self.doc.nodes:
            concept = self.resolve(node.label, node.id)
            if concept is None:
                continue
            root = kind_of(self.tax, concept)
            if root is not node.kind:
                self.report(
                    "E002",
                    node.id,
                    f"node '{node.id}' is declared {node.kind.value} "
                    f"but '{node.label}' is a {root.value} concept",
                )

    def check_edges(self) -> None:
        kinds = {n.id: n.kind for n in self.doc.nodes}
        symbol = self.tax.get("symbol")
        for edge in self.doc.edges:
            element = edge.element_id
            source, target = kinds[edge.source], kinds[edge.target]
            if not edge_legal(self.table, source, edge.kind, target, edge.role):
                what = edge.kind.value
                if edge.role is not None:
                    what += f" ({edge.role.value})"
                self.report(
                    "E004",
                    element,
                    f"{what} edge from {source.value} to {target.value} is not allowed",
                )

            label = None
            if edge.label is not None:
                label = self.resolve(edge.label, element)
            if edge.kind is not EdgeKind.MESSAGE:
                continue
            if edge.label is None:
                self.report("E005", element, f"message {element} has no symbol label")
            elif label is not None and not is_subconcept(self.tax, label, symbol):
                message = f"message label '{edge.label}' is not a symbol"
                self.report("E005", element, message)

    def check_zoom_frames(self) -> None:
        nodes = {n.id: n for n in self.doc.nodes}
        team = self.tax.get("team")
        closures: dict[str, set[str]] = {}
        for frame in self.doc.zoom_frames():
            if frame.badge is None or frame.badge not in nodes:
                self.report("E006", frame.id, f"zoom frame '{frame.id}' has no badge")
                continue
            contents = self.doc.frame_contents(frame.id)
            closures[frame.id] = contents
            badge = nodes[frame.badge]
            is_team = badge.concept is not None and is_subconcept(
                self.tax, badge.concept, team
            )
            individual = badge.kind is NodeKind.ACTOR and not is_team
            actors = sorted(m for m in contents if nodes[m].kind is NodeKind.ACTOR)
            if individual and actors:
                self.report(
                    "E007",
                    frame.id,
                    f"individual actor '{badge.id}' zooms into actors: "
                    f"{', '.join(actors)}",
                )

        ids = sorted(closures)
        for i, first in enumerate(ids):
            for second in ids[i + 1 :]:
                a, b = closures[first], closures[second]
                if a & b and not (a <= b or b <= a):
                    self.report(
                        "E008",
                        first,
                        f"frames '{first}' and '{second}' partially overlap "
                        f"on {', '.join(sorted(a & b))}",
                    )

    def check_isolated(self) -> None:
        badges = {f.badge for f in self.doc.frames if f.badge is not None}
        touched = {n for e in self.doc.edges for n in (e.source, e.target)}
        for node in self.doc.nodes:
            if node.id not in touched and node.id not in badges:
                self.report("W001", node.id, f"node '{node.id}' has no incident edges")

    def check_pattern_frames(self) -> None:
        for frame in self.doc.frames:
            if frame.kind is not FrameKind.PATTERN:
                continue
            try:
                candidates = [get_pattern(frame.pattern_name or "")]
            except UnknownPattern:
                logger.warning(
                    f"Frame '{frame.id}' names unknown pattern '{frame.pattern_name}'"
                )
                candidates = builtin_patterns()
            inner = self.doc.subdocument(frame.members)
            if not any(detect(inner, p, self.tax) for p in candidates):
                self.report(
                    "W002",
                    frame.id,
                    f"members of '{frame.id}' match no built-in pattern",
                )


def validate(doc: Document, tax: Taxonomy) -> list[Diagnostic]:
    """Return all findings sorted by (severity, code, element id).

    An empty list means the document is well-formed.
    """
    return Validator(tax).validate(doc)
