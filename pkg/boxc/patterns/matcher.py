"""Subsumption-aware detection of pattern occurrences."""

import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
from networkx.algorithms import isomorphism

from boxc.core.document import Document, Edge
from boxc.core.taxonomy import Taxonomy, builtin_taxonomy, is_subconcept
from boxc.patterns.templates import PatternTemplate, TemplateEdge

logger = logging.getLogger(__name__)


@dataclass
class Match:
    """An injective binding of template slots to document node ids."""

    pattern: str
    binding: dict[str, str] = field(default_factory=dict)

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(self.binding.values())

    def to_dict(self) -> dict[str, Any]:
        return {"pattern": self.pattern, "binding": dict(self.binding)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def edge_fits(
    tax: Taxonomy, doc_edge: Mapping[str, Any], slot_edge: Mapping[str, Any]
) -> bool:
    """Same kind and role; the template label must subsume the document label."""
    if doc_edge["kind"] is not slot_edge["kind"]:
        return False
    if doc_edge["role"] is not slot_edge["role"]:
        return False
    wanted = slot_edge["label"]
    if wanted is None:
        return True
    found = doc_edge["label"]
    return found is not None and is_subconcept(tax, found, wanted)


def _assign(
    tax: Taxonomy,
    doc_edges: list[Mapping[str, Any]],
    slot_edges: list[Mapping[str, Any]],
    used: set[int],
) -> bool:
    """Backtracking injective assignment of parallel template edges."""
    if not slot_edges:
        return True
    head, rest = slot_edges[0], slot_edges[1:]
    for index, candidate in enumerate(doc_edges):
        if index not in used and edge_fits(tax, candidate, head):
            used.add(index)
            if _assign(tax, doc_edges, rest, used):
                return True
            used.discard(index)
    return False


def _edge_attrs(edge: Edge | TemplateEdge) -> dict[str, Any]:
    if isinstance(edge, Edge):
        return {"kind": edge.kind, "role": edge.role, "label": edge.label_concept}
    return {"kind": edge.kind, "role": edge.role, "label": edge.label}


def document_graph(doc: Document) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph()
    for node in doc.nodes:
        graph.add_node(node.id, kind=node.kind, concept=node.concept)
    for edge in doc.edges:
        graph.add_edge(edge.source, edge.target, **_edge_attrs(edge))
    return graph


def template_graph(pattern: PatternTemplate) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph()
    for slot in pattern.slots:
        graph.add_node(slot.id, kind=slot.kind, concept=slot.constraint)
    for edge in pattern.edges:
        graph.add_edge(edge.source, edge.target, **_edge_attrs(edge))
    return graph


def binding_holds(
    doc: Document, pattern: PatternTemplate, binding: Mapping[str, str], tax: Taxonomy
) -> bool:
    """Check one candidate binding against every slot and template edge."""
    if len(set(binding.values())) != len(binding):
        return False
    nodes = {n.id: n for n in doc.nodes}
    for slot in pattern.slots:
        node = nodes.get(binding.get(slot.id, ""))
        if node is None or node.kind is not slot.kind or node.concept is None:
            return False
        if not is_subconcept(tax, node.concept, slot.constraint):
            return False

    pairs: dict[tuple[str, str], list[TemplateEdge]] = {}
    for edge in pattern.edges:
        pairs.setdefault((binding[edge.source], binding[edge.target]), []).append(edge)
    for (source, target), wanted in pairs.items():
        present = [
            _edge_attrs(e)
            for e in doc.edges
            if e.source == source and e.target == target
        ]
        if not _assign(tax, present, [_edge_attrs(e) for e in wanted], set()):
            return False
    return True


def detect(
    doc: Document, pattern: PatternTemplate, tax: Taxonomy | None = None
) -> list[Match]:
    """Find every occurrence of a template in a document.

    Matching is non-induced: extra document edges among bound nodes are
    allowed. Bindings over the same node set count once (the one whose
    bound ids, in slot order, sort first). Frames are ignored.

    Args:
        doc: Document to search
        pattern: Template to look for
        tax: Taxonomy for subsumption (defaults to the built-in one)

    Returns:
        Matches sorted by bound node ids in slot order
    """
    tax = tax or builtin_taxonomy()

    def node_match(doc_node: Mapping[str, Any], slot: Mapping[str, Any]) -> bool:
        return (
            doc_node["kind"] is slot["kind"]
            and doc_node["concept"] is not None
            and is_subconcept(tax, doc_node["concept"], slot["concept"])
        )

    def edge_match(
        doc_edges: Mapping[Any, Mapping[str, Any]],
        slot_edges: Mapping[Any, Mapping[str, Any]],
    ) -> bool:
        return _assign(tax, list(doc_edges.values()), list(slot_edges.values()), set())

    matcher = isomorphism.MultiDiGraphMatcher(
        document_graph(doc),
        template_graph(pattern),
        node_match=node_match,
        edge_match=edge_match,
    )

    best: dict[frozenset[str], tuple[str, ...]] = {}
    for mapping in matcher.subgraph_monomorphisms_iter():
        binding = {slot: node for node, slot in mapping.items()}
        if not binding_holds(doc, pattern, binding, tax):
            continue
        bound = tuple(binding[s] for s in pattern.slot_ids)
        key = frozenset(bound)
        if key not in best or bound < best[key]:
            best[key] = bound

    matches = [
        Match(pattern=pattern.name, binding=dict(zip(pattern.slot_ids, bound)))
        for bound in sorted(best.values())
    ]
    logger.debug(f"Pattern '{pattern.name}': {len(matches)} match(es) in '{doc.name}'")
    return matches
