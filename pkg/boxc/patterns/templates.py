"""Built-in design-pattern templates and their instantiation."""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache

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
from boxc.core.errors import BadPrefix, UnknownPattern
from boxc.core.taxonomy import ConceptRef, NodeKind, Taxonomy, builtin_taxonomy

logger = logging.getLogger(__name__)

PREFIX_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Slot:
    """A placeholder; matches any node of the same kind whose concept ⊑ constraint."""

    id: str
    kind: NodeKind
    constraint: ConceptRef


@dataclass(frozen=True)
class TemplateEdge:
    source: str
    target: str
    kind: EdgeKind
    role: Role | None = None
    label: ConceptRef | None = None


@dataclass(frozen=True)
class PatternTemplate:
    name: str
    doc: str
    slots: tuple[Slot, ...]
    edges: tuple[TemplateEdge, ...]

    def slot(self, slot_id: str) -> Slot:
        for slot in self.slots:
            if slot.id == slot_id:
                return slot
        raise KeyError(slot_id)

    @property
    def slot_ids(self) -> list[str]:
        return [s.id for s in self.slots]

    def count(self, kind: EdgeKind) -> int:
        return sum(1 for e in self.edges if e.kind is kind)


class _TemplateBuilder:
    """Small DSL for writing templates against concept names."""

    def __init__(self, tax: Taxonomy, name: str, doc: str) -> None:
        self.tax = tax
        self.name = name
        self.doc = doc
        self.slots: list[Slot] = []
        self.edges: list[TemplateEdge] = []

    def slot(self, slot_id: str, concept: str) -> "_TemplateBuilder":
        ref = self.tax.get(concept)
        self.slots.append(Slot(slot_id, ref.kind, ref))
        return self

    def flow(self, *chain: str) -> "_TemplateBuilder":
        for source, target in zip(chain, chain[1:]):
            self.edges.append(TemplateEdge(source, target, EdgeKind.FLOW))
        return self

    def role(self, source: str, role: Role, target: str) -> "_TemplateBuilder":
        self.edges.append(TemplateEdge(source, target, EdgeKind.ROLE, role=role))
        return self

    def message(self, source: str, symbol: str, target: str) -> "_TemplateBuilder":
        self.edges.append(
            TemplateEdge(source, target, EdgeKind.MESSAGE, label=self.tax.get(symbol))
        )
        return self

    def build(self) -> PatternTemplate:
        slots, edges = tuple(self.slots), tuple(self.edges)
        return PatternTemplate(self.name, self.doc, slots, edges)


@lru_cache(maxsize=1)
def _catalogue() -> tuple[PatternTemplate, ...]:
    tax = builtin_taxonomy()

    def template(name: str, doc: str) -> _TemplateBuilder:
        return _TemplateBuilder(tax, name, doc)

    train = (
        template("1a-train", "Data is used to train a statistical model.")
        .slot("data", "data")
        .slot("gen", "induce")
        .slot("model", "statistical")
        .flow("data", "gen", "model")
        .build()
    )
    apply = (
        template("2a-apply", "A statistical model is applied to data to infer symbols.")
        .slot("data", "data")
        .slot("model", "statistical")
        .slot("infer", "deduce")
        .slot("symbol", "symbol")
        .flow("data", "infer", "symbol")
        .flow("model", "infer")
        .build()
    )
    pipeline = (
        template("3a-pipeline", "Training (1a) and application (2a) sharing the model.")
        .slot("train_data", "data")
        .slot("gen", "induce")
        .slot("model", "statistical")
        .slot("data", "data")
        .slot("infer", "deduce")
        .slot("symbol", "symbol")
        .flow("train_data", "gen", "model", "infer", "symbol")
        .flow("data", "infer")
        .build()
    )
    federated = (
        template(
            "federated-learning",
            "A requester has a team learn partial models and integrates them.",
        )
        .slot("requester", "agent")
        .slot("team", "team")
        .slot("code", "code")
        .slot("learn", "induce")
        .slot("partial", "partial")
        .slot("integrate", "infer")
        .slot("model", "statistical")
        .message("requester", "request", "team")
        .message("team", "reply", "requester")
        .flow("code", "learn", "partial", "integrate", "model")
        .role("team", Role.SUPPORTS, "learn")
        .role("requester", Role.INITIATES, "integrate")
        .build()
    )
    bdi = (
        template(
            "bdi-loop",
            "Sense, classify beliefs, predict desires, plan intentions, act.",
        )
        .slot("sense", "sense")
        .slot("data", "data")
        .slot("classify", "classify")
        .slot("world", "world")
        .slot("belief", "symbol")
        .slot("predict", "predict")
        .slot("goal", "goal")
        .slot("desire", "symbol")
        .slot("plan", "plan")
        .slot("plans", "plans")
        .slot("intention", "symbol")
        .slot("act", "act")
        .flow("sense", "data", "classify", "belief", "predict", "desire", "plan")
        .flow("plan", "intention", "act")
        .flow("world", "classify")
        .flow("goal", "predict")
        .flow("plans", "plan")
        .build()
    )
    contract_net = (
        template(
            "contract-net",
            "An initiator awards a task to a team via call for proposals.",
        )
        .slot("initiator", "agent")
        .slot("team", "team")
        .message("initiator", "cfp", "team")
        .message("team", "proposal", "initiator")
        .message("initiator", "assignment", "team")
        .message("team", "result", "initiator")
        .build()
    )
    planning = (
        template(
            "distributed-planning",
            "Job agents order work from a pool that auctions it to machines.",
        )
        .slot("job", "agent")
        .slot("pool", "agent")
        .slot("machines", "team")
        .slot("schedule", "plan")
        .slot("capacity", "capacity")
        .message("job", "workorder", "pool")
        .message("pool", "job", "machines")
        .message("machines", "result", "job")
        .role("machines", Role.INITIATES, "schedule")
        .flow("capacity", "schedule", "capacity")
        .build()
    )
    return (train, apply, pipeline, federated, bdi, contract_net, planning)


def builtin_patterns() -> list[PatternTemplate]:
    """The seven built-in templates in catalogue order."""
    return list(_catalogue())


def get_pattern(name: str) -> PatternTemplate:
    """Look up a built-in template by name.

    Raises:
        UnknownPattern: no template has this name
    """
    for pattern in _catalogue():
        if pattern.name == name:
            return pattern
    raise UnknownPattern(name)


def instantiate(
    pattern: PatternTemplate, prefix: str, tax: Taxonomy | None = None
) -> Document:
    """Create a document fragment realizing the template.

    Nodes are named `<prefix>_<slot>` and labeled with the slot constraint;
    the fragment is wrapped in a pattern frame named after the template.

    Raises:
        BadPrefix: prefix is not an identifier stem
    """
    if not PREFIX_RE.fullmatch(prefix):
        raise BadPrefix(prefix)
    tax = tax or builtin_taxonomy()

    def node_id(slot_id: str) -> str:
        return f"{prefix}_{slot_id}"

    nodes = [
        Node(
            id=node_id(slot.id),
            kind=slot.kind,
            label=tax.label_of(slot.constraint),
            concept=slot.constraint,
        )
        for slot in pattern.slots
    ]
    edges = [
        Edge(
            source=node_id(edge.source),
            target=node_id(edge.target),
            kind=edge.kind,
            role=edge.role,
            label=tax.label_of(edge.label) if edge.label else None,
            label_concept=edge.label,
        )
        for edge in pattern.edges
    ]
    frame = Frame(
        id=f"pattern:{pattern.name}:1",
        kind=FrameKind.PATTERN,
        members=tuple(n.id for n in nodes),
        pattern_name=pattern.name,
    )
    logger.debug(f"Instantiated '{pattern.name}' with prefix '{prefix}'")
    return build(pattern.name, nodes, edges, [frame])
