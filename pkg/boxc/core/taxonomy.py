"""The built-in concept hierarchy of the boxology and its subsumption queries."""

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from types import MappingProxyType

from boxc.core.errors import ForeignConcept, NotADescendant, UnknownConcept

logger = logging.getLogger(__name__)

MAX_DEPTH = 6


class NodeKind(str, Enum):
    """Top-level concept kinds; each one is drawn with its own shape."""

    INSTANCE = "instance"
    MODEL = "model"
    PROCESS = "process"
    ACTOR = "actor"


@dataclass(frozen=True, order=True)
class ConceptRef:
    """A concept of the taxonomy.

    `id` is the slash-joined root path and stays stable across builds;
    `name` is unique in the whole taxonomy.
    """

    id: str
    name: str
    kind: NodeKind


# Nested (name, children) tree. Names form one flat namespace.
_HIERARCHY: dict[str, dict] = {
    "instance": {
        "data": {"number": {}, "text": {}, "tensor": {}, "stream": {}},
        "symbol": {
            "label": {},
            "relation": {},
            "trace": {},
            "request": {},
            "reply": {},
            "cfp": {},
            "proposal": {},
            "assignment": {},
            "result": {},
            "workorder": {},
            "job": {},
        },
    },
    "model": {
        "statistical": {
            "neuralnet": {},
            "bayesnet": {},
            "markov": {},
            "code": {},
            "capacity": {},
            "partial": {},
        },
        "semantic": {
            "taxonomy": {},
            "ontology": {},
            "kgraph": {},
            "state": {},
            "context": {},
            "norm": {},
            "resource": {},
            "world": {},
            "goal": {},
            "plans": {},
            "bom": {},
        },
    },
    "process": {
        "transform": {"embed": {}},
        "infer": {
            "induce": {"train": {}, "engineer": {}},
            "deduce": {"classify": {}, "predict": {}, "plan": {}, "reason": {}},
        },
        "interact": {"sense": {}, "act": {}, "speak": {}},
    },
    "actor": {
        "human": {},
        "agent": {"software": {}, "robot": {}},
        "team": {},
    },
}


@dataclass(frozen=True)
class Taxonomy:
    """An immutable concept forest with exactly one root per NodeKind."""

    concepts: Mapping[str, ConceptRef]
    parent: Mapping[str, str]

    def __post_init__(self) -> None:
        roots = [c for c in self.concepts.values() if c.id not in self.parent]
        if sorted(r.name for r in roots) != sorted(k.value for k in NodeKind):
            raise ValueError("taxonomy must have exactly one root per node kind")

    def __iter__(self) -> Iterator[ConceptRef]:
        return iter(sorted(self.concepts.values(), key=lambda c: c.id))

    def __len__(self) -> int:
        return len(self.concepts)

    def __contains__(self, concept: object) -> bool:
        return (
            isinstance(concept, ConceptRef)
            and self.concepts.get(concept.name) == concept
        )

    def get(self, name: str) -> ConceptRef:
        """Look up a concept by its short name."""
        concept = self.concepts.get(name)
        if concept is None:
            raise UnknownConcept(name)
        return concept

    def _check(self, concept: ConceptRef) -> None:
        if concept not in self:
            raise ForeignConcept(concept.id)

    @property
    def roots(self) -> list[ConceptRef]:
        return [c for c in self if c.id not in self.parent]

    def parent_of(self, concept: ConceptRef) -> ConceptRef | None:
        self._check(concept)
        parent_id = self.parent.get(concept.id)
        if parent_id is None:
            return None
        return self.get(parent_id.rsplit("/", 1)[-1])

    def ancestors(self, concept: ConceptRef) -> list[ConceptRef]:
        """Strict ancestors, nearest first."""
        chain: list[ConceptRef] = []
        current = self.parent_of(concept)
        while current is not None:
            chain.append(current)
            if len(chain) > MAX_DEPTH:
                raise ValueError(f"concept '{concept.name}' exceeds depth {MAX_DEPTH}")
            current = self.parent_of(current)
        return chain

    def children(self, concept: ConceptRef) -> list[ConceptRef]:
        self._check(concept)
        return [c for c in self if self.parent.get(c.id) == concept.id]

    def descendants(self, concept: ConceptRef) -> list[ConceptRef]:
        """Strict descendants in id order."""
        found: list[ConceptRef] = []
        stack = self.children(concept)
        while stack:
            child = stack.pop()
            found.append(child)
            stack.extend(self.children(child))
        return sorted(found, key=lambda c: c.id)

    def leaves(self) -> list[ConceptRef]:
        parents = set(self.parent.values())
        return [c for c in self if c.id not in parents]

    def depth(self, concept: ConceptRef) -> int:
        return len(self.ancestors(concept))

    def path_of(self, concept: ConceptRef) -> str:
        """Full root-to-concept label, e.g. `process:infer:deduce`."""
        chain = [concept, *self.ancestors(concept)]
        return ":".join(c.name for c in reversed(chain))

    def label_of(self, concept: ConceptRef) -> str:
        """Box label: main category and lowest subcategory (`infer:deduce`)."""
        chain = list(reversed([concept, *self.ancestors(concept)]))
        if len(chain) == 1:
            return concept.name
        main = chain[1] if len(chain) > 2 else chain[0]
        return f"{main.name}:{concept.name}"


@lru_cache(maxsize=1)
def builtin_taxonomy() -> Taxonomy:
    """Return the fixed built-in hierarchy (the same instance on every call)."""
    concepts: dict[str, ConceptRef] = {}
    parent: dict[str, str] = {}

    def add(name: str, subtree: dict, path: tuple[str, ...], kind: NodeKind) -> None:
        if name in concepts:
            raise ValueError(f"duplicate concept name '{name}'")
        concept_path = (*path, name)
        concept = ConceptRef(id="/".join(concept_path), name=name, kind=kind)
        concepts[name] = concept
        if path:
            parent[concept.id] = "/".join(path)
        for child, grandchildren in subtree.items():
            add(child, grandchildren, concept_path, kind)

    for root, subtree in _HIERARCHY.items():
        add(root, subtree, (), NodeKind(root))

    logger.debug(f"Built taxonomy with {len(concepts)} concepts")
    return Taxonomy(
        concepts=MappingProxyType(concepts), parent=MappingProxyType(parent)
    )


def resolve_path(tax: Taxonomy, label: str) -> ConceptRef:
    """Resolve a colon-separated label such as `infer:deduce`.

    Every segment must name a concept and each later segment must be a
    strict descendant of the one before it; intermediate levels may be
    skipped (`infer:classify`).

    Raises:
        UnknownConcept: a segment names nothing
        NotADescendant: the segments violate the hierarchy
    """
    segments = label.split(":")
    resolved: ConceptRef | None = None
    for segment in segments:
        concept = tax.concepts.get(segment)
        if concept is None:
            raise UnknownConcept(segment, label)
        if resolved is not None and (
            concept == resolved or resolved not in tax.ancestors(concept)
        ):
            raise NotADescendant(concept.name, resolved.name, label)
        resolved = concept
    assert resolved is not None
    return resolved


def is_subconcept(tax: Taxonomy, a: ConceptRef, b: ConceptRef) -> bool:
    """True iff a == b or b is an ancestor of a."""
    tax._check(a)
    tax._check(b)
    return a == b or b in tax.ancestors(a)


def kind_of(tax: Taxonomy, concept: ConceptRef) -> NodeKind:
    """Kind of the concept's root ancestor."""
    chain = [concept, *tax.ancestors(concept)]
    return NodeKind(chain[-1].name)
