"""Attaching diagram node ids to trace events."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field

from boxc.core.document import Document
from boxc.sim.trace import EventRecord, Trace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceBinding:
    """Candidate node ids for a simulation's actors and performatives.

    An event binds to the first candidate present in the document,
    performative candidates before those of the sending actor.
    """

    actors: Mapping[str, tuple[str, ...]]
    performatives: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def candidates(self, event: EventRecord) -> tuple[str, ...]:
        return (
            *self.performatives.get(event.performative, ()),
            *self.actors.get(event.sender, ()),
        )

    def resolve(self, event: EventRecord, node_ids: set[str]) -> str | None:
        for candidate in self.candidates(event):
            if candidate in node_ids:
                return candidate
        return None


def bind_trace(trace: Trace, binding: TraceBinding, doc: Document) -> tuple[Trace, int]:
    """Return a copy of `trace` with diagram refs, and the number of unbound events."""
    node_ids = set(doc.node_ids)
    events = []
    unbound = 0
    for event in trace.events:
        ref = binding.resolve(event, node_ids)
        if ref is None:
            unbound += 1
        events.append(event.with_ref(ref))
    if unbound:
        logger.warning(f"{unbound} event(s) have no node in diagram '{doc.name}'")
    else:
        logger.info(f"Bound all {len(events)} event(s) to diagram '{doc.name}'")
    return Trace(events, trace.seed, trace.config, trace.summary), unbound
