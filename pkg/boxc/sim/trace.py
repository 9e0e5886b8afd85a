"""Simulation event records and traces."""

import json
from collections.abc import Iterator
from dataclasses import dataclass, field, replace
from typing import Any

PERFORMATIVES = frozenset(
    {
        "cfp",
        "propose",
        "refuse",
        "accept",
        "reject",
        "inform_result",
        "failure",
        "request",
        "reply",
        "sense",
        "classify",
        "predict",
        "plan",
        "act",
        "speak",
    }
)

ENV = "env"


@dataclass(frozen=True)
class EventRecord:
    """One message or environment interaction at a logical tick."""

    tick: int
    conversation: str
    performative: str
    sender: str
    receiver: str
    payload: Any = None
    diagram_ref: str | None = None

    def __post_init__(self) -> None:
        if self.tick < 0:
            raise ValueError(f"negative tick {self.tick}")
        if self.performative not in PERFORMATIVES:
            raise ValueError(f"unknown performative '{self.performative}'")

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "tick": self.tick,
            "conversation": self.conversation,
            "performative": self.performative,
            "sender": self.sender,
            "receiver": self.receiver,
            "payload": self.payload,
        }
        if self.diagram_ref is not None:
            data["diagram_ref"] = self.diagram_ref
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EventRecord":
        return cls(
            tick=data["tick"],
            conversation=data["conversation"],
            performative=data["performative"],
            sender=data["sender"],
            receiver=data["receiver"],
            payload=data.get("payload"),
            diagram_ref=data.get("diagram_ref"),
        )

    def with_ref(self, diagram_ref: str | None) -> "EventRecord":
        return replace(self, diagram_ref=diagram_ref)


@dataclass
class Trace:
    """Ordered events of one run, plus the seed and config that produced them."""

    events: list[EventRecord] = field(default_factory=list)
    seed: int = 0
    config: dict[str, Any] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[EventRecord]:
        return iter(self.events)

    @property
    def conversations(self) -> list[str]:
        """Conversation ids in order of first appearance."""
        return list(dict.fromkeys(e.conversation for e in self.events))

    def by_conversation(self, conversation: str) -> list[EventRecord]:
        return [e for e in self.events if e.conversation == conversation]

    def count(self, performative: str) -> int:
        return sum(1 for e in self.events if e.performative == performative)

    def to_jsonl(self) -> str:
        """One event per line, keys sorted."""
        return "".join(
            json.dumps(e.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"
            for e in self.events
        )

    @classmethod
    def from_jsonl(
        cls, text: str, seed: int = 0, config: dict[str, Any] | None = None
    ) -> "Trace":
        events = [
            EventRecord.from_dict(json.loads(line))
            for line in text.splitlines()
            if line.strip()
        ]
        return cls(events=events, seed=seed, config=config or {})


class TraceBuilder:
    """Collects events and orders them by (tick, phase, insertion)."""

    def __init__(self) -> None:
        self._pending: list[tuple[int, int, int, EventRecord]] = []

    def add(
        self,
        tick: int,
        conversation: str,
        performative: str,
        sender: str,
        receiver: str,
        payload: Any = None,
        phase: int = 0,
    ) -> None:
        event = EventRecord(tick, conversation, performative, sender, receiver, payload)
        self._pending.append((tick, phase, len(self._pending), event))

    def build(
        self, seed: int, config: dict[str, Any], summary: dict[str, Any]
    ) -> Trace:
        ordered = [event for *_, event in sorted(self._pending, key=lambda p: p[:3])]
        return Trace(events=ordered, seed=seed, config=config, summary=summary)
