"""Protocol state machines and trace conformance checking."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from boxc.sim.trace import ENV, EventRecord, Trace

logger = logging.getLogger(__name__)

INITIATOR = "initiator"
PARTICIPANT = "participant"

# (state, performative, sender role, receiver role)
Transition = tuple[str, str, str, str]


@dataclass(frozen=True)
class ProtocolSpec:
    """A deterministic finite state machine over performatives.

    Threaded protocols are replayed once per counterpart of the initiator;
    `accepting` lists the states a conversation may stop in. At most one
    `award` performative is allowed per conversation, across all threads.
    """

    name: str
    states: frozenset[str]
    initial: str
    terminals: frozenset[str]
    transitions: Mapping[Transition, str]
    accepting: frozenset[str] | None = None
    threaded: bool = False
    award: str | None = None

    def __post_init__(self) -> None:
        if self.initial not in self.states or not self.terminals <= self.states:
            raise ValueError(f"protocol '{self.name}' references undeclared states")
        for (state, *_), target in self.transitions.items():
            if state in self.terminals:
                raise ValueError(f"{self.name}: terminal state {state!r} has an exit")
            if state not in self.states or target not in self.states:
                raise ValueError(f"protocol '{self.name}' references undeclared states")

    @property
    def stop_states(self) -> frozenset[str]:
        return self.accepting if self.accepting is not None else self.terminals

    def step(
        self, state: str, performative: str, sender: str, receiver: str
    ) -> str | None:
        return self.transitions.get((state, performative, sender, receiver))


def contract_net_protocol() -> ProtocolSpec:
    """FIPA ContractNet, one thread per participant."""
    i, p = INITIATOR, PARTICIPANT
    return ProtocolSpec(
        name="contract-net",
        states=frozenset(
            {
                "start",
                "solicited",
                "proposed",
                "accepted",
                "refused",
                "rejected",
                "done",
                "failed",
            }
        ),
        initial="start",
        terminals=frozenset({"refused", "rejected", "done", "failed"}),
        transitions={
            ("start", "cfp", i, p): "solicited",
            ("solicited", "propose", p, i): "proposed",
            ("solicited", "refuse", p, i): "refused",
            ("proposed", "accept", i, p): "accepted",
            ("proposed", "reject", i, p): "rejected",
            ("accepted", "inform_result", p, i): "done",
            ("accepted", "failure", p, i): "failed",
        },
        threaded=True,
        award="accept",
    )


def request_reply_protocol() -> ProtocolSpec:
    i, p = INITIATOR, PARTICIPANT
    return ProtocolSpec(
        name="request-reply",
        states=frozenset({"start", "requested", "replied", "refused", "failed"}),
        initial="start",
        terminals=frozenset({"replied", "refused", "failed"}),
        transitions={
            ("start", "request", i, p): "requested",
            ("requested", "reply", p, i): "replied",
            ("requested", "refuse", p, i): "refused",
            ("requested", "failure", p, i): "failed",
        },
        threaded=True,
    )


BDI_STAGES = ("sense", "classify", "predict", "plan", "act")


def bdi_cycle_protocol() -> ProtocolSpec:
    """One reasoning cycle of one actor; stages never go backwards.

    `speak` may follow any stage and keeps the state.
    """
    roles = {"sense": (INITIATOR, ENV), "act": (INITIATOR, ENV)}
    states = ["start", *(f"after_{stage}" for stage in BDI_STAGES)]
    transitions: dict[Transition, str] = {}
    for index, state in enumerate(states):
        for stage in BDI_STAGES[max(index - 1, 0) :]:
            sender, receiver = roles.get(stage, (INITIATOR, INITIATOR))
            transitions[(state, stage, sender, receiver)] = f"after_{stage}"
        if state != "start":
            transitions[(state, "speak", INITIATOR, PARTICIPANT)] = state
    return ProtocolSpec(
        name="bdi-cycle",
        states=frozenset(states),
        initial="start",
        terminals=frozenset(),
        transitions=transitions,
        accepting=frozenset(states[1:]),
    )


@dataclass(frozen=True)
class Violation:
    conversation: str
    event_index: int
    state: str
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "conversation": self.conversation,
            "event_index": self.event_index,
            "state": self.state,
            "reason": self.reason,
        }


@dataclass
class ConversationReport:
    conversation: str
    protocol: str
    # Final state per thread; the key is the counterpart, or "" when unthreaded.
    threads: dict[str, str] = field(default_factory=dict)
    complete: bool = False
    outcome: str | None = None

    @property
    def state(self) -> str:
        """Summary state: the outcome when known, else the single thread's state."""
        if self.outcome is not None:
            return self.outcome
        parts = sorted(self.threads.items())
        return ", ".join(f"{k}={v}" if k else v for k, v in parts)


@dataclass
class ConformanceReport:
    conversations: list[ConversationReport] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def conformant(self) -> bool:
        return not self.violations and all(c.complete for c in self.conversations)

    def to_dict(self) -> dict[str, Any]:
        return {
            "conformant": self.conformant,
            "conversations": [
                {
                    "conversation": c.conversation,
                    "protocol": c.protocol,
                    "state": c.state,
                    "complete": c.complete,
                }
                for c in self.conversations
            ],
            "violations": [v.to_dict() for v in self.violations],
        }


def _role(actor: str, initiator: str) -> str:
    if actor == ENV:
        return ENV
    return INITIATOR if actor == initiator else PARTICIPANT


def _select(
    spec: ProtocolSpec | Mapping[str, ProtocolSpec], conversation: str
) -> ProtocolSpec | None:
    if isinstance(spec, ProtocolSpec):
        return spec
    return spec.get(conversation.split("/", 1)[0])


def check_trace(
    trace: Trace, spec: ProtocolSpec | Mapping[str, ProtocolSpec]
) -> ConformanceReport:
    """Replay every conversation of a trace through its protocol.

    The first sender of a conversation plays the initiator. `spec` is a
    single protocol for all conversations or a suite keyed by the
    conversation id prefix before "/".
    """
    report = ConformanceReport()
    indexed: dict[str, list[tuple[int, EventRecord]]] = {}
    for index, event in enumerate(trace.events):
        indexed.setdefault(event.conversation, []).append((index, event))

    for conversation, events in indexed.items():
        protocol = _select(spec, conversation)
        if protocol is None:
            first = events[0][0]
            reason = "no protocol for conversation"
            report.violations.append(Violation(conversation, first, "", reason))
            report.conversations.append(ConversationReport(conversation, "?"))
            continue

        initiator = events[0][1].sender
        threads: dict[str, str] = {}
        failed: set[str] = set()
        award_at: int | None = None
        for index, event in events:
            if protocol.threaded:
                key = event.receiver if event.sender == initiator else event.sender
            else:
                key = ""
            if key in failed:
                continue
            state = threads.get(key, protocol.initial)
            sender = _role(event.sender, initiator)
            receiver = _role(event.receiver, initiator)
            following = protocol.step(state, event.performative, sender, receiver)
            if following is None:
                reason = (
                    f"'{event.performative}' from {sender} to {receiver} "
                    f"not allowed in state '{state}'"
                )
                report.violations.append(Violation(conversation, index, state, reason))
                failed.add(key)
                threads[key] = state
                continue
            if event.performative == protocol.award:
                if award_at is not None:
                    reason = f"second award; the first was event {award_at}"
                    report.violations.append(
                        Violation(conversation, index, state, reason)
                    )
                    failed.add(key)
                    threads[key] = state
                    continue
                award_at = index
            threads[key] = following

        stopped = all(s in protocol.stop_states for s in threads.values())
        complete = not failed and stopped
        outcome = None
        if protocol.award is not None and complete:
            outcome = "awarded" if award_at is not None else "no-award"
        report.conversations.append(
            ConversationReport(conversation, protocol.name, threads, complete, outcome)
        )

    logger.debug(
        f"Checked {len(report.conversations)} conversation(s): "
        f"{len(report.violations)} violation(s)"
    )
    return report
