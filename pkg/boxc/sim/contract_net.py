"""ContractNet negotiation between an initiator and its team."""

import logging
import random
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from boxc.sim.binding import TraceBinding
from boxc.sim.config import ContractNetConfig
from boxc.sim.decorators import register_simulation
from boxc.sim.protocol import ProtocolSpec, contract_net_protocol
from boxc.sim.simulation import Simulation, SimulationResult
from boxc.sim.trace import Trace, TraceBuilder

logger = logging.getLogger(__name__)

CONVERSATION = "contract-net"

# Ordering of same-tick events.
_CALL, _RESPOND, _DECIDE, _REPORT = range(4)


@dataclass(frozen=True)
class Response:
    participant: str
    tick: int
    proposes: bool
    bid: float
    fails: bool


def sample_responses(cfg: ContractNetConfig, rng: random.Random) -> list[Response]:
    """Draw every participant's behaviour, in sorted id order.

    Each participant consumes the same four draws whatever it decides, so
    adding a participant never perturbs the others' samples.
    """
    responses = []
    for p in sorted(cfg.participants, key=lambda p: p.id):
        tick = rng.randint(p.min_latency, cfg.latest_response(p))
        proposes = rng.random() < p.propose_probability
        bid = rng.uniform(p.bid_min, p.bid_max)
        fails = rng.random() < p.failure_probability
        responses.append(Response(p.id, tick, proposes, bid, fails))
    return responses


def best_bidder(proposals: list[Response]) -> Response | None:
    """Highest bid; ties go to the smallest participant id."""
    if not proposals:
        return None
    return min(proposals, key=lambda r: (-r.bid, r.participant))


def run_contract_net(cfg: ContractNetConfig) -> Trace:
    """Run one ContractNet round and return its trace.

    The call for proposals goes out at tick 0. Proposals arriving after
    `deadline_ticks` are recorded with `ignored: true` and rejected on
    arrival; the initiator decides at the deadline and the awardee reports
    one tick later.
    """
    rng = random.Random(cfg.seed)
    trace = TraceBuilder()
    initiator, deadline = cfg.initiator, cfg.deadline_ticks
    responses = sample_responses(cfg, rng)

    def emit(
        tick: int,
        phase: int,
        perf: str,
        sender: str,
        receiver: str,
        payload: dict[str, Any],
    ) -> None:
        trace.add(tick, CONVERSATION, perf, sender, receiver, payload, phase)

    for r in responses:
        emit(0, _CALL, "cfp", initiator, r.participant, {"deadline": deadline})

    valid: list[Response] = []
    ignored = 0
    for r in responses:
        if not r.proposes:
            emit(r.tick, _RESPOND, "refuse", r.participant, initiator, {})
            continue
        late = r.tick > deadline
        payload = {"bid": r.bid, "ignored": late}
        emit(r.tick, _RESPOND, "propose", r.participant, initiator, payload)
        if late:
            ignored += 1
            reason = {"reason": "deadline"}
            emit(r.tick, _RESPOND, "reject", initiator, r.participant, reason)
        else:
            valid.append(r)

    winner = best_bidder(valid)
    for r in valid:
        if r is winner:
            emit(deadline, _DECIDE, "accept", initiator, r.participant, {"bid": r.bid})
        else:
            reason = {"reason": "outbid"}
            emit(deadline, _DECIDE, "reject", initiator, r.participant, reason)
    if winner is not None:
        if winner.fails:
            emit(deadline + 1, _REPORT, "failure", winner.participant, initiator, {})
        else:
            awardee = winner.participant
            done = {"result": "done"}
            emit(deadline + 1, _REPORT, "inform_result", awardee, initiator, done)

    summary = {
        "outcome": "awarded" if winner is not None else "no-award",
        "winner": winner.participant if winner is not None else None,
        "valid_proposals": len(valid),
        "ignored_proposals": ignored,
    }
    logger.info(
        f"ContractNet with {len(responses)} participant(s): {summary['outcome']}"
    )
    return trace.build(cfg.seed, cfg.to_dict(), summary)


@register_simulation
class ContractNetSimulation(Simulation):
    """Call for proposals, bids, a single award and the awardee's result."""

    @property
    def name(self) -> str:
        return "contract-net"

    @property
    def description(self) -> str:
        return "An initiator awards a task to the best bidder of its team"

    def config_from_dict(self, data: Mapping[str, Any]) -> ContractNetConfig:
        return ContractNetConfig.from_dict(data)

    def execute(self, config: ContractNetConfig) -> SimulationResult:
        trace = run_contract_net(config)
        return SimulationResult(self.name, trace, dict(trace.summary))

    def protocol(self) -> ProtocolSpec:
        return contract_net_protocol()

    def binding(self, config: ContractNetConfig) -> TraceBinding:
        actors = {config.initiator: (config.initiator, "initiator")}
        for p in config.participants:
            actors[p.id] = (p.id, "participant", "contractors")
        return TraceBinding(actors)
