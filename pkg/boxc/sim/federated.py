"""Federated learning of a global mean and variance from partial statistics."""

import logging
import math
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from boxc.core.errors import AllPartitionsEmpty, EmptyTeam
from boxc.sim.binding import TraceBinding
from boxc.sim.config import FederatedConfig
from boxc.sim.decorators import register_simulation
from boxc.sim.protocol import ProtocolSpec, request_reply_protocol
from boxc.sim.simulation import Simulation, SimulationResult
from boxc.sim.trace import Trace, TraceBuilder

logger = logging.getLogger(__name__)

CONVERSATION = "federated"

Number = int | float


def _total(values: Iterable[Number]) -> Number:
    """Exact for ints, correctly rounded for floats."""
    values = list(values)
    if all(isinstance(v, int) for v in values):
        return sum(values)
    return math.fsum(values)


@dataclass(frozen=True)
class PartialStats:
    """Sufficient statistics of one partition: count, sum and sum of squares."""

    count: int
    sum: Number
    sum_sq: Number

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("count must not be negative")
        if self.count == 0 and (self.sum != 0 or self.sum_sq != 0):
            raise ValueError("empty statistics must have zero sums")

    @classmethod
    def zero(cls) -> "PartialStats":
        return cls(0, 0, 0)

    @classmethod
    def from_values(cls, values: Sequence[Number]) -> "PartialStats":
        return cls(len(values), _total(values), _total(v * v for v in values))

    def to_dict(self) -> dict[str, Any]:
        return {"count": self.count, "sum": self.sum, "sum_sq": self.sum_sq}


def integrate_partials(parts: Iterable[PartialStats]) -> PartialStats:
    """Component-wise sum; order-independent."""
    parts = list(parts)
    return PartialStats(
        count=sum(p.count for p in parts),
        sum=_total(p.sum for p in parts),
        sum_sq=_total(p.sum_sq for p in parts),
    )


@dataclass(frozen=True)
class GlobalStats:
    count: int
    mean: float
    variance: float

    @classmethod
    def from_partial(cls, stats: PartialStats) -> "GlobalStats":
        if stats.count == 0:
            raise AllPartitionsEmpty("all partitions are empty; the mean is undefined")
        mean = stats.sum / stats.count
        # Rounding can push the difference below zero on constant data.
        variance = max(0.0, stats.sum_sq / stats.count - mean * mean)
        return cls(stats.count, mean, variance)

    def to_dict(self) -> dict[str, Any]:
        return {"count": self.count, "mean": self.mean, "variance": self.variance}


def _visits(cfg: FederatedConfig) -> list[tuple[str, int, int]]:
    """(member, request tick, reply tick) per member, in trace order."""
    if cfg.transport == "migrate":
        itinerary = list(cfg.members)
        random.Random(cfg.seed).shuffle(itinerary)
        return [(member, 2 * i, 2 * i + 1) for i, member in enumerate(itinerary)]
    return [(member, 0, 1) for member in cfg.members]


def run_federated_learning(cfg: FederatedConfig) -> tuple[GlobalStats, Trace]:
    """Request partial statistics from every member and integrate them.

    With the `migrate` transport the learner visits members one at a time
    along a seeded itinerary; the statistics do not depend on the order.
    """
    if not cfg.partitions:
        raise EmptyTeam("federated learning needs at least one partition")

    local = dict(zip(cfg.members, cfg.partitions, strict=True))
    trace = TraceBuilder()
    request = {"algorithm": cfg.algorithm, "transport": cfg.transport}
    partials = []
    for member, asked, answered in _visits(cfg):
        trace.add(asked, CONVERSATION, "request", cfg.requester, member, request)
        stats = PartialStats.from_values(local[member])
        logger.debug(f"{member}: {stats.count} value(s)")
        trace.add(
            answered, CONVERSATION, "reply", member, cfg.requester, stats.to_dict()
        )
        partials.append(stats)

    result = GlobalStats.from_partial(integrate_partials(partials))
    logger.info(
        f"Integrated {len(partials)} partial model(s): "
        f"n={result.count}, mean={result.mean}"
    )
    return result, trace.build(cfg.seed, cfg.to_dict(), result.to_dict())


@register_simulation
class FederatedSimulation(Simulation):
    """A requester has its team learn partial models and integrates them."""

    @property
    def name(self) -> str:
        return "federated"

    @property
    def description(self) -> str:
        return "Team members learn partial statistics; the requester integrates them"

    def config_from_dict(self, data: Mapping[str, Any]) -> FederatedConfig:
        return FederatedConfig.from_dict(data)

    def execute(self, config: FederatedConfig) -> SimulationResult:
        stats, trace = run_federated_learning(config)
        return SimulationResult(self.name, trace, stats.to_dict())

    def protocol(self) -> ProtocolSpec:
        return request_reply_protocol()

    def binding(self, config: FederatedConfig) -> TraceBinding:
        actors = {config.requester: (config.requester, "requester")}
        for member in config.members:
            actors[member] = (member, "member", "team_a")
        return TraceBinding(actors)
