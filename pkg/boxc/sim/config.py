"""Simulation configs, decoded from JSON into frozen dataclasses."""

from __future__ import annotations

import operator
from collections.abc import Callable, Mapping
from dataclasses import asdict, dataclass, field, replace
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from typing_extensions import Self

from boxc.core.errors import BadConfig
from boxc.sim.trace import ENV


def _field(
    data: Mapping[str, Any],
    key: str,
    kind: type | tuple[type, ...],
    default: Any = ...,
) -> Any:
    if key not in data:
        if default is ...:
            raise BadConfig(f"missing field '{key}'")
        return default
    value = data[key]
    # bool is an int subclass; never accept it for numbers.
    kinds = kind if isinstance(kind, tuple) else (kind,)
    if isinstance(value, bool) and bool not in kinds:
        raise BadConfig(f"field '{key}' has the wrong type")
    if not isinstance(value, kind):
        raise BadConfig(f"field '{key}' has the wrong type")
    return value


def _number(data: Mapping[str, Any], key: str, default: Any = ...) -> float:
    return _field(data, key, (int, float), default)


def _objects(data: Mapping[str, Any], key: str) -> list[Mapping[str, Any]]:
    items = _field(data, key, list)
    if not all(isinstance(item, dict) for item in items):
        raise BadConfig(f"entries of '{key}' must be objects")
    return items


def _optional(data: Mapping[str, Any], key: str) -> list[Mapping[str, Any]]:
    return _objects(data, key) if key in data else []


def _unique(ids: list[str], what: str) -> None:
    seen: set[str] = set()
    for ident in ids:
        if ident in seen:
            raise BadConfig(f"duplicate {what} id '{ident}'")
        seen.add(ident)


@dataclass(frozen=True)
class _Config:
    """Shared behaviour of the top-level simulation configs."""

    def to_dict(self) -> dict[str, Any]:
        return _plain(asdict(self))

    def with_seed(self, seed: int) -> Self:
        return replace(self, seed=seed)


def _plain(value: Any) -> Any:
    """Tuples to lists, recursively, so to_dict output is JSON-shaped."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


# ---------------------------------------------------------------- contract net


@dataclass(frozen=True)
class ParticipantConfig:
    id: str
    propose_probability: float = 1.0
    bid_min: float = 0.0
    bid_max: float = 1.0
    min_latency: int = 1
    max_latency: int | None = None
    failure_probability: float = 0.0

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ParticipantConfig":
        return cls(
            id=_field(data, "id", str),
            propose_probability=_number(data, "propose_probability", 1.0),
            bid_min=_number(data, "bid_min", 0.0),
            bid_max=_number(data, "bid_max", 1.0),
            min_latency=_field(data, "min_latency", int, 1),
            max_latency=_field(data, "max_latency", (int, type(None)), None),
            failure_probability=_number(data, "failure_probability", 0.0),
        )


@dataclass(frozen=True)
class ContractNetConfig(_Config):
    participants: tuple[ParticipantConfig, ...]
    deadline_ticks: int
    seed: int = 0
    initiator: str = "initiator"

    def __post_init__(self) -> None:
        if not self.participants:
            raise BadConfig("participants: at least one participant is required")
        if self.deadline_ticks < 1:
            raise BadConfig("deadline_ticks must be at least 1")
        _unique([p.id for p in self.participants], "participant")
        if self.initiator in {p.id for p in self.participants} | {ENV}:
            raise BadConfig(f"initiator '{self.initiator}' clashes with another actor")
        for p in self.participants:
            for name in ("propose_probability", "failure_probability"):
                if not 0.0 <= getattr(p, name) <= 1.0:
                    raise BadConfig(f"{p.id}: {name} must lie in [0, 1]")
            if p.bid_min > p.bid_max:
                raise BadConfig(f"{p.id}: bid_min exceeds bid_max")
            if p.min_latency < 1 or self.latest_response(p) < p.min_latency:
                raise BadConfig(f"{p.id}: latency range is empty")

    def latest_response(self, participant: ParticipantConfig) -> int:
        if participant.max_latency is not None:
            return participant.max_latency
        return self.deadline_ticks + 2

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ContractNetConfig":
        return cls(
            participants=tuple(
                ParticipantConfig.from_dict(p) for p in _objects(data, "participants")
            ),
            deadline_ticks=_field(data, "deadline_ticks", int),
            seed=_field(data, "seed", int, 0),
            initiator=_field(data, "initiator", str, "initiator"),
        )


# ---------------------------------------------------------------- planning


@dataclass(frozen=True)
class MachineConfig:
    id: str
    free: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MachineConfig":
        machine_id = _field(data, "id", str)
        slots = []
        for slot in _field(data, "free", list):
            if (
                not isinstance(slot, list)
                or len(slot) != 2
                or not all(isinstance(t, int) and not isinstance(t, bool) for t in slot)
            ):
                raise BadConfig(f"{machine_id}: free slots must be [start, end] pairs")
            slots.append((slot[0], slot[1]))
        return cls(id=machine_id, free=tuple(slots))


@dataclass(frozen=True)
class JobConfig:
    id: str
    duration: int
    deadline: int

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "JobConfig":
        return cls(
            id=_field(data, "id", str),
            duration=_field(data, "duration", int),
            deadline=_field(data, "deadline", int),
        )


@dataclass(frozen=True)
class PlanningConfig(_Config):
    machines: tuple[MachineConfig, ...]
    jobs: tuple[JobConfig, ...]
    seed: int = 0
    job_agent: str = "job_agent"
    pool_agent: str = "pool_agent"

    def __post_init__(self) -> None:
        _unique([m.id for m in self.machines], "machine")
        _unique([j.id for j in self.jobs], "job")
        actors = {m.id for m in self.machines}
        if len({self.job_agent, self.pool_agent, ENV} | actors) != len(actors) + 3:
            raise BadConfig("agent ids must differ from each other and from machines")
        for machine in self.machines:
            previous_end = None
            for start, end in sorted(machine.free):
                if start < 0 or end <= start:
                    raise BadConfig(f"{machine.id}: empty free slot [{start}, {end})")
                if previous_end is not None and start < previous_end:
                    raise BadConfig(f"{machine.id}: free slots overlap")
                previous_end = end
        for job in self.jobs:
            if job.duration < 1:
                raise BadConfig(f"{job.id}: duration must be at least 1")
            if job.deadline < 0:
                raise BadConfig(f"{job.id}: deadline must not be negative")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PlanningConfig":
        return cls(
            machines=tuple(
                MachineConfig.from_dict(m) for m in _objects(data, "machines")
            ),
            jobs=tuple(JobConfig.from_dict(j) for j in _objects(data, "jobs")),
            seed=_field(data, "seed", int, 0),
            job_agent=_field(data, "job_agent", str, "job_agent"),
            pool_agent=_field(data, "pool_agent", str, "pool_agent"),
        )


# ---------------------------------------------------------------- federated

TRANSPORTS = ("code-model", "request", "migrate")


@dataclass(frozen=True)
class FederatedConfig(_Config):
    """Partitions are held one per team member, in member order."""

    partitions: tuple[tuple[float, ...], ...]
    seed: int = 0
    members: tuple[str, ...] = ()
    requester: str = "requester"
    transport: str = "code-model"
    algorithm: str = "sufficient-stats"

    def __post_init__(self) -> None:
        if not self.members:
            object.__setattr__(
                self,
                "members",
                tuple(f"member{i}" for i in range(1, len(self.partitions) + 1)),
            )
        if len(self.members) != len(self.partitions):
            raise BadConfig("members and partitions must have the same length")
        _unique(list(self.members), "member")
        if self.requester in set(self.members) | {ENV}:
            raise BadConfig(f"requester id '{self.requester}' clashes with a member")
        if self.transport not in TRANSPORTS:
            raise BadConfig(f"transport must be one of {', '.join(TRANSPORTS)}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FederatedConfig":
        partitions = []
        for part in _field(data, "partitions", list):
            if not isinstance(part, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in part
            ):
                raise BadConfig("partitions must be lists of numbers")
            partitions.append(tuple(part))
        return cls(
            partitions=tuple(partitions),
            seed=_field(data, "seed", int, 0),
            members=tuple(_field(data, "members", list, [])),
            requester=_field(data, "requester", str, "requester"),
            transport=_field(data, "transport", str, "code-model"),
            algorithm=_field(data, "algorithm", str, "sufficient-stats"),
        )


# ---------------------------------------------------------------- bdi

COMPARATORS: dict[str, Callable[[float, float], bool]] = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
}


@dataclass(frozen=True)
class SensorConfig:
    initial: float
    drift: float = 0.0
    noise: float = 0.0

    @classmethod
    def from_value(cls, name: str, value: Any) -> "SensorConfig":
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return cls(initial=value)
        if not isinstance(value, dict):
            raise BadConfig(f"sensor '{name}' must be a number or an object")
        return cls(
            initial=_number(value, "initial"),
            drift=_number(value, "drift", 0.0),
            noise=_number(value, "noise", 0.0),
        )


@dataclass(frozen=True)
class BeliefRule:
    sensor: str
    comparator: str
    threshold: float
    belief: str

    def holds(self, value: float) -> bool:
        return COMPARATORS[self.comparator](value, self.threshold)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "BeliefRule":
        return cls(
            sensor=_field(data, "sensor", str),
            comparator=_field(data, "comparator", str),
            threshold=_number(data, "threshold"),
            belief=_field(data, "belief", str),
        )


@dataclass(frozen=True)
class DesireRule:
    """Desire `goal` whenever every listed belief is held."""

    beliefs: tuple[str, ...]
    goal: str

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DesireRule":
        return cls(
            beliefs=tuple(_field(data, "beliefs", list)),
            goal=_field(data, "goal", str),
        )


@dataclass(frozen=True)
class ActorConfig:
    id: str
    team: str | None = None
    sensors: tuple[str, ...] | None = None
    share_beliefs: bool = False

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ActorConfig":
        sensors = _field(data, "sensors", (list, type(None)), None)
        return cls(
            id=_field(data, "id", str),
            team=_field(data, "team", (str, type(None)), None),
            sensors=tuple(sensors) if sensors is not None else None,
            share_beliefs=_field(data, "share_beliefs", bool, False),
        )


@dataclass(frozen=True)
class BdiConfig(_Config):
    environment: dict[str, SensorConfig]
    actors: tuple[ActorConfig, ...]
    ticks: int
    belief_rules: tuple[BeliefRule, ...] = ()
    desire_rules: tuple[DesireRule, ...] = ()
    plan_library: dict[str, tuple[str, ...]] = field(default_factory=dict)
    effects: dict[str, dict[str, float]] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.ticks < 1:
            raise BadConfig("ticks must be at least 1")
        if not self.actors:
            raise BadConfig("actors: at least one actor is required")
        _unique([a.id for a in self.actors], "actor")
        if ENV in {a.id for a in self.actors}:
            raise BadConfig(f"'{ENV}' is reserved for the environment")
        for actor in self.actors:
            for sensor in actor.sensors or ():
                if sensor not in self.environment:
                    raise BadConfig(f"{actor.id}: unknown sensor '{sensor}'")
        beliefs = set()
        for rule in self.belief_rules:
            where = f"belief rule '{rule.belief}'"
            if rule.sensor not in self.environment:
                raise BadConfig(f"{where}: unknown sensor '{rule.sensor}'")
            if rule.comparator not in COMPARATORS:
                raise BadConfig(f"{where}: bad comparator '{rule.comparator}'")
            beliefs.add(rule.belief)
        goals = set()
        for desire in self.desire_rules:
            for belief in desire.beliefs:
                if belief not in beliefs:
                    raise BadConfig(f"desire {desire.goal!r}: no rule for {belief!r}")
            goals.add(desire.goal)
        actions = set()
        for goal, plan in self.plan_library.items():
            if goal not in goals:
                raise BadConfig(f"plan library: unknown goal '{goal}'")
            actions.update(plan)
        for action, deltas in self.effects.items():
            if action not in actions:
                raise BadConfig(f"effects: unknown action '{action}'")
            for sensor in deltas:
                if sensor not in self.environment:
                    raise BadConfig(f"effects of '{action}': unknown sensor '{sensor}'")
        for name, sensor in self.environment.items():
            if sensor.noise < 0:
                raise BadConfig(f"sensor '{name}': noise must not be negative")

    def sensors_of(self, actor: ActorConfig) -> list[str]:
        if actor.sensors is None:
            return sorted(self.environment)
        return sorted(actor.sensors)

    def teammates(self, actor: ActorConfig) -> list[str]:
        if actor.team is None:
            return []
        return sorted(
            a.id for a in self.actors if a.team == actor.team and a.id != actor.id
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "BdiConfig":
        environment = _field(data, "environment", dict)
        plans = _field(data, "plan_library", dict, {})
        effects = _field(data, "effects", dict, {})
        if not all(isinstance(v, list) for v in plans.values()):
            raise BadConfig("plan_library values must be action lists")
        if not all(isinstance(v, dict) for v in effects.values()):
            raise BadConfig("effects values must map sensors to deltas")
        beliefs = _optional(data, "belief_rules")
        desires = _optional(data, "desire_rules")
        return cls(
            environment={
                name: SensorConfig.from_value(name, value)
                for name, value in environment.items()
            },
            actors=tuple(ActorConfig.from_dict(a) for a in _objects(data, "actors")),
            ticks=_field(data, "ticks", int),
            belief_rules=tuple(BeliefRule.from_dict(r) for r in beliefs),
            desire_rules=tuple(DesireRule.from_dict(r) for r in desires),
            plan_library={goal: tuple(actions) for goal, actions in plans.items()},
            effects={action: dict(deltas) for action, deltas in effects.items()},
            seed=_field(data, "seed", int, 0),
        )
