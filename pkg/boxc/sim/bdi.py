"""Belief-desire-intention agents sensing and acting on a shared environment."""

import logging
import random
from collections import defaultdict
from collections.abc import Mapping
from typing import Any

from boxc.sim.binding import TraceBinding
from boxc.sim.config import ActorConfig, BdiConfig
from boxc.sim.decorators import register_simulation
from boxc.sim.protocol import BDI_STAGES, ProtocolSpec, bdi_cycle_protocol
from boxc.sim.simulation import Simulation, SimulationResult
from boxc.sim.trace import ENV, Trace, TraceBuilder

logger = logging.getLogger(__name__)


def cycle_conversation(actor: str, tick: int) -> str:
    return f"{actor}@{tick}"


class BdiWorld:
    """Environment state plus every actor's beliefs between ticks."""

    def __init__(self, cfg: BdiConfig) -> None:
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.values = {name: float(s.initial) for name, s in cfg.environment.items()}
        # receiver -> belief -> teammates currently asserting it
        self.shared: dict[str, dict[str, set[str]]] = defaultdict(
            lambda: defaultdict(set)
        )
        self.sensed: dict[str, set[str]] = defaultdict(set)
        self.outbox: list[tuple[str, str, str, bool]] = []
        self.acted: list[str] = []

    def observe(self, sensor: str) -> float:
        noise = self.cfg.environment[sensor].noise
        value = self.values[sensor]
        if noise > 0:
            value += self.rng.gauss(0.0, noise)
        return value

    def held_by_speech(self, actor: str) -> set[str]:
        return {belief for belief, sources in self.shared[actor].items() if sources}

    def cycle(self, actor: ActorConfig, tick: int, trace: TraceBuilder) -> None:
        conversation = cycle_conversation(actor.id, tick)

        def emit(performative: str, receiver: str, payload: dict[str, Any]) -> None:
            trace.add(tick, conversation, performative, actor.id, receiver, payload)

        readings = {}
        for sensor in self.cfg.sensors_of(actor):
            readings[sensor] = self.observe(sensor)
            emit("sense", ENV, {"sensor": sensor, "value": readings[sensor]})

        sensed = {
            rule.belief
            for rule in self.cfg.belief_rules
            if rule.sensor in readings and rule.holds(readings[rule.sensor])
        }
        held = sensed | self.held_by_speech(actor.id)
        for belief in sorted(held):
            source = "sensor" if belief in sensed else "speech"
            emit("classify", actor.id, {"belief": belief, "source": source})

        goals = sorted(
            {d.goal for d in self.cfg.desire_rules if all(b in held for b in d.beliefs)}
        )
        for goal in goals:
            emit("predict", actor.id, {"goal": goal})
        library = self.cfg.plan_library
        intentions = [(goal, library[goal]) for goal in goals if goal in library]
        for goal, actions in intentions:
            emit("plan", actor.id, {"goal": goal, "actions": list(actions)})
        for goal, actions in intentions:
            for action in actions:
                emit("act", ENV, {"action": action, "goal": goal})
                self.acted.append(action)

        if actor.share_beliefs:
            previous = self.sensed[actor.id]
            changes = [(b, True) for b in sorted(sensed - previous)]
            changes += [(b, False) for b in sorted(previous - sensed)]
            for teammate in self.cfg.teammates(actor):
                for belief, holds in changes:
                    emit("speak", teammate, {"belief": belief, "holds": holds})
                    self.outbox.append((actor.id, teammate, belief, holds))
        self.sensed[actor.id] = sensed

    def end_tick(self) -> None:
        """Deliver speech and apply drift plus this tick's action effects."""
        for sender, receiver, belief, holds in self.outbox:
            if holds:
                self.shared[receiver][belief].add(sender)
            else:
                self.shared[receiver][belief].discard(sender)
        self.outbox.clear()
        for name, sensor in self.cfg.environment.items():
            self.values[name] += sensor.drift
        for action in self.acted:
            for name, delta in self.cfg.effects.get(action, {}).items():
                self.values[name] += delta
        self.acted.clear()


def run_bdi(cfg: BdiConfig) -> Trace:
    """Run every actor's sense, classify, predict, plan, act cycle for `ticks` ticks.

    Beliefs spoken at tick t reach teammates at tick t + 1; actions change
    the environment seen at tick t + 1.
    """
    world = BdiWorld(cfg)
    trace = TraceBuilder()
    acts = 0
    for tick in range(cfg.ticks):
        for actor in sorted(cfg.actors, key=lambda a: a.id):
            world.cycle(actor, tick, trace)
        acts += len(world.acted)
        world.end_tick()

    summary: dict[str, Any] = {
        "environment": dict(sorted(world.values.items())),
        "acts": acts,
    }
    logger.info(f"BDI run of {cfg.ticks} tick(s): {acts} act(s)")
    return trace.build(cfg.seed, cfg.to_dict(), summary)


@register_simulation
class BdiSimulation(Simulation):
    """Sense, classify, predict, plan and act, with optional team speech."""

    @property
    def name(self) -> str:
        return "bdi"

    @property
    def description(self) -> str:
        return "BDI actors reason over a shared environment and share beliefs"

    def config_from_dict(self, data: Mapping[str, Any]) -> BdiConfig:
        return BdiConfig.from_dict(data)

    def execute(self, config: BdiConfig) -> SimulationResult:
        trace = run_bdi(config)
        return SimulationResult(self.name, trace, dict(trace.summary))

    def protocol(self) -> ProtocolSpec:
        return bdi_cycle_protocol()

    def binding(self, config: BdiConfig) -> TraceBinding:
        """The first actor by id plays the diagram's agent, the rest its teammate."""
        ordered = sorted(a.id for a in config.actors)
        actors = {ordered[0]: (ordered[0], "agent")}
        for actor in ordered[1:]:
            actors[actor] = (actor, "teammate")
        stages = {stage: (stage,) for stage in BDI_STAGES}
        return TraceBinding(actors, {**stages, "speak": ("team_speech",)})
