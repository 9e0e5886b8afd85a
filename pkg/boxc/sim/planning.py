"""Distributed production planning: a pool agent auctions jobs to machines."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from boxc.sim.binding import TraceBinding
from boxc.sim.config import PlanningConfig
from boxc.sim.decorators import register_simulation
from boxc.sim.protocol import (
    ProtocolSpec,
    contract_net_protocol,
    request_reply_protocol,
)
from boxc.sim.simulation import Simulation, SimulationResult
from boxc.sim.trace import Trace, TraceBuilder

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScheduleEntry:
    job: str
    machine: str | None
    start: int | None
    end: int | None

    @property
    def assigned(self) -> bool:
        return self.machine is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "job": self.job,
            "machine": self.machine,
            "start": self.start,
            "end": self.end,
        }


@dataclass(frozen=True)
class Schedule:
    entries: tuple[ScheduleEntry, ...]

    def entry(self, job: str) -> ScheduleEntry:
        for entry in self.entries:
            if entry.job == job:
                return entry
        raise KeyError(job)

    def on_machine(self, machine: str) -> list[ScheduleEntry]:
        placed = [e for e in self.entries if e.machine == machine]
        return sorted(placed, key=lambda e: e.start or 0)

    @property
    def unassigned(self) -> list[str]:
        return [e.job for e in self.entries if not e.assigned]

    def to_dict(self) -> dict[str, Any]:
        return {"entries": [e.to_dict() for e in self.entries]}


class CapacityModel:
    """A machine's free half-open intervals, kept sorted."""

    def __init__(self, free: tuple[tuple[int, int], ...]) -> None:
        self.free = sorted(free)

    def earliest_fit(self, duration: int, deadline: int) -> tuple[int, int] | None:
        for start, end in self.free:
            if end - start >= duration and start + duration <= deadline:
                return start, start + duration
        return None

    def occupy(self, start: int, end: int) -> None:
        for index, (s, e) in enumerate(self.free):
            if s <= start and end <= e:
                rest = [(a, b) for a, b in ((s, start), (end, e)) if b > a]
                self.free[index : index + 1] = rest
                return
        raise ValueError(f"[{start}, {end}) is not free")


def run_distributed_planning(cfg: PlanningConfig) -> tuple[Schedule, Trace]:
    """Auction the jobs one at a time, in list order.

    Each machine bids the slack (deadline minus completion tick) of its
    earliest fitting free interval; the largest slack wins, ties going to
    the smallest machine id. The winner's interval is consumed before the
    next job is auctioned.
    """
    trace = TraceBuilder()
    capacity = {m.id: CapacityModel(m.free) for m in cfg.machines}
    machines = sorted(capacity)
    job_agent, pool = cfg.job_agent, cfg.pool_agent
    entries = []
    tick = 0

    for job in cfg.jobs:
        order, auction = f"order/{job.id}", f"auction/{job.id}"
        spec = {"job": job.id, "duration": job.duration, "deadline": job.deadline}
        trace.add(tick, order, "request", job_agent, pool, spec)
        for machine in machines:
            trace.add(tick + 1, auction, "cfp", pool, machine, spec)

        bids: list[tuple[int, str, int, int]] = []
        for machine in machines:
            slot = capacity[machine].earliest_fit(job.duration, job.deadline)
            if slot is None:
                refusal = {"reason": "no feasible slot"}
                trace.add(tick + 2, auction, "refuse", machine, pool, refusal)
                continue
            start, end = slot
            slack = job.deadline - end
            offer = {"slack": slack, "start": start, "end": end}
            trace.add(tick + 2, auction, "propose", machine, pool, offer)
            bids.append((slack, machine, start, end))

        if not bids:
            unassigned = {"job": job.id, "machine": None}
            trace.add(tick + 3, order, "reply", pool, job_agent, unassigned)
            entries.append(ScheduleEntry(job.id, None, None, None))
            logger.debug(f"Job {job.id}: no feasible slot on any machine")
            tick += 4
            continue

        slack, winner, start, end = min(bids, key=lambda b: (-b[0], b[1]))
        booking = {"start": start, "end": end}
        for _, machine, *_ in bids:
            if machine == winner:
                trace.add(tick + 3, auction, "accept", pool, machine, booking)
            else:
                outbid = {"reason": "outbid"}
                trace.add(tick + 3, auction, "reject", pool, machine, outbid)
        capacity[winner].occupy(start, end)
        trace.add(tick + 4, auction, "inform_result", winner, pool, booking)
        assignment = {"job": job.id, "machine": winner, **booking}
        trace.add(tick + 5, order, "reply", pool, job_agent, assignment)
        entries.append(ScheduleEntry(job.id, winner, start, end))
        logger.debug(f"Job {job.id}: {winner} [{start}, {end}) with slack {slack}")
        tick += 6

    schedule = Schedule(tuple(entries))
    summary = {
        "assigned": len(entries) - len(schedule.unassigned),
        "unassigned": schedule.unassigned,
    }
    logger.info(
        f"Planned {len(entries)} job(s) on {len(machines)} machine(s), "
        f"{len(schedule.unassigned)} unassigned"
    )
    return schedule, trace.build(cfg.seed, cfg.to_dict(), summary)


@register_simulation
class PlanningSimulation(Simulation):
    """Job agents order work; the pool agent auctions it among machines."""

    @property
    def name(self) -> str:
        return "planning"

    @property
    def description(self) -> str:
        return "Pool agent auctions jobs to machines bidding from capacity models"

    def config_from_dict(self, data: Mapping[str, Any]) -> PlanningConfig:
        return PlanningConfig.from_dict(data)

    def execute(self, config: PlanningConfig) -> SimulationResult:
        schedule, trace = run_distributed_planning(config)
        return SimulationResult(self.name, trace, schedule.to_dict())

    def protocol(self) -> dict[str, ProtocolSpec]:
        return {"order": request_reply_protocol(), "auction": contract_net_protocol()}

    def binding(self, config: PlanningConfig) -> TraceBinding:
        actors = {
            config.job_agent: (config.job_agent, "job_agent"),
            config.pool_agent: (config.pool_agent, "pool_agent"),
        }
        for m in config.machines:
            actors[m.id] = (m.id, "machine", "machines")
        return TraceBinding(actors)
