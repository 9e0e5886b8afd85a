"""Tests for the distributed planning simulation."""

import random
from typing import Any

import pytest

from boxc.core.errors import BadConfig
from boxc.sim import PlanningSimulation, check_trace
from boxc.sim.config import PlanningConfig
from boxc.sim.planning import CapacityModel, Schedule, run_distributed_planning
from boxc.sim.trace import Trace
from boxc.utils.storage import TraceStorage

from tests.conftest import CONFIG_DIR


def plan(
    machines: dict[str, list[list[int]]], jobs: list[tuple[str, int, int]]
) -> tuple[Schedule, Trace]:
    cfg = PlanningConfig.from_dict(
        {
            "machines": [{"id": m, "free": free} for m, free in machines.items()],
            "jobs": [{"id": j, "duration": d, "deadline": dl} for j, d, dl in jobs],
        }
    )
    return run_distributed_planning(cfg)


def test_equal_slack_goes_to_smallest_id() -> None:
    """Test two identical machines tie and the smaller id takes the job."""
    schedule, trace = plan({"m2": [[0, 10]], "m1": [[0, 10]]}, [("j", 3, 5)])
    entry = schedule.entry("j")
    assert (entry.machine, entry.start, entry.end) == ("m1", 0, 3)
    proposals = [e.payload["slack"] for e in trace if e.performative == "propose"]
    assert proposals == [2, 2]
    assert [e.receiver for e in trace if e.performative == "reject"] == ["m2"]


def test_infeasible_job_is_unassigned() -> None:
    """Test a job longer than every free interval gets no machine."""
    schedule, trace = plan({"m1": [[0, 5]], "m2": [[2, 8]]}, [("big", 7, 20)])
    assert schedule.unassigned == ["big"]
    assert trace.count("accept") == 0
    assert trace.count("refuse") == 2
    assert trace.events[-1].payload == {"job": "big", "machine": None}


def test_capacity_updates_between_jobs() -> None:
    """Test the second job starts where the first one ended."""
    schedule, _ = plan({"m": [[0, 10]]}, [("first", 4, 10), ("second", 4, 10)])
    assert schedule.entry("first").start == 0
    assert schedule.entry("second").start == 4
    assert [e.job for e in schedule.on_machine("m")] == ["first", "second"]


def test_shipped_config() -> None:
    """Test the shipped config schedules three jobs and leaves the bracket out."""
    sim = PlanningSimulation()
    data = TraceStorage.load_config(CONFIG_DIR / "planning.json")
    result = sim.run(data, seed=1)
    placed = {
        e["job"]: (e["machine"], e["start"], e["end"])
        for e in result.outcome["entries"]
    }
    assert placed == {
        "shaft": ("lathe", 0, 4),
        "gear": ("press", 0, 3),
        "housing": ("mill", 2, 8),
        "bracket": (None, None, None),
    }
    assert result.trace.summary == {"assigned": 3, "unassigned": ["bracket"]}
    assert sim.check(result.trace).conformant


def test_conversations_follow_their_protocols() -> None:
    """Test order and auction conversations are checked separately."""
    _, trace = plan({"m1": [[0, 10]]}, [("a", 2, 9), ("b", 20, 30)])
    assert trace.conversations == ["order/a", "auction/a", "order/b", "auction/b"]
    report = check_trace(trace, PlanningSimulation().protocol())
    assert report.conformant
    protocols = {c.conversation: c.protocol for c in report.conversations}
    assert protocols["order/a"] == "request-reply"
    assert protocols["auction/b"] == "contract-net"


def test_capacity_model() -> None:
    """Test interval splitting and the earliest fit."""
    model = CapacityModel(((10, 20), (0, 5)))
    assert model.earliest_fit(5, 5) == (0, 5)
    assert model.earliest_fit(6, 30) == (10, 16)
    assert model.earliest_fit(6, 15) is None
    model.occupy(12, 14)
    assert model.free == [(0, 5), (10, 12), (14, 20)]
    with pytest.raises(ValueError):
        model.occupy(11, 13)


def test_schedule_lookup() -> None:
    """Test unknown jobs raise KeyError."""
    with pytest.raises(KeyError):
        Schedule(()).entry("nope")


@pytest.mark.parametrize(
    "data",
    [
        {"machines": [{"id": "m", "free": [[0, 5], [3, 8]]}], "jobs": []},
        {"machines": [{"id": "m", "free": [[4, 4]]}], "jobs": []},
        {"machines": [{"id": "m", "free": [[0, 5, 9]]}], "jobs": []},
        {"machines": [{"id": "m", "free": []}, {"id": "m", "free": []}], "jobs": []},
        {"machines": [{"id": "pool_agent", "free": []}], "jobs": []},
        {"machines": [], "jobs": [{"id": "j", "duration": 0, "deadline": 3}]},
        {"machines": [], "jobs": [{"id": "j", "duration": 1}]},
    ],
)
def test_bad_config(data: dict[str, Any]) -> None:
    """Test invalid configs raise BadConfig."""
    with pytest.raises(BadConfig):
        PlanningConfig.from_dict(data)


def random_instance(rng: random.Random) -> dict[str, Any]:
    machines = []
    for m in range(rng.randint(1, 5)):
        free, cursor = [], 0
        for _ in range(rng.randint(1, 3)):
            start = cursor + rng.randint(0, 3)
            cursor = start + rng.randint(1, 8)
            free.append([start, cursor])
        rng.shuffle(free)
        machines.append({"id": f"m{m}", "free": free})
    jobs = [
        {"id": f"j{j}", "duration": rng.randint(1, 6), "deadline": rng.randint(0, 25)}
        for j in range(rng.randint(1, 8))
    ]
    return {"machines": machines, "jobs": jobs}


def fits(
    slots: list[list[int]], taken: list[tuple[int, int]], duration: int, deadline: int
) -> bool:
    """Brute force: some start tick places the job inside one slot, clear of taken."""
    for start in range(0, deadline - duration + 1):
        end = start + duration
        inside = any(s <= start and end <= e for s, e in slots)
        clear = all(end <= a or b <= start for a, b in taken)
        if inside and clear:
            return True
    return False


def test_safety_against_feasibility_oracle() -> None:
    """Test schedules are disjoint, meet deadlines and assign every feasible job."""
    rng = random.Random(31337)
    sim = PlanningSimulation()
    for _ in range(200):
        data = random_instance(rng)
        free = {m["id"]: m["free"] for m in data["machines"]}
        durations = {j["id"]: (j["duration"], j["deadline"]) for j in data["jobs"]}
        result = sim.run(data, seed=0)
        taken: dict[str, list[tuple[int, int]]] = {m: [] for m in free}

        for entry in result.outcome["entries"]:
            duration, deadline = durations[entry["job"]]
            feasible = any(
                fits(free[m], taken[m], duration, deadline) for m in sorted(free)
            )
            if entry["machine"] is None:
                assert not feasible, entry
                continue
            start, end, machine = entry["start"], entry["end"], entry["machine"]
            assert end - start == duration
            assert end <= deadline
            assert any(s <= start and end <= e for s, e in free[machine])
            assert all(end <= a or b <= start for a, b in taken[machine])
            taken[machine].append((start, end))

        assert sim.check(result.trace).conformant
