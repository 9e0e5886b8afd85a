"""Tests for the BDI reasoning cycle and team belief sharing."""

import json
import random
from typing import Any

import pytest

from boxc.core.errors import BadConfig
from boxc.sim import BdiSimulation, bdi_cycle_protocol, check_trace, run_bdi
from boxc.sim.config import BdiConfig

from tests.conftest import CONFIG_DIR

RULES: dict[str, Any] = {
    "belief_rules": [
        {"sensor": "temp", "comparator": "<", "threshold": 10, "belief": "cold"}
    ],
    "desire_rules": [{"beliefs": ["cold"], "goal": "warm"}],
    "plan_library": {"warm": ["heat"]},
}


def config(**overrides: Any) -> BdiConfig:
    data = {
        "environment": {"temp": 5},
        "actors": [{"id": "a"}],
        "ticks": 1,
        **RULES,
        **overrides,
    }
    return BdiConfig.from_dict(data)


def test_single_cycle() -> None:
    """Test a cold reading leads to heating within the same tick."""
    trace = run_bdi(config())
    assert [(e.performative, e.payload) for e in trace] == [
        ("sense", {"sensor": "temp", "value": 5.0}),
        ("classify", {"belief": "cold", "source": "sensor"}),
        ("predict", {"goal": "warm"}),
        ("plan", {"goal": "warm", "actions": ["heat"]}),
        ("act", {"action": "heat", "goal": "warm"}),
    ]
    assert {e.conversation for e in trace} == {"a@0"}
    assert trace.events[0].receiver == "env"


def test_effects_apply_next_tick() -> None:
    """Test an action changes the environment seen at the following tick."""
    trace = run_bdi(config(ticks=2, effects={"heat": {"temp": 10}}))
    second = trace.by_conversation("a@1")
    assert [e.performative for e in second] == ["sense"]
    assert second[0].payload["value"] == 15.0
    assert trace.summary == {"environment": {"temp": 15.0}, "acts": 1}


def test_no_rules_only_senses() -> None:
    """Test an actor without rules does nothing but sense."""
    data = {"environment": {"temp": 5, "light": 3}, "actors": [{"id": "a"}], "ticks": 3}
    trace = run_bdi(BdiConfig.from_dict(data))
    assert trace.count("sense") == len(trace) == 6
    assert [e.payload["sensor"] for e in trace.by_conversation("a@0")] == [
        "light",
        "temp",
    ]


def test_team_shares_beliefs() -> None:
    """Test a teammate holds a spoken belief from the next tick on."""
    cfg = config(
        ticks=3,
        actors=[
            {"id": "a", "team": "t", "sensors": ["temp"], "share_beliefs": True},
            {"id": "b", "team": "t", "sensors": []},
        ],
    )
    trace = run_bdi(cfg)
    speech = [e for e in trace if e.performative == "speak"]
    assert [(e.tick, e.sender, e.receiver, e.payload) for e in speech] == [
        (0, "a", "b", {"belief": "cold", "holds": True})
    ]
    assert trace.by_conversation("b@0") == []
    assert [e.performative for e in trace.by_conversation("b@1")] == [
        "classify",
        "predict",
        "plan",
        "act",
    ]
    assert trace.by_conversation("b@1")[0].payload == {
        "belief": "cold",
        "source": "speech",
    }


def test_retracted_belief_is_spoken() -> None:
    """Test a belief that stops holding is retracted for teammates."""
    cfg = config(
        ticks=3,
        environment={"temp": {"initial": 9, "drift": 2}},
        actors=[
            {"id": "a", "team": "t", "sensors": ["temp"], "share_beliefs": True},
            {"id": "b", "team": "t", "sensors": []},
        ],
    )
    trace = run_bdi(cfg)
    speech = [(e.tick, e.payload["holds"]) for e in trace if e.performative == "speak"]
    assert speech == [(0, True), (1, False)]
    assert trace.by_conversation("b@2") == []


def test_unshared_beliefs_stay_private() -> None:
    """Test teammates without share_beliefs never speak."""
    cfg = config(
        ticks=3,
        actors=[{"id": "a", "team": "t"}, {"id": "b", "team": "t", "sensors": []}],
    )
    trace = run_bdi(cfg)
    assert trace.count("speak") == 0
    assert not any(e.sender == "b" for e in trace)


def justified(trace_events: list[Any], index: int) -> bool:
    event = trace_events[index]
    belief = event.payload["belief"]
    if event.payload["source"] == "sensor":
        return any(
            e.performative == "sense" and e.conversation == event.conversation
            for e in trace_events[:index]
        )
    return any(
        e.performative == "speak"
        and e.receiver == event.sender
        and e.tick < event.tick
        and e.payload == {"belief": belief, "holds": True}
        for e in trace_events[:index]
    )


def test_random_runs_are_conformant() -> None:
    """Test seeded runs keep stage order and justify every belief and act."""
    base = json.loads((CONFIG_DIR / "bdi.json").read_text(encoding="utf-8"))
    rng = random.Random(11)
    for seed in range(100):
        data = {**base, "ticks": rng.randint(1, 8)}
        result = BdiSimulation().run(data, seed=seed)
        trace = result.trace
        report = check_trace(trace, bdi_cycle_protocol())
        assert report.conformant, report.violations

        events = trace.events
        for index, event in enumerate(events):
            actor, tick = event.conversation.split("@")
            assert event.sender == actor
            assert event.tick == int(tick)
            if event.performative == "classify":
                assert justified(events, index)
            if event.performative == "act":
                plans = [
                    e.payload
                    for e in events[:index]
                    if e.performative == "plan" and e.conversation == event.conversation
                ]
                assert any(
                    p["goal"] == event.payload["goal"]
                    and event.payload["action"] in p["actions"]
                    for p in plans
                )


def test_seed_determinism() -> None:
    """Test noisy sensors are reproducible from the seed."""
    base = json.loads((CONFIG_DIR / "bdi.json").read_text(encoding="utf-8"))
    first = BdiSimulation().run(base, seed=5).trace.to_jsonl()
    assert BdiSimulation().run(base, seed=5).trace.to_jsonl() == first


@pytest.mark.parametrize(
    "overrides",
    [
        {"ticks": 0},
        {"actors": []},
        {"actors": [{"id": "a"}, {"id": "a"}]},
        {"actors": [{"id": "env"}]},
        {"actors": [{"id": "a", "sensors": ["humidity"]}]},
        {"belief_rules": [{**RULES["belief_rules"][0], "comparator": "~"}]},
        {"desire_rules": [{"beliefs": ["hot"], "goal": "cool"}]},
        {"plan_library": {"fly": ["flap"]}},
        {"effects": {"teleport": {"temp": 1}}},
        {"effects": {"heat": {"humidity": 1}}},
        {"environment": {"temp": {"initial": 5, "noise": -1}}},
        {"environment": {"temp": "warm"}},
    ],
)
def test_bad_config(overrides: dict[str, Any]) -> None:
    """Test invalid BDI configs raise BadConfig."""
    with pytest.raises(BadConfig):
        config(**overrides)
