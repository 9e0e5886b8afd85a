"""Tests for the ContractNet simulation."""

import random
from typing import Any

import pytest

from boxc.core.errors import BadConfig
from boxc.sim import ContractNetSimulation, check_trace, contract_net_protocol
from boxc.sim.config import ContractNetConfig
from boxc.sim.contract_net import run_contract_net


def fixed_bids(bids: dict[str, float], deadline: int = 3) -> ContractNetConfig:
    """Every participant proposes its bid at tick 1."""
    return ContractNetConfig.from_dict(
        {
            "deadline_ticks": deadline,
            "participants": [
                {
                    "id": pid,
                    "bid_min": bid,
                    "bid_max": bid,
                    "min_latency": 1,
                    "max_latency": 1,
                }
                for pid, bid in bids.items()
            ],
        }
    )


def random_config(rng: random.Random) -> ContractNetConfig:
    participants = []
    for i in range(rng.randint(1, 10)):
        low = rng.uniform(0, 10)
        entry: dict[str, Any] = {
            "id": f"a{i}",
            "propose_probability": rng.choice([0.0, 0.5, 1.0, rng.random()]),
            "bid_min": low,
            "bid_max": low + rng.choice([0.0, rng.uniform(0, 5)]),
            "failure_probability": rng.choice([0.0, 0.3]),
        }
        participants.append(entry)
    data = {
        "deadline_ticks": rng.randint(1, 5),
        "participants": participants,
        "seed": rng.randrange(2**32),
    }
    return ContractNetConfig.from_dict(data)


def test_highest_bid_wins_ties_to_smallest_id() -> None:
    """Test bids {a1:5, a2:7, a3:7} award a2 and reject the others."""
    trace = run_contract_net(fixed_bids({"a1": 5, "a2": 7, "a3": 7}))
    accepts = [e for e in trace if e.performative == "accept"]
    rejects = sorted(e.receiver for e in trace if e.performative == "reject")
    assert [(e.receiver, e.tick) for e in accepts] == [("a2", 3)]
    assert rejects == ["a1", "a3"]
    assert [e.sender for e in trace if e.performative == "inform_result"] == ["a2"]
    assert trace.summary["winner"] == "a2"
    assert trace.summary["outcome"] == "awarded"


def test_event_order() -> None:
    """Test cfp broadcast, proposals, decision and report come in tick order."""
    trace = run_contract_net(fixed_bids({"a1": 5, "a2": 7}))
    assert [(e.tick, e.performative, e.sender, e.receiver) for e in trace] == [
        (0, "cfp", "initiator", "a1"),
        (0, "cfp", "initiator", "a2"),
        (1, "propose", "a1", "initiator"),
        (1, "propose", "a2", "initiator"),
        (3, "reject", "initiator", "a1"),
        (3, "accept", "initiator", "a2"),
        (4, "inform_result", "a2", "initiator"),
    ]


def test_all_refuse() -> None:
    """Test a round without proposals ends with no award."""
    cfg = ContractNetConfig.from_dict(
        {
            "deadline_ticks": 2,
            "participants": [
                {"id": "a1", "propose_probability": 0.0},
                {"id": "a2", "propose_probability": 0.0},
            ],
        }
    )
    trace = run_contract_net(cfg)
    assert trace.count("accept") == 0
    assert trace.count("refuse") == 2
    assert trace.summary["outcome"] == "no-award"

    report = check_trace(trace, contract_net_protocol())
    assert report.conformant
    assert report.conversations[0].state == "no-award"


@pytest.mark.parametrize("seed", range(20))
def test_single_participant_always_wins(seed: int) -> None:
    """Test one always-proposing participant within the deadline gets the award."""
    cfg = ContractNetConfig.from_dict(
        {
            "deadline_ticks": 3,
            "seed": seed,
            "participants": [{"id": "solo", "max_latency": 3}],
        }
    )
    trace = run_contract_net(cfg)
    assert [e.receiver for e in trace if e.performative == "accept"] == ["solo"]


def test_late_proposal_is_recorded_and_rejected() -> None:
    """Test a proposal after the deadline is marked ignored and rejected."""
    cfg = ContractNetConfig.from_dict(
        {
            "deadline_ticks": 2,
            "participants": [{"id": "slow", "min_latency": 4, "max_latency": 4}],
        }
    )
    trace = run_contract_net(cfg)
    (proposal,) = [e for e in trace if e.performative == "propose"]
    (reject,) = [e for e in trace if e.performative == "reject"]
    assert proposal.payload["ignored"] is True
    assert (reject.tick, reject.payload) == (4, {"reason": "deadline"})
    assert trace.summary == {
        "outcome": "no-award",
        "winner": None,
        "valid_proposals": 0,
        "ignored_proposals": 1,
    }


def test_failure_report() -> None:
    """Test an awardee that fails reports failure instead of a result."""
    cfg = ContractNetConfig.from_dict(
        {
            "deadline_ticks": 1,
            "participants": [{"id": "a", "max_latency": 1, "failure_probability": 1.0}],
        }
    )
    trace = run_contract_net(cfg)
    assert trace.events[-1].performative == "failure"
    assert check_trace(trace, contract_net_protocol()).conformant


@pytest.mark.parametrize(
    "data",
    [
        {"deadline_ticks": 3, "participants": []},
        {"deadline_ticks": 0, "participants": [{"id": "a"}]},
        {"deadline_ticks": 3, "participants": [{"id": "a"}, {"id": "a"}]},
        {"deadline_ticks": 3, "participants": [{"id": "a", "propose_probability": 2}]},
        {
            "deadline_ticks": 3,
            "participants": [{"id": "a", "bid_min": 3, "bid_max": 0}],
        },
        {"deadline_ticks": 3, "participants": [{"id": "a", "max_latency": 0}]},
        {"deadline_ticks": True, "participants": [{"id": "a"}]},
        {"deadline_ticks": 3, "participants": [{"id": "initiator"}]},
        {"participants": [{"id": "a"}]},
    ],
)
def test_bad_config(data: dict[str, Any]) -> None:
    """Test invalid configs raise BadConfig."""
    with pytest.raises(BadConfig):
        ContractNetConfig.from_dict(data)


def test_determinism() -> None:
    """Test the same config and seed give byte-identical traces."""
    cfg = random_config(random.Random(99))
    assert run_contract_net(cfg).to_jsonl() == run_contract_net(cfg).to_jsonl()


def test_safety_over_seeded_runs() -> None:
    """Test award safety and conformance on many random rounds."""
    rng = random.Random(2024)
    protocol = contract_net_protocol()
    for _ in range(1000):
        cfg = random_config(rng)
        trace = run_contract_net(cfg)
        events = trace.events
        assert [e.tick for e in events] == sorted(e.tick for e in events)

        valid = {
            e.sender
            for e in events
            if e.performative == "propose" and not e.payload["ignored"]
        }
        accepts = [e.receiver for e in events if e.performative == "accept"]
        assert len(accepts) <= 1
        assert bool(accepts) == bool(valid)

        answered = [
            e.receiver
            for e in events
            if e.performative in ("accept", "reject") and e.receiver in valid
        ]
        assert sorted(answered) == sorted(valid)

        report = check_trace(trace, protocol)
        assert report.conformant, report.to_dict()


def test_simulation_runs_with_explicit_seed() -> None:
    """Test the registered simulation overrides the config seed."""
    simulation = ContractNetSimulation()
    data = {"deadline_ticks": 2, "participants": [{"id": "a"}, {"id": "b"}]}
    first = simulation.run(data, seed=5)
    second = simulation.run(data, seed=5)
    assert first.trace.seed == 5
    assert first.trace.to_jsonl() == second.trace.to_jsonl()
    assert first.outcome == first.trace.summary
    assert simulation.check(first.trace).conformant
