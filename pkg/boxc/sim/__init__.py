"""Seeded simulations of the team interaction patterns."""

from boxc.sim.binding import TraceBinding, bind_trace
from boxc.sim.decorators import register_simulation
from boxc.sim.protocol import (
    ConformanceReport,
    ConversationReport,
    ProtocolSpec,
    Violation,
    bdi_cycle_protocol,
    check_trace,
    contract_net_protocol,
    request_reply_protocol,
)
from boxc.sim.registry import SimulationRegistry
from boxc.sim.simulation import Simulation, SimulationResult
from boxc.sim.trace import EventRecord, Trace, TraceBuilder

# Simulations register themselves when imported
from boxc.sim.bdi import BdiSimulation, run_bdi
from boxc.sim.contract_net import ContractNetSimulation, run_contract_net
from boxc.sim.federated import (
    FederatedSimulation,
    GlobalStats,
    PartialStats,
    integrate_partials,
    run_federated_learning,
)
from boxc.sim.planning import (
    PlanningSimulation,
    Schedule,
    ScheduleEntry,
    run_distributed_planning,
)

__all__ = [
    "BdiSimulation",
    "ConformanceReport",
    "ContractNetSimulation",
    "ConversationReport",
    "EventRecord",
    "FederatedSimulation",
    "GlobalStats",
    "PartialStats",
    "PlanningSimulation",
    "ProtocolSpec",
    "Schedule",
    "ScheduleEntry",
    "Simulation",
    "SimulationRegistry",
    "SimulationResult",
    "Trace",
    "TraceBinding",
    "TraceBuilder",
    "Violation",
    "bdi_cycle_protocol",
    "bind_trace",
    "check_trace",
    "contract_net_protocol",
    "integrate_partials",
    "register_simulation",
    "request_reply_protocol",
    "run_bdi",
    "run_contract_net",
    "run_distributed_planning",
    "run_federated_learning",
]
