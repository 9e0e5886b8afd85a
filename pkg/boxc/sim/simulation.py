"""Base class for all simulations."""

import logging
from abc import ABC, abstractmethod
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from boxc.sim.binding import TraceBinding
from boxc.sim.protocol import ConformanceReport, ProtocolSpec, check_trace
from boxc.sim.trace import Trace

logger = logging.getLogger(__name__)


@dataclass
class SimulationResult:
    """Result from a simulation run."""

    simulation: str
    trace: Trace
    outcome: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Serialize everything except the events themselves."""
        return {
            "simulation": self.simulation,
            "seed": self.trace.seed,
            "events": len(self.trace),
            "outcome": self.outcome,
            "summary": self.trace.summary,
        }


class Simulation(ABC):
    """Base class for all simulations."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Unique identifier for this simulation."""
        pass

    @property
    def description(self) -> str:
        """Human-readable description of what this simulation models."""
        return ""

    @abstractmethod
    def config_from_dict(self, data: Mapping[str, Any]) -> Any:
        """Decode and validate a JSON config; raises BadConfig."""
        pass

    @abstractmethod
    def execute(self, config: Any) -> SimulationResult:
        """Run the simulation on a decoded config."""
        pass

    @abstractmethod
    def protocol(self) -> ProtocolSpec | Mapping[str, ProtocolSpec]:
        """The protocol, or protocol suite, its traces must conform to."""
        pass

    @abstractmethod
    def binding(self, config: Any) -> TraceBinding:
        """Diagram node candidates for the actors of `config`."""
        pass

    def run(self, data: Mapping[str, Any], seed: int) -> SimulationResult:
        """
        Decode a config and run it with an explicit seed.

        Args:
            data: Config as loaded from JSON
            seed: Seed overriding any seed in the config

        Returns:
            The result holding the trace
        """
        config = self.config_from_dict(data).with_seed(seed)
        logger.debug(f"Running {self.name} with seed {seed}")
        return self.execute(config)

    def check(self, trace: Trace) -> ConformanceReport:
        return check_trace(trace, self.protocol())
