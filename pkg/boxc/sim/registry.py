"""Simulation registry for managing available simulations."""

import logging
from typing import Type

from boxc.core.errors import UnknownSimulation
from boxc.sim.simulation import Simulation

logger = logging.getLogger(__name__)


class SimulationRegistry:
    """Registry for all available simulations."""

    _simulations: dict[str, Type[Simulation]] = {}

    @classmethod
    def register(cls, simulation_class: Type[Simulation]) -> Type[Simulation]:
        """
        Register a simulation class.

        Args:
            simulation_class: The Simulation subclass to register

        Returns:
            The simulation class (for use as a decorator)
        """
        try:
            name = simulation_class().name
        except Exception as e:
            logger.error(f"Failed to register {simulation_class.__name__}: {e}")
            return simulation_class

        if name in cls._simulations:
            logger.warning(f"Simulation '{name}' is already registered, overwriting")

        cls._simulations[name] = simulation_class
        logger.debug(f"Registered simulation: {name}")
        return simulation_class

    @classmethod
    def unregister(cls, name: str) -> None:
        """Unregister a simulation by name."""
        if name in cls._simulations:
            del cls._simulations[name]
            logger.debug(f"Unregistered simulation: {name}")

    @classmethod
    def get(cls, name: str) -> Type[Simulation] | None:
        """
        Get a simulation class by name.

        Args:
            name: The unique simulation name

        Returns:
            The Simulation class or None if not found
        """
        return cls._simulations.get(name)

    @classmethod
    def create(cls, name: str) -> Simulation:
        """Instantiate a registered simulation; raises UnknownSimulation."""
        simulation_class = cls.get(name)
        if simulation_class is None:
            raise UnknownSimulation(name)
        return simulation_class()

    @classmethod
    def all(cls) -> dict[str, Type[Simulation]]:
        """
        Get all registered simulations.

        Returns:
            Dictionary mapping simulation names to simulation classes
        """
        return cls._simulations.copy()

    @classmethod
    def list_names(cls) -> list[str]:
        """Get list of all registered simulation names."""
        return sorted(cls._simulations.keys())

    @classmethod
    def clear(cls) -> None:
        """Clear all registered simulations (useful for testing)."""
        cls._simulations.clear()
